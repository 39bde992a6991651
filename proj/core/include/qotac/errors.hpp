#pragma once

#include <stdexcept>
#include <string>

namespace qotac {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Function toolbox errors.
class NonPositiveDatum : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class OverflowError : public Error { public: using Error::Error; };
class DegenerateDistribution : public Error { public: using Error::Error; };

// Linear-algebra / link errors.
class DimensionMismatch : public Error { public: using Error::Error; };
class SingularSystem : public Error { public: using Error::Error; };

// Monte Carlo errors.
class DegenerateTruth : public Error { public: using Error::Error; };
class MissingStream : public Error { public: using Error::Error; };
class EmptyGroup : public Error { public: using Error::Error; };

// Configuration / IO errors.
class ParseError : public Error { public: using Error::Error; };
class UnknownKey : public Error { public: using Error::Error; };
class ValidationError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

}  // namespace qotac
