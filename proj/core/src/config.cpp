#include "qotac/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qotac/csv.hpp"
#include "qotac/errors.hpp"

namespace qotac {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& value, int line) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(value, &consumed);
    if (consumed != value.size()) parse_fail(line, "trailing characters in number '" + value + "'");
    if (!std::isfinite(v)) parse_fail(line, "number '" + value + "' is not finite");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line, "expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& value, int line) {
  long long v = 0;
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  const auto result = std::from_chars(begin, end, v);
  if (result.ec != std::errc() || result.ptr != end) {
    parse_fail(line, "expected an integer, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, int line) {
  std::uint64_t v = 0;
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  const auto result = std::from_chars(begin, end, v);
  if (result.ec != std::errc() || result.ptr != end) {
    parse_fail(line, "expected an unsigned 64-bit integer, got '" + value + "'");
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& value, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) parse_fail(line, "empty element in list '" + value + "'");
    out.push_back(parse_double(item, line));
  }
  if (out.empty()) parse_fail(line, "expected a comma-separated list of numbers");
  return out;
}

UniformDist parse_uniform(const std::string& value, int line) {
  const std::string v = trim(value);
  constexpr const char* kPrefix = "uniform(";
  if (v.rfind(kPrefix, 0) != 0 || v.back() != ')') {
    parse_fail(line, "expected uniform(lo,hi), got '" + value + "'");
  }
  const std::string inner = v.substr(8, v.size() - 9);
  const auto comma = inner.find(',');
  if (comma == std::string::npos) {
    parse_fail(line, "expected uniform(lo,hi), got '" + value + "'");
  }
  UniformDist dist;
  dist.lo = parse_double(trim(inner.substr(0, comma)), line);
  dist.hi = parse_double(trim(inner.substr(comma + 1)), line);
  if (!(dist.lo < dist.hi)) {
    throw ValidationError("line " + std::to_string(line) +
                          ": uniform bounds need lo < hi");
  }
  return dist;
}

Scheme parse_scheme(const std::string& value, int line) {
  if (value == "conventional") return Scheme::Conventional;
  if (value == "quadrature") return Scheme::Quadrature;
  if (value == "both") return Scheme::Both;
  parse_fail(line, "scheme must be conventional, quadrature or both");
}

PowerMode parse_power_mode(const std::string& value, int line) {
  if (value == "per_stream_unit") return PowerMode::PerStreamUnit;
  if (value == "equal_total") return PowerMode::EqualTotal;
  parse_fail(line, "power_mode must be per_stream_unit or equal_total");
}

const std::set<std::string> kFunctionNames = {"sum", "product", "mean",
                                              "weighted_average"};

std::string parse_function(const std::string& value, int line) {
  if (!kFunctionNames.contains(value)) {
    parse_fail(line, "unknown function '" + value +
                         "' (expected sum, product, mean or weighted_average)");
  }
  return value;
}

}  // namespace

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile cfg;
  std::set<std::string> seen;
  std::set<std::string> required_missing = {"n_rx", "n_dev", "snr_db",
                                            "function_f"};

  std::istringstream stream(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    const auto comment = raw_line.find('#');
    if (comment != std::string::npos) raw_line.erase(comment);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      parse_fail(line_no, "expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(line_no, "missing key before '='");
    if (value.empty()) parse_fail(line_no, "missing value for key '" + key + "'");
    if (!seen.insert(key).second) {
      parse_fail(line_no, "duplicate key '" + key + "'");
    }
    required_missing.erase(key);

    if (key == "n_rx") {
      cfg.n_rx = static_cast<int>(parse_int(value, line_no));
    } else if (key == "n_dev") {
      cfg.n_dev = static_cast<int>(parse_int(value, line_no));
    } else if (key == "snr_db") {
      cfg.snr_db = parse_double_list(value, line_no);
    } else if (key == "n_trials") {
      cfg.n_trials = static_cast<int>(parse_int(value, line_no));
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line_no);
    } else if (key == "scheme") {
      cfg.scheme = parse_scheme(value, line_no);
    } else if (key == "power_mode") {
      cfg.power_mode = parse_power_mode(value, line_no);
    } else if (key == "function_f") {
      cfg.function_f = parse_function(value, line_no);
    } else if (key == "function_g") {
      cfg.function_g = parse_function(value, line_no);
    } else if (key == "product_base") {
      cfg.product_base = parse_double(value, line_no);
    } else if (key == "weights_dist") {
      cfg.weights_dist = parse_uniform(value, line_no);
    } else if (key == "data_dist_f") {
      cfg.data_dist_f = parse_uniform(value, line_no);
    } else if (key == "data_dist_g") {
      cfg.data_dist_g = parse_uniform(value, line_no);
    } else {
      throw UnknownKey("line " + std::to_string(line_no) + ": unknown key '" +
                       key + "'");
    }
  }

  if (!required_missing.empty()) {
    throw ValidationError("missing required key '" + *required_missing.begin() +
                          "'");
  }
  if (cfg.n_rx < 1) throw ValidationError("n_rx must be >= 1");
  if (cfg.n_dev < 1) throw ValidationError("n_dev must be >= 1");
  if (cfg.n_trials < 1) throw ValidationError("n_trials must be >= 1");
  return cfg;
}

ConfigFile parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string write_config(const ConfigFile& cfg) {
  std::ostringstream out;
  out << "n_rx = " << cfg.n_rx << "\n";
  out << "n_dev = " << cfg.n_dev << "\n";
  out << "snr_db = ";
  for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
    if (i > 0) out << ", ";
    out << format_g17(cfg.snr_db[i]);
  }
  out << "\n";
  out << "n_trials = " << cfg.n_trials << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "scheme = " << scheme_name(cfg.scheme) << "\n";
  out << "power_mode = " << power_mode_name(cfg.power_mode) << "\n";
  out << "function_f = " << cfg.function_f << "\n";
  if (cfg.function_g) out << "function_g = " << *cfg.function_g << "\n";
  out << "product_base = " << format_g17(cfg.product_base) << "\n";
  out << "weights_dist = uniform(" << format_g17(cfg.weights_dist.lo) << ", "
      << format_g17(cfg.weights_dist.hi) << ")\n";
  if (cfg.data_dist_f) {
    out << "data_dist_f = uniform(" << format_g17(cfg.data_dist_f->lo) << ", "
        << format_g17(cfg.data_dist_f->hi) << ")\n";
  }
  if (cfg.data_dist_g) {
    out << "data_dist_g = uniform(" << format_g17(cfg.data_dist_g->lo) << ", "
        << format_g17(cfg.data_dist_g->hi) << ")\n";
  }
  return out.str();
}

SimConfig make_sim_config(const ConfigFile& file,
                          std::optional<std::uint64_t> seed_override) {
  SimConfig cfg;
  cfg.n_rx = file.n_rx;
  cfg.n_dev = file.n_dev;
  cfg.snr_db = file.snr_db;
  cfg.n_trials = file.n_trials;
  cfg.seed = seed_override.value_or(file.seed);
  cfg.scheme = file.scheme;
  cfg.power_mode = file.power_mode;

  // Weighted-average weights are a deterministic function of the master
  // seed: stream f draws first, then stream g, from the reserved stream.
  RandomStream weights_stream = weights_rng(cfg.seed);
  auto make_kind = [&](const std::string& name) {
    if (name == "sum") return FunctionKind::sum();
    if (name == "mean") return FunctionKind::mean();
    if (name == "product") return FunctionKind::product(file.product_base);
    if (name == "weighted_average") {
      RVector w(cfg.n_dev);
      for (int k = 0; k < cfg.n_dev; ++k) {
        w(k) = weights_stream.uniform(file.weights_dist.lo, file.weights_dist.hi);
      }
      return FunctionKind::weighted_average(std::move(w));
    }
    throw ValidationError("unknown function name '" + name + "'");
  };

  const FunctionKind kind_f = make_kind(file.function_f);
  cfg.stream_f = make_stream_spec(
      kind_f, file.data_dist_f.value_or(default_data_dist(kind_f.type())));
  if (file.function_g) {
    const FunctionKind kind_g = make_kind(*file.function_g);
    cfg.stream_g = make_stream_spec(
        kind_g, file.data_dist_g.value_or(default_data_dist(kind_g.type())));
  }

  validate(cfg);
  return cfg;
}

}  // namespace qotac
