#pragma once

#include <ostream>
#include <string>

#include "qotac/montecarlo.hpp"

namespace qotac {

/// Shortest decimal form with 17 significant digits; round-trips doubles
/// exactly, keeping reruns byte-comparable.
std::string format_g17(double value);

/// cdf.csv: (scheme, stream, function, nmse, cdf_level), sorted by
/// (scheme, stream, nmse).
void write_cdf_csv(std::ostream& out, const CdfResult& cdf);

/// sweep.csv: (snr_db, scheme, mean_nmse, mean_nmse_db, n_trials,
/// stderr_nmse), sorted by (scheme, snr_db).
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

/// trial-dump.csv: one real number per row, labelled
/// (scheme, quantity, row, col, part, value); complex entries take a
/// re row and an im row, real quantities carry an explicit zero im row.
void write_trial_dump_csv(std::ostream& out, const TrialTrace& trace,
                          const TrialResult& result);

}  // namespace qotac
