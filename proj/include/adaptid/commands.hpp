#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace adaptid {

/// Process exit codes shared by the command-line entry points.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitNotConverged = 2 };

/// Runs one experiment. Artifacts go next to the config or into out_dir:
/// <stem>.report.json, <stem>.curve.csv, plus <stem>.coeffs.csv for recursive
/// filters and <stem>.triggers.csv for LMS-GA. Returns 0 when the run
/// converged, 2 when it did not or diverged, 1 on bad input.
int run_config_command(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                       std::ostream& out, std::ostream& err);

/// Writes table1.csv .. table4.csv. Returns 0 even when individual rows fail.
int reproduce_tables_command(const std::filesystem::path& out_dir, unsigned jobs, std::uint64_t master_seed,
                             std::ostream& out, std::ostream& err);

/// Input statistics for a config: autocorrelation, PSD, Toeplitz eigenvalues,
/// disparity and the predicted time constant at the configured step size.
/// `order` defaults to the adaptive filter's coefficient count.
int spectrum_command(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                     std::optional<std::int64_t> order, std::ostream& out, std::ostream& err);

/// GT estimate from a learning-curve CSV. Returns 2 when the curve has no plateau.
int estimate_gt_command(const std::filesystem::path& curve_csv, std::int64_t delta, std::ostream& out,
                        std::ostream& err);

} // namespace adaptid
