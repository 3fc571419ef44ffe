#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adaptid/sysid.hpp"

namespace adaptid {

/// One experiment of the table sweep.
struct TableRow {
    int table = 0;
    ExperimentConfig config;
    std::optional<ExperimentReport> report;
    std::string status; ///< "converged", "not_converged", or the error text
};

struct TablesResult {
    std::vector<TableRow> rows;
    std::vector<std::filesystem::path> files;
};

inline constexpr int kSeedsPerRow = 3;

/// Configs for table 1 (FIR, white), 2 (FIR, colored), 3 (IIR, white) and
/// 4 (FIR, pure LMS against LMS-GA). Seeds derive from (master_seed, k).
std::vector<ExperimentConfig> table_configs(int table, std::uint64_t master_seed);

/// Runs all four sweeps with up to `jobs` concurrent experiments and writes
/// table1.csv .. table4.csv into out_dir. Failed rows are recorded, not fatal.
TablesResult reproduce_tables(const std::filesystem::path& out_dir, unsigned jobs, std::uint64_t master_seed = 1);

} // namespace adaptid
