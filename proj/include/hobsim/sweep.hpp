#pragma once

#include <string>
#include <vector>

#include "hobsim/metrology.hpp"

namespace hobsim {

/// Factor sweep over hob feed (mm/r) and blank rotation interval (deg).
struct SweepConfig {
    MachineSetup setup;                       // template; feed/interval overridden per cell
    std::vector<double> feeds{5, 4, 3, 2, 1};
    std::vector<double> intervals{8, 4, 2};
    int grid_rows = 25;
    int grid_cols = 25;
    double profile_margin = 0.05;
    double axial_margin = 0.05;

    void validate() const;
};

struct SweepCell {
    double feed = 0.0;
    double interval = 0.0;
    double max_abs_error_um = 0.0;
    double clocking_offset = 0.0;  // rad
    double runtime_seconds = 0.0;
    bool failed = false;
    std::string message;
};

struct SweepTable {
    std::vector<double> feeds;
    std::vector<double> intervals;
    std::vector<SweepCell> cells;  // feeds x intervals, row-major
    std::string config_hash;
    std::string version;

    const SweepCell& cell(size_t fi, size_t ii) const { return cells[fi * intervals.size() + ii]; }
    std::vector<std::vector<double>> error_matrix() const;  // rows by feed, cols by interval
    std::string to_string() const;
};

SweepTable run_sweep(const SweepConfig& cfg, const std::string& config_hash = "");

/// Monotonicity report for a sweep matrix: columns (fixed interval) must be
/// non-increasing as the feed decreases; rows (fixed feed) non-increasing as
/// the interval decreases, with at most one exception across the table.
struct TrendReport {
    int columns_total = 0;
    int columns_monotone = 0;
    std::vector<std::pair<int, int>> column_violations;  // (row above, col)
    int rows_total = 0;
    int rows_monotone = 0;
    std::vector<std::pair<int, int>> row_exceptions;     // (row, col left of the rise)
    bool pass = false;
    std::string to_string() const;
};

TrendReport check_trends(const std::vector<std::vector<double>>& matrix);
TrendReport check_trends(const SweepTable& table);

void write_sweep_csv(const SweepTable& table, const std::string& path);

}  // namespace hobsim
