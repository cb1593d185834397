#include "hobsim/sweep.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hobsim/exports.hpp"

namespace hobsim {

void SweepConfig::validate() const {
    if (feeds.empty() || intervals.empty())
        throw std::invalid_argument("sweep: feed and interval lists must be non-empty");
    for (double f : feeds)
        if (!(f > 0.0)) throw std::invalid_argument("sweep: feeds must be positive");
    for (double i : intervals)
        if (!(i > 0.0)) throw std::invalid_argument("sweep: intervals must be positive");
}

SweepTable run_sweep(const SweepConfig& cfg, const std::string& config_hash) {
    cfg.validate();
    SweepTable table;
    table.feeds = cfg.feeds;
    table.intervals = cfg.intervals;
    table.config_hash = config_hash;
    table.version = kArtifactVersion;
    table.cells.resize(cfg.feeds.size() * cfg.intervals.size());

    // One grid shared by every cell so the maxima are comparable.
    const FlankGrid grid = build_grid(cfg.setup.gear, cfg.grid_rows, cfg.grid_cols,
                                      cfg.profile_margin, cfg.axial_margin);

    for (size_t fi = 0; fi < cfg.feeds.size(); ++fi) {
        for (size_t ii = 0; ii < cfg.intervals.size(); ++ii) {
            SweepCell& cell = table.cells[fi * cfg.intervals.size() + ii];
            cell.feed = cfg.feeds[fi];
            cell.interval = cfg.intervals[ii];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                MachineSetup setup = cfg.setup;
                setup.feed_per_rev = cell.feed;
                setup.interval_angle = cell.interval;
                const CutterSchedule schedule = build_schedule(setup);
                cell.clocking_offset = align_clocking(grid, schedule, schedule.hob);
                const ErrorMap map = error_map(grid, schedule, schedule.hob, cell.clocking_offset);
                cell.max_abs_error_um = map.max_abs_error_um;
            } catch (const std::exception& e) {
                cell.failed = true;
                cell.message = e.what();
            }
            cell.runtime_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    }
    return table;
}

std::vector<std::vector<double>> SweepTable::error_matrix() const {
    std::vector<std::vector<double>> m(feeds.size(), std::vector<double>(intervals.size(), 0.0));
    for (size_t fi = 0; fi < feeds.size(); ++fi)
        for (size_t ii = 0; ii < intervals.size(); ++ii) {
            const SweepCell& c = cell(fi, ii);
            if (c.failed) throw std::runtime_error("sweep cell failed: " + c.message);
            m[fi][ii] = c.max_abs_error_um;
        }
    return m;
}

std::string SweepTable::to_string() const {
    std::ostringstream os;
    os << "feed \\ interval";
    for (double i : intervals) os << "\t" << i;
    os << "\n";
    for (size_t fi = 0; fi < feeds.size(); ++fi) {
        os << feeds[fi];
        for (size_t ii = 0; ii < intervals.size(); ++ii) {
            const SweepCell& c = cell(fi, ii);
            os << "\t";
            if (c.failed)
                os << "FAILED";
            else
                os << c.max_abs_error_um;
        }
        os << "\n";
    }
    return os.str();
}

TrendReport check_trends(const std::vector<std::vector<double>>& matrix) {
    TrendReport r;
    if (matrix.empty()) throw std::invalid_argument("check_trends: empty matrix");
    const size_t rows = matrix.size(), cols = matrix[0].size();
    for (const auto& row : matrix)
        if (row.size() != cols) throw std::invalid_argument("check_trends: ragged matrix");

    r.columns_total = static_cast<int>(cols);
    for (size_t j = 0; j < cols; ++j) {
        bool mono = true;
        for (size_t i = 0; i + 1 < rows; ++i)
            if (matrix[i + 1][j] > matrix[i][j]) {
                mono = false;
                r.column_violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        if (mono) ++r.columns_monotone;
    }

    r.rows_total = static_cast<int>(rows);
    for (size_t i = 0; i < rows; ++i) {
        bool mono = true;
        for (size_t j = 0; j + 1 < cols; ++j)
            if (matrix[i][j + 1] > matrix[i][j]) {
                mono = false;
                r.row_exceptions.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        if (mono) ++r.rows_monotone;
    }

    r.pass = (r.columns_monotone == r.columns_total) && (r.row_exceptions.size() <= 1);
    return r;
}

TrendReport check_trends(const SweepTable& table) { return check_trends(table.error_matrix()); }

std::string TrendReport::to_string() const {
    std::ostringstream os;
    os << "trend report: " << columns_monotone << "/" << columns_total << " columns monotone, "
       << rows_monotone << "/" << rows_total << " rows monotone, " << row_exceptions.size()
       << " row exception(s)";
    for (const auto& e : row_exceptions) os << " [row " << e.first << ", col " << e.second << "]";
    os << " -> " << (pass ? "PASS" : "FAIL");
    return os.str();
}

void write_sweep_csv(const SweepTable& table, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_sweep_csv: cannot write " + path);
    os << provenance_line(table.config_hash) << "\n";
    os << "feed_mm_per_rev,interval_deg,max_abs_error_um,clocking_offset_rad,runtime_s,status\n";
    for (size_t fi = 0; fi < table.feeds.size(); ++fi)
        for (size_t ii = 0; ii < table.intervals.size(); ++ii) {
            const SweepCell& c = table.cell(fi, ii);
            os << format_sig12(c.feed) << "," << format_sig12(c.interval) << ","
               << format_sig12(c.max_abs_error_um) << "," << format_sig12(c.clocking_offset) << ","
               << format_sig12(c.runtime_seconds) << "," << (c.failed ? ("failed:" + c.message) : "ok")
               << "\n";
        }
}

}  // namespace hobsim
