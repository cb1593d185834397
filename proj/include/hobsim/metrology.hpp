#pragma once

#include <array>
#include <string>

#include "hobsim/cutting.hpp"

namespace hobsim {

/// Sampled flank error map after clocking alignment. Errors in micrometers,
/// coordinates in mm. Corner labels A..D attach to the sample-grid corners
/// (A = sample (0,0), then counterclockwise in (row, col) index space).
struct ErrorMap {
    int sample_rows = 5;
    int sample_cols = 5;
    std::vector<double> sampled_u;   // sample_cols entries
    std::vector<double> sampled_z;   // sample_rows entries, mm
    std::vector<double> errors_um;   // sample_rows*sample_cols, row-major
    double clocking_offset = 0.0;    // rad
    double max_abs_error_um = 0.0;
    // corner -> (row, col) in sample indices
    std::array<std::pair<int, int>, 4> corners;  // A, B, C, D

    double error(int i, int j) const {
        return errors_um[static_cast<size_t>(i) * sample_cols + j];
    }
};

/// Copy of a grid rotated about the gear axis (points and normals).
FlankGrid rotate_grid(const FlankGrid& grid, double angle);

/// Clocking angle that zeroes the center-sample deviation: rotating the
/// theoretical grid by the returned angle about the gear axis puts the center
/// grid point exactly on the as-cut surface. Throws on alignment failure
/// (no zero within one angular pitch).
double align_clocking(const FlankGrid& grid, const CutterSchedule& schedule,
                      const DerivedHob& hob);

/// 5x5 (by default) equidistant sample map of the aligned deviation field.
/// use_full_field switches the max statistic to the full grid for
/// diagnostics; the sampled entries always equal the corresponding field
/// entries exactly.
ErrorMap error_map(const FlankGrid& grid, const CutterSchedule& schedule,
                   const DerivedHob& hob, double clocking_offset,
                   bool use_full_field = false);

/// Writes the error map CSV beside a JSON sidecar (same path + ".json").
void export_error_surface(const ErrorMap& map, const std::string& path,
                          const std::string& config_hash = "");

}  // namespace hobsim
