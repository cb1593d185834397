#include "hobsim/metrology.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "hobsim/exports.hpp"

namespace hobsim {

FlankGrid rotate_grid(const FlankGrid& grid, double angle) {
    FlankGrid out = grid;
    const Mat3 rot = Mat3::rot_z(angle);
    for (size_t i = 0; i < out.points.size(); ++i) {
        out.points[i] = rot * out.points[i];
        out.normals[i] = rot * out.normals[i];
    }
    return out;
}

double align_clocking(const FlankGrid& grid, const CutterSchedule& schedule,
                      const DerivedHob& hob) {
    (void)hob;
    const PoseFrameCache cache = PoseFrameCache::build(schedule);
    const int ci = grid.rows / 2, cj = grid.cols / 2;
    const Vec3 p0 = grid.point(ci, cj);
    const Vec3 n0 = grid.normal(ci, cj);

    RayOptions opts;
    opts.tol = 1e-12;

    auto center_dev = [&](double gamma) {
        const Mat3 rot = Mat3::rot_z(gamma);
        return deviation_at(cache, rot * p0, rot * n0, opts).deviation;
    };

    // dev(gamma) decreases with slope ~= r_b*cos(beta_b) near the flank;
    // expand a bracket around the first-order estimate.
    const double slope = grid.transverse.base_radius * std::cos(grid.transverse.base_helix_angle);
    const double pitch = 2.0 * kPi / grid.transverse.tooth_count;
    const double d0 = center_dev(0.0);
    if (d0 == 0.0) return 0.0;

    const double gamma_est = d0 / slope;
    double pad = std::max(2.0 * std::abs(d0) / slope, 1e-9);
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    bool bracketed = false;
    while (pad <= 1.5 * pitch) {
        lo = gamma_est - pad;
        hi = gamma_est + pad;
        if (lo < -pitch) lo = -pitch;
        if (hi > pitch) hi = pitch;
        flo = center_dev(lo);
        fhi = center_dev(hi);
        if ((flo > 0.0) != (fhi > 0.0)) {
            bracketed = true;
            break;
        }
        if (lo == -pitch && hi == pitch) break;
        pad *= 4.0;
    }
    if (!bracketed)
        throw std::runtime_error("align_clocking: no zero-deviation clocking within one angular pitch");

    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = center_dev(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ErrorMap error_map(const FlankGrid& grid, const CutterSchedule& schedule,
                   const DerivedHob& hob, double clocking_offset, bool use_full_field) {
    if ((grid.rows - 1) % 4 != 0 || (grid.cols - 1) % 4 != 0)
        throw std::invalid_argument("error_map: grid size must subsample to 5x5 exactly");

    const FlankGrid aligned = rotate_grid(grid, clocking_offset);
    RayOptions opts;
    opts.tol = 1e-12;
    const DeviationField field = simulate_flank(aligned, schedule, hob, opts);

    ErrorMap map;
    map.clocking_offset = clocking_offset;
    const std::vector<int> ri = equidistant_indices(grid.rows, map.sample_rows);
    const std::vector<int> cidx = equidistant_indices(grid.cols, map.sample_cols);

    map.sampled_z.resize(static_cast<size_t>(map.sample_rows));
    map.sampled_u.resize(static_cast<size_t>(map.sample_cols));
    for (int i = 0; i < map.sample_rows; ++i)
        map.sampled_z[static_cast<size_t>(i)] = grid.axial_params[static_cast<size_t>(ri[static_cast<size_t>(i)])];
    for (int j = 0; j < map.sample_cols; ++j)
        map.sampled_u[static_cast<size_t>(j)] = grid.profile_params[static_cast<size_t>(cidx[static_cast<size_t>(j)])];

    map.errors_um.resize(static_cast<size_t>(map.sample_rows) * map.sample_cols);
    double max_abs = 0.0;
    for (int i = 0; i < map.sample_rows; ++i)
        for (int j = 0; j < map.sample_cols; ++j) {
            const double um = field.deviation(ri[static_cast<size_t>(i)], cidx[static_cast<size_t>(j)]) * 1000.0;
            map.errors_um[static_cast<size_t>(i) * map.sample_cols + j] = um;
            max_abs = std::max(max_abs, std::abs(um));
        }
    if (use_full_field) max_abs = field.max_abs_deviation() * 1000.0;
    map.max_abs_error_um = max_abs;

    map.corners[0] = {0, 0};                                    // A
    map.corners[1] = {0, map.sample_cols - 1};                  // B
    map.corners[2] = {map.sample_rows - 1, map.sample_cols - 1};// C
    map.corners[3] = {map.sample_rows - 1, 0};                  // D
    return map;
}

void export_error_surface(const ErrorMap& map, const std::string& path,
                          const std::string& config_hash) {
    std::ofstream csv(path);
    if (!csv) throw std::runtime_error("export_error_surface: cannot write " + path);
    csv << provenance_line(config_hash) << "\n";
    csv << "row,col,u,z_mm,err_um\n";
    for (int i = 0; i < map.sample_rows; ++i)
        for (int j = 0; j < map.sample_cols; ++j)
            csv << i << "," << j << "," << format_sig12(map.sampled_u[static_cast<size_t>(j)]) << ","
                << format_sig12(map.sampled_z[static_cast<size_t>(i)]) << ","
                << format_sig12(map.error(i, j)) << "\n";
    csv.close();

    const char* corner_names = "ABCD";
    std::ofstream side(path + ".json");
    if (!side) throw std::runtime_error("export_error_surface: cannot write " + path + ".json");
    side << "{\n";
    side << "  \"clocking_offset_rad\": " << format_sig12(map.clocking_offset) << ",\n";
    side << "  \"max_abs_error_um\": " << format_sig12(map.max_abs_error_um) << ",\n";
    side << "  \"corners\": {";
    for (int c = 0; c < 4; ++c) {
        side << (c ? ", " : "") << "\"" << corner_names[c] << "\": [" << map.corners[static_cast<size_t>(c)].first
             << ", " << map.corners[static_cast<size_t>(c)].second << "]";
    }
    side << "},\n";
    side << "  \"config_hash\": \"" << config_hash << "\",\n";
    side << "  \"version\": \"" << kArtifactVersion << "\"\n";
    side << "}\n";
}

}  // namespace hobsim
