#include "hobsim/gear.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hobsim {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

void GearSpec::validate() const {
    if (!(normal_module > 0.0)) throw std::invalid_argument("gear: normal_module must be > 0");
    if (!(normal_pressure_angle > 0.0 && normal_pressure_angle < 45.0))
        throw std::invalid_argument("gear: normal_pressure_angle out of range");
    if (tooth_count < 6) throw std::invalid_argument("gear: tooth_count must be >= 6");
    if (!(std::abs(helix_angle) < 45.0)) throw std::invalid_argument("gear: |helix_angle| must be < 45 deg");
    if (!(face_width > 0.0)) throw std::invalid_argument("gear: face_width must be > 0");
    if (!(addendum_coeff > 0.0) || !(dedendum_coeff > 0.0))
        throw std::invalid_argument("gear: addendum/dedendum coefficients must be > 0");
}

double TransverseParams::roll_at_radius(double radius) const {
    const double ratio = radius / base_radius;
    if (ratio < 1.0) throw std::domain_error("roll_at_radius: radius below base cylinder");
    return std::sqrt(ratio * ratio - 1.0);
}

namespace {

// Start of the involute actually produced by a rack-type tool with standard
// proportions (tool addendum = dedendum_coeff*m_n, tip rounding 0.38*m_n).
// For undercut workpieces the rack formula goes nonpositive; clamp to a small
// positive roll so the window stays usable (the low rows then simply sit in
// the undercut region).
double root_form_roll(const GearSpec& spec, const TransverseParams& tp) {
    const double alpha_n = deg_to_rad(spec.normal_pressure_angle);
    const double alpha_t = deg_to_rad(tp.transverse_pressure_angle);
    const double tool_addendum = spec.dedendum_coeff * spec.normal_module;
    const double tool_tip_radius = 0.38 * spec.normal_module;
    const double depth = tool_addendum - tool_tip_radius * (1.0 - std::sin(alpha_n));
    const double roll_len = tp.pitch_radius * std::sin(alpha_t) - depth / std::sin(alpha_t);
    const double u_raw = roll_len / tp.base_radius;
    const double u_floor = 0.05 * tp.roll_at_radius(tp.tip_radius);
    return std::max(u_raw, u_floor);
}

}  // namespace

TransverseParams derive_transverse(const GearSpec& spec) {
    spec.validate();
    TransverseParams tp;
    const double beta = deg_to_rad(spec.helix_angle);
    const double alpha_n = deg_to_rad(spec.normal_pressure_angle);

    tp.transverse_module = spec.normal_module / std::cos(beta);
    const double alpha_t = std::atan(std::tan(alpha_n) / std::cos(beta));
    tp.transverse_pressure_angle = rad_to_deg(alpha_t);
    tp.pitch_radius = 0.5 * tp.transverse_module * spec.tooth_count;
    tp.base_radius = tp.pitch_radius * std::cos(alpha_t);
    tp.tip_radius = tp.pitch_radius + spec.addendum_coeff * spec.normal_module;
    tp.root_radius = tp.pitch_radius - spec.dedendum_coeff * spec.normal_module;
    tp.tooth_count = spec.tooth_count;
    tp.face_width = spec.face_width;

    if (spec.helix_angle == 0.0) {
        tp.lead = std::numeric_limits<double>::infinity();
        tp.twist_per_mm = 0.0;
    } else {
        tp.twist_per_mm = std::tan(beta) / tp.pitch_radius;  // signed with the hand
        tp.lead = 2.0 * kPi / tp.twist_per_mm;
    }
    tp.base_helix_angle = std::atan(std::tan(beta) * std::cos(alpha_t));

    // Flank of the tooth centered at polar angle 0 in the z=0 plane, on the
    // counterclockwise side. Half angular tooth thickness at pitch is
    // pi/(2z) (zero-backlash generation); the involute function positions
    // the base-circle origin of the flank.
    const double inv_alpha_t = std::tan(alpha_t) - alpha_t;
    tp.flank_base_angle = kPi / (2.0 * spec.tooth_count) + inv_alpha_t;

    tp.root_form_radius = tp.radius_at_roll(root_form_roll(spec, tp));
    if (!(tp.base_radius < tp.pitch_radius && tp.pitch_radius < tp.tip_radius))
        throw std::invalid_argument("gear: derived radii are not ordered base < pitch < tip");
    if (!(tp.root_form_radius < tp.tip_radius))
        throw std::invalid_argument("gear: degenerate profile window (root-form radius beyond tip)");
    return tp;
}

Vec3 flank_point_at(const TransverseParams& tp, double u, double z) {
    if (u < 0.0) throw std::domain_error("flank_point: u must be >= 0");
    // 2D involute of the base circle, unwinding clockwise so that the tooth
    // thins with increasing radius on the counterclockwise flank.
    const double psi = tp.flank_base_angle - u + tp.twist_per_mm * z;
    const double c = std::cos(psi), s = std::sin(psi);
    const double rb = tp.base_radius;
    return {rb * (c - u * s), rb * (s + u * c), z};
}

Vec3 flank_point(const TransverseParams& tp, double u, double theta) {
    if (theta == 0.0) return flank_point_at(tp, u, 0.0);
    if (!std::isfinite(tp.lead))
        throw std::domain_error("flank_point: spur flank has no screw parameter; use flank_point_at");
    return flank_point_at(tp, u, theta * tp.lead / (2.0 * kPi));
}

Vec3 flank_normal_at(const TransverseParams& tp, double u, double z) {
    if (!(u > 0.0)) throw std::domain_error("flank_normal: undefined at the involute cusp u = 0");
    const double psi = tp.flank_base_angle - u + tp.twist_per_mm * z;
    const double k_rb = tp.twist_per_mm * tp.base_radius;
    const double inv_len = 1.0 / std::sqrt(1.0 + k_rb * k_rb);
    // Outward normal of the counterclockwise flank; tangent to the base
    // cylinder, constant inclination to the transverse plane (base helix).
    return Vec3{-std::sin(psi), std::cos(psi), -k_rb} * inv_len;
}

Vec3 flank_normal(const TransverseParams& tp, double u, double theta) {
    if (theta == 0.0) return flank_normal_at(tp, u, 0.0);
    if (!std::isfinite(tp.lead))
        throw std::domain_error("flank_normal: spur flank has no screw parameter; use flank_normal_at");
    return flank_normal_at(tp, u, theta * tp.lead / (2.0 * kPi));
}

bool invert_flank_point(const TransverseParams& tp, const Vec3& p, double& u, double& z) {
    const double radius = std::sqrt(p.x * p.x + p.y * p.y);
    const double ratio = radius / tp.base_radius;
    if (ratio < 1.0) return false;
    u = std::sqrt(ratio * ratio - 1.0);
    z = p.z;
    return true;
}

std::vector<int> equidistant_indices(int n, int k) {
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
        idx[static_cast<size_t>(i)] = static_cast<int>(std::lround(static_cast<double>(i) * (n - 1) / (k - 1)));
    return idx;
}

FlankGrid build_grid(const GearSpec& spec, int rows, int cols,
                     double profile_margin, double axial_margin) {
    if (rows < 2 || cols < 2) throw std::invalid_argument("build_grid: rows and cols must be >= 2");
    if (profile_margin < 0.0 || profile_margin > 0.2 || axial_margin < 0.0 || axial_margin > 0.2)
        throw std::invalid_argument("build_grid: margins must lie in [0, 0.2]");

    FlankGrid grid;
    grid.transverse = derive_transverse(spec);
    const TransverseParams& tp = grid.transverse;

    const double u_lo = tp.roll_at_radius(tp.root_form_radius) * (1.0 + profile_margin);
    const double u_hi = tp.roll_at_radius(tp.tip_radius) * (1.0 - profile_margin);
    const double z_lo = axial_margin * spec.face_width;
    const double z_hi = (1.0 - axial_margin) * spec.face_width;
    if (!(u_lo < u_hi) || !(z_lo < z_hi)) {
        std::ostringstream msg;
        msg << "build_grid: empty measurement window (u: [" << u_lo << ", " << u_hi << "])";
        throw std::invalid_argument(msg.str());
    }

    grid.rows = rows;
    grid.cols = cols;
    grid.profile_params.resize(static_cast<size_t>(cols));
    grid.axial_params.resize(static_cast<size_t>(rows));
    for (int j = 0; j < cols; ++j)
        grid.profile_params[static_cast<size_t>(j)] = u_lo + (u_hi - u_lo) * j / (cols - 1);
    for (int i = 0; i < rows; ++i)
        grid.axial_params[static_cast<size_t>(i)] = z_lo + (z_hi - z_lo) * i / (rows - 1);

    grid.points.resize(grid.size());
    grid.normals.reserve(grid.points.size());
    grid.points.clear();
    for (int i = 0; i < rows; ++i) {
        const double z = grid.axial_params[static_cast<size_t>(i)];
        for (int j = 0; j < cols; ++j) {
            const double u = grid.profile_params[static_cast<size_t>(j)];
            grid.points.push_back(flank_point_at(tp, u, z));
            grid.normals.push_back(flank_normal_at(tp, u, z));
        }
    }
    return grid;
}

}  // namespace hobsim
