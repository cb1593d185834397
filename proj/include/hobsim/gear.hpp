#pragma once

#include <limits>
#include <vector>

#include "hobsim/geometry.hpp"

namespace hobsim {

/// Workpiece definition. Angles in degrees, lengths in mm.
/// helix_angle is signed: positive = right-hand helix.
struct GearSpec {
    double normal_module = 2.0;
    double normal_pressure_angle = 20.0;
    int tooth_count = 30;
    double helix_angle = 15.0;
    double face_width = 30.0;
    double addendum_coeff = 1.0;
    double dedendum_coeff = 1.25;

    void validate() const;  // throws std::invalid_argument on bad fields
};

/// Transverse-plane geometry derived from a GearSpec.
///
/// lead is the axial advance per full flank twist, signed with the hand
/// (positive = right-hand); spur gears carry the +infinity sentinel and the
/// twist rate twist_per_mm = 2*pi/lead degenerates cleanly to zero.
struct TransverseParams {
    double transverse_module = 0.0;         // mm
    double transverse_pressure_angle = 0.0; // deg
    double pitch_radius = 0.0;              // mm
    double base_radius = 0.0;               // mm
    double lead = std::numeric_limits<double>::infinity(); // mm, signed
    double tip_radius = 0.0;                // mm
    double root_radius = 0.0;               // mm

    // Derived helpers carried along with the record.
    double twist_per_mm = 0.0;      // rad of flank rotation per mm of axial travel
    double root_form_radius = 0.0;  // mm, start of the measurable involute window
    double base_helix_angle = 0.0;  // rad
    double flank_base_angle = 0.0;  // rad: base-circle angle of the u=0 flank origin
    int tooth_count = 0;
    double face_width = 0.0;        // mm

    double roll_at_radius(double radius) const;  // u such that r_b*sqrt(1+u^2) = radius
    double radius_at_roll(double u) const { return base_radius * std::sqrt(1.0 + u * u); }
};

/// Theoretical flank sample grid: rows indexed by axial position z,
/// columns by involute roll parameter u. Normals point out of the tooth
/// material.
struct FlankGrid {
    int rows = 0;
    int cols = 0;
    std::vector<Vec3> points;            // rows*cols, row-major
    std::vector<Vec3> normals;           // rows*cols, row-major
    std::vector<double> profile_params;  // cols entries (u)
    std::vector<double> axial_params;    // rows entries (z, mm)
    TransverseParams transverse;

    const Vec3& point(int i, int j) const { return points[static_cast<size_t>(i) * cols + j]; }
    const Vec3& normal(int i, int j) const { return normals[static_cast<size_t>(i) * cols + j]; }
    size_t size() const { return points.size(); }
};

TransverseParams derive_transverse(const GearSpec& spec);

/// Point on the involute helicoid at roll parameter u >= 0 and screw
/// parameter theta (flank twist angle about the gear axis). For spur gears
/// only theta == 0 is admissible (infinite lead).
Vec3 flank_point(const TransverseParams& tp, double u, double theta);

/// Same surface parametrized by (u, axial position z); total for all helix
/// angles including spur.
Vec3 flank_point_at(const TransverseParams& tp, double u, double z);

/// Unit outward normal at (u, theta); u must be strictly positive.
Vec3 flank_normal(const TransverseParams& tp, double u, double theta);
Vec3 flank_normal_at(const TransverseParams& tp, double u, double z);

/// Recover (u, z) from a point assumed to lie on the flank. Returns false if
/// the point's radius is below the base cylinder.
bool invert_flank_point(const TransverseParams& tp, const Vec3& p, double& u, double& z);

FlankGrid build_grid(const GearSpec& spec, int rows = 25, int cols = 25,
                     double profile_margin = 0.05, double axial_margin = 0.05);

/// Equidistant sample indices (e.g. {0,6,12,18,24} for n=25, k=5).
std::vector<int> equidistant_indices(int n, int k);

}  // namespace hobsim
