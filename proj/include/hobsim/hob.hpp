#pragma once

#include <string>

#include "hobsim/geometry.hpp"

namespace hobsim {

enum class ThreadHand { Right, Left };

/// Cutter definition (catalogue values). Angles in decimal degrees,
/// lengths in mm.
struct HobSpec {
    double module = 2.0;
    double pitch_diameter = 65.06;
    double addendum = 2.5;
    double whole_depth = 5.0;
    double normal_pitch = 6.286;
    double normal_tooth_thickness = 3.143;
    double axial_profile_angle = 20.0 + 1.0 / 60.0;  // 20deg 1min
    double lead_angle = 1.0 + 46.0 / 60.0;           // 1deg 46min
    ThreadHand thread_hand = ThreadHand::Right;
    double tip_corner_radius = 0.6;
    double root_fillet_radius = 0.6;
    int starts = 1;
    double hob_length = 50.0;
    double external_diameter = 71.0;
    double bore = 27.0;
    double normal_profile_angle = 20.0;  // basic-rack angle the axial profile derives from

    void validate() const;
};

/// Axial cross-section profile of the thread in reduced coordinates
/// (w = axial offset from a rib center, folded modulo the axial pitch;
/// rho = radius from the hob axis). The profile is the single-valued
/// height function rho = h(|w|): trapezoid flanks, a rounded tip corner
/// and a root fillet band.
struct ThreadProfile {
    double pitch_radius = 0.0;
    double tip_radius = 0.0;
    double root_radius = 0.0;
    double axial_pitch = 0.0;
    double half_thickness_pitch = 0.0;  // s_ax/2 at the pitch radius
    double tan_profile = 0.0;           // tan of the axial profile angle
    double cos_profile = 0.0;
    double tip_corner_radius = 0.0;
    double root_fillet_radius = 0.0;
    // Piece boundaries along |w| (tip land end, corner/flank tangency,
    // flank/fillet tangency, fillet/root-land tangency).
    double w_tip_land_end = 0.0;
    double w_corner_flank = 0.0;
    double w_flank_fillet = 0.0;
    double w_fillet_end = 0.0;
    double tip_center_rho = 0.0;
    double root_center_rho = 0.0;

    double height(double w) const;  // rho = h(w), periodic and even
    double slope(double w) const;   // dh/dw on the piece containing w (w in [0, P/2])
};

struct DerivedHob {
    double pitch_radius = 0.0;
    double cutting_tip_radius = 0.0;
    double root_radius = 0.0;
    double axial_pitch = 0.0;       // mm
    double lead = 0.0;              // starts * axial_pitch, mm (magnitude)
    double screw_pitch = 0.0;       // signed lead/(2*pi): + for right-hand
    double derived_lead_angle = 0.0;          // deg
    double derived_axial_profile_angle = 0.0; // deg
    double half_length = 0.0;       // mm, thread solid truncation
    int starts = 1;
    ThreadHand hand = ThreadHand::Right;
    ThreadProfile profile;
};

/// Derived-vs-declared comparison for the catalogue values.
struct HobConsistencyReport {
    double derived_lead_angle = 0.0;     // deg
    double declared_lead_angle = 0.0;    // deg
    double derived_axial_profile_angle = 0.0;  // deg
    double declared_axial_profile_angle = 0.0; // deg
    double derived_axial_pitch = 0.0;    // mm
    double declared_normal_pitch = 0.0;  // mm
    double lead_angle_delta() const { return derived_lead_angle - declared_lead_angle; }
    double profile_angle_delta() const { return derived_axial_profile_angle - declared_axial_profile_angle; }
    double pitch_delta() const { return derived_axial_pitch - declared_normal_pitch; }
    std::string to_string() const;
};

DerivedHob derive_hob(const HobSpec& spec);
HobConsistencyReport hob_consistency(const HobSpec& spec);

/// Signed membership of a point (hob frame: axis = z) in the thread solid:
/// negative strictly inside, positive outside, zero on the boundary.
/// Continuous and sign-correct; not a metric distance. The thread is the
/// full helical field, so the value is exactly screw-periodic; the finite
/// hob length (half_length) is applied by the cutting queries, which
/// intersect the field's negative set with the |z| <= half_length slab.
double hob_signed_membership(const DerivedHob& hob, const Vec3& p);

/// Membership of a point given directly in reduced axial-section
/// coordinates (w, rho); ignores the length truncation.
double hob_section_membership(const DerivedHob& hob, double w, double rho);

}  // namespace hobsim
