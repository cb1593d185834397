#include "hobsim/hob.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hobsim {

void HobSpec::validate() const {
    if (!(module > 0.0) || !(pitch_diameter > 0.0) || !(addendum > 0.0) || !(whole_depth > 0.0) ||
        !(normal_pitch > 0.0) || !(normal_tooth_thickness > 0.0) || !(tip_corner_radius > 0.0) ||
        !(root_fillet_radius > 0.0) || !(hob_length > 0.0) || !(external_diameter > 0.0) || !(bore > 0.0))
        throw std::invalid_argument("hob: all lengths must be > 0");
    if (!(lead_angle > 0.0 && lead_angle < 10.0))
        throw std::invalid_argument("hob: lead_angle must lie in (0, 10) deg");
    if (whole_depth < addendum)
        throw std::invalid_argument("hob: whole_depth must be >= addendum");
    if (starts < 1) throw std::invalid_argument("hob: starts must be >= 1");
}

namespace {

ThreadProfile build_profile(const HobSpec& spec, double lead_angle_rad, double axial_pitch) {
    ThreadProfile pr;
    pr.pitch_radius = 0.5 * spec.pitch_diameter;
    pr.tip_radius = pr.pitch_radius + spec.addendum;
    pr.root_radius = pr.tip_radius - spec.whole_depth;
    pr.axial_pitch = axial_pitch;
    // Zero-backlash thread: axial thickness at the pitch radius is half the
    // axial pitch, and the axial profile angle follows from the basic-rack
    // normal angle. The catalogue entries are rounded prints of the same
    // relations; using the exact values keeps the thread conjugate to the
    // standard involute flank (see hob_consistency for the comparison).
    pr.half_thickness_pitch = 0.25 * axial_pitch;
    const double alpha_ax =
        std::atan(std::tan(deg_to_rad(spec.normal_profile_angle)) / std::cos(lead_angle_rad));
    pr.tan_profile = std::tan(alpha_ax);
    pr.cos_profile = std::cos(alpha_ax);
    pr.tip_corner_radius = spec.tip_corner_radius;
    pr.root_fillet_radius = spec.root_fillet_radius;

    auto half_thickness = [&pr](double rho) {
        return pr.half_thickness_pitch - (rho - pr.pitch_radius) * pr.tan_profile;
    };

    pr.tip_center_rho = pr.tip_radius - pr.tip_corner_radius;
    pr.w_tip_land_end = half_thickness(pr.tip_center_rho) - pr.tip_corner_radius / pr.cos_profile;
    pr.w_corner_flank = pr.w_tip_land_end + pr.tip_corner_radius * pr.cos_profile;

    pr.root_center_rho = pr.root_radius + pr.root_fillet_radius;
    pr.w_fillet_end = half_thickness(pr.root_center_rho) + pr.root_fillet_radius / pr.cos_profile;
    pr.w_flank_fillet = pr.w_fillet_end - pr.root_fillet_radius * pr.cos_profile;

    if (pr.w_tip_land_end < 0.0)
        throw std::invalid_argument("hob: tip corner radius too large (tip land vanishes)");
    if (pr.w_fillet_end > 0.5 * pr.axial_pitch)
        throw std::invalid_argument("hob: root fillet radius too large (root land vanishes)");
    if (pr.w_corner_flank > pr.w_flank_fillet)
        throw std::invalid_argument("hob: thread flanks too short for the corner roundings");
    return pr;
}

}  // namespace

double ThreadProfile::height(double w) const {
    double wf = std::abs(w - axial_pitch * std::round(w / axial_pitch));
    if (wf <= w_tip_land_end) return tip_radius;
    if (wf < w_corner_flank) {
        const double dw = wf - w_tip_land_end;
        return tip_center_rho + std::sqrt(tip_corner_radius * tip_corner_radius - dw * dw);
    }
    if (wf <= w_flank_fillet)
        return pitch_radius + (half_thickness_pitch - wf) / tan_profile;
    if (wf < w_fillet_end) {
        const double dw = wf - w_fillet_end;
        return root_center_rho - std::sqrt(root_fillet_radius * root_fillet_radius - dw * dw);
    }
    return root_radius;
}

double ThreadProfile::slope(double w) const {
    if (w <= w_tip_land_end) return 0.0;
    if (w < w_corner_flank) {
        const double dw = w - w_tip_land_end;
        return -dw / std::sqrt(tip_corner_radius * tip_corner_radius - dw * dw);
    }
    if (w <= w_flank_fillet) return -1.0 / tan_profile;
    if (w < w_fillet_end) {
        const double dw = w - w_fillet_end;
        return dw / std::sqrt(root_fillet_radius * root_fillet_radius - dw * dw);
    }
    return 0.0;
}

DerivedHob derive_hob(const HobSpec& spec) {
    spec.validate();
    DerivedHob d;
    const double sin_lambda = spec.module * spec.starts / spec.pitch_diameter;
    if (!(sin_lambda > 0.0 && sin_lambda < 1.0))
        throw std::invalid_argument("hob: module*starts/pitch_diameter outside (0,1)");
    const double lambda = std::asin(sin_lambda);

    d.pitch_radius = 0.5 * spec.pitch_diameter;
    d.cutting_tip_radius = d.pitch_radius + spec.addendum;
    d.root_radius = d.cutting_tip_radius - spec.whole_depth;
    d.axial_pitch = kPi * spec.module / std::cos(lambda);
    d.lead = spec.starts * d.axial_pitch;
    d.screw_pitch = (spec.thread_hand == ThreadHand::Right ? 1.0 : -1.0) * d.lead / (2.0 * kPi);
    d.derived_lead_angle = rad_to_deg(lambda);
    d.derived_axial_profile_angle =
        rad_to_deg(std::atan(std::tan(deg_to_rad(spec.normal_profile_angle)) / std::cos(lambda)));
    d.half_length = 0.5 * spec.hob_length;
    d.starts = spec.starts;
    d.hand = spec.thread_hand;
    d.profile = build_profile(spec, lambda, d.axial_pitch);

    if (std::abs(d.derived_lead_angle - spec.lead_angle) > 0.1) {
        std::ostringstream msg;
        msg << "hob: inconsistent spec, derived lead angle " << d.derived_lead_angle
            << " deg vs declared " << spec.lead_angle << " deg";
        throw std::invalid_argument(msg.str());
    }
    return d;
}

HobConsistencyReport hob_consistency(const HobSpec& spec) {
    const DerivedHob d = derive_hob(spec);
    HobConsistencyReport r;
    r.derived_lead_angle = d.derived_lead_angle;
    r.declared_lead_angle = spec.lead_angle;
    r.derived_axial_profile_angle = d.derived_axial_profile_angle;
    r.declared_axial_profile_angle = spec.axial_profile_angle;
    r.derived_axial_pitch = d.axial_pitch;
    r.declared_normal_pitch = spec.normal_pitch;
    return r;
}

std::string HobConsistencyReport::to_string() const {
    std::ostringstream os;
    os << "hob consistency report\n"
       << "  lead angle:          derived " << derived_lead_angle << " deg, declared "
       << declared_lead_angle << " deg (delta " << lead_angle_delta() << ")\n"
       << "  axial profile angle: derived " << derived_axial_profile_angle << " deg, declared "
       << declared_axial_profile_angle << " deg (delta " << profile_angle_delta() << ")\n"
       << "  axial pitch:         derived " << derived_axial_pitch << " mm, declared "
       << declared_normal_pitch << " mm (delta " << pitch_delta() << ")\n";
    return os.str();
}

double hob_section_membership(const DerivedHob& hob, double w, double rho) {
    return rho - hob.profile.height(w);
}

double hob_signed_membership(const DerivedHob& hob, const Vec3& p) {
    const double rho = std::sqrt(p.x * p.x + p.y * p.y);
    const double theta = std::atan2(p.y, p.x);
    // Reduced axial coordinate; branch jumps of atan2 shift w by a whole
    // number of axial pitches, which the fold in height() absorbs.
    const double w = p.z - hob.screw_pitch * theta;
    return rho - hob.profile.height(w);
}

}  // namespace hobsim
