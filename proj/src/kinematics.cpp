#include "hobsim/kinematics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hobsim {

double MachineSetup::nan_default() { return std::numeric_limits<double>::quiet_NaN(); }

double installation_angle(const GearSpec& gear, const HobSpec& hob) {
    const DerivedHob d = derive_hob(hob);
    const double hand = (hob.thread_hand == ThreadHand::Right) ? 1.0 : -1.0;
    return gear.helix_angle - hand * d.derived_lead_angle;
}

MachineSetup MachineSetup::resolved() const {
    MachineSetup r = *this;
    r.gear.validate();
    r.hob.validate();
    if (std::abs(r.gear.normal_module - r.hob.module) > 1e-9)
        throw std::invalid_argument("setup: hob module must equal the gear normal module");
    const TransverseParams tp = derive_transverse(r.gear);
    const DerivedHob hb = derive_hob(r.hob);
    if (std::isnan(r.center_distance)) r.center_distance = tp.pitch_radius + hb.pitch_radius;
    if (std::isnan(r.installation_angle)) r.installation_angle = hobsim::installation_angle(r.gear, r.hob);
    if (std::isnan(r.approach)) r.approach = 3.0 * r.gear.normal_module;
    if (std::isnan(r.overrun)) r.overrun = 3.0 * r.gear.normal_module;
    if (!(r.center_distance > 0.0)) throw std::invalid_argument("setup: center_distance must be > 0");
    if (!(r.feed_per_rev > 0.0)) throw std::invalid_argument("setup: feed_per_rev must be > 0");
    if (!(r.interval_angle > 0.0)) throw std::invalid_argument("setup: interval_angle must be > 0");
    if (r.approach < 0.0 || r.overrun < 0.0)
        throw std::invalid_argument("setup: approach/overrun must be >= 0");
    return r;
}

double CutterSchedule::hob_angle_for(double gear_angle, double axial_position) const {
    // Exact generating constraint, derived so that a thread rib center plane
    // coincides with a tooth-space center plane at every instant:
    //   phi_h = -s * (z*phi_g + (2 sin(beta)/m)*z_a + pi) / starts
    // with s = +1 for a right-hand thread. The pi term phases the rib onto
    // the tooth space of the flank centered at polar angle 0.
    const double hand = (hob.hand == ThreadHand::Right) ? 1.0 : -1.0;
    const double m = setup.gear.normal_module;
    const double sin_beta = std::sin(deg_to_rad(setup.gear.helix_angle));
    const double z = static_cast<double>(setup.gear.tooth_count);
    return -hand * (z * gear_angle + (2.0 * sin_beta / m) * axial_position + kPi) /
           static_cast<double>(hob.starts);
}

CutterSchedule build_schedule(const MachineSetup& setup_in) {
    CutterSchedule s;
    s.setup = setup_in.resolved();
    s.transverse = derive_transverse(s.setup.gear);
    s.hob = derive_hob(s.setup.hob);

    const double steps_real = 360.0 / s.setup.interval_angle;
    s.steps_per_rev = static_cast<std::int64_t>(std::llround(steps_real));
    if (s.steps_per_rev < 1 || std::abs(steps_real - static_cast<double>(s.steps_per_rev)) > 1e-9)
        throw std::invalid_argument("schedule: interval_angle must divide 360 evenly");

    const double travel = s.setup.approach + s.setup.gear.face_width + s.setup.overrun;
    s.revolutions = static_cast<std::int64_t>(std::ceil(travel / s.setup.feed_per_rev - 1e-9));
    const std::int64_t count = s.revolutions * s.steps_per_rev;
    if (count > s.setup.pose_cap)
        throw std::invalid_argument("schedule: pose count exceeds the configured cap");

    s.gear_step = s.setup.interval_angle * (kPi / 180.0);
    s.axial_step = s.setup.feed_per_rev * (s.setup.interval_angle / 360.0);

    s.poses.resize(static_cast<size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        CutterPose& p = s.poses[static_cast<size_t>(k)];
        p.index = k;
        p.gear_angle = static_cast<double>(k) * s.gear_step;
        p.hob_axial_position = -s.setup.approach + static_cast<double>(k) * s.axial_step;
        p.hob_angle = s.hob_angle_for(p.gear_angle, p.hob_axial_position);
    }
    return s;
}

CutterSchedule pre_rotate_schedule(const CutterSchedule& schedule, double gamma) {
    CutterSchedule s = schedule;
    for (CutterPose& p : s.poses) p.gear_angle += gamma;
    return s;
}

RigidTransform workpiece_to_hob_transform(const CutterSchedule& schedule, const CutterPose& pose) {
    const double sigma = deg_to_rad(schedule.setup.installation_angle);
    const Vec3 axis{0.0, std::cos(sigma), -std::sin(sigma)};
    const Vec3 e1{-1.0, 0.0, 0.0};
    const Vec3 e2 = axis.cross(e1);

    const Mat3 spin = Mat3::rot_axis(axis, pose.hob_angle);
    const Vec3 b1 = spin * e1;
    const Vec3 b2 = spin * e2;

    // Hob-frame basis as rows = transpose of [b1 b2 axis].
    Mat3 basis_t;
    basis_t.m[0][0] = b1.x; basis_t.m[0][1] = b1.y; basis_t.m[0][2] = b1.z;
    basis_t.m[1][0] = b2.x; basis_t.m[1][1] = b2.y; basis_t.m[1][2] = b2.z;
    basis_t.m[2][0] = axis.x; basis_t.m[2][1] = axis.y; basis_t.m[2][2] = axis.z;

    const Vec3 origin{schedule.setup.center_distance, 0.0, pose.hob_axial_position};

    RigidTransform t;
    t.rot = basis_t * Mat3::rot_z(pose.gear_angle);
    t.trans = -(basis_t * origin);
    return t;
}

Vec3 workpiece_to_hob(const CutterPose& pose, const CutterSchedule& schedule, const Vec3& p) {
    return workpiece_to_hob_transform(schedule, pose).apply(p);
}

Vec3 hob_to_workpiece(const CutterPose& pose, const CutterSchedule& schedule, const Vec3& p) {
    return workpiece_to_hob_transform(schedule, pose).inverse().apply(p);
}

}  // namespace hobsim
