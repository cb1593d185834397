#pragma once

#include <cstdint>
#include <vector>

#include "hobsim/gear.hpp"
#include "hobsim/hob.hpp"

namespace hobsim {

/// Machine configuration for one hobbing pass. NaN fields resolve to the
/// conventional defaults (zero-shift center distance, same-hand installation
/// angle, 3*m_n approach/overrun).
struct MachineSetup {
    GearSpec gear;
    HobSpec hob;
    double center_distance = nan_default();     // mm
    double installation_angle = nan_default();  // deg, tilt of hob axis from the transverse plane
    double feed_per_rev = 1.0;                  // mm of axial feed per workpiece revolution
    double interval_angle = 2.0;                // deg of workpiece rotation per step
    double approach = nan_default();            // mm below the z=0 face
    double overrun = nan_default();             // mm beyond the z=b face
    std::int64_t pose_cap = 10'000'000;

    static double nan_default();
    MachineSetup resolved() const;  // fills the NaN fields, validates
};

/// Installation angle for a gear/hob pairing: beta - lambda for same hands,
/// beta + lambda for opposite hands (degrees).
double installation_angle(const GearSpec& gear, const HobSpec& hob);

struct CutterPose {
    double gear_angle = 0.0;         // rad, workpiece rotation
    double hob_angle = 0.0;          // rad, hob rotation about its own axis
    double hob_axial_position = 0.0; // mm along the workpiece axis
    std::int64_t index = 0;
};

struct CutterSchedule {
    MachineSetup setup;           // resolved copy
    TransverseParams transverse;  // of setup.gear
    DerivedHob hob;
    double gear_step = 0.0;       // rad per pose
    double axial_step = 0.0;      // mm per pose
    std::int64_t steps_per_rev = 0;
    std::int64_t revolutions = 0;
    std::vector<CutterPose> poses;

    double hob_angle_for(double gear_angle, double axial_position) const;
};

CutterSchedule build_schedule(const MachineSetup& setup);

/// Rotates the cut pattern: adds gamma to every pose's gear angle while
/// leaving the hob coupling untouched (the as-cut surface in the workpiece
/// frame rotates by -gamma).
CutterSchedule pre_rotate_schedule(const CutterSchedule& schedule, double gamma);

/// Workpiece-frame -> hob-frame rigid map for one pose.
RigidTransform workpiece_to_hob_transform(const CutterSchedule& schedule, const CutterPose& pose);

Vec3 workpiece_to_hob(const CutterPose& pose, const CutterSchedule& schedule, const Vec3& p);
Vec3 hob_to_workpiece(const CutterPose& pose, const CutterSchedule& schedule, const Vec3& p);

}  // namespace hobsim
