#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hobsim/kinematics.hpp"

namespace hobsim {

/// A grid point whose normal ray is never reached by any cutter pose.
struct UncutPointError : public std::runtime_error {
    int row = -1;
    int col = -1;
    UncutPointError(const std::string& what, int r, int c)
        : std::runtime_error(what), row(r), col(c) {}
};

struct RayOptions {
    double search_halfwidth = 0.0;  // mm; 0 resolves to 2*m_n
    double tol = 1e-7;              // mm, bisection bracket width
    int coarse_samples = 64;        // uniform bracketing samples along the ray
    bool axial_cull = true;         // bounding-volume pose rejection

    RayOptions with_defaults(double normal_module) const;
};

struct RayDeviation {
    double deviation = 0.0;        // mm, signed (positive = material left)
    std::int64_t pose_index = -1;  // pose achieving the minimum
};

/// Signed deviation field of the as-cut flank over a theoretical grid.
struct DeviationField {
    FlankGrid grid;
    std::vector<double> deviations;            // rows*cols, mm
    std::vector<std::int64_t> limiting_pose;   // rows*cols
    double search_halfwidth = 0.0;
    double tol = 0.0;

    double deviation(int i, int j) const {
        return deviations[static_cast<size_t>(i) * grid.cols + j];
    }
    std::int64_t pose(int i, int j) const {
        return limiting_pose[static_cast<size_t>(i) * grid.cols + j];
    }
    double max_abs_deviation() const;
};

/// Precomputed workpiece->hob frames for every pose of a schedule.
struct PoseFrameCache {
    std::vector<RigidTransform> frames;
    const CutterSchedule* schedule = nullptr;

    static PoseFrameCache build(const CutterSchedule& schedule);
};

/// Smallest ray parameter t in [-halfwidth, +halfwidth] with point + t*normal
/// on the boundary of any pose's thread solid (minimum over poses).
/// Throws UncutPointError when no pose intersects the ray.
RayDeviation deviation_at(const Vec3& point, const Vec3& unit_normal,
                          const CutterSchedule& schedule, const DerivedHob& hob,
                          double search_halfwidth, double tol);
RayDeviation deviation_at(const PoseFrameCache& cache, const Vec3& point,
                          const Vec3& unit_normal, const RayOptions& opts);

DeviationField simulate_flank(const FlankGrid& grid, const CutterSchedule& schedule,
                              const DerivedHob& hob, const RayOptions& opts = {});
DeviationField simulate_flank(const FlankGrid& grid, const CutterSchedule& schedule,
                              const RayOptions& opts = {});

/// One-tooth-pitch polar profile of the cut blank in the transverse plane
/// z = z_plane. theta[i] are workpiece polar angles, radius[i] the remaining
/// material radius along that direction.
struct SliceProfile {
    double z_plane = 0.0;
    std::vector<double> theta;   // rad
    std::vector<double> radius;  // mm

    size_t size() const { return theta.size(); }
    Vec3 point(size_t i) const {
        return {radius[i] * std::cos(theta[i]), radius[i] * std::sin(theta[i]), z_plane};
    }
};

SliceProfile transverse_slice(const CutterSchedule& schedule, double z_plane,
                              int angular_resolution = 720, double tol = 1e-7);

}  // namespace hobsim
