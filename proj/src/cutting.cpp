#include "hobsim/cutting.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

namespace hobsim {

RayOptions RayOptions::with_defaults(double normal_module) const {
    RayOptions r = *this;
    if (r.search_halfwidth <= 0.0) r.search_halfwidth = 2.0 * normal_module;
    if (r.tol <= 0.0) r.tol = 1e-7;
    if (r.coarse_samples < 8) r.coarse_samples = 64;
    return r;
}

double DeviationField::max_abs_deviation() const {
    double m = 0.0;
    for (double d : deviations) m = std::max(m, std::abs(d));
    return m;
}

PoseFrameCache PoseFrameCache::build(const CutterSchedule& schedule) {
    PoseFrameCache cache;
    cache.schedule = &schedule;
    cache.frames.reserve(schedule.poses.size());
    for (const CutterPose& pose : schedule.poses)
        cache.frames.push_back(workpiece_to_hob_transform(schedule, pose));
    return cache;
}

namespace {

// Pose rejection: the thread solid lies inside the cylinder rho <= tip_radius
// intersected with the slab |z| <= half_length (hob frame). A ray segment
// entirely outside either bound has positive membership throughout, so
// skipping the pose cannot change the minimum.
bool segment_misses_solid(const DerivedHob& hob, const Vec3& h0, const Vec3& dir, double halfwidth) {
    const double dz = halfwidth * std::abs(dir.z);
    if (h0.z - dz > hob.half_length || h0.z + dz < -hob.half_length) return true;

    // 2D distance from the origin to the xy-projection of the segment.
    const double ax = h0.x - halfwidth * dir.x, ay = h0.y - halfwidth * dir.y;
    const double dx = 2.0 * halfwidth * dir.x, dy = 2.0 * halfwidth * dir.y;
    const double dd = dx * dx + dy * dy;
    double t = 0.0;
    if (dd > 0.0) t = std::clamp(-(ax * dx + ay * dy) / dd, 0.0, 1.0);
    const double cx = ax + t * dx, cy = ay + t * dy;
    const double tip = hob.cutting_tip_radius;
    return cx * cx + cy * cy > tip * tip;
}

// Membership of the truncated solid: thread field intersected with the
// |z| <= half_length slab.
double membership_on_ray(const DerivedHob& hob, const Vec3& h0, const Vec3& dir, double t) {
    const Vec3 p{h0.x + t * dir.x, h0.y + t * dir.y, h0.z + t * dir.z};
    return std::max(hob_signed_membership(hob, p), std::abs(p.z) - hob.half_length);
}

constexpr double kNoCrossing = std::numeric_limits<double>::infinity();

// One pose of the ray query: start point and direction mapped into the hob
// frame, original pose index.
struct ActivePose {
    Vec3 h0;
    Vec3 dir;
    std::int64_t index;
};

// Removed-material membership of the pose union at ray parameter t:
// min over poses of the truncated-solid membership. Early-exits on the first
// negative pose (sign queries only need that); *neg_pose reports the lowest
// pose index found negative.
double union_membership(const DerivedHob& hob, const std::vector<ActivePose>& poses, double t,
                        std::int64_t* neg_pose = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (const ActivePose& ap : poses) {
        const double m = membership_on_ray(hob, ap.h0, ap.dir, t);
        if (m < best) best = m;
        // Boundary ties (m == 0) count as entered, matching the <= 0 entry
        // tests downstream.
        if (m <= 0.0) {
            if (neg_pose) *neg_pose = ap.index;
            return m;
        }
    }
    if (neg_pose) *neg_pose = -1;
    return best;
}

double bisect_union(const DerivedHob& hob, const std::vector<ActivePose>& poses,
                    double a, double b, double tol, std::int64_t* limiting) {
    // M(a) > 0, M(b) <= 0; shrink to tol keeping that orientation.
    std::int64_t pose_at_b = -1;
    union_membership(hob, poses, b, &pose_at_b);
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        std::int64_t pose_mid = -1;
        const double fm = union_membership(hob, poses, mid, &pose_mid);
        if (fm <= 0.0) {
            b = mid;
            pose_at_b = pose_mid;
        } else {
            a = mid;
        }
    }
    if (limiting) *limiting = pose_at_b;
    return 0.5 * (a + b);
}

// First entry of the ray into the removed-material union within [t_lo, t_hi],
// skipping a removed stretch that already covers the window start (the ray
// can pierce the back of the tooth into the neighboring gullet). Uniform
// sampling plus bisection; sample pairs that stay positive but dip close to
// zero are re-scanned at 8x resolution because the profile roundings can
// graze the ray between samples. Returns t_lo when the whole window is
// removed, +infinity when the union is never entered.
double first_union_entry(const DerivedHob& hob, const std::vector<ActivePose>& poses,
                         double t_lo, double t_hi, int samples, double tol,
                         std::int64_t* limiting) {
    if (poses.empty()) return kNoCrossing;
    const double spacing = (t_hi - t_lo) / samples;
    const double guard = 4.0 * spacing;  // conservative membership slope bound

    int i = 0;
    double t_prev = t_lo;
    double m_prev = union_membership(hob, poses, t_lo);
    if (m_prev <= 0.0) {
        // Seek the end of the initial removed stretch.
        while (++i <= samples) {
            t_prev = (i == samples) ? t_hi : t_lo + i * spacing;
            m_prev = union_membership(hob, poses, t_prev);
            if (m_prev > 0.0) break;
        }
        if (m_prev <= 0.0) {
            if (limiting) union_membership(hob, poses, t_lo, limiting);
            return t_lo;  // removed throughout the window
        }
    }

    while (++i <= samples) {
        const double t = (i == samples) ? t_hi : t_lo + i * spacing;
        const double m = union_membership(hob, poses, t);
        if (m <= 0.0) return bisect_union(hob, poses, t_prev, t, tol, limiting);
        if (std::min(m_prev, m) < guard) {
            double s_prev = t_prev;
            for (int k = 1; k <= 8; ++k) {
                const double s = t_prev + (t - t_prev) * k / 8.0;
                const double ms = union_membership(hob, poses, s);
                if (ms <= 0.0) return bisect_union(hob, poses, s_prev, s, tol, limiting);
                s_prev = s;
            }
        }
        t_prev = t;
        m_prev = m;
    }
    return kNoCrossing;
}

void check_same_gear(const FlankGrid& grid, const CutterSchedule& schedule) {
    const GearSpec& a = schedule.setup.gear;
    if (grid.transverse.tooth_count != a.tooth_count ||
        std::abs(grid.transverse.pitch_radius - schedule.transverse.pitch_radius) > 1e-9 ||
        std::abs(grid.transverse.face_width - a.face_width) > 1e-9)
        throw std::invalid_argument("simulate_flank: grid and schedule use different gears");
}

}  // namespace

RayDeviation deviation_at(const PoseFrameCache& cache, const Vec3& point,
                          const Vec3& unit_normal, const RayOptions& opts_in) {
    const CutterSchedule& schedule = *cache.schedule;
    const DerivedHob& hob = schedule.hob;
    const RayOptions opts = opts_in.with_defaults(schedule.setup.gear.normal_module);
    const double hw = opts.search_halfwidth;

    std::vector<ActivePose> active;
    for (size_t k = 0; k < cache.frames.size(); ++k) {
        const RigidTransform& f = cache.frames[k];
        const Vec3 h0 = f.apply(point);
        const Vec3 dir = f.apply_vector(unit_normal);
        if (opts.axial_cull && segment_misses_solid(hob, h0, dir, hw)) continue;
        active.push_back({h0, dir, static_cast<std::int64_t>(k)});
    }

    std::int64_t limiting = -1;
    const double t = first_union_entry(hob, active, -hw, hw, opts.coarse_samples, opts.tol, &limiting);
    if (t == kNoCrossing || limiting < 0)
        throw UncutPointError("deviation_at: no cutter pose intersects the normal ray", -1, -1);
    return {t, limiting};
}

RayDeviation deviation_at(const Vec3& point, const Vec3& unit_normal,
                          const CutterSchedule& schedule, const DerivedHob& hob,
                          double search_halfwidth, double tol) {
    (void)hob;  // the schedule carries the same derived cutter
    const PoseFrameCache cache = PoseFrameCache::build(schedule);
    RayOptions opts;
    opts.search_halfwidth = search_halfwidth;
    opts.tol = tol;
    return deviation_at(cache, point, unit_normal, opts);
}

DeviationField simulate_flank(const FlankGrid& grid, const CutterSchedule& schedule,
                              const DerivedHob& hob, const RayOptions& opts_in) {
    (void)hob;
    return simulate_flank(grid, schedule, opts_in);
}

DeviationField simulate_flank(const FlankGrid& grid, const CutterSchedule& schedule,
                              const RayOptions& opts_in) {
    check_same_gear(grid, schedule);
    const RayOptions opts = opts_in.with_defaults(schedule.setup.gear.normal_module);
    const PoseFrameCache cache = PoseFrameCache::build(schedule);

    DeviationField field;
    field.grid = grid;
    field.search_halfwidth = opts.search_halfwidth;
    field.tol = opts.tol;
    field.deviations.resize(grid.size());
    field.limiting_pose.resize(grid.size());

    for (int i = 0; i < grid.rows; ++i) {
        for (int j = 0; j < grid.cols; ++j) {
            const size_t idx = static_cast<size_t>(i) * grid.cols + j;
            try {
                const RayDeviation r = deviation_at(cache, grid.points[idx], grid.normals[idx], opts);
                field.deviations[idx] = r.deviation;
                field.limiting_pose[idx] = r.pose_index;
            } catch (const UncutPointError&) {
                std::ostringstream msg;
                msg << "simulate_flank: grid point (" << i << ", " << j << ") is never cut";
                throw UncutPointError(msg.str(), i, j);
            }
        }
    }
    return field;
}

SliceProfile transverse_slice(const CutterSchedule& schedule, double z_plane,
                              int angular_resolution, double tol) {
    if (z_plane < 0.0 || z_plane > schedule.setup.gear.face_width)
        throw std::invalid_argument("transverse_slice: z_plane outside the blank");
    if (angular_resolution < 720)
        throw std::invalid_argument("transverse_slice: need >= 720 samples per tooth pitch");

    const TransverseParams& tp = schedule.transverse;
    const DerivedHob& hob = schedule.hob;
    const PoseFrameCache cache = PoseFrameCache::build(schedule);

    const double pitch = 2.0 * kPi / tp.tooth_count;
    const double center = tp.twist_per_mm * z_plane;  // keep tooth 0 centered at any height
    const double blank = tp.tip_radius;
    const double r_lo = std::max(0.1, schedule.setup.center_distance - hob.cutting_tip_radius - 0.25);
    const double step = 0.05;
    const int n_radial = std::max(8, static_cast<int>(std::ceil((blank - r_lo) / step)));

    SliceProfile out;
    out.z_plane = z_plane;
    out.theta.resize(static_cast<size_t>(angular_resolution));
    out.radius.resize(static_cast<size_t>(angular_resolution));

    const double span = blank - r_lo;
    for (int a = 0; a < angular_resolution; ++a) {
        const double theta = center - 0.5 * pitch + pitch * a / angular_resolution;
        const Vec3 origin{r_lo * std::cos(theta), r_lo * std::sin(theta), z_plane};
        const Vec3 dir{std::cos(theta), std::sin(theta), 0.0};

        std::vector<ActivePose> active;
        for (size_t k = 0; k < cache.frames.size(); ++k) {
            const RigidTransform& f = cache.frames[k];
            const Vec3 h0 = f.apply(origin);
            const Vec3 hd = f.apply_vector(dir);
            const double half = 0.5 * span;
            const Vec3 mid{h0.x + half * hd.x, h0.y + half * hd.y, h0.z + half * hd.z};
            if (segment_misses_solid(hob, mid, hd, half)) continue;
            active.push_back({h0, hd, static_cast<std::int64_t>(k)});
        }

        const double t = first_union_entry(hob, active, 0.0, span, n_radial, tol, nullptr);
        out.theta[static_cast<size_t>(a)] = theta;
        out.radius[static_cast<size_t>(a)] = (t == kNoCrossing) ? blank : r_lo + t;
    }
    return out;
}

}  // namespace hobsim
