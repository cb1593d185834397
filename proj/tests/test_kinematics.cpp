#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

#include "hobsim/kinematics.hpp"

using namespace hobsim;

namespace {

MachineSetup default_setup() {
    MachineSetup s;
    s.gear = GearSpec{};
    s.hob = HobSpec{};
    return s;
}

}  // namespace

TEST_CASE("installation angle: hand conventions") {
    const GearSpec gear;  // beta = 15 RH
    const HobSpec hob;    // RH thread

    // Same hands: beta - lambda, with lambda recomputed independently.
    const double lambda = rad_to_deg(std::asin(hob.module * hob.starts / hob.pitch_diameter));
    CHECK(installation_angle(gear, hob) == doctest::Approx(15.0 - lambda).epsilon(1e-12));
    CHECK(installation_angle(gear, hob) == doctest::Approx(13.238).epsilon(1e-4));

    GearSpec spur = gear;
    spur.helix_angle = 0.0;
    CHECK(installation_angle(spur, hob) == doctest::Approx(-lambda).epsilon(1e-12));
    CHECK(installation_angle(spur, hob) == doctest::Approx(-1.7616).epsilon(1e-3));

    HobSpec lh = hob;
    lh.thread_hand = ThreadHand::Left;
    CHECK(installation_angle(gear, lh) == doctest::Approx(15.0 + lambda).epsilon(1e-12));
    CHECK(installation_angle(gear, lh) == doctest::Approx(16.762).epsilon(1e-3));
}

TEST_CASE("schedule: pose count and stepping") {
    MachineSetup s = default_setup();
    s.feed_per_rev = 1.0;
    s.interval_angle = 2.0;
    s.approach = 6.0;
    s.overrun = 6.0;
    const CutterSchedule sched = build_schedule(s);

    CHECK(sched.revolutions == 42);
    CHECK(sched.steps_per_rev == 180);
    CHECK(sched.poses.size() == 7560);

    // Constructive invariants: pose fields are exact multiples of the steps.
    for (std::int64_t k : {std::int64_t(0), std::int64_t(1), std::int64_t(500), std::int64_t(7559)}) {
        const CutterPose& p = sched.poses[static_cast<size_t>(k)];
        CHECK(p.index == k);
        CHECK(p.gear_angle == static_cast<double>(k) * sched.gear_step);
        CHECK(p.hob_axial_position == -6.0 + static_cast<double>(k) * sched.axial_step);
    }
    CHECK(sched.gear_step == doctest::Approx(deg_to_rad(2.0)).epsilon(1e-15));
    CHECK(sched.axial_step == doctest::Approx(1.0 * 2.0 / 360.0).epsilon(1e-15));

    // Axial travel spans [-approach, face_width + overrun].
    CHECK(sched.poses.front().hob_axial_position == doctest::Approx(-6.0));
    CHECK(sched.poses.back().hob_axial_position + sched.axial_step ==
          doctest::Approx(36.0).epsilon(1e-9));
}

TEST_CASE("schedule: spur gear has no differential term") {
    MachineSetup s = default_setup();
    s.gear.helix_angle = 0.0;
    s.interval_angle = 8.0;
    s.feed_per_rev = 5.0;
    const CutterSchedule sched = build_schedule(s);
    const double ratio = -static_cast<double>(s.gear.tooth_count);  // RH thread, one start
    for (size_t k = 1; k < sched.poses.size(); ++k) {
        const double dphi_h = sched.poses[k].hob_angle - sched.poses[0].hob_angle;
        const double dphi_g = sched.poses[k].gear_angle - sched.poses[0].gear_angle;
        CHECK(std::abs(dphi_h - ratio * dphi_g) < 1e-9 * std::max(1.0, std::abs(dphi_h)));
    }
}

TEST_CASE("schedule: validation errors") {
    MachineSetup s = default_setup();
    s.interval_angle = 7.0;  // does not divide 360
    CHECK_THROWS_AS(build_schedule(s), std::invalid_argument);

    s = default_setup();
    s.pose_cap = 100;
    CHECK_THROWS_AS(build_schedule(s), std::invalid_argument);

    s = default_setup();
    s.feed_per_rev = -1.0;
    CHECK_THROWS_AS(build_schedule(s), std::invalid_argument);
}

TEST_CASE("schedule determinism: identical setup gives a bit-identical schedule") {
    MachineSetup s = default_setup();
    s.interval_angle = 8.0;
    s.feed_per_rev = 5.0;
    const CutterSchedule a = build_schedule(s);
    const CutterSchedule b = build_schedule(s);
    REQUIRE(a.poses.size() == b.poses.size());
    CHECK(std::memcmp(a.poses.data(), b.poses.data(), a.poses.size() * sizeof(CutterPose)) == 0);
}

TEST_CASE("workpiece/hob transforms") {
    MachineSetup s = default_setup();
    s.interval_angle = 8.0;
    s.feed_per_rev = 5.0;
    const CutterSchedule sched = build_schedule(s);

    SUBCASE("round trip is exact to 1e-12") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> dc(-40.0, 40.0);
        for (int k = 0; k < 300; ++k) {
            const CutterPose& pose = sched.poses[rng() % sched.poses.size()];
            const Vec3 p{dc(rng), dc(rng), dc(rng)};
            const Vec3 q = hob_to_workpiece(pose, sched, workpiece_to_hob(pose, sched, p));
            CHECK((q - p).norm() < 1e-12);
        }
    }

    SUBCASE("identity pose: gear axis sits at center distance from the hob axis") {
        CutterPose id;
        const Vec3 h = workpiece_to_hob(id, sched, {0.0, 0.0, 0.0});
        CHECK(std::hypot(h.x, h.y) == doctest::Approx(sched.setup.center_distance).epsilon(1e-12));
    }

    SUBCASE("pure gear-rotation delta between poses") {
        // Two poses differing only in gear angle: the hob-frame images of a
        // fixed workpiece point must differ by that rotation composed into
        // the frames.
        CutterPose a, b;
        a.gear_angle = 0.3;
        b = a;
        b.gear_angle = 0.3 + 0.017;
        const Vec3 p{25.0, 7.0, 11.0};
        const Vec3 via_b = workpiece_to_hob(b, sched, p);
        const Vec3 rotated_then_a = workpiece_to_hob(a, sched, Mat3::rot_z(0.017) * p);
        CHECK((via_b - rotated_then_a).norm() < 1e-12);
    }
}

TEST_CASE("conjugacy: rolling at the pitch point under the coupled motion") {
    // Finite differences across poses of an ultra-fine schedule: the relative
    // velocity of gear and hob surfaces at the pitch point must have no
    // component along the tooth-space normal direction (0, cos b, -sin b).
    MachineSetup s = default_setup();
    s.interval_angle = 0.01;
    s.feed_per_rev = 42.0;  // whole travel in one revolution keeps the pose count small
    const CutterSchedule sched = build_schedule(s);

    const double beta = deg_to_rad(s.gear.helix_angle);
    const Vec3 m_hat{0.0, std::cos(beta), -std::sin(beta)};
    const double r = sched.transverse.pitch_radius;

    for (size_t k : {size_t(10000), size_t(18000), size_t(26000)}) {
        const CutterPose& p0 = sched.poses[k];
        const CutterPose& p1 = sched.poses[k + 1];

        const Vec3 pitch_machine{r, 0.0, p0.hob_axial_position};
        const Vec3 p_body = Mat3::rot_z(-p0.gear_angle) * pitch_machine;

        // Gear-surface displacement of the pitch point over one step.
        const Vec3 v_gear = Mat3::rot_z(p1.gear_angle) * p_body - pitch_machine;

        // Hob-body displacement of the same machine point over one step.
        const RigidTransform w2h_0 = workpiece_to_hob_transform(sched, p0);
        const RigidTransform w2h_1 = workpiece_to_hob_transform(sched, p1);
        const Vec3 h_fixed = w2h_0.apply(Mat3::rot_z(-p0.gear_angle) * pitch_machine);
        const Vec3 v_hob = Mat3::rot_z(p1.gear_angle) * w2h_1.inverse().apply(h_fixed) - pitch_machine;

        CHECK(std::abs((v_gear - v_hob).dot(m_hat)) < 1e-6);
    }
}

TEST_CASE("pre-rotating a schedule shifts only the gear angles") {
    MachineSetup s = default_setup();
    s.interval_angle = 8.0;
    s.feed_per_rev = 5.0;
    const CutterSchedule a = build_schedule(s);
    const CutterSchedule b = pre_rotate_schedule(a, 0.001);
    for (size_t k = 0; k < a.poses.size(); k += 57) {
        CHECK(b.poses[k].gear_angle == doctest::Approx(a.poses[k].gear_angle + 0.001).epsilon(1e-15));
        CHECK(b.poses[k].hob_angle == a.poses[k].hob_angle);
        CHECK(b.poses[k].hob_axial_position == a.poses[k].hob_axial_position);
    }
}
