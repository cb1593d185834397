#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hobsim/config.hpp"
#include "hobsim/exports.hpp"
#include "test_support.hpp"

using namespace hobsim;

TEST_CASE("degree-minute angle parsing") {
    CHECK(parse_angle_deg("20.5") == doctest::Approx(20.5).epsilon(1e-15));
    CHECK(parse_angle_deg("20°1'") == doctest::Approx(20.0 + 1.0 / 60.0).epsilon(1e-12));
    CHECK(parse_angle_deg("1°46′") == doctest::Approx(1.0 + 46.0 / 60.0).epsilon(1e-12));
    CHECK(parse_angle_deg("20d1m") == doctest::Approx(20.0 + 1.0 / 60.0).epsilon(1e-12));
    CHECK(parse_angle_deg("-3°30'") == doctest::Approx(-3.5).epsilon(1e-12));
}

TEST_CASE("config json: defaults, round trip, hashing") {
    const SimConfig def = SimConfig::defaults();
    const std::string text = config_to_json_text(def);
    const SimConfig back = config_from_json_text(text);

    CHECK(back.gear.tooth_count == def.gear.tooth_count);
    CHECK(back.gear.helix_angle == def.gear.helix_angle);
    CHECK(back.hob.pitch_diameter == def.hob.pitch_diameter);
    CHECK(back.machine.feed_per_rev == def.machine.feed_per_rev);
    CHECK(back.sweep.feeds == def.sweep.feeds);

    CHECK(config_hash(back) == config_hash(def));
    SimConfig other = def;
    other.machine.interval_angle = 4.0;
    CHECK(config_hash(other) != config_hash(def));
}

TEST_CASE("config json: gear field names are the documented snake_case set") {
    const SimConfig cfg = config_from_json_text(R"({
        "gear": {"normal_module": 3.0, "normal_pressure_angle": 20.0, "tooth_count": 17,
                 "helix_angle": -12.0, "face_width": 22.0, "addendum_coeff": 1.0,
                 "dedendum_coeff": 1.25}
    })");
    CHECK(cfg.gear.normal_module == 3.0);
    CHECK(cfg.gear.tooth_count == 17);
    CHECK(cfg.gear.helix_angle == -12.0);
    CHECK(cfg.gear.face_width == 22.0);
}

TEST_CASE("config json: catalogue aliases and angle strings for the cutter") {
    const SimConfig cfg = config_from_json_text(R"({
        "hob": {"module": 2, "pitch_diameter": 65.06, "aperture": 27, "gear_width": 50,
                "spiral_lead_angle": "1°46'", "axial_profile_angle": "20°1'",
                "hob_thread_direction": "right", "tip_radius": 0.6, "fillet_radius": 0.6}
    })");
    CHECK(cfg.hob.bore == 27.0);
    CHECK(cfg.hob.hob_length == 50.0);
    CHECK(cfg.hob.lead_angle == doctest::Approx(1.0 + 46.0 / 60.0).epsilon(1e-12));
    CHECK(cfg.hob.axial_profile_angle == doctest::Approx(20.0 + 1.0 / 60.0).epsilon(1e-12));
    CHECK(cfg.hob.tip_corner_radius == 0.6);
    CHECK(cfg.hob.root_fillet_radius == 0.6);
    CHECK(cfg.hob.thread_hand == ThreadHand::Right);
}

TEST_CASE("deviation field csv: layout and 12-digit round trip") {
    const CutterSchedule sched = build_schedule(toy_setup());
    const FlankGrid grid = build_grid(sched.setup.gear, 5, 5);
    const DeviationField field = simulate_flank(grid, sched, sched.hob);

    const std::string path = "test_deviation.csv";
    write_deviation_csv(field, path, "feedc0de00000000");

    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("# config-hash=feedc0de00000000", 0) == 0);
    std::getline(is, line);
    CHECK(line == "row,col,u,z_mm,dev_mm,pose_index");

    int n = 0;
    while (std::getline(is, line)) {
        int row = 0, col = 0;
        long pose = 0;
        double u = 0, z = 0, dev = 0;
        REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf,%ld", &row, &col, &u, &z, &dev, &pose) == 6);
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", field.deviation(row, col));
        CHECK(dev == std::stod(buf));
        CHECK(pose == field.pose(row, col));
        ++n;
    }
    CHECK(n == 25);
    std::remove(path.c_str());
}

TEST_CASE("slice exports") {
    const CutterSchedule sched = build_schedule(toy_setup());
    const SliceProfile slice = transverse_slice(sched, 3.0, 720);

    write_slice_csv(slice, "test_slice.csv", "");
    std::ifstream is("test_slice.csv");
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("# config-hash=none", 0) == 0);
    std::getline(is, line);
    CHECK(line == "theta_deg,radius_mm,x_mm,y_mm");
    int n = 0;
    while (std::getline(is, line)) ++n;
    CHECK(n == 720);
    std::remove("test_slice.csv");

    write_slice_svg(slice, "test_slice.svg");
    std::ifstream svg("test_slice.svg");
    std::string all((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
    CHECK(all.find("<svg") != std::string::npos);
    CHECK(all.find("<path") != std::string::npos);
    std::remove("test_slice.svg");
}

TEST_CASE("fnv1a hash is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("hobsim") != fnv1a_hex("hobsim "));
    CHECK(fnv1a_hex("abc").size() == 16);
}
