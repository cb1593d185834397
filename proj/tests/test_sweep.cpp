#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hobsim/exports.hpp"
#include "hobsim/sweep.hpp"
#include "test_support.hpp"

using namespace hobsim;

namespace {

// Published reference matrix for the trend checker: rows feed 5..1 mm/r,
// columns interval 8, 4, 2 deg, maximum flank error in um.
const std::vector<std::vector<double>> kReferenceSweep = {
    {11.20932, 8.66371, 7.41972},
    {5.72456, 3.20556, 3.53586},
    {3.16018, 2.42126, 1.52903},
    {2.75746, 1.40773, 1.11871},
    {2.27441, 1.15853, 0.91163},
};

}  // namespace

TEST_CASE("trend checker: reference matrix passes with exactly one row exception") {
    const TrendReport r = check_trends(kReferenceSweep);
    CHECK(r.columns_total == 3);
    CHECK(r.columns_monotone == 3);
    CHECK(r.rows_total == 5);
    CHECK(r.rows_monotone == 4);
    REQUIRE(r.row_exceptions.size() == 1);
    CHECK(r.row_exceptions[0].first == 1);  // the feed-4 row
    CHECK(r.pass);
}

TEST_CASE("trend checker: synthetic matrices") {
    const std::vector<std::vector<double>> clean = {{9, 8, 7}, {6, 5, 4}, {3, 2, 1}};
    const TrendReport a = check_trends(clean);
    CHECK(a.pass);
    CHECK(a.row_exceptions.empty());

    const std::vector<std::vector<double>> two_bumps = {{9, 10, 7}, {6, 7, 4}, {3, 2, 1}};
    const TrendReport b = check_trends(two_bumps);
    CHECK(b.row_exceptions.size() == 2);
    CHECK_FALSE(b.pass);

    const std::vector<std::vector<double>> bad_column = {{1, 8, 7}, {6, 5, 4}, {3, 2, 1}};
    CHECK_FALSE(check_trends(bad_column).pass);
}

TEST_CASE("mini sweep: completeness, determinism, cell independence") {
    SweepConfig cfg;
    cfg.setup = toy_setup();
    cfg.feeds = {5, 2};
    cfg.intervals = {10, 5};
    cfg.grid_rows = 9;
    cfg.grid_cols = 9;

    const SweepTable table = run_sweep(cfg, "cafef00d00000000");
    REQUIRE(table.cells.size() == 4);
    for (const SweepCell& c : table.cells) {
        CHECK_FALSE(c.failed);
        CHECK(c.max_abs_error_um > 0.0);
        CHECK(c.runtime_seconds >= 0.0);
    }

    SUBCASE("determinism") {
        const SweepTable again = run_sweep(cfg, "cafef00d00000000");
        for (size_t i = 0; i < table.cells.size(); ++i) {
            CHECK(again.cells[i].max_abs_error_um == table.cells[i].max_abs_error_um);
            CHECK(again.cells[i].clocking_offset == table.cells[i].clocking_offset);
        }
    }

    SUBCASE("a cell recomputed in isolation matches the sweep value exactly") {
        MachineSetup s = cfg.setup;
        s.feed_per_rev = 2.0;
        s.interval_angle = 5.0;
        const CutterSchedule sched = build_schedule(s);
        const FlankGrid grid = build_grid(s.gear, 9, 9);
        const double gamma = align_clocking(grid, sched, sched.hob);
        const ErrorMap map = error_map(grid, sched, sched.hob, gamma);
        CHECK(map.max_abs_error_um == table.cell(1, 1).max_abs_error_um);
    }

    SUBCASE("per-cell failures are recorded without aborting the sweep") {
        SweepConfig broken = cfg;
        broken.intervals = {10, 7};  // 7 does not divide 360
        const SweepTable t = run_sweep(broken);
        CHECK_FALSE(t.cell(0, 0).failed);
        CHECK(t.cell(0, 1).failed);
        CHECK_FALSE(t.cell(0, 1).message.empty());
        CHECK_THROWS(t.error_matrix());
    }
}

TEST_CASE("sweep table csv") {
    SweepConfig cfg;
    cfg.setup = toy_setup();
    cfg.feeds = {2};
    cfg.intervals = {10};
    cfg.grid_rows = 5;
    cfg.grid_cols = 5;
    const SweepTable table = run_sweep(cfg, "0123456789abcdef");
    const std::string path = "test_sweep.csv";
    write_sweep_csv(table, path);
    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# config-hash=0123456789abcdef, version=" + std::string(kArtifactVersion));
    std::getline(is, line);
    CHECK(line == "feed_mm_per_rev,interval_deg,max_abs_error_um,clocking_offset_rad,runtime_s,status");
    std::getline(is, line);
    CHECK(line.find(",ok") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("sweep config validation") {
    SweepConfig cfg;
    cfg.setup = toy_setup();
    cfg.feeds = {};
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
    cfg.feeds = {1, -2};
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}

TEST_CASE("stl export: triangle count, size arithmetic, zero-deviation vertices") {
    const FlankGrid grid = build_grid(GearSpec{});
    DeviationField field;
    field.grid = grid;
    field.deviations.assign(grid.size(), 0.0);
    field.limiting_pose.assign(grid.size(), 0);
    field.search_halfwidth = 4.0;
    field.tol = 1e-7;

    const std::string path = "test_flank.stl";
    write_stl(field, path);

    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    is.seekg(0, std::ios::end);
    const auto size = static_cast<long>(is.tellg());
    CHECK(size == 84 + 50 * 1152);  // 2*(25-1)*(25-1) triangles

    is.seekg(80);
    std::uint32_t count = 0;
    is.read(reinterpret_cast<char*>(&count), 4);
    CHECK(count == 1152);

    // Zero deviations: every stored vertex lies on the involute helicoid.
    is.seekg(84);
    for (std::uint32_t t = 0; t < count; ++t) {
        float data[12];
        is.read(reinterpret_cast<char*>(data), 48);
        char attr[2];
        is.read(attr, 2);
        for (int v = 1; v < 4; ++v) {
            const double x = data[3 * v], y = data[3 * v + 1];
            const double radius = std::hypot(x, y);
            // float precision; the doubles land exactly on the helicoid
            CHECK(radius > grid.transverse.base_radius * 0.999);
            CHECK(radius < grid.transverse.tip_radius * 1.001);
        }
    }
    std::remove(path.c_str());
}
