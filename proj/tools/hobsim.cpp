// Command-line front end: single-setup simulation, the feed/interval sweep,
// transverse slices and mesh export.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hobsim/config.hpp"
#include "hobsim/exports.hpp"

using namespace hobsim;

namespace {

SimConfig load_or_default(const std::string& path) {
    if (path.empty()) return SimConfig::defaults();
    return load_config(path);
}

void apply_overrides(SimConfig& cfg, double feed, double interval) {
    if (feed > 0.0) cfg.machine.feed_per_rev = feed;
    if (interval > 0.0) cfg.machine.interval_angle = interval;
    cfg.sweep.setup = cfg.machine;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"virtual gear hobbing simulator"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);

    double feed = -1.0, interval = -1.0;
    std::string out = ".";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--feed", feed, "hob feed per workpiece revolution, mm/r");
        sub->add_option("--interval-deg", interval, "workpiece rotation per step, deg");
        sub->add_option("--out", out, "output directory or file");
    };

    CLI::App* cmd_simulate = app.add_subcommand("simulate", "cut one setup, write deviation field and error map");
    add_common(cmd_simulate);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the feed x interval factor sweep");
    add_common(cmd_sweep);

    CLI::App* cmd_slice = app.add_subcommand("slice", "transverse profile of the cut blank");
    add_common(cmd_slice);
    double slice_z = -1.0;
    int slice_res = 720;
    std::string svg_path;
    cmd_slice->add_option("--z", slice_z, "transverse plane height, mm (default mid-face)");
    cmd_slice->add_option("--resolution", slice_res, "samples per tooth pitch");
    cmd_slice->add_option("--svg", svg_path, "also write an SVG polyline");

    CLI::App* cmd_stl = app.add_subcommand("export-stl", "binary STL of the as-cut flank patch");
    add_common(cmd_stl);

    CLI::App* cmd_check = app.add_subcommand("check-hob", "cutter consistency report");
    cmd_check->add_option("--config", config_path, "JSON configuration file");

    CLI11_PARSE(app, argc, argv);

    try {
        SimConfig cfg = load_or_default(config_path);
        apply_overrides(cfg, feed, interval);
        const std::string hash = config_hash(cfg);

        if (cmd_check->parsed()) {
            std::cout << hob_consistency(cfg.hob).to_string();
            return 0;
        }

        if (cmd_simulate->parsed()) {
            const CutterSchedule schedule = build_schedule(cfg.machine);
            const FlankGrid grid = build_grid(cfg.gear, cfg.sweep.grid_rows, cfg.sweep.grid_cols,
                                              cfg.sweep.profile_margin, cfg.sweep.axial_margin);
            const double clocking = align_clocking(grid, schedule, schedule.hob);
            const ErrorMap map = error_map(grid, schedule, schedule.hob, clocking);
            const DeviationField field =
                simulate_flank(rotate_grid(grid, clocking), schedule, schedule.hob);
            write_deviation_csv(field, out + "/deviation.csv", hash);
            export_error_surface(map, out + "/error_map.csv", hash);
            std::cout << "poses: " << schedule.poses.size() << "\n"
                      << "clocking offset: " << map.clocking_offset << " rad\n"
                      << "max |error|: " << map.max_abs_error_um << " um\n"
                      << "wrote " << out << "/deviation.csv and " << out << "/error_map.csv\n";
            return 0;
        }

        if (cmd_sweep->parsed()) {
            const SweepTable table = run_sweep(cfg.sweep, hash);
            write_sweep_csv(table, out + "/sweep_table.csv");
            std::cout << table.to_string();
            std::cout << check_trends(table).to_string() << "\n";
            std::cout << "wrote " << out << "/sweep_table.csv\n";
            return 0;
        }

        if (cmd_slice->parsed()) {
            const CutterSchedule schedule = build_schedule(cfg.machine);
            const double z = (slice_z >= 0.0) ? slice_z : 0.5 * cfg.gear.face_width;
            const SliceProfile slice = transverse_slice(schedule, z, slice_res);
            const std::string csv = (out == ".") ? "slice.csv" : out;
            write_slice_csv(slice, csv, hash);
            if (!svg_path.empty()) write_slice_svg(slice, svg_path);
            std::cout << "wrote " << csv << " (" << slice.size() << " samples at z=" << z << ")\n";
            return 0;
        }

        if (cmd_stl->parsed()) {
            const CutterSchedule schedule = build_schedule(cfg.machine);
            const FlankGrid grid = build_grid(cfg.gear, cfg.sweep.grid_rows, cfg.sweep.grid_cols,
                                              cfg.sweep.profile_margin, cfg.sweep.axial_margin);
            const double clocking = align_clocking(grid, schedule, schedule.hob);
            const DeviationField field =
                simulate_flank(rotate_grid(grid, clocking), schedule, schedule.hob);
            const std::string path = (out == ".") ? "flank.stl" : out;
            write_stl(field, path);
            std::cout << "wrote " << path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
