#pragma once

#include <string>

#include "hobsim/sweep.hpp"

namespace hobsim {

/// Full tool configuration: workpiece, cutter, machine setup and sweep lists.
struct SimConfig {
    GearSpec gear;
    HobSpec hob;
    MachineSetup machine;  // gear/hob copied in on load
    SweepConfig sweep;     // setup copied in on load

    static SimConfig defaults();
};

/// Accepts decimal degrees ("20.0167") or degree-minute strings
/// ("20°1'", "1°46′", "20d1m").
double parse_angle_deg(const std::string& text);

SimConfig config_from_json_text(const std::string& text);
SimConfig load_config(const std::string& path);
std::string config_to_json_text(const SimConfig& cfg);

/// FNV-1a hash of the canonical JSON form; stamped into output headers.
std::string config_hash(const SimConfig& cfg);

}  // namespace hobsim
