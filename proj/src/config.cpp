#include "hobsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hobsim/exports.hpp"

namespace hobsim {

using nlohmann::json;

SimConfig SimConfig::defaults() {
    SimConfig cfg;  // GearSpec/HobSpec defaults are the reference workpiece and cutter
    cfg.machine.gear = cfg.gear;
    cfg.machine.hob = cfg.hob;
    cfg.sweep.setup = cfg.machine;
    return cfg;
}

double parse_angle_deg(const std::string& text) {
    // Normalize unicode degree (U+00B0) and prime (U+2032) markers.
    std::string s;
    for (size_t i = 0; i < text.size();) {
        if (i + 1 < text.size() && static_cast<unsigned char>(text[i]) == 0xC2 &&
            static_cast<unsigned char>(text[i + 1]) == 0xB0) {
            s += 'd';
            i += 2;
        } else if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
                   static_cast<unsigned char>(text[i + 1]) == 0x80 &&
                   static_cast<unsigned char>(text[i + 2]) == 0xB2) {
            s += 'm';
            i += 3;
        } else if (text[i] == '\'') {
            s += 'm';
            ++i;
        } else {
            s += text[i];
            ++i;
        }
    }

    const size_t dpos = s.find('d');
    if (dpos == std::string::npos) {
        size_t used = 0;
        const double v = std::stod(s, &used);
        return v;
    }
    const double deg = std::stod(s.substr(0, dpos));
    double minutes = 0.0;
    std::string rest = s.substr(dpos + 1);
    if (!rest.empty()) {
        const size_t mpos = rest.find('m');
        const std::string mtext = (mpos == std::string::npos) ? rest : rest.substr(0, mpos);
        if (!mtext.empty()) minutes = std::stod(mtext);
    }
    const double sign = (deg < 0.0 || s.find('-') == 0) ? -1.0 : 1.0;
    return deg + sign * minutes / 60.0;
}

namespace {

double angle_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_string()) return parse_angle_deg(v.get<std::string>());
    return v.get<double>();
}

double num_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<double>();
}

// Accept a value under any of the listed aliases.
const json* find_alias(const json& j, std::initializer_list<const char*> keys) {
    for (const char* k : keys)
        if (j.contains(k)) return &j.at(k);
    return nullptr;
}

GearSpec gear_from_json(const json& j) {
    GearSpec g;
    g.normal_module = num_field(j, "normal_module", g.normal_module);
    g.normal_pressure_angle = angle_field(j, "normal_pressure_angle", g.normal_pressure_angle);
    if (j.contains("tooth_count")) g.tooth_count = j.at("tooth_count").get<int>();
    g.helix_angle = angle_field(j, "helix_angle", g.helix_angle);
    g.face_width = num_field(j, "face_width", g.face_width);
    g.addendum_coeff = num_field(j, "addendum_coeff", g.addendum_coeff);
    g.dedendum_coeff = num_field(j, "dedendum_coeff", g.dedendum_coeff);
    return g;
}

json gear_to_json(const GearSpec& g) {
    return json{{"normal_module", g.normal_module},
                {"normal_pressure_angle", g.normal_pressure_angle},
                {"tooth_count", g.tooth_count},
                {"helix_angle", g.helix_angle},
                {"face_width", g.face_width},
                {"addendum_coeff", g.addendum_coeff},
                {"dedendum_coeff", g.dedendum_coeff}};
}

HobSpec hob_from_json(const json& j) {
    HobSpec h;
    h.module = num_field(j, "module", h.module);
    h.pitch_diameter = num_field(j, "pitch_diameter", h.pitch_diameter);
    h.addendum = num_field(j, "addendum", h.addendum);
    h.whole_depth = num_field(j, "whole_depth", h.whole_depth);
    h.normal_pitch = num_field(j, "normal_pitch", h.normal_pitch);
    h.normal_tooth_thickness = num_field(j, "normal_tooth_thickness", h.normal_tooth_thickness);
    if (const json* v = find_alias(j, {"axial_profile_angle"}))
        h.axial_profile_angle = v->is_string() ? parse_angle_deg(v->get<std::string>()) : v->get<double>();
    if (const json* v = find_alias(j, {"lead_angle", "spiral_lead_angle"}))
        h.lead_angle = v->is_string() ? parse_angle_deg(v->get<std::string>()) : v->get<double>();
    if (const json* v = find_alias(j, {"thread_hand", "hob_thread_direction"})) {
        const std::string hand = v->get<std::string>();
        if (hand == "right" || hand == "Right")
            h.thread_hand = ThreadHand::Right;
        else if (hand == "left" || hand == "Left")
            h.thread_hand = ThreadHand::Left;
        else
            throw std::invalid_argument("config: thread_hand must be 'right' or 'left'");
    }
    if (const json* v = find_alias(j, {"tip_corner_radius", "tip_radius"})) h.tip_corner_radius = v->get<double>();
    if (const json* v = find_alias(j, {"root_fillet_radius", "fillet_radius"})) h.root_fillet_radius = v->get<double>();
    if (j.contains("starts")) h.starts = j.at("starts").get<int>();
    if (const json* v = find_alias(j, {"hob_length", "gear_width"})) h.hob_length = v->get<double>();
    h.external_diameter = num_field(j, "external_diameter", h.external_diameter);
    if (const json* v = find_alias(j, {"bore", "aperture"})) h.bore = v->get<double>();
    h.normal_profile_angle = angle_field(j, "normal_profile_angle", h.normal_profile_angle);
    return h;
}

json hob_to_json(const HobSpec& h) {
    return json{{"module", h.module},
                {"pitch_diameter", h.pitch_diameter},
                {"addendum", h.addendum},
                {"whole_depth", h.whole_depth},
                {"normal_pitch", h.normal_pitch},
                {"normal_tooth_thickness", h.normal_tooth_thickness},
                {"axial_profile_angle", h.axial_profile_angle},
                {"lead_angle", h.lead_angle},
                {"thread_hand", h.thread_hand == ThreadHand::Right ? "right" : "left"},
                {"tip_corner_radius", h.tip_corner_radius},
                {"root_fillet_radius", h.root_fillet_radius},
                {"starts", h.starts},
                {"hob_length", h.hob_length},
                {"external_diameter", h.external_diameter},
                {"bore", h.bore},
                {"normal_profile_angle", h.normal_profile_angle}};
}

}  // namespace

SimConfig config_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    SimConfig cfg = SimConfig::defaults();
    if (j.contains("gear")) cfg.gear = gear_from_json(j.at("gear"));
    if (j.contains("hob")) cfg.hob = hob_from_json(j.at("hob"));

    cfg.machine = MachineSetup{};
    cfg.machine.gear = cfg.gear;
    cfg.machine.hob = cfg.hob;
    if (j.contains("machine")) {
        const json& m = j.at("machine");
        cfg.machine.center_distance = num_field(m, "center_distance", MachineSetup::nan_default());
        cfg.machine.installation_angle = angle_field(m, "installation_angle", MachineSetup::nan_default());
        cfg.machine.feed_per_rev = num_field(m, "feed_per_rev", cfg.machine.feed_per_rev);
        cfg.machine.interval_angle = num_field(m, "interval_angle", cfg.machine.interval_angle);
        cfg.machine.approach = num_field(m, "approach", MachineSetup::nan_default());
        cfg.machine.overrun = num_field(m, "overrun", MachineSetup::nan_default());
        if (m.contains("pose_cap")) cfg.machine.pose_cap = m.at("pose_cap").get<std::int64_t>();
    }

    cfg.sweep = SweepConfig{};
    cfg.sweep.setup = cfg.machine;
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (s.contains("feeds")) cfg.sweep.feeds = s.at("feeds").get<std::vector<double>>();
        if (s.contains("intervals")) cfg.sweep.intervals = s.at("intervals").get<std::vector<double>>();
        if (s.contains("grid_rows")) cfg.sweep.grid_rows = s.at("grid_rows").get<int>();
        if (s.contains("grid_cols")) cfg.sweep.grid_cols = s.at("grid_cols").get<int>();
        cfg.sweep.profile_margin = num_field(s, "profile_margin", cfg.sweep.profile_margin);
        cfg.sweep.axial_margin = num_field(s, "axial_margin", cfg.sweep.axial_margin);
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_config: cannot read " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const SimConfig& cfg) {
    json m;
    if (!std::isnan(cfg.machine.center_distance)) m["center_distance"] = cfg.machine.center_distance;
    if (!std::isnan(cfg.machine.installation_angle)) m["installation_angle"] = cfg.machine.installation_angle;
    m["feed_per_rev"] = cfg.machine.feed_per_rev;
    m["interval_angle"] = cfg.machine.interval_angle;
    if (!std::isnan(cfg.machine.approach)) m["approach"] = cfg.machine.approach;
    if (!std::isnan(cfg.machine.overrun)) m["overrun"] = cfg.machine.overrun;
    m["pose_cap"] = cfg.machine.pose_cap;

    const json j{{"gear", gear_to_json(cfg.gear)},
                 {"hob", hob_to_json(cfg.hob)},
                 {"machine", m},
                 {"sweep", json{{"feeds", cfg.sweep.feeds},
                                {"intervals", cfg.sweep.intervals},
                                {"grid_rows", cfg.sweep.grid_rows},
                                {"grid_cols", cfg.sweep.grid_cols},
                                {"profile_margin", cfg.sweep.profile_margin},
                                {"axial_margin", cfg.sweep.axial_margin}}}};
    return j.dump(2);
}

std::string config_hash(const SimConfig& cfg) { return fnv1a_hex(config_to_json_text(cfg)); }

}  // namespace hobsim
