#include "softhaptic/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "softhaptic/csv.hpp"
#include "softhaptic/errors.hpp"

namespace softhaptic {

namespace pt = boost::property_tree;

void ExperimentConfig::validate() const {
    if (!(sample_rate_hz > 0.0)) throw ConfigError("experiment: sample_rate_hz must be > 0");
    if (repetitions < 1) throw ConfigError("experiment: repetitions must be >= 1");
    if (!(ramp_speed > 0.0)) throw ConfigError("experiment: ramp_speed must be > 0");
    if (!(settle_time >= 0.0)) throw ConfigError("experiment: settle_time must be >= 0");
    if (!(commanded_amplitude > 0.0)) throw ConfigError("experiment: commanded_amplitude must be > 0");
    if (!(z_path_distance > 0.0)) throw ConfigError("experiment: z_path_distance must be > 0");
    if (!(push_distance > 0.0)) throw ConfigError("experiment: push_distance must be > 0");
    if (!(jnd_position > 0.0 && jnd_force > 0.0)) throw ConfigError("experiment: JND thresholds must be > 0");
    if (!(workspace_radius > 0.0)) throw ConfigError("experiment: workspace_radius must be > 0");
    if (workspace_grid_steps < 2) throw ConfigError("experiment: workspace_grid_steps must be >= 2");
}

void SimulationConfig::validate() const {
    try {
        geometry.validate();
        actuator.validate();
        controller.validate();
        plant.validate();
        teleop.validate();
    } catch (const InputError& e) {
        throw ConfigError(e.what());
    }
    experiment.validate();
    for (const auto& c : actuator.chambers) {
        if (c.valid_pressure_range.min != geometry.pressure_min ||
            c.valid_pressure_range.max != geometry.pressure_max) {
            throw ConfigError("actuator: valid_pressure_range must match geometry pressure limits");
        }
    }
}

SimulationConfig default_config() {
    SimulationConfig cfg;
    PressureLengthMap map;
    map.valid_pressure_range = cfg.geometry.pressure_range();
    cfg.actuator = ActuatorModel::shared(map);
    return cfg;
}

namespace {

// Shortest text that parses back to the same double.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string fmt(const Vec3& v) { return fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]); }

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& field : csv::split(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw ConfigError("config: " + key + ": not a number: '" + field + "'");
        }
    }
    return out;
}

/// Reads a section and remembers which keys were consumed.
class Section {
public:
    Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
        if (auto child = root.get_child_optional(name_)) tree_ = *child;
    }

    void get(const char* key, double& v) {
        if (auto s = raw(key)) {
            const auto vals = parse_list(qualified(key), *s);
            if (vals.size() != 1) throw ConfigError("config: " + qualified(key) + ": expected one value");
            v = vals[0];
        }
    }
    void get(const char* key, int& v) {
        double d = v;
        get(key, d);
        if (d != static_cast<int>(d)) throw ConfigError("config: " + qualified(key) + ": expected an integer");
        v = static_cast<int>(d);
    }
    void get(const char* key, std::uint64_t& v) {
        if (auto s = raw(key)) {
            try {
                std::size_t used = 0;
                v = std::stoull(*s, &used);
                if (used != s->size()) throw std::invalid_argument(*s);
            } catch (const std::exception&) {
                throw ConfigError("config: " + qualified(key) + ": expected an unsigned integer");
            }
        }
    }
    void get(const char* key, Vec3& v) {
        if (auto s = raw(key)) {
            const auto vals = parse_list(qualified(key), *s);
            if (vals.size() == 1) v = Vec3::Constant(vals[0]);
            else if (vals.size() == 3) v = Vec3(vals[0], vals[1], vals[2]);
            else throw ConfigError("config: " + qualified(key) + ": expected 1 or 3 values");
        }
    }
    std::optional<std::string> raw(const char* key) {
        seen_.emplace_back(key);
        if (auto v = tree_.get_optional<std::string>(key)) return *v;
        return std::nullopt;
    }
    std::string qualified(const char* key) const { return name_ + "." + key; }

    void reject_unknown() const {
        for (const auto& [key, _] : tree_) {
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
                throw ConfigError("config: unknown key '" + name_ + "." + key + "'");
            }
        }
    }

private:
    std::string name_;
    pt::ptree tree_;
    std::vector<std::string> seen_;
};

const char* to_string(PlantMode m) { return m == PlantMode::blocked ? "blocked" : "free"; }

}  // namespace

SimulationConfig parse_config(std::istream& in) {
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    static const std::vector<std::string> kSections{"geometry", "actuator", "controller",
                                                    "plant", "experiment", "teleop"};
    for (const auto& [name, child] : root) {
        if (std::find(kSections.begin(), kSections.end(), name) == kSections.end()) {
            throw ConfigError("config: unknown section [" + name + "]");
        }
        if (!child.data().empty()) throw ConfigError("config: key '" + name + "' outside any section");
    }

    SimulationConfig cfg = default_config();

    Section geo(root, "geometry");
    geo.get("chamber_offset_d", cfg.geometry.chamber_offset_d);
    geo.get("initial_length", cfg.geometry.initial_length);
    geo.get("pressure_min", cfg.geometry.pressure_min);
    geo.get("pressure_max", cfg.geometry.pressure_max);
    geo.get("singularity_offset", cfg.geometry.singularity_offset);
    geo.get("preload_pressure", cfg.geometry.preload_pressure);
    geo.reject_unknown();

    Section act(root, "actuator");
    Vec3 slope = Vec3::Constant(cfg.actuator.chambers[0].slope);
    Vec3 intercept = Vec3::Constant(cfg.actuator.chambers[0].intercept);
    act.get("slope", slope);
    act.get("intercept", intercept);
    PressureRange range = cfg.geometry.pressure_range();
    if (auto s = act.raw("valid_pressure_range")) {
        const auto vals = parse_list("actuator.valid_pressure_range", *s);
        if (vals.size() != 2) throw ConfigError("config: actuator.valid_pressure_range: expected 'min, max'");
        range = {vals[0], vals[1]};
    }
    act.reject_unknown();
    for (int i = 0; i < 3; ++i) cfg.actuator.chambers[i] = {slope[i], intercept[i], range};

    Section ctl(root, "controller");
    ctl.get("step_scale_c", cfg.controller.step_scale_c);
    ctl.get("jacobian_delta", cfg.controller.jacobian_delta);
    ctl.get("target_tolerance", cfg.controller.target_tolerance);
    ctl.get("max_iterations", cfg.controller.max_iterations);
    ctl.get("damping", cfg.controller.damping);
    ctl.get("tracking_tolerance", cfg.controller.tracking_tolerance);
    ctl.reject_unknown();

    Section plant(root, "plant");
    plant.get("regulator_time_constant_tau", cfg.plant.regulator_time_constant_tau);
    plant.get("tick_dt", cfg.plant.tick_dt);
    if (auto s = plant.raw("mode")) {
        if (*s == "free") cfg.plant.mode = PlantMode::free;
        else if (*s == "blocked") cfg.plant.mode = PlantMode::blocked;
        else throw ConfigError("config: plant.mode must be 'free' or 'blocked'");
    }
    if (auto s = plant.raw("block_anchor")) {
        if (*s == "preload") {
            cfg.plant.block_anchor.reset();
        } else {
            Vec3 anchor;
            const auto vals = parse_list("plant.block_anchor", *s);
            if (vals.size() != 3) throw ConfigError("config: plant.block_anchor: expected x, y, z or 'preload'");
            anchor << vals[0], vals[1], vals[2];
            cfg.plant.block_anchor = anchor;
        }
    }
    plant.get("stiffness_lateral", cfg.plant.stiffness_lateral);
    plant.get("stiffness_axial", cfg.plant.stiffness_axial);
    plant.get("chamber_gain_asymmetry", cfg.plant.chamber_gain_asymmetry);
    plant.get("measurement_noise_sigma", cfg.plant.measurement_noise_sigma);
    plant.get("noise_seed", cfg.plant.noise_seed);
    plant.reject_unknown();

    Section exp(root, "experiment");
    auto& e = cfg.experiment;
    exp.get("sample_rate_hz", e.sample_rate_hz);
    exp.get("repetitions", e.repetitions);
    exp.get("ramp_speed", e.ramp_speed);
    exp.get("settle_time", e.settle_time);
    exp.get("commanded_amplitude", e.commanded_amplitude);
    exp.get("z_path_distance", e.z_path_distance);
    exp.get("push_distance", e.push_distance);
    exp.get("jnd_position", e.jnd_position);
    exp.get("jnd_force", e.jnd_force);
    exp.get("workspace_radius", e.workspace_radius);
    exp.get("workspace_grid_steps", e.workspace_grid_steps);
    exp.get("seed", e.seed);
    exp.reject_unknown();

    Section tel(root, "teleop");
    tel.get("cube_center", cfg.teleop.scene.cube_center);
    tel.get("cube_half_extent", cfg.teleop.scene.cube_half_extent);
    tel.get("wall_stiffness", cfg.teleop.scene.wall_stiffness);
    tel.get("force_per_mm", cfg.teleop.force_per_mm);
    tel.get("workspace_radius_mm", cfg.teleop.workspace_radius_mm);
    tel.get("session_rate_hz", cfg.teleop.session_rate_hz);
    tel.reject_unknown();

    cfg.validate();
    return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    return parse_config(in);
}

void write_config(std::ostream& out, const SimulationConfig& cfg) {
    const auto& g = cfg.geometry;
    out << "[geometry]\n"
        << "chamber_offset_d = " << fmt(g.chamber_offset_d) << '\n'
        << "initial_length = " << fmt(g.initial_length) << '\n'
        << "pressure_min = " << fmt(g.pressure_min) << '\n'
        << "pressure_max = " << fmt(g.pressure_max) << '\n'
        << "singularity_offset = " << fmt(g.singularity_offset) << '\n'
        << "preload_pressure = " << fmt(g.preload_pressure) << "\n\n";

    Vec3 slope, intercept;
    for (int i = 0; i < 3; ++i) {
        slope[i] = cfg.actuator.chambers[i].slope;
        intercept[i] = cfg.actuator.chambers[i].intercept;
    }
    const auto& r = cfg.actuator.chambers[0].valid_pressure_range;
    out << "[actuator]\n"
        << "slope = " << fmt(slope) << '\n'
        << "intercept = " << fmt(intercept) << '\n'
        << "valid_pressure_range = " << fmt(r.min) << ", " << fmt(r.max) << "\n\n";

    const auto& c = cfg.controller;
    out << "[controller]\n"
        << "step_scale_c = " << fmt(c.step_scale_c) << '\n'
        << "jacobian_delta = " << fmt(c.jacobian_delta) << '\n'
        << "target_tolerance = " << fmt(c.target_tolerance) << '\n'
        << "max_iterations = " << c.max_iterations << '\n'
        << "damping = " << fmt(c.damping) << '\n'
        << "tracking_tolerance = " << fmt(c.tracking_tolerance) << "\n\n";

    const auto& p = cfg.plant;
    out << "[plant]\n"
        << "regulator_time_constant_tau = " << fmt(p.regulator_time_constant_tau) << '\n'
        << "tick_dt = " << fmt(p.tick_dt) << '\n'
        << "mode = " << to_string(p.mode) << '\n'
        << "block_anchor = " << (p.block_anchor ? fmt(*p.block_anchor) : std::string("preload")) << '\n'
        << "stiffness_lateral = " << fmt(p.stiffness_lateral) << '\n'
        << "stiffness_axial = " << fmt(p.stiffness_axial) << '\n'
        << "chamber_gain_asymmetry = " << fmt(p.chamber_gain_asymmetry) << '\n'
        << "measurement_noise_sigma = " << fmt(p.measurement_noise_sigma) << '\n'
        << "noise_seed = " << p.noise_seed << "\n\n";

    const auto& e = cfg.experiment;
    out << "[experiment]\n"
        << "sample_rate_hz = " << fmt(e.sample_rate_hz) << '\n'
        << "repetitions = " << e.repetitions << '\n'
        << "ramp_speed = " << fmt(e.ramp_speed) << '\n'
        << "settle_time = " << fmt(e.settle_time) << '\n'
        << "commanded_amplitude = " << fmt(e.commanded_amplitude) << '\n'
        << "z_path_distance = " << fmt(e.z_path_distance) << '\n'
        << "push_distance = " << fmt(e.push_distance) << '\n'
        << "jnd_position = " << fmt(e.jnd_position) << '\n'
        << "jnd_force = " << fmt(e.jnd_force) << '\n'
        << "workspace_radius = " << fmt(e.workspace_radius) << '\n'
        << "workspace_grid_steps = " << e.workspace_grid_steps << '\n'
        << "seed = " << e.seed << "\n\n";

    const auto& t = cfg.teleop;
    out << "[teleop]\n"
        << "cube_center = " << fmt(t.scene.cube_center) << '\n'
        << "cube_half_extent = " << fmt(t.scene.cube_half_extent) << '\n'
        << "wall_stiffness = " << fmt(t.scene.wall_stiffness) << '\n'
        << "force_per_mm = " << fmt(t.force_per_mm) << '\n'
        << "workspace_radius_mm = " << fmt(t.workspace_radius_mm) << '\n'
        << "session_rate_hz = " << fmt(t.session_rate_hz) << '\n';
}

void save_config(const std::filesystem::path& path, const SimulationConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw ConfigError("config: cannot write " + path.string());
    write_config(out, cfg);
}

std::string config_hash(const SimulationConfig& cfg) {
    std::ostringstream os;
    write_config(os, cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace softhaptic
