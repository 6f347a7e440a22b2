#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "softhaptic/control.hpp"
#include "softhaptic/kinematics.hpp"
#include "softhaptic/plant.hpp"
#include "softhaptic/teleop.hpp"

namespace softhaptic {

struct ExperimentConfig {
    /// Tracker sampling rate for simulated measurements.
    double sample_rate_hz = 56.0;
    /// Blocked-force pushes are repeated and averaged.
    int repetitions = 3;
    /// Speed at which the commanded point is moved along a path.
    double ramp_speed = 2.0;  // mm/s
    /// Hold time after a path ends or saturates.
    double settle_time = 0.5;  // s
    double commanded_amplitude = 3.0;  // mm, bandwidth sinusoid
    double z_path_distance = 5.0;      // mm, free-motion Z+/Z- targets
    /// Distance of the commanded point for blocked pushes; far enough that a
    /// pressure limit is always reached first.
    double push_distance = 20.0;  // mm
    double jnd_position = 1.74;   // mm
    double jnd_force = 0.224;     // N
    double workspace_radius = 5.0;  // mm
    int workspace_grid_steps = 11;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Everything the library, the experiments and the service read from the
/// shared config file.
struct SimulationConfig {
    DeviceGeometry geometry;
    ActuatorModel actuator;
    ControllerConfig controller;
    PlantConfig plant;
    ExperimentConfig experiment;
    TeleopConfig teleop;

    DeviceModel model() const { return {geometry, actuator}; }
    void validate() const;
};

/// Default configuration; the actuator uses the shared linear fit
/// l = 0.23 p + 16.35 over [0, 50] kPa.
SimulationConfig default_config();

/// INI text with sections [geometry] [actuator] [controller] [plant]
/// [experiment] [teleop]. Missing keys keep their defaults; unknown sections
/// or keys raise ConfigError.
SimulationConfig parse_config(std::istream& in);
SimulationConfig load_config(const std::filesystem::path& path);

/// Canonical INI serialization (every key, fixed order, round-trip precision).
void write_config(std::ostream& out, const SimulationConfig& cfg);
void save_config(const std::filesystem::path& path, const SimulationConfig& cfg);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const SimulationConfig& cfg);

}  // namespace softhaptic
