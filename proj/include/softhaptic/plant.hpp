#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>

#include "softhaptic/control.hpp"
#include "softhaptic/kinematics.hpp"

namespace softhaptic {

enum class PlantMode { free, blocked };

struct PlantConfig {
    /// First-order regulator lag; 0.053 s puts the -3 dB point at 3 Hz.
    double regulator_time_constant_tau = 0.053;
    double tick_dt = 0.01;
    PlantMode mode = PlantMode::free;
    /// Where the tip is held in blocked mode; the preload tip when unset.
    std::optional<Vec3> block_anchor;
    /// Diagonal blocked-state stiffness, N/mm. The defaults are calibrated so
    /// that the model's saturation pushes give 1.01 N on the middle 30 degree
    /// path (7.2488 mm at the first saturated ramp tick) and 6.01 N on Z-
    /// (5.75 mm). See calibrate_block_stiffness.
    double stiffness_lateral = 0.139333;
    double stiffness_axial = 1.045217;
    /// Per-chamber multiplier on the pressure-to-length slope, each in [0.8, 1.2].
    Vec3 chamber_gain_asymmetry = Vec3::Ones();
    /// Gaussian noise on the reported tip position, mm.
    double measurement_noise_sigma = 0.05;
    std::uint64_t noise_seed = 42;

    /// Noise off, unit asymmetry, free mode.
    static PlantConfig ideal();
    void validate() const;
};

struct PlantState {
    Pressures commanded_pressures = Pressures::Zero();
    Pressures actual_pressures = Pressures::Zero();
    ChamberLengths lengths;
    /// Pose the chambers would produce unconstrained (noise-free).
    TipPose tip;
    /// Reported tip position: the block anchor in blocked mode, else the
    /// tip position, plus measurement noise.
    Vec3 measured_position = Vec3::Zero();
    Vec3 block_force = Vec3::Zero();
    double time = 0.0;
    std::uint64_t tick = 0;
};

/// F = diag(k_lat, k_lat, k_ax) (u_free - anchor).
Vec3 block_force(const Vec3& free_tip, const Vec3& anchor, const PlantConfig& cfg);

/// Spreads chamber_gain_asymmetry by 0.2 * severity around 1, drawing from
/// a seeded mt19937_64. severity 0 gives (1, 1, 1).
PlantConfig apply_degradation(const PlantConfig& cfg, double severity, std::uint64_t seed = 42);

/// Lengths the plant's chambers take at the given pressures (asymmetry applied).
ChamberLengths plant_lengths(const Pressures& pressures, const PlantConfig& cfg,
                             const ActuatorModel& actuator);

/// Settled state at the given pressures.
PlantState plant_rest_state(const Pressures& pressures, const PlantConfig& cfg,
                            const DeviceModel& model);

/// Advances one tick. Noise is drawn only when noise_rng is non-null.
PlantState plant_step(const PlantState& state, const Pressures& commanded, const PlantConfig& cfg,
                      const DeviceModel& model, std::mt19937_64* noise_rng = nullptr);

/// One simulated device with its own noise generator.
class Plant {
public:
    /// Starts settled at the preload pressure.
    Plant(PlantConfig cfg, DeviceModel model);

    const PlantState& step(const Pressures& commanded);
    void reset(const Pressures& pressures);

    const PlantState& state() const { return state_; }
    const PlantConfig& config() const { return cfg_; }
    Vec3 anchor() const;

private:
    PlantConfig cfg_;
    DeviceModel model_;
    std::mt19937_64 rng_;
    PlantState state_;
};

/// CSV: t_s,p1_cmd,p2_cmd,p3_cmd,p1_act,p2_act,p3_act,x_mm,y_mm,z_mm,fx_n,fy_n,fz_n
void write_plant_trace_csv(std::ostream& out, std::span<const PlantState> trace);

}  // namespace softhaptic
