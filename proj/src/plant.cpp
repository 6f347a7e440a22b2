#include "softhaptic/plant.hpp"

#include <cmath>
#include <ostream>

#include "softhaptic/errors.hpp"

namespace softhaptic {

PlantConfig PlantConfig::ideal() {
    PlantConfig cfg;
    cfg.measurement_noise_sigma = 0.0;
    return cfg;
}

void PlantConfig::validate() const {
    if (!(regulator_time_constant_tau > 0.0)) throw InputError("plant: tau must be > 0");
    if (!(tick_dt > 0.0 && tick_dt < regulator_time_constant_tau / 2.0)) {
        throw InputError("plant: tick_dt must be in (0, tau/2)");
    }
    if (!(stiffness_lateral > 0.0 && stiffness_axial > 0.0)) {
        throw InputError("plant: stiffnesses must be > 0");
    }
    if ((chamber_gain_asymmetry.array() < 0.8).any() || (chamber_gain_asymmetry.array() > 1.2).any()) {
        throw InputError("plant: chamber_gain_asymmetry factors must be in [0.8, 1.2]");
    }
    if (measurement_noise_sigma < 0.0) throw InputError("plant: measurement_noise_sigma must be >= 0");
    if (block_anchor && !block_anchor->allFinite()) throw InputError("plant: non-finite block_anchor");
}

Vec3 block_force(const Vec3& free_tip, const Vec3& anchor, const PlantConfig& cfg) {
    const Vec3 k(cfg.stiffness_lateral, cfg.stiffness_lateral, cfg.stiffness_axial);
    return k.cwiseProduct(free_tip - anchor);
}

PlantConfig apply_degradation(const PlantConfig& cfg, double severity, std::uint64_t seed) {
    if (!(severity >= 0.0 && severity <= 1.0)) throw InputError("apply_degradation: severity must be in [0, 1]");
    PlantConfig out = cfg;
    std::mt19937_64 gen(seed);
    for (int i = 0; i < 3; ++i) {
        // 53-bit uniform in [0, 1); avoids the implementation-defined
        // std::uniform_real_distribution so the triple is portable.
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        out.chamber_gain_asymmetry[i] = 1.0 + 0.2 * severity * (2.0 * u - 1.0);
    }
    return out;
}

ChamberLengths plant_lengths(const Pressures& pressures, const PlantConfig& cfg,
                             const ActuatorModel& actuator) {
    ChamberLengths l;
    for (int i = 0; i < 3; ++i) {
        const auto& map = actuator.chambers[i];
        l[i] = map.intercept + cfg.chamber_gain_asymmetry[i] * map.slope * pressures[i];
    }
    return l;
}

namespace {

void fill_outputs(PlantState& s, const PlantConfig& cfg, const DeviceModel& model,
                  std::mt19937_64* noise_rng) {
    s.lengths = plant_lengths(s.actual_pressures, cfg, model.actuator);
    s.tip = tip_pose(arc_params(s.lengths, model.geometry));
    if (cfg.mode == PlantMode::blocked) {
        const Vec3 anchor = cfg.block_anchor.value_or(preload_tip(model.geometry, model.actuator));
        s.block_force = block_force(s.tip.position, anchor, cfg);
        s.measured_position = anchor;
    } else {
        s.block_force.setZero();
        s.measured_position = s.tip.position;
    }
    if (noise_rng != nullptr && cfg.measurement_noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, cfg.measurement_noise_sigma);
        for (int i = 0; i < 3; ++i) s.measured_position[i] += noise(*noise_rng);
    }
}

void check_command(const Pressures& p, const DeviceGeometry& geom) {
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(p[i]) || !geom.pressure_range().contains(p[i])) {
            throw PressureRangeError(i, p[i], geom.pressure_min, geom.pressure_max);
        }
    }
}

}  // namespace

PlantState plant_rest_state(const Pressures& pressures, const PlantConfig& cfg,
                            const DeviceModel& model) {
    check_command(pressures, model.geometry);
    PlantState s;
    s.commanded_pressures = pressures;
    s.actual_pressures = pressures;
    fill_outputs(s, cfg, model, nullptr);
    return s;
}

PlantState plant_step(const PlantState& state, const Pressures& commanded, const PlantConfig& cfg,
                      const DeviceModel& model, std::mt19937_64* noise_rng) {
    check_command(commanded, model.geometry);

    PlantState next = state;
    next.commanded_pressures = commanded;
    // Exact zero-order-hold discretization of dp/dt = (p_cmd - p) / tau.
    const double alpha = -std::expm1(-cfg.tick_dt / cfg.regulator_time_constant_tau);
    next.actual_pressures = state.actual_pressures + alpha * (commanded - state.actual_pressures);
    next.actual_pressures = next.actual_pressures.cwiseMax(model.geometry.pressure_min)
                                .cwiseMin(model.geometry.pressure_max);
    fill_outputs(next, cfg, model, noise_rng);
    next.tick = state.tick + 1;
    next.time = static_cast<double>(next.tick) * cfg.tick_dt;
    return next;
}

Plant::Plant(PlantConfig cfg, DeviceModel model)
    : cfg_(std::move(cfg)), model_(std::move(model)), rng_(cfg_.noise_seed) {
    cfg_.validate();
    model_.validate();
    reset(Pressures::Constant(model_.geometry.preload_pressure));
}

void Plant::reset(const Pressures& pressures) {
    state_ = plant_rest_state(pressures, cfg_, model_);
}

const PlantState& Plant::step(const Pressures& commanded) {
    state_ = plant_step(state_, commanded, cfg_, model_, &rng_);
    return state_;
}

Vec3 Plant::anchor() const {
    return cfg_.block_anchor.value_or(preload_tip(model_.geometry, model_.actuator));
}

void write_plant_trace_csv(std::ostream& out, std::span<const PlantState> trace) {
    out << "t_s,p1_cmd,p2_cmd,p3_cmd,p1_act,p2_act,p3_act,x_mm,y_mm,z_mm,fx_n,fy_n,fz_n\n";
    const auto old = out.precision(10);
    for (const auto& s : trace) {
        out << s.time;
        for (int k = 0; k < 3; ++k) out << ',' << s.commanded_pressures[k];
        for (int k = 0; k < 3; ++k) out << ',' << s.actual_pressures[k];
        for (int k = 0; k < 3; ++k) out << ',' << s.measured_position[k];
        for (int k = 0; k < 3; ++k) out << ',' << s.block_force[k];
        out << '\n';
    }
    out.precision(old);
}

}  // namespace softhaptic
