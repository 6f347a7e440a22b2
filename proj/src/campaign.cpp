#include "softhaptic/campaign.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "softhaptic/errors.hpp"

namespace softhaptic {

namespace {

/// Outcome of one ramped path through controller and plant.
struct RampRun {
    std::vector<TimedSample> samples;
    bool saturated = false;
};

Vec3 measurement(const PlantState& s, PlantMode mode) {
    return mode == PlantMode::blocked ? s.block_force : s.measured_position;
}

ControllerConfig tracking(const ControllerConfig& c) {
    ControllerConfig out = c;
    out.target_tolerance = c.tracking_tolerance;
    return out;
}

/// Appends samples at multiples of `period` in (t0, t1], linearly
/// interpolating between the values at t0 and t1.
void resample(std::vector<TimedSample>& out, double& next_t, double period, double t0,
              const Vec3& v0, double t1, const Vec3& v1, double from = 0.0) {
    while (next_t <= t1 + 1e-12) {
        if (next_t >= from - 1e-12) {
            const double w = (next_t - t0) / (t1 - t0);
            out.push_back({next_t, v0 + w * (v1 - v0)});
        }
        next_t += period;
    }
}

RampRun run_ramp(const Vec3& offset, PlantMode mode, bool stop_on_saturation,
                 const SimulationConfig& cfg, std::uint64_t seed) {
    const auto model = cfg.model();
    PlantConfig pcfg = cfg.plant;
    pcfg.mode = mode;
    pcfg.noise_seed = seed;
    Plant plant(pcfg, model);
    ResolvedRateController ctl(tracking(cfg.controller), model);

    const Vec3 origin = preload_tip(model.geometry, model.actuator);
    const double length = offset.norm();
    const Vec3 dir = offset / length;
    const double speed = cfg.experiment.ramp_speed;
    const double dt = pcfg.tick_dt;
    const double period = 1.0 / cfg.experiment.sample_rate_hz;

    RampRun run;
    Vec3 prev = measurement(plant.state(), mode);
    run.samples.push_back({0.0, prev});
    double next_sample = period;
    double end_time = std::numeric_limits<double>::infinity();
    const double max_time = length / speed + cfg.experiment.settle_time + 1.0;

    for (std::uint64_t n = 1;; ++n) {
        const double t_cmd = static_cast<double>(n - 1) * dt;
        if (!run.saturated) {
            const double s = std::min(speed * t_cmd, length);
            ctl.solve(origin + s * dir);
            if (ctl.last().saturated && stop_on_saturation) {
                run.saturated = true;
                end_time = t_cmd + cfg.experiment.settle_time;
            } else if (s >= length && !std::isfinite(end_time)) {
                end_time = t_cmd + cfg.experiment.settle_time;
            }
        }
        plant.step(ctl.last().commanded_pressures);
        const double t = plant.state().time;
        const Vec3 v = measurement(plant.state(), mode);
        resample(run.samples, next_sample, period, t - dt, prev, t, v);
        prev = v;
        if (t >= end_time || t > max_time) break;
    }
    return run;
}

PathErrorStats mean_stats(const std::vector<PathErrorStats>& runs) {
    PathErrorStats out;
    for (const auto& r : runs) {
        out.mean += r.mean;
        out.std += r.std;
        out.max += r.max;
        out.n_samples += r.n_samples;
    }
    const double n = static_cast<double>(runs.size());
    out.mean /= n;
    out.std /= n;
    out.max /= n;
    return out;
}

std::vector<Vec3> values_of(const std::vector<TimedSample>& samples) {
    std::vector<Vec3> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.value);
    return v;
}

}  // namespace

ExperimentReport run_path_experiment(PathLevel level, PlantMode mode, const SimulationConfig& cfg) {
    cfg.validate();
    const auto& exp = cfg.experiment;
    const auto model = cfg.model();
    const Vec3 tip0 = preload_tip(model.geometry, model.actuator);
    const auto targets = generate_targets(level, exp.z_path_distance);

    ExperimentReport report;
    report.level = level;
    report.mode = mode;
    report.config_hash = config_hash(cfg);
    report.jnd_threshold = mode == PlantMode::blocked ? exp.jnd_force : exp.jnd_position;

    for (std::size_t i = 0; i < targets.targets.size(); ++i) {
        PathResult path;
        path.label = targets.labels[i];
        path.angle_deg = targets.angles_deg[i];
        path.direction = targets.targets[i].normalized();
        path.target_offset = mode == PlantMode::blocked ? Vec3(path.direction * exp.push_distance)
                                                        : targets.targets[i];
        path.reference = hardware_reference(level, path.label);

        const bool blocked = mode == PlantMode::blocked;
        const Vec3 origin = blocked ? Vec3::Zero() : tip0;
        const int reps = blocked ? exp.repetitions : 1;
        std::vector<PathErrorStats> stats;
        double range_sum = 0.0;
        try {
            for (int r = 0; r < reps; ++r) {
                auto run = run_ramp(path.target_offset, mode, blocked, cfg,
                                    exp.seed + 1000 * i + static_cast<std::uint64_t>(r));
                const auto values = values_of(run.samples);
                stats.push_back(path_error(values, origin, path.direction));
                range_sum += radial_range(values, origin);
                path.saturated = path.saturated || run.saturated;
                if (r == 0) path.samples = std::move(run.samples);
            }
            path.error = mean_stats(stats);
            path.radial_range = range_sum / reps;
            path.above_jnd = path.error.mean > report.jnd_threshold;
        } catch (const std::exception& e) {
            path.completed = false;
            path.failure = e.what();
        }
        report.paths.push_back(std::move(path));
    }
    return report;
}

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

Axis parse_axis(std::string_view text) {
    if (text == "x") return Axis::x;
    if (text == "y") return Axis::y;
    if (text == "z") return Axis::z;
    throw InputError("unknown axis '" + std::string(text) + "'");
}

std::vector<double> bandwidth_frequency_grid() {
    std::vector<double> f{0.1, 0.5};
    for (int k = 2; k <= 8; ++k) f.push_back(0.5 * k);
    for (int hz = 5; hz <= 10; ++hz) f.push_back(hz);
    return f;
}

std::optional<double> minus_3db_crossing(const std::vector<BandwidthRow>& rows) {
    const double threshold = std::numbers::sqrt2 / 2.0;
    const BandwidthRow* prev = nullptr;
    for (const auto& row : rows) {
        if (!row.valid) continue;
        if (prev != nullptr && prev->magnitude_ratio >= threshold && row.magnitude_ratio < threshold) {
            const double l0 = std::log(prev->frequency_hz), l1 = std::log(row.frequency_hz);
            const double w = (prev->magnitude_ratio - threshold) / (prev->magnitude_ratio - row.magnitude_ratio);
            return std::exp(l0 + w * (l1 - l0));
        }
        prev = &row;
    }
    return std::nullopt;
}

BandwidthResult run_bandwidth_experiment(Axis axis, const SimulationConfig& cfg,
                                         const std::vector<double>& frequencies) {
    cfg.validate();
    const auto model = cfg.model();
    const auto& exp = cfg.experiment;
    const int k = static_cast<int>(axis);
    const Vec3 e = Vec3::Unit(k);
    const Vec3 origin = preload_tip(model.geometry, model.actuator);
    const PlantMode mode = cfg.plant.mode;
    const double stiffness = k == 2 ? cfg.plant.stiffness_axial : cfg.plant.stiffness_lateral;

    BandwidthResult result;
    result.axis = axis;
    result.mode = mode;
    result.config_hash = config_hash(cfg);
    result.commanded_amplitude = mode == PlantMode::blocked ? stiffness * exp.commanded_amplitude
                                                            : exp.commanded_amplitude;

    for (std::size_t idx = 0; idx < frequencies.size(); ++idx) {
        const double f = frequencies[idx];
        BandwidthRow row;
        row.frequency_hz = f;
        try {
            PlantConfig pcfg = cfg.plant;
            pcfg.noise_seed = exp.seed + idx;
            Plant plant(pcfg, model);
            ResolvedRateController ctl(tracking(cfg.controller), model);

            const double dt = pcfg.tick_dt;
            const double settle = std::max(1.0, 10.0 * pcfg.regulator_time_constant_tau);
            const double total = settle + std::max(3.0 / f, 2.0);
            const double period = 1.0 / exp.sample_rate_hz;

            auto signal = [&](const PlantState& s) {
                return mode == PlantMode::blocked ? s.block_force[k] : s.measured_position[k] - origin[k];
            };
            std::vector<TimedSample> samples;
            double next_sample = 0.0;
            Vec3 prev = Vec3::Constant(signal(plant.state()));
            for (std::uint64_t n = 0;; ++n) {
                const double t_cmd = static_cast<double>(n) * dt;
                ctl.solve(origin + exp.commanded_amplitude * std::sin(2.0 * std::numbers::pi * f * t_cmd) * e);
                plant.step(ctl.last().commanded_pressures);
                const double t = plant.state().time;
                const Vec3 v = Vec3::Constant(signal(plant.state()));
                resample(samples, next_sample, period, t - dt, prev, t, v, settle);
                prev = v;
                if (t >= total) break;
            }
            std::vector<double> ts, xs;
            for (const auto& s : samples) {
                ts.push_back(s.t);
                xs.push_back(s.value[0]);
            }
            row.fit = fit_sine(ts, xs, f);
            row.magnitude_ratio = magnitude_ratio(row.fit, result.commanded_amplitude);
            row.valid = true;
        } catch (const std::exception& ex) {
            row.valid = false;
            row.error = ex.what();
        }
        result.rows.push_back(row);
    }
    result.crossing_hz = minus_3db_crossing(result.rows);
    return result;
}

double saturation_displacement(const Vec3& direction, const SimulationConfig& cfg) {
    if (!(direction.norm() > 0.0)) throw InputError("saturation_displacement: zero direction");
    const auto model = cfg.model();
    ResolvedRateController ctl(tracking(cfg.controller), model);
    const Vec3 origin = preload_tip(model.geometry, model.actuator);
    const Vec3 dir = direction.normalized();
    const double step = cfg.experiment.ramp_speed * cfg.plant.tick_dt;
    for (double s = step; s <= cfg.experiment.push_distance + 1e-12; s += step) {
        ctl.solve(origin + s * dir);
        if (ctl.last().saturated) return (ctl.last().tip - origin).norm();
    }
    throw InputError("saturation_displacement: no saturation within push_distance");
}

StiffnessCalibration calibrate_block_stiffness(const SimulationConfig& cfg, double lateral_force_n,
                                               double axial_force_n) {
    const Vec3 middle30 = circle_target(PathLevel::middle, 30.0).normalized();
    StiffnessCalibration out;
    out.lateral = lateral_force_n / saturation_displacement(middle30, cfg);
    out.axial = axial_force_n / saturation_displacement(-Vec3::UnitZ(), cfg);
    return out;
}

CampaignSummary run_full_campaign(const SimulationConfig& cfg) {
    CampaignSummary summary;
    summary.config_hash = config_hash(cfg);
    for (PlantMode mode : {PlantMode::free, PlantMode::blocked}) {
        for (PathLevel level : {PathLevel::lower, PathLevel::middle, PathLevel::upper,
                                PathLevel::z_plus, PathLevel::z_minus}) {
            summary.paths.push_back(run_path_experiment(level, mode, cfg));
        }
    }
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
        summary.bandwidth.push_back(run_bandwidth_experiment(axis, cfg));
    }
    summary.workspace_extent_mm =
        workspace_sweep(cfg.geometry, cfg.actuator, cfg.experiment.workspace_grid_steps).max_radial_extent;
    return summary;
}

}  // namespace softhaptic
