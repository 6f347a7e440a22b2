#include "softhaptic/control.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "softhaptic/errors.hpp"

namespace softhaptic {

void ControllerConfig::validate() const {
    if (!(step_scale_c > 0.0)) throw InputError("controller: step_scale_c must be > 0");
    if (!(jacobian_delta > 1e-6 && jacobian_delta < 1e-2)) {
        throw InputError("controller: jacobian_delta must be in (1e-6, 1e-2) mm");
    }
    if (!(target_tolerance > 0.0)) throw InputError("controller: target_tolerance must be > 0");
    if (max_iterations < 1) throw InputError("controller: max_iterations must be >= 1");
    if (damping < 0.0) throw InputError("controller: damping must be >= 0");
    if (!(tracking_tolerance > 0.0)) throw InputError("controller: tracking_tolerance must be > 0");
}

void DeviceModel::validate() const {
    geometry.validate();
    actuator.validate();
}

Mat3 numerical_jacobian(const ChamberLengths& lengths, const DeviceGeometry& geom, double delta) {
    if ((lengths.mm.array() - delta <= 0.0).any()) {
        throw InputError("numerical_jacobian: l - delta must stay positive");
    }
    const Vec3 u = control_point(lengths, geom);
    Mat3 j;
    for (int i = 0; i < 3; ++i) {
        ChamberLengths back = lengths;
        back[i] -= delta;
        j.col(i) = (u - control_point(back, geom)) / delta;
    }
    return j;
}

Mat3 pseudo_inverse(const Mat3& jacobian, double damping) {
    if (damping > 0.0) {
        const Mat3 jjt = jacobian * jacobian.transpose() + damping * damping * Mat3::Identity();
        return jacobian.transpose() * jjt.inverse();
    }
    Eigen::JacobiSVD<Mat3> svd(jacobian, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec3& sigma = svd.singularValues();
    const double cutoff = 1e-8 * sigma.maxCoeff();
    Vec3 inv = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        if (sigma[i] > cutoff) inv[i] = 1.0 / sigma[i];
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

namespace {

/// Converts lengths to pressures, clamping any chamber outside the reachable
/// band to its pressure limit. Returns true if a clamp happened.
bool clamp_to_limits(ChamberLengths& lengths, Pressures& pressures, const ActuatorModel& actuator) {
    bool saturated = false;
    for (int i = 0; i < 3; ++i) {
        const auto& map = actuator.chambers[i];
        try {
            pressures[i] = pressure_from_length(map, lengths[i], i);
        } catch (const SaturationError& e) {
            const double limit = e.direction() == SaturationDirection::over_pressure
                                     ? map.valid_pressure_range.max
                                     : map.valid_pressure_range.min;
            pressures[i] = limit;
            lengths[i] = length_from_pressure(map, limit, i);
            saturated = true;
        }
    }
    return saturated;
}

}  // namespace

ControlStepResult rrmc_step(const ChamberLengths& current, const Vec3& target,
                            const ControllerConfig& cfg, const DeviceModel& model) {
    if (!target.allFinite()) throw InputError("rrmc_step: non-finite target");

    const auto& geom = model.geometry;
    const Vec3 u = control_point(current, geom);
    const Vec3 error = target - u;
    const double distance = error.norm();

    ControlStepResult out;
    if (distance <= cfg.target_tolerance) {
        out.new_lengths = current;
        out.saturated = clamp_to_limits(out.new_lengths, out.commanded_pressures, model.actuator);
        out.tip = control_point(out.new_lengths, geom);
        out.error = (target - out.tip).norm();
        out.converged = true;
        return out;
    }

    const Mat3 jacobian = numerical_jacobian(current, geom, cfg.jacobian_delta);
    const Vec3 direction = error / distance;
    const Vec3 rate = pseudo_inverse(jacobian, cfg.damping) * direction;

    // Land on the target instead of stepping past it.
    double scale = cfg.step_scale_c;
    const double task_speed = (jacobian * rate).norm();
    if (task_speed > 0.0 && scale * task_speed > distance) scale = distance / task_speed;

    out.new_lengths = ChamberLengths(current.mm + scale * rate);
    out.saturated = clamp_to_limits(out.new_lengths, out.commanded_pressures, model.actuator);
    out.tip = control_point(out.new_lengths, geom);
    out.error = (target - out.tip).norm();
    return out;
}

Trajectory solve_to_target(const ChamberLengths& start, const Vec3& target,
                           const ControllerConfig& cfg, const DeviceModel& model) {
    if (!target.allFinite()) throw InputError("solve_to_target: non-finite target");
    Trajectory trajectory;
    ChamberLengths lengths = start;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        trajectory.push_back(rrmc_step(lengths, target, cfg, model));
        const auto& last = trajectory.back();
        if (last.converged || last.saturated) return trajectory;
        lengths = last.new_lengths;
    }
    const std::string what = "solve_to_target: no convergence after " + std::to_string(cfg.max_iterations) +
                             " iterations (error " + std::to_string(trajectory.back().error) + " mm)";
    throw NonConvergenceError(what, std::move(trajectory));
}

ResolvedRateController::ResolvedRateController(ControllerConfig cfg, DeviceModel model)
    : ResolvedRateController(cfg, model, preload_lengths(model.geometry, model.actuator)) {}

ResolvedRateController::ResolvedRateController(ControllerConfig cfg, DeviceModel model,
                                               const ChamberLengths& start)
    : cfg_(std::move(cfg)), model_(std::move(model)) {
    cfg_.validate();
    model_.validate();
    reset(start);
}

void ResolvedRateController::reset(const ChamberLengths& lengths) {
    lengths_ = lengths;
    last_ = ControlStepResult{};
    last_.new_lengths = lengths;
    last_.commanded_pressures = model_.actuator.pressures(lengths);
    last_.tip = control_point(lengths, model_.geometry);
    last_.converged = true;
}

const ControlStepResult& ResolvedRateController::step(const Vec3& target) {
    last_ = rrmc_step(lengths_, target, cfg_, model_);
    lengths_ = last_.new_lengths;
    return last_;
}

Trajectory ResolvedRateController::solve(const Vec3& target) {
    auto trajectory = solve_to_target(lengths_, target, cfg_, model_);
    last_ = trajectory.back();
    lengths_ = last_.new_lengths;
    return trajectory;
}

void write_trajectory_csv(std::ostream& out, std::span<const ControlStepResult> trajectory) {
    out << "iter,l1_mm,l2_mm,l3_mm,p1_kpa,p2_kpa,p3_kpa,x_mm,y_mm,z_mm,err_mm,saturated\n";
    const auto old = out.precision(10);
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const auto& s = trajectory[i];
        out << i;
        for (int k = 0; k < 3; ++k) out << ',' << s.new_lengths[k];
        for (int k = 0; k < 3; ++k) out << ',' << s.commanded_pressures[k];
        for (int k = 0; k < 3; ++k) out << ',' << s.tip[k];
        out << ',' << s.error << ',' << (s.saturated ? 1 : 0) << '\n';
    }
    out.precision(old);
}

}  // namespace softhaptic
