#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "softhaptic/actuator.hpp"
#include "softhaptic/kinematics.hpp"

namespace softhaptic {

struct ControllerConfig {
    /// Scale of the joint step per iteration, l_{n+1} = l_n + c * ldot.
    double step_scale_c = 10.0;
    /// Backward-difference step for the Jacobian, mm.
    double jacobian_delta = 1e-3;
    double target_tolerance = 0.05;  // mm
    int max_iterations = 100;
    /// Damped least squares when > 0; plain Moore-Penrose pseudoinverse otherwise.
    double damping = 0.0;
    /// Tolerance used when the controller tracks a moving reference once per
    /// plant or session tick (ramps, sinusoids, teleoperation).
    double tracking_tolerance = 0.005;  // mm

    void validate() const;
};

/// Geometry plus the nominal pressure/length maps the controller inverts.
struct DeviceModel {
    DeviceGeometry geometry;
    ActuatorModel actuator;

    void validate() const;
};

struct ControlStepResult {
    ChamberLengths new_lengths;
    Pressures commanded_pressures = Pressures::Zero();
    /// Model tip at new_lengths and its distance to the target.
    Vec3 tip = Vec3::Zero();
    double error = 0.0;
    /// The step started within target_tolerance and commanded zero velocity.
    bool converged = false;
    /// At least one chamber was clamped at a pressure limit.
    bool saturated = false;
};

using Trajectory = std::vector<ControlStepResult>;

/// Column i = (u(l) - u(l - delta e_i)) / delta.
Mat3 numerical_jacobian(const ChamberLengths& lengths, const DeviceGeometry& geom, double delta);

/// SVD pseudoinverse with singular values below 1e-8 * sigma_max dropped,
/// or J^T (J J^T + lambda^2 I)^-1 when damping > 0.
Mat3 pseudo_inverse(const Mat3& jacobian, double damping = 0.0);

ControlStepResult rrmc_step(const ChamberLengths& current, const Vec3& target,
                            const ControllerConfig& cfg, const DeviceModel& model);

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, Trajectory trajectory)
        : std::runtime_error(what), trajectory_(std::move(trajectory)) {}

    const Trajectory& trajectory() const noexcept { return trajectory_; }

private:
    Trajectory trajectory_;
};

/// Iterates rrmc_step until converged or saturated. Throws
/// NonConvergenceError (carrying the trajectory) after max_iterations.
Trajectory solve_to_target(const ChamberLengths& start, const Vec3& target,
                           const ControllerConfig& cfg, const DeviceModel& model);

/// Stateful wrapper: one instance per control session.
class ResolvedRateController {
public:
    ResolvedRateController(ControllerConfig cfg, DeviceModel model);
    ResolvedRateController(ControllerConfig cfg, DeviceModel model, const ChamberLengths& start);

    /// One resolved-rate iteration towards the target.
    const ControlStepResult& step(const Vec3& target);
    /// Iterates to convergence or saturation from the current state.
    Trajectory solve(const Vec3& target);
    void reset(const ChamberLengths& lengths);

    const ChamberLengths& lengths() const { return lengths_; }
    const ControlStepResult& last() const { return last_; }
    const ControllerConfig& config() const { return cfg_; }
    const DeviceModel& model() const { return model_; }

private:
    ControllerConfig cfg_;
    DeviceModel model_;
    ChamberLengths lengths_;
    ControlStepResult last_;
};

/// CSV: iter,l1_mm,l2_mm,l3_mm,p1_kpa,p2_kpa,p3_kpa,x_mm,y_mm,z_mm,err_mm,saturated
void write_trajectory_csv(std::ostream& out, std::span<const ControlStepResult> trajectory);

}  // namespace softhaptic
