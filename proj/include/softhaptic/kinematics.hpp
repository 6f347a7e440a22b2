#pragma once

// Single-segment constant-curvature model of the three-chamber device.
//
// Frame: origin at the base, z along the device axis, x along the boundary
// between two SPAs. Chamber i's bending direction follows from the phi formula
// below (lengthening chamber 1 alone bends the tip towards -y).

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "softhaptic/actuator.hpp"

namespace softhaptic {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct DeviceGeometry {
    /// Radial distance from the central axis to each chamber centroid. Default
    /// is the centroid of a 120 degree sector of radius 12 mm, 2*12*sin(60)/pi.
    double chamber_offset_d = 6.62;
    /// Nominal chamber length at preload, informational; preload lengths used
    /// by the simulation always come from the actuator map.
    double initial_length = 22.1;
    double pressure_min = 0.0;
    double pressure_max = 50.0;
    /// Added to l1 when the chambers are equal so kappa stays positive.
    double singularity_offset = 1e-4;
    double preload_pressure = 25.0;

    PressureRange pressure_range() const { return {pressure_min, pressure_max}; }
    void validate() const;
};

/// Configuration-space arc (kappa, phi, theta) plus backbone length.
struct ArcParams {
    double kappa = 0.0;            // 1/mm
    double phi = 0.0;              // rad, in (-pi, pi]
    double theta = 0.0;            // rad
    double backbone_length = 0.0;  // mm
    /// Set when the singularity offset was applied; the pose is then the
    /// straight limit and backbone_length is the unperturbed mean.
    bool regularized = false;
};

struct TipPose {
    Mat3 rotation = Mat3::Identity();
    /// Translation of the composed transform, i.e. the control point u.
    Vec3 position = Vec3::Zero();

    const Vec3& control_point() const { return position; }
    Eigen::Matrix4d transform() const;
};

ArcParams arc_params(const ChamberLengths& lengths, const DeviceGeometry& geom);

/// Rz(phi) * [Ry(theta), p]. kappa == 0 on a non-regularized arc is a
/// contract violation and throws InputError.
TipPose tip_pose(const ArcParams& arc);

/// Shorthand for tip_pose(arc_params(l, geom)).position.
Vec3 control_point(const ChamberLengths& lengths, const DeviceGeometry& geom);

/// Pressures -> lengths -> arc -> pose. Out-of-range pressure raises
/// PressureRangeError naming the chamber.
TipPose forward_kinematics(const Pressures& pressures, const DeviceGeometry& geom,
                           const ActuatorModel& actuator);

ChamberLengths preload_lengths(const DeviceGeometry& geom, const ActuatorModel& actuator);
Vec3 preload_tip(const DeviceGeometry& geom, const ActuatorModel& actuator);

struct WorkspacePoint {
    Pressures pressures;
    Vec3 position;
};

struct WorkspaceSweep {
    std::vector<WorkspacePoint> points;
    Vec3 preload_point = Vec3::Zero();
    /// max |u - preload_point| over the grid
    double max_radial_extent = 0.0;
};

/// Full pressure grid over [pressure_min, pressure_max]^3 with grid_steps
/// samples per chamber (grid_steps >= 2).
WorkspaceSweep workspace_sweep(const DeviceGeometry& geom, const ActuatorModel& actuator,
                               int grid_steps);

/// CSV with columns p1_kpa,p2_kpa,p3_kpa,x_mm,y_mm,z_mm.
void write_workspace_csv(std::ostream& out, const WorkspaceSweep& sweep);

}  // namespace softhaptic
