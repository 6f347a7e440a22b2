#include "softhaptic/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "softhaptic/errors.hpp"

namespace softhaptic {

namespace {

constexpr double kSmallTheta = 1e-6;

Mat3 rot_z(double a) {
    Mat3 r;
    const double c = std::cos(a), s = std::sin(a);
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
}

Mat3 rot_y(double a) {
    Mat3 r;
    const double c = std::cos(a), s = std::sin(a);
    r << c, 0, s, 0, 1, 0, -s, 0, c;
    return r;
}

}  // namespace

void DeviceGeometry::validate() const {
    if (!(chamber_offset_d > 0.0)) throw InputError("geometry: chamber_offset_d must be > 0");
    if (!(pressure_min < pressure_max)) throw InputError("geometry: pressure_min must be < pressure_max");
    if (!(singularity_offset > 0.0 && singularity_offset < 0.01)) {
        throw InputError("geometry: singularity_offset must be in (0, 0.01) mm");
    }
    if (!(preload_pressure >= pressure_min && preload_pressure <= pressure_max)) {
        throw InputError("geometry: preload_pressure outside the pressure range");
    }
}

Eigen::Matrix4d TipPose::transform() const {
    Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
    t.topLeftCorner<3, 3>() = rotation;
    t.topRightCorner<3, 1>() = position;
    return t;
}

ArcParams arc_params(const ChamberLengths& lengths, const DeviceGeometry& geom) {
    if (!lengths.mm.allFinite()) throw InputError("arc_params: non-finite chamber length");
    if ((lengths.mm.array() <= 0.0).any()) throw InputError("arc_params: chamber lengths must be > 0");

    ArcParams arc;
    arc.backbone_length = lengths.mm.sum() / 3.0;

    Eigen::Vector3d l = lengths.mm;
    if (l.maxCoeff() - l.minCoeff() < geom.singularity_offset) {
        l[0] += geom.singularity_offset;
        arc.regularized = true;
    }
    const double l1 = l[0], l2 = l[1], l3 = l[2];

    // l1^2 + l2^2 + l3^2 - l1 l2 - l1 l3 - l2 l3, written as a sum of squares
    const double radicand = 0.5 * ((l1 - l2) * (l1 - l2) + (l2 - l3) * (l2 - l3) + (l1 - l3) * (l1 - l3));
    const double root = std::sqrt(radicand);
    const double d = geom.chamber_offset_d;

    arc.kappa = 2.0 * root / (d * (l1 + l2 + l3));
    arc.theta = 2.0 * root / (3.0 * d);
    arc.phi = std::atan2(std::numbers::sqrt3 * (l2 + l3 - 2.0 * l1), 3.0 * (l2 - l3));
    if (arc.phi <= -std::numbers::pi) arc.phi = std::numbers::pi;
    return arc;
}

TipPose tip_pose(const ArcParams& arc) {
    TipPose pose;
    const double L = arc.backbone_length;

    if (arc.regularized) {
        pose.rotation = rot_z(arc.phi);
        pose.position = Vec3(0.0, 0.0, L);
        return pose;
    }
    if (!(arc.kappa > 0.0) || !std::isfinite(arc.kappa)) {
        throw InputError("tip_pose: kappa must be > 0 (apply the singularity offset first)");
    }

    double radial = 0.0, axial = 0.0;
    if (arc.theta < kSmallTheta) {
        radial = L * arc.theta / 2.0;
        axial = L * (1.0 - arc.theta * arc.theta / 6.0);
    } else {
        const double r = 1.0 / arc.kappa;
        const double half = std::sin(arc.theta / 2.0);
        radial = r * 2.0 * half * half;  // r (1 - cos theta)
        axial = r * std::sin(arc.theta);
    }

    const Mat3 rz = rot_z(arc.phi);
    pose.rotation = rz * rot_y(arc.theta);
    pose.position = rz * Vec3(radial, 0.0, axial);
    return pose;
}

Vec3 control_point(const ChamberLengths& lengths, const DeviceGeometry& geom) {
    return tip_pose(arc_params(lengths, geom)).position;
}

TipPose forward_kinematics(const Pressures& pressures, const DeviceGeometry& geom,
                           const ActuatorModel& actuator) {
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(pressures[i]) || !geom.pressure_range().contains(pressures[i])) {
            throw PressureRangeError(i, pressures[i], geom.pressure_min, geom.pressure_max);
        }
    }
    return tip_pose(arc_params(actuator.lengths(pressures), geom));
}

ChamberLengths preload_lengths(const DeviceGeometry& geom, const ActuatorModel& actuator) {
    return actuator.lengths(Pressures::Constant(geom.preload_pressure));
}

Vec3 preload_tip(const DeviceGeometry& geom, const ActuatorModel& actuator) {
    return control_point(preload_lengths(geom, actuator), geom);
}

WorkspaceSweep workspace_sweep(const DeviceGeometry& geom, const ActuatorModel& actuator,
                               int grid_steps) {
    if (grid_steps < 2) throw InputError("workspace_sweep: grid_steps must be >= 2");

    WorkspaceSweep sweep;
    sweep.preload_point = preload_tip(geom, actuator);

    std::vector<double> grid(static_cast<std::size_t>(grid_steps));
    const double span = geom.pressure_max - geom.pressure_min;
    for (int k = 0; k < grid_steps; ++k) {
        grid[k] = k == grid_steps - 1 ? geom.pressure_max
                                      : geom.pressure_min + span * k / (grid_steps - 1);
    }

    sweep.points.reserve(grid.size() * grid.size() * grid.size());
    for (double p1 : grid) {
        for (double p2 : grid) {
            for (double p3 : grid) {
                const Pressures p(p1, p2, p3);
                const Vec3 u = forward_kinematics(p, geom, actuator).position;
                sweep.max_radial_extent = std::max(sweep.max_radial_extent, (u - sweep.preload_point).norm());
                sweep.points.push_back({p, u});
            }
        }
    }
    return sweep;
}

void write_workspace_csv(std::ostream& out, const WorkspaceSweep& sweep) {
    out << "p1_kpa,p2_kpa,p3_kpa,x_mm,y_mm,z_mm\n";
    const auto old = out.precision(10);
    for (const auto& pt : sweep.points) {
        out << pt.pressures[0] << ',' << pt.pressures[1] << ',' << pt.pressures[2] << ','
            << pt.position[0] << ',' << pt.position[1] << ',' << pt.position[2] << '\n';
    }
    out.precision(old);
}

}  // namespace softhaptic
