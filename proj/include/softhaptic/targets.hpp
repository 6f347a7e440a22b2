#pragma once

#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include "softhaptic/kinematics.hpp"

namespace softhaptic {

enum class PathLevel { lower, middle, upper, z_plus, z_minus };

std::string_view to_string(PathLevel level);
/// Accepts lower, middle, upper, z_plus/z+ and z_minus/z-.
PathLevel parse_path_level(std::string_view text);

/// Targets relative to the preload tip. Lower/upper: six points every 60 deg
/// (30..330) on r = 3 mm at z = -/+2.5 mm. Middle: twelve points every 30 deg
/// on r = 5 mm at z = 0. Z paths: one target along +/-z.
struct PathTargetSet {
    PathLevel level = PathLevel::middle;
    std::vector<Vec3> targets;
    std::vector<double> angles_deg;
    std::vector<std::string> labels;
};

PathTargetSet generate_targets(PathLevel level, double z_path_distance_mm = 5.0);

/// Point on a circle level at the given angle; throws InputError for z levels.
Vec3 circle_target(PathLevel level, double angle_deg);

/// (cos, sin) of an angle in degrees, exact for multiples of 30.
std::pair<double, double> cos_sin_deg(double angle_deg);

}  // namespace softhaptic
