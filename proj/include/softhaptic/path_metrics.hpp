#pragma once

#include <cstddef>
#include <span>

#include "softhaptic/kinematics.hpp"

namespace softhaptic {

/// Statistics of per-sample perpendicular distances (mm, or N for force paths).
struct PathErrorStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation
    double max = 0.0;
    std::size_t n_samples = 0;
};

/// Perpendicular distance of each sample to the line origin + s * direction.
/// direction must be a unit vector (1e-9); at least 2 samples.
PathErrorStats path_error(std::span<const Vec3> samples, const Vec3& origin, const Vec3& direction);

/// max |s - center|
double radial_range(std::span<const Vec3> samples, const Vec3& center);

}  // namespace softhaptic
