#include "softhaptic/path_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "softhaptic/errors.hpp"

namespace softhaptic {

PathErrorStats path_error(std::span<const Vec3> samples, const Vec3& origin, const Vec3& direction) {
    if (!direction.allFinite() || direction.norm() == 0.0) throw InputError("path_error: zero direction");
    if (std::abs(direction.norm() - 1.0) > 1e-9) throw InputError("path_error: direction is not a unit vector");
    if (samples.size() < 2) throw InputError("path_error: need at least 2 samples");

    PathErrorStats stats;
    stats.n_samples = samples.size();
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& s : samples) {
        const Vec3 rel = s - origin;
        const double dist = (rel - rel.dot(direction) * direction).norm();
        sum += dist;
        stats.max = std::max(stats.max, dist);
    }
    const double n = static_cast<double>(samples.size());
    stats.mean = sum / n;
    for (const auto& s : samples) {
        const Vec3 rel = s - origin;
        const double dev = (rel - rel.dot(direction) * direction).norm() - stats.mean;
        sum_sq += dev * dev;
    }
    stats.std = std::sqrt(sum_sq / (n - 1.0));
    return stats;
}

double radial_range(std::span<const Vec3> samples, const Vec3& center) {
    if (samples.empty()) throw InputError("radial_range: need at least 1 sample");
    double r = 0.0;
    for (const auto& s : samples) r = std::max(r, (s - center).norm());
    return r;
}

}  // namespace softhaptic
