#include "softhaptic/targets.hpp"

#include <cmath>
#include <numbers>

#include "softhaptic/errors.hpp"

namespace softhaptic {

std::string_view to_string(PathLevel level) {
    switch (level) {
        case PathLevel::lower: return "lower";
        case PathLevel::middle: return "middle";
        case PathLevel::upper: return "upper";
        case PathLevel::z_plus: return "z_plus";
        case PathLevel::z_minus: return "z_minus";
    }
    return "unknown";
}

PathLevel parse_path_level(std::string_view text) {
    if (text == "lower") return PathLevel::lower;
    if (text == "middle") return PathLevel::middle;
    if (text == "upper") return PathLevel::upper;
    if (text == "z_plus" || text == "z+" || text == "zplus") return PathLevel::z_plus;
    if (text == "z_minus" || text == "z-" || text == "zminus") return PathLevel::z_minus;
    throw InputError("unknown path level '" + std::string(text) + "'");
}

std::pair<double, double> cos_sin_deg(double angle_deg) {
    const double wrapped = std::fmod(std::fmod(angle_deg, 360.0) + 360.0, 360.0);
    const double steps = wrapped / 30.0;
    if (steps == std::floor(steps)) {
        // cos of k * 30 deg for k = 0..11; sin is cos shifted by 90 deg.
        constexpr double h = std::numbers::sqrt3 / 2.0;
        constexpr double table[12] = {1.0, h, 0.5, 0.0, -0.5, -h, -1.0, -h, -0.5, 0.0, 0.5, h};
        const int k = static_cast<int>(steps);
        return {table[k], table[(k + 9) % 12]};
    }
    const double rad = angle_deg * std::numbers::pi / 180.0;
    return {std::cos(rad), std::sin(rad)};
}

Vec3 circle_target(PathLevel level, double angle_deg) {
    double radius = 0.0, z = 0.0;
    switch (level) {
        case PathLevel::lower: radius = 3.0; z = -2.5; break;
        case PathLevel::middle: radius = 5.0; z = 0.0; break;
        case PathLevel::upper: radius = 3.0; z = 2.5; break;
        default: throw InputError("circle_target: z paths have no circle");
    }
    const auto [c, s] = cos_sin_deg(angle_deg);
    return {radius * c, radius * s, z};
}

PathTargetSet generate_targets(PathLevel level, double z_path_distance_mm) {
    PathTargetSet set;
    set.level = level;
    auto add = [&](double angle) {
        set.targets.push_back(circle_target(level, angle));
        set.angles_deg.push_back(angle);
        set.labels.push_back(std::to_string(static_cast<int>(angle)));
    };
    switch (level) {
        case PathLevel::middle:
            for (int k = 0; k < 12; ++k) add(30.0 * k);
            break;
        case PathLevel::lower:
        case PathLevel::upper:
            for (int k = 0; k < 6; ++k) add(30.0 + 60.0 * k);
            break;
        case PathLevel::z_plus:
            set.targets.emplace_back(0.0, 0.0, z_path_distance_mm);
            set.angles_deg.push_back(0.0);
            set.labels.emplace_back("Z+");
            break;
        case PathLevel::z_minus:
            set.targets.emplace_back(0.0, 0.0, -z_path_distance_mm);
            set.angles_deg.push_back(0.0);
            set.labels.emplace_back("Z-");
            break;
    }
    return set;
}

}  // namespace softhaptic
