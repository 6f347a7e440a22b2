#pragma once

#include <optional>
#include <string_view>

#include "softhaptic/targets.hpp"

namespace softhaptic {

/// Measured hardware values for one path (ranges as radius from the preload
/// point; errors as mean/std of perpendicular distance). Force errors are in N.
struct ReferenceValues {
    double position_range_mm = 0.0;
    double force_range_n = 0.0;
    double position_error_mean_mm = 0.0;
    double position_error_std_mm = 0.0;
    double force_error_mean_n = 0.0;
    double force_error_std_n = 0.0;
};

inline constexpr std::string_view kReferenceDatasetVersion = "hardware-table-v1";

/// Lookup by level and path label ("0".."330", "Z+", "Z-"). Empty when the
/// hardware campaign has no such path.
std::optional<ReferenceValues> hardware_reference(PathLevel level, std::string_view label);

}  // namespace softhaptic
