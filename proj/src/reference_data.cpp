#include "softhaptic/reference_data.hpp"

#include <array>

namespace softhaptic {

namespace {

struct Row {
    std::string_view label;
    PathLevel level;
    ReferenceValues values;
};

// Free-motion and blocked-force results of the physical prototype.
constexpr std::array<Row, 26> kRows{{
    {"0", PathLevel::middle, {5.60, 1.13, 0.47, 0.25, 0.07, 0.03}},
    {"30", PathLevel::lower, {3.31, 2.94, 0.59, 0.38, 0.04, 0.02}},
    {"30", PathLevel::middle, {6.00, 1.01, 0.73, 0.37, 0.10, 0.05}},
    {"30", PathLevel::upper, {4.98, 2.31, 0.23, 0.12, 0.14, 0.07}},
    {"60", PathLevel::middle, {5.97, 1.06, 0.92, 0.66, 0.24, 0.14}},
    {"90", PathLevel::lower, {3.97, 2.90, 0.85, 0.51, 0.15, 0.05}},
    {"90", PathLevel::middle, {4.68, 1.32, 0.73, 0.53, 0.09, 0.05}},
    {"90", PathLevel::upper, {4.59, 2.23, 0.55, 0.36, 0.24, 0.13}},
    {"120", PathLevel::middle, {4.48, 1.29, 0.44, 0.29, 0.05, 0.03}},
    {"150", PathLevel::lower, {3.76, 1.94, 0.66, 0.43, 0.27, 0.13}},
    {"150", PathLevel::middle, {5.08, 1.48, 0.47, 0.25, 0.06, 0.04}},
    {"150", PathLevel::upper, {3.96, 2.23, 0.47, 0.35, 0.48, 0.31}},
    {"180", PathLevel::middle, {4.88, 1.36, 0.67, 0.26, 0.30, 0.14}},
    {"210", PathLevel::lower, {3.18, 2.91, 0.63, 0.50, 0.06, 0.03}},
    {"210", PathLevel::middle, {4.84, 1.31, 0.54, 0.28, 0.14, 0.07}},
    {"210", PathLevel::upper, {3.88, 2.45, 0.31, 0.16, 0.28, 0.14}},
    {"240", PathLevel::middle, {5.68, 1.20, 0.46, 0.23, 0.10, 0.06}},
    {"270", PathLevel::lower, {3.99, 2.78, 0.87, 0.50, 0.26, 0.16}},
    {"270", PathLevel::middle, {5.89, 1.09, 0.55, 0.27, 0.13, 0.04}},
    {"270", PathLevel::upper, {4.76, 2.26, 0.41, 0.21, 0.42, 0.20}},
    {"300", PathLevel::middle, {5.75, 1.17, 1.03, 0.55, 0.17, 0.08}},
    {"330", PathLevel::lower, {4.20, 2.79, 0.86, 0.52, 0.10, 0.03}},
    {"330", PathLevel::middle, {5.32, 1.04, 0.82, 0.47, 0.19, 0.06}},
    {"330", PathLevel::upper, {4.83, 2.77, 0.35, 0.16, 0.49, 0.30}},
    {"Z+", PathLevel::z_plus, {9.25, 6.79, 1.61, 0.26, 0.13, 0.05}},
    {"Z-", PathLevel::z_minus, {4.89, 6.01, 1.02, 0.65, 0.27, 0.19}},
}};

}  // namespace

std::optional<ReferenceValues> hardware_reference(PathLevel level, std::string_view label) {
    for (const auto& row : kRows) {
        if (row.level == level && row.label == label) return row.values;
    }
    return std::nullopt;
}

}  // namespace softhaptic
