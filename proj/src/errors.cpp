#include "softhaptic/errors.hpp"

#include <sstream>

namespace softhaptic {

namespace {

std::string chamber_label(int chamber) {
    return chamber >= 0 ? "chamber " + std::to_string(chamber + 1) : std::string("chamber");
}

std::string range_message(int chamber, double p, double lo, double hi) {
    std::ostringstream os;
    os << chamber_label(chamber) << ": pressure " << p << " kPa outside [" << lo << ", " << hi
       << "] kPa";
    return os.str();
}

std::string saturation_message(int chamber, double l, SaturationDirection dir) {
    std::ostringstream os;
    os << chamber_label(chamber) << ": length " << l << " mm requires "
       << (dir == SaturationDirection::over_pressure ? "over-pressure" : "under-pressure");
    return os.str();
}

}  // namespace

PressureRangeError::PressureRangeError(int chamber, double pressure_kpa, double min_kpa,
                                       double max_kpa)
    : std::out_of_range(range_message(chamber, pressure_kpa, min_kpa, max_kpa)),
      chamber_(chamber),
      pressure_(pressure_kpa) {}

SaturationError::SaturationError(int chamber, double length_mm, SaturationDirection direction)
    : std::out_of_range(saturation_message(chamber, length_mm, direction)),
      chamber_(chamber),
      length_(length_mm),
      direction_(direction) {}

}  // namespace softhaptic
