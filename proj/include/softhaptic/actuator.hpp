#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace softhaptic {

/// Per-chamber pressures in kPa.
using Pressures = Eigen::Vector3d;

/// Joint-space vector of the three SPA lengths, mm.
struct ChamberLengths {
    Eigen::Vector3d mm = Eigen::Vector3d::Zero();

    ChamberLengths() = default;
    ChamberLengths(double l1, double l2, double l3) : mm(l1, l2, l3) {}
    explicit ChamberLengths(const Eigen::Vector3d& v) : mm(v) {}

    double operator[](int i) const { return mm[i]; }
    double& operator[](int i) { return mm[i]; }
    bool operator==(const ChamberLengths& o) const { return mm == o.mm; }
};

struct PressureRange {
    double min = 0.0;
    double max = 50.0;

    bool contains(double p) const { return p >= min && p <= max; }
};

/// Linear SPA pressure-to-length map, l = slope * p + intercept.
struct PressureLengthMap {
    double slope = 0.23;       // mm/kPa
    double intercept = 16.35;  // mm
    PressureRange valid_pressure_range{};

    /// Throws InputError if slope <= 0 or the range is empty.
    void validate() const;
};

/// Evaluates the map. Out-of-range pressure raises PressureRangeError; clamping
/// is the caller's business.
double length_from_pressure(const PressureLengthMap& map, double pressure_kpa, int chamber = -1);

/// Inverse map. A length outside the image of the pressure range raises
/// SaturationError carrying the over/under-pressure direction.
double pressure_from_length(const PressureLengthMap& map, double length_mm, int chamber = -1);

struct CalibrationSample {
    double pressure = 0.0;  // kPa
    double length = 0.0;    // mm
};

struct FitResult {
    PressureLengthMap map;
    double residual_rms = 0.0;
};

/// Ordinary least-squares line through the samples.
FitResult fit_pressure_length(std::span<const CalibrationSample> samples,
                              PressureRange range = {});

/// Reads `pressure_kpa,length_mm` rows (header required).
std::vector<CalibrationSample> read_calibration_csv(std::istream& in);

/// Three independent chamber maps; the default shares one fitted line.
struct ActuatorModel {
    std::array<PressureLengthMap, 3> chambers{};

    static ActuatorModel shared(const PressureLengthMap& map) { return {{map, map, map}}; }

    ChamberLengths lengths(const Pressures& p) const;
    Pressures pressures(const ChamberLengths& l) const;
    void validate() const;
};

}  // namespace softhaptic
