#include "softhaptic/actuator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "softhaptic/csv.hpp"
#include "softhaptic/errors.hpp"

namespace softhaptic {

void PressureLengthMap::validate() const {
    if (!(slope > 0.0) || !std::isfinite(slope)) throw InputError("pressure-length map: slope must be > 0");
    if (!std::isfinite(intercept)) throw InputError("pressure-length map: non-finite intercept");
    if (!(valid_pressure_range.min < valid_pressure_range.max)) {
        throw InputError("pressure-length map: empty pressure range");
    }
}

double length_from_pressure(const PressureLengthMap& map, double pressure_kpa, int chamber) {
    const auto& r = map.valid_pressure_range;
    if (!std::isfinite(pressure_kpa) || !r.contains(pressure_kpa)) {
        throw PressureRangeError(chamber, pressure_kpa, r.min, r.max);
    }
    return map.slope * pressure_kpa + map.intercept;
}

double pressure_from_length(const PressureLengthMap& map, double length_mm, int chamber) {
    if (!std::isfinite(length_mm)) throw InputError("pressure_from_length: non-finite length");
    const double p = (length_mm - map.intercept) / map.slope;
    // Tolerate round-off at the band edges so that l(p_max) maps back to p_max.
    constexpr double kEdge = 1e-12;
    const auto& r = map.valid_pressure_range;
    const double span = r.max - r.min;
    if (p > r.max + kEdge * span) throw SaturationError(chamber, length_mm, SaturationDirection::over_pressure);
    if (p < r.min - kEdge * span) throw SaturationError(chamber, length_mm, SaturationDirection::under_pressure);
    return std::clamp(p, r.min, r.max);
}

FitResult fit_pressure_length(std::span<const CalibrationSample> samples, PressureRange range) {
    if (samples.size() < 2) throw FitError("pressure-length fit needs at least 2 samples");

    const double n = static_cast<double>(samples.size());
    double mean_p = 0.0, mean_l = 0.0;
    for (const auto& s : samples) {
        if (!std::isfinite(s.pressure) || !std::isfinite(s.length)) {
            throw FitError("pressure-length fit: non-finite sample");
        }
        mean_p += s.pressure;
        mean_l += s.length;
    }
    mean_p /= n;
    mean_l /= n;

    double sxx = 0.0, sxy = 0.0;
    for (const auto& s : samples) {
        sxx += (s.pressure - mean_p) * (s.pressure - mean_p);
        sxy += (s.pressure - mean_p) * (s.length - mean_l);
    }
    if (sxx <= 1e-12 * std::max(1.0, mean_p * mean_p) * n) {
        throw FitError("pressure-length fit: samples do not span distinct pressures");
    }

    FitResult result;
    result.map.slope = sxy / sxx;
    result.map.intercept = mean_l - result.map.slope * mean_p;
    result.map.valid_pressure_range = range;

    double ss = 0.0;
    for (const auto& s : samples) {
        const double r = s.length - (result.map.slope * s.pressure + result.map.intercept);
        ss += r * r;
    }
    result.residual_rms = std::sqrt(ss / n);
    if (!(result.map.slope > 0.0)) {
        throw FitError("pressure-length fit: non-increasing map (slope " +
                           std::to_string(result.map.slope) + ")",
                       result.residual_rms);
    }
    return result;
}

std::vector<CalibrationSample> read_calibration_csv(std::istream& in) {
    const auto table = csv::read(in);
    const auto pc = table.column("pressure_kpa");
    const auto lc = table.column("length_mm");
    std::vector<CalibrationSample> samples;
    samples.reserve(table.rows.size());
    for (const auto& row : table.rows) samples.push_back({row[pc], row[lc]});
    return samples;
}

ChamberLengths ActuatorModel::lengths(const Pressures& p) const {
    ChamberLengths l;
    for (int i = 0; i < 3; ++i) l[i] = length_from_pressure(chambers[i], p[i], i);
    return l;
}

Pressures ActuatorModel::pressures(const ChamberLengths& l) const {
    Pressures p;
    for (int i = 0; i < 3; ++i) p[i] = pressure_from_length(chambers[i], l[i], i);
    return p;
}

void ActuatorModel::validate() const {
    for (const auto& c : chambers) c.validate();
}

}  // namespace softhaptic
