#pragma once

#include <stdexcept>
#include <string>

namespace softhaptic {

/// Malformed or non-finite caller input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A pressure outside the configured regulator range.
class PressureRangeError : public std::out_of_range {
public:
    PressureRangeError(int chamber, double pressure_kpa, double min_kpa, double max_kpa);

    /// Zero-based chamber index, or -1 when the map is not tied to a chamber.
    int chamber() const noexcept { return chamber_; }
    double pressure() const noexcept { return pressure_; }

private:
    int chamber_;
    double pressure_;
};

enum class SaturationDirection { over_pressure, under_pressure };

/// A chamber length outside the image of the pressure range.
class SaturationError : public std::out_of_range {
public:
    SaturationError(int chamber, double length_mm, SaturationDirection direction);

    int chamber() const noexcept { return chamber_; }
    double length() const noexcept { return length_; }
    SaturationDirection direction() const noexcept { return direction_; }

private:
    int chamber_;
    double length_;
    SaturationDirection direction_;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double residual_rms = 0.0, int iterations = 0)
        : std::runtime_error(what), residual_rms_(residual_rms), iterations_(iterations) {}

    double residual_rms() const noexcept { return residual_rms_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_rms_;
    int iterations_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace softhaptic
