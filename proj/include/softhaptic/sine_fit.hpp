#pragma once

#include <span>

namespace softhaptic {

/// x(t) = A sin(2 pi f t + phi) + x0
struct SineFit {
    double amplitude = 0.0;  // >= 0
    double frequency = 0.0;  // Hz, > 0
    double phase = 0.0;      // rad, (-pi, pi]
    double offset = 0.0;
    double residual_rms = 0.0;
    int iterations = 0;

    double operator()(double t) const;
};

/// Levenberg-Marquardt fit over (A, f, phi, x0), started from f_init, the
/// signal mean and half the peak-to-peak. Needs >= 4 samples spanning at
/// least one period of f_init. Throws FitError when the fitter fails or the
/// signal is constant.
SineFit fit_sine(std::span<const double> times, std::span<const double> values, double f_init);

/// A / A_c
double magnitude_ratio(const SineFit& fit, double commanded_amplitude);

}  // namespace softhaptic
