#include "softhaptic/sine_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "softhaptic/errors.hpp"

namespace softhaptic {

namespace {

using Params = Eigen::Vector4d;  // A, f, phi, x0
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cost(const Params& p, std::span<const double> t, std::span<const double> x) {
    double c = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = x[i] - (p[0] * std::sin(kTwoPi * p[1] * t[i] + p[2]) + p[3]);
        c += r * r;
    }
    return c;
}

double wrap_phase(double phi) {
    phi = std::remainder(phi, kTwoPi);
    if (phi <= -std::numbers::pi) phi += kTwoPi;
    return phi;
}

}  // namespace

double SineFit::operator()(double t) const {
    return amplitude * std::sin(kTwoPi * frequency * t + phase) + offset;
}

SineFit fit_sine(std::span<const double> times, std::span<const double> values, double f_init) {
    if (times.size() != values.size()) throw InputError("fit_sine: times/values size mismatch");
    if (times.size() < 4) throw InputError("fit_sine: need at least 4 samples");
    if (!(f_init > 0.0)) throw InputError("fit_sine: f_init must be > 0");
    const auto [tmin, tmax] = std::minmax_element(times.begin(), times.end());
    if ((*tmax - *tmin) * f_init < 1.0) throw InputError("fit_sine: samples span less than one period");

    const std::size_t n = times.size();
    const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    const double half_pp = 0.5 * (*vmax - *vmin);
    if (!(half_pp > 0.0)) throw FitError("fit_sine: constant signal, frequency is unidentifiable");

    // Phase start: project onto sin/cos at f_init.
    double ss = 0.0, sc = 0.0, cc = 0.0, xs = 0.0, xc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = kTwoPi * f_init * times[i];
        const double s = std::sin(w), c = std::cos(w), r = values[i] - mean;
        ss += s * s;
        sc += s * c;
        cc += c * c;
        xs += r * s;
        xc += r * c;
    }
    const double det = ss * cc - sc * sc;
    double phi0 = 0.0;
    if (std::abs(det) > 0.0) {
        const double a = (xs * cc - xc * sc) / det;  // A cos(phi)
        const double b = (xc * ss - xs * sc) / det;  // A sin(phi)
        phi0 = std::atan2(b, a);
    }

    Params p(half_pp, f_init, phi0, mean);
    double c = cost(p, times, values);
    double lambda = 1e-3;
    int it = 0;
    bool converged = false;
    constexpr int kMaxIterations = 500;

    Eigen::Matrix<double, Eigen::Dynamic, 4> jac(n, 4);
    Eigen::VectorXd res(n);
    for (; it < kMaxIterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double w = kTwoPi * p[1] * times[i] + p[2];
            const double s = std::sin(w), co = std::cos(w);
            res[i] = values[i] - (p[0] * s + p[3]);
            jac(i, 0) = s;
            jac(i, 1) = p[0] * co * kTwoPi * times[i];
            jac(i, 2) = p[0] * co;
            jac(i, 3) = 1.0;
        }
        const Eigen::Matrix4d jtj = jac.transpose() * jac;
        const Params jtr = jac.transpose() * res;
        const double diag_floor = 1e-12 * jtj.diagonal().maxCoeff();

        bool improved = false;
        while (lambda < 1e16) {
            Eigen::Matrix4d a = jtj;
            for (int k = 0; k < 4; ++k) a(k, k) += lambda * std::max(jtj(k, k), diag_floor);
            const Params step = a.ldlt().solve(jtr);
            const Params trial = p + step;
            const double trial_cost = cost(trial, times, values);
            if (std::isfinite(trial_cost) && trial_cost < c) {
                const double rel = (c - trial_cost) / std::max(c, 1e-300);
                const bool tiny_step = step.cwiseAbs().maxCoeff() <=
                                       1e-14 * (p.cwiseAbs().maxCoeff() + 1e-14);
                p = trial;
                c = trial_cost;
                lambda = std::max(lambda / 10.0, 1e-12);
                improved = true;
                if (rel < 1e-15 || tiny_step) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) {
            // No descent direction left: at a (numerical) minimum.
            converged = true;
        }
        if (converged) break;
    }

    const double rms = std::sqrt(c / static_cast<double>(n));
    if (!converged || !p.allFinite()) {
        throw FitError("fit_sine: Levenberg-Marquardt did not converge", rms, it);
    }

    SineFit fit;
    fit.amplitude = p[0];
    fit.frequency = p[1];
    fit.phase = p[2];
    fit.offset = p[3];
    if (fit.frequency < 0.0) {
        // A sin(-w t + phi) = A sin(w t - phi + pi)
        fit.frequency = -fit.frequency;
        fit.phase = std::numbers::pi - fit.phase;
    }
    if (fit.amplitude < 0.0) {
        fit.amplitude = -fit.amplitude;
        fit.phase += std::numbers::pi;
    }
    if (!(fit.frequency > 0.0)) throw FitError("fit_sine: fitted frequency collapsed to zero", rms, it);
    fit.phase = wrap_phase(fit.phase);
    fit.residual_rms = rms;
    fit.iterations = it + 1;
    return fit;
}

double magnitude_ratio(const SineFit& fit, double commanded_amplitude) {
    if (!(commanded_amplitude > 0.0)) throw InputError("magnitude_ratio: commanded amplitude must be > 0");
    return fit.amplitude / commanded_amplitude;
}

}  // namespace softhaptic
