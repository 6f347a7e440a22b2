#pragma once

// Independent reference computations for the tests. None of these call into
// the library's kinematics; they are derived from the arc geometry directly.

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <utility>
#include <vector>

namespace oracle {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double pi = std::numbers::pi;

/// Angular position of each chamber around the axis. A chamber on the
/// outside of the bend is longer: l_i = L - theta * d * cos(psi_i - phi).
inline constexpr std::array<double, 3> kChamberAngle{pi / 2.0, 7.0 * pi / 6.0, -pi / 6.0};

inline Vec3 lengths_for_arc(double length, double theta, double phi, double d) {
    Vec3 l;
    for (int i = 0; i < 3; ++i) l[i] = length - theta * d * std::cos(kChamberAngle[i] - phi);
    return l;
}

/// Tip of a constant-curvature backbone by Simpson integration of its tangent.
inline Vec3 integrate_backbone(double length, double theta, double phi, int intervals = 2000) {
    const double kappa = theta / length;
    auto tangent = [&](double s) {
        const double a = kappa * s;
        return Vec3(std::sin(a) * std::cos(phi), std::sin(a) * std::sin(phi), std::cos(a));
    };
    const double h = length / intervals;
    Vec3 sum = tangent(0.0) + tangent(length);
    for (int k = 1; k < intervals; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * tangent(k * h);
    return sum * h / 3.0;
}

/// Central-difference Jacobian of any R^3 -> R^3 map.
template <class F>
Mat3 central_jacobian(F&& f, const Vec3& x, double h) {
    Mat3 j;
    for (int i = 0; i < 3; ++i) {
        Vec3 a = x, b = x;
        a[i] += h;
        b[i] -= h;
        j.col(i) = (f(a) - f(b)) / (2.0 * h);
    }
    return j;
}

/// Pseudoinverse by explicit SVD with a relative cutoff.
inline Mat3 svd_pinv(const Mat3& j, double rcond = 1e-8) {
    Eigen::JacobiSVD<Mat3> svd(j, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Vec3 inv = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        if (s[i] > rcond * s[0]) inv[i] = 1.0 / s[i];
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Brute-force distance from p to the line o + t d, via the minimizing t.
inline double point_line_distance(const Vec3& p, const Vec3& o, const Vec3& d) {
    const double t = (p - o).dot(d) / d.dot(d);
    return (p - (o + t * d)).norm();
}

/// Ordinary least squares through the normal equations.
inline std::pair<double, double> ols(const std::vector<double>& x, const std::vector<double>& y) {
    Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
    Eigen::Vector2d b = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        a(0, 0) += x[i] * x[i];
        a(0, 1) += x[i];
        a(1, 1) += 1.0;
        b[0] += x[i] * y[i];
        b[1] += y[i];
    }
    a(1, 0) = a(0, 1);
    const Eigen::Vector2d c = a.ldlt().solve(b);
    return {c[0], c[1]};
}

/// Exact response amplitude of the sampled first-order lag
/// p[n+1] = p[n] + alpha (u[n] - p[n]) at frequency f.
inline double discrete_lag_gain(double f, double tau, double dt) {
    const double alpha = -std::expm1(-dt / tau);
    const double w = 2.0 * pi * f * dt;
    const double re = std::cos(w) - (1.0 - alpha);
    const double im = std::sin(w);
    return alpha / std::hypot(re, im);
}

/// Small hand-rolled generator set for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    double normal(double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng); }
    Vec3 vec(double a, double b) { return {uniform(a, b), uniform(a, b), uniform(a, b)}; }
    /// Uniform in a ball.
    Vec3 in_ball(double r) {
        for (;;) {
            Vec3 v = vec(-r, r);
            if (v.norm() <= r) return v;
        }
    }
    Vec3 unit() {
        for (;;) {
            Vec3 v(normal(1.0), normal(1.0), normal(1.0));
            if (v.norm() > 1e-6) return v.normalized();
        }
    }
    /// Chamber lengths inside the default reachable band [16.35, 27.85] mm,
    /// spread at least `min_spread` so the arc is bent.
    Vec3 bent_lengths(double min_spread = 0.05) {
        for (;;) {
            Vec3 l = vec(16.4, 27.8);
            if (l.maxCoeff() - l.minCoeff() >= min_spread) return l;
        }
    }
    Mat3 rotation() {
        const Vec3 axis = unit();
        return Eigen::AngleAxisd(uniform(-pi, pi), axis).toRotationMatrix();
    }
};

}  // namespace oracle

namespace oracle {

/// Closed-form tip from chamber lengths, via a least-squares fit of the
/// chamber-angle model rather than the arctangent formulas.
inline Vec3 tip_from_lengths(const Vec3& l, double d) {
    const double length = l.mean();
    double a = 0.0, b = 0.0;
    for (int i = 0; i < 3; ++i) {
        a -= (l[i] - length) * std::cos(kChamberAngle[i]);
        b -= (l[i] - length) * std::sin(kChamberAngle[i]);
    }
    a *= 2.0 / (3.0 * d);
    b *= 2.0 / (3.0 * d);
    const double theta = std::hypot(a, b);
    if (theta < 1e-12) return {0.0, 0.0, length};
    const double phi = std::atan2(b, a);
    const double r = length / theta;
    const double lateral = r * (1.0 - std::cos(theta));
    return {lateral * std::cos(phi), lateral * std::sin(phi), r * std::sin(theta)};
}

}  // namespace oracle
