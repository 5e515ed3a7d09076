#include "sqpack/angle_solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sqpack {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kPhiLow = 1e-15;
constexpr double kPhiTol = 1e-14;

template <class F>
double bisect_decreasing(F&& f, double lo, double hi, double tol) {
    // f(lo) > 0 >= f(hi)
    for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int default_stack_length(double h) { return static_cast<int>(std::floor(h)) + 2; }

double theta_residual(double h, int n, double theta) {
    // n cos t + sin t - h == (n - h) + sin t - 2 n sin^2(t/2)
    const double s = std::sin(0.5 * theta);
    return (static_cast<double>(n) - h) + std::sin(theta) - 2.0 * n * s * s;
}

double phi_residual(double theta, double phi) {
    return (1.0 - std::tan(phi)) * std::cos(phi + theta) - (1.0 - std::sin(phi + theta));
}

double psi_residual(double theta, double phi, double psi) {
    return 1.0 - std::tan(psi + theta) - std::cos(phi + theta) + (1.0 - std::tan(phi)) * std::sin(phi + theta);
}

double theta_prime_residual(double psi, double theta_prime) {
    return 1.0 / std::cos(psi) - 1.0 + std::tan(psi) - std::tan(psi + theta_prime);
}

double solve_theta(double h, int n) {
    if (!(static_cast<double>(n) > h)) {
        throw InfeasibleGeometry("stack length n=" + std::to_string(n) + " must exceed h=" + std::to_string(h));
    }
    auto g = [&](double t) { return theta_residual(h, n, t); };
    const double at_hi = g(kQuarterPi);
    if (std::abs(at_hi) <= kAngleResidualTol * 1e-3) return kQuarterPi;
    if (at_hi > 0.0) {
        throw InfeasibleGeometry("no stack angle in (0, pi/4] for h=" + std::to_string(h) + ", n=" + std::to_string(n));
    }
    // g rises on (0, atan(1/n)) and falls afterwards; g(0) > 0, so the root is
    // the unique sign change past the maximum.
    const double peak = std::atan(1.0 / n);
    return bisect_decreasing(g, peak, kQuarterPi, 0.0);
}

double solve_phi(double theta) {
    if (theta == 0.0) return 0.0;
    if (!(theta > 0.0 && theta <= kQuarterPi)) {
        throw InfeasibleGeometry("theta=" + std::to_string(theta) + " is outside the supported range (0, pi/4]");
    }
    auto f = [&](double p) { return phi_residual(theta, p); };
    if (!(f(kPhiLow) > 0.0) || f(kQuarterPi) > kAngleResidualTol) {
        throw InfeasibleGeometry("phi bracket failed for theta=" + std::to_string(theta));
    }
    const double phi = bisect_decreasing(f, kPhiLow, kQuarterPi, kPhiTol);
    if (std::abs(f(phi)) > kAngleResidualTol) {
        throw InfeasibleGeometry("phi residual above tolerance for theta=" + std::to_string(theta));
    }
    return phi;
}

double solve_psi(double theta, double phi) {
    const double sum = phi + theta;
    const double psi = std::atan(1.0 - std::cos(sum) + (1.0 - std::tan(phi)) * std::sin(sum)) - theta;
    if (psi < 0.0 || (psi == 0.0 && theta > 0.0)) {
        throw InfeasibleGeometry("psi=" + std::to_string(psi) + " is not positive");
    }
    return psi;
}

double solve_theta_prime(double psi) {
    if (!(psi >= 0.0 && psi < kQuarterPi)) {
        throw InfeasibleGeometry("psi=" + std::to_string(psi) + " is outside [0, pi/4)");
    }
    return std::atan(1.0 / std::cos(psi) - 1.0 + std::tan(psi)) - psi;
}

AngleSet solve_all(double h, int n) {
    AngleSet a;
    a.h = h;
    a.n = n;
    a.theta = solve_theta(h, n);
    a.phi = solve_phi(a.theta);
    a.psi = solve_psi(a.theta, a.phi);
    a.theta_prime = solve_theta_prime(a.psi);
    a.phi_prime = a.psi + a.theta_prime;
    a.residuals.theta = theta_residual(h, n, a.theta);
    a.residuals.phi = phi_residual(a.theta, a.phi);
    a.residuals.psi = psi_residual(a.theta, a.phi, a.psi);
    a.residuals.theta_prime = theta_prime_residual(a.psi, a.theta_prime);
    return a;
}

}  // namespace sqpack
