#pragma once

#include <stdexcept>

namespace sqpack {

/// The angle equations have no admissible root for the given inputs.
class InfeasibleGeometry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Absolute residual every solved angle must meet.
inline constexpr double kAngleResidualTol = 1e-12;

struct AngleResiduals {
    double theta = 0.0;        ///< n cos(theta) + sin(theta) - h
    double phi = 0.0;          ///< right-angle condition of the first packing algorithm
    double psi = 0.0;          ///< bottom-edge inclination of the first packing algorithm
    double theta_prime = 0.0;  ///< inner wall angle of the second packing algorithm
};

/// Angles of one trapezoid construction, all in radians.
///
///  - theta: inclination of the n-stacks (and of every trapezoid's inclined wall)
///  - phi: inclination of the horizontal stacks that open the first algorithm
///  - psi: inclination of the first algorithm's bottom edge
///  - theta_prime: inclination of the second algorithm's virtual wall
///  - phi_prime: inclination of the second algorithm's bottom edge, psi + theta_prime
struct AngleSet {
    double h = 0.0;
    int n = 0;
    double theta = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    double theta_prime = 0.0;
    double phi_prime = 0.0;
    AngleResiduals residuals;
};

/// n = floor(h) + 2, so that 1 < n - h <= 2.
int default_stack_length(double h);

/// Root of n cos(theta) + sin(theta) = h in (0, pi/4].
/// Throws InfeasibleGeometry when n <= h or no root lies in that interval.
double solve_theta(double h, int n);

/// Root of (1 - tan phi) cos(phi + theta) = 1 - sin(phi + theta) in (0, pi/4],
/// found by bisection. theta == 0 returns 0. Throws InfeasibleGeometry for
/// theta outside [0, pi/4].
double solve_phi(double theta);

/// psi = atan(1 - cos(phi + theta) + (1 - tan phi) sin(phi + theta)) - theta.
double solve_psi(double theta, double phi);

/// theta' = atan(sec psi - 1 + tan psi) - psi.
double solve_theta_prime(double psi);

AngleSet solve_all(double h, int n);
inline AngleSet solve_all(double h) { return solve_all(h, default_stack_length(h)); }

// Residual evaluators, written in cancellation-free form where the naive
// expression loses digits.
double theta_residual(double h, int n, double theta);
double phi_residual(double theta, double phi);
double psi_residual(double theta, double phi, double psi);
double theta_prime_residual(double psi, double theta_prime);

}  // namespace sqpack
