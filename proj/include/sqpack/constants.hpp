#pragma once

// Regression constants for the construction's growth bounds. Each was
// measured on the verified sweep x = 50 * 2^k + 0.5 (k = 0..6) and the angle
// range h = 1e2..1e8, then rounded up by about 10%. Measured maxima are noted.

namespace sqpack::constants {

/// epsilon <= kEpsilon * theta for every strip (measured 0.992).
inline constexpr double kEpsilon = 1.1;

/// Waste of one strip <= kStrip / sqrt(theta) (measured 10.89 at x = 3200.5).
inline constexpr double kStrip = 12.0;

/// Waste of one trapezoid <= kTrapezoid * h^(3/4) (measured 6.83 at x = 3200.5).
inline constexpr double kTrapezoid = 7.5;

/// Sliver waste of the inclined stacks <= kStackSlivers * x * theta (measured 1.753).
inline constexpr double kStackSlivers = 2.0;

/// |m - 1/theta| <= kRowLength / phi (measured 1.946 at h = 1e2).
inline constexpr double kRowLength = 2.2;

/// m - m' <= kRowDeficit / phi on the opening strip (measured 3.941 at h = 1e8).
inline constexpr double kRowDeficit = 4.4;

/// phi / sqrt(2 theta) stays in [kPhiRatioLow, kPhiRatioHigh] (measured 0.760..0.990).
inline constexpr double kPhiRatioLow = 0.5;
inline constexpr double kPhiRatioHigh = 1.5;

/// |psi - (phi - theta)|, theta - theta' and phi - phi' are each <= kCubic * phi^3
/// (measured at most 1.45).
inline constexpr double kCubic = 8.0;

}  // namespace sqpack::constants
