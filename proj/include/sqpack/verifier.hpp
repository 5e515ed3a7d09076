#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqpack/collision.hpp"
#include "sqpack/geometry.hpp"
#include "sqpack/packing.hpp"

namespace sqpack {

/// Two waste computations that should agree do not.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Relative tolerance for agreement between the count and region waste totals.
inline constexpr double kWasteAgreementTol = 1e-6;

struct VerifyResult {
    long long overlap_violations = 0;
    long long containment_violations = 0;
    std::vector<OverlapPair> pairs;        ///< sorted by (a, b)
    std::vector<std::size_t> outside;      ///< sorted
};

/// Pairwise disjointness (spatial hash) and containment in `region` at `tol`.
VerifyResult verify_packing(std::span<const PlacedSquare> squares, const ConvexPoly& region, double tol = kDefaultTol);

/// x^2 - total_squares. Throws InconsistencyError when negative beyond rounding.
double waste_by_count(double x, long long total_squares);

/// Ledger areas summed per tag.
std::map<std::string, double> waste_by_region(std::span<const LedgerEntry> ledger);

/// Same, and throws InconsistencyError unless the sum matches `expected_total`
/// within kWasteAgreementTol relative (absolute below 1).
std::map<std::string, double> waste_by_region(std::span<const LedgerEntry> ledger, double expected_total);

double relative_gap(double a, double b);

struct WasteReport {
    double x = 0.0;
    long long total_squares = 0;
    double waste_total = 0.0;    ///< by count
    double region_total = 0.0;   ///< by ledger polygons
    std::map<std::string, double> waste_by_region;
    long long overlap_violations = 0;
    long long containment_violations = 0;
    int fallback_events = 0;
    long long checked_squares = 0;
    bool sampled = false;        ///< only part of the inclined stacks was expanded

    bool agrees() const { return relative_gap(waste_total, region_total) <= kWasteAgreementTol; }
    bool clean() const { return overlap_violations == 0 && containment_violations == 0 && fallback_events == 0; }
};

struct AuditOptions {
    double tol = kDefaultTol;
    /// Inclined stacks are expanded in full up to this many squares, otherwise
    /// the two stacks at each end of every rectangle plus every stride-th.
    long long expand_limit = 6'000'000;
    int sample_stride = 16;
    /// The grid is expanded in full up to this many squares, otherwise only its
    /// last row and column.
    long long grid_limit = 250'000;
};

/// Squares the audit checks explicitly; `sampled` reports whether stacks were thinned.
std::vector<PlacedSquare> explicit_squares(const Packing& p, const AuditOptions& options, bool* sampled = nullptr);

/// Full audit of a packing from its serialisable fields only.
WasteReport audit(const Packing& p, const AuditOptions& options = {});

struct ExponentFit {
    std::vector<std::pair<double, double>> points;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Ordinary least squares of log W on log x. Throws std::invalid_argument
/// for fewer than 3 points or any nonpositive value.
ExponentFit fit_exponent(std::vector<std::pair<double, double>> points);

struct MonteCarloEstimate {
    std::uint64_t samples = 0;
    std::uint64_t uncovered_hits = 0;
    double area = 0.0;         ///< total sampled area
    double uncovered = 0.0;    ///< estimated uncovered area
    double half_width = 0.0;   ///< 99% normal-approximation half width
};

/// Uncovered area of the union of disjoint axis boxes, estimated by uniform
/// sampling against `squares`. Deterministic for a given seed.
MonteCarloEstimate monte_carlo_uncovered(std::span<const PlacedSquare> squares, std::span<const Box> boxes,
                                         std::uint64_t samples, std::uint64_t seed);

}  // namespace sqpack
