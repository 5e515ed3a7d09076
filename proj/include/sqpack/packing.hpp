#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqpack/angle_solver.hpp"
#include "sqpack/coarse_packer.hpp"
#include "sqpack/geometry.hpp"
#include "sqpack/strip_packer.hpp"

namespace sqpack {

/// Waste charged to one polygon of S(x): its area minus the square area inside it.
struct LedgerEntry {
    std::string tag;
    ConvexPoly polygon;
    double area = 0.0;
    int rect = -1;
    int trapezoid = -1;
    int strip = -1;
};

struct TaggedStack {
    std::string tag;
    Stack stack;
};

struct StripSummary {
    int m_prime = 0;
    double epsilon = 0.0;
    double epsilon_prime = 0.0;
    double height = 0.0;
    double waste = 0.0;
    long long first_squares = 0;
    long long squares = 0;
};

struct TrapezoidSummary {
    int rect = 0;
    int side = 0;  ///< 0 = left end of the rectangle, 1 = right end
    double top_width = 0.0;
    double waste = 0.0;
    long long squares = 0;
    int fallback_events = 0;
    std::string termination;
    std::vector<StripSummary> strips;
};

/// A packing of S(x) in global coordinates. The k x k grid in the lower-left
/// corner is implied by grid_count; everything else is listed as stacks.
struct Packing {
    double x = 0.0;
    double h = 0.0;
    int k = 0;
    std::optional<AngleSet> angles;
    int m = 0;
    long long grid_count = 0;
    std::vector<TaggedStack> stacks;
    std::vector<ConvexPoly> skipped;
    std::vector<LedgerEntry> ledger;
    std::vector<TrapezoidSummary> trapezoids;
    int fallback_events = 0;

    long long total_squares() const;
};

struct BuildOptions {
    std::optional<double> h_target;  ///< defaults to x^(4/5)
    double tol = kDefaultTol;
    bool self_check = true;
};

/// Smallest side length the construction accepts.
inline constexpr double kMinSide = 4.0;

bool is_integer_side(double x);

/// Builds the full packing of S(x). Integer x gives the pure lattice packing.
/// Throws PlanError for x <= kMinSide and propagates ConstructionError.
Packing build_packing(double x, const BuildOptions& options = {});

/// Axis-aligned lattice packing of S(x) with floor(x)^2 squares.
Packing naive_packing(double x);

}  // namespace sqpack
