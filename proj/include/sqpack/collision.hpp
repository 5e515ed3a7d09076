#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "sqpack/geometry.hpp"

namespace sqpack {

struct OverlapPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double depth = 0.0;  ///< minimum penetration over all separating-axis candidates
};

/// Penetration depth of two unit squares: the smallest projection overlap over
/// the four edge normals, or 0 when they are separated.
double penetration_depth(const PlacedSquare& a, const PlacedSquare& b);

/// All pairs whose penetration exceeds `tol`, found with a uniform grid of
/// cell size 2 keyed on square centres. Pairs come back with a < b, sorted.
std::vector<OverlapPair> find_overlaps(std::span<const PlacedSquare> squares, double tol = kDefaultTol,
                                       std::size_t max_report = std::numeric_limits<std::size_t>::max());

/// Reference all-pairs scan with the same contract as find_overlaps.
std::vector<OverlapPair> find_overlaps_brute(std::span<const PlacedSquare> squares, double tol = kDefaultTol);

}  // namespace sqpack
