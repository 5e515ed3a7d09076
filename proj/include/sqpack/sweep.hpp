#pragma once

#include <optional>
#include <vector>

#include "sqpack/io.hpp"
#include "sqpack/packing.hpp"
#include "sqpack/verifier.hpp"

namespace sqpack {

/// x_k = x0 * ratio^k, or floor(x0 * ratio^k) + frac when frac is given.
std::vector<double> sweep_points(double x0, double ratio, int count, std::optional<double> frac = std::nullopt);

/// Builds and audits one point; construction errors become a failed row.
SweepRow evaluate_point(double x, const BuildOptions& build = {}, const AuditOptions& audit_options = {});

/// Waste of the axis-aligned lattice packing, for comparison.
SweepRow evaluate_naive(double x);

/// Evaluates every point concurrently; rows come back sorted by x.
std::vector<SweepRow> run_sweep(const std::vector<double>& xs, bool naive = false, const BuildOptions& build = {},
                                const AuditOptions& audit_options = {});

}  // namespace sqpack
