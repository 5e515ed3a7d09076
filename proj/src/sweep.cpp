#include "sqpack/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace sqpack {

std::vector<double> sweep_points(double x0, double ratio, int count, std::optional<double> frac) {
    std::vector<double> xs;
    for (int k = 0; k < count; ++k) {
        const double v = x0 * std::pow(ratio, k);
        xs.push_back(frac ? std::floor(v) + *frac : v);
    }
    return xs;
}

SweepRow evaluate_naive(double x) {
    SweepRow row;
    row.x = x;
    const Packing p = naive_packing(x);
    row.h = p.h;
    row.waste = waste_by_count(x, p.total_squares());
    row.waste_naive = row.waste;
    return row;
}

SweepRow evaluate_point(double x, const BuildOptions& build, const AuditOptions& audit_options) {
    SweepRow row;
    row.x = x;
    try {
        const Packing p = build_packing(x, build);
        const WasteReport r = audit(p, audit_options);
        row.h = p.h;
        row.theta = p.angles ? p.angles->theta : 0.0;
        row.m = p.m;
        row.strips = 0;
        if (!p.trapezoids.empty()) {
            row.strips = std::numeric_limits<int>::max();
            for (const TrapezoidSummary& t : p.trapezoids) row.strips = std::min(row.strips, static_cast<int>(t.strips.size()));
        }
        row.waste = r.waste_total;
        row.violations = r.overlap_violations + r.containment_violations;
        row.fallback_events = r.fallback_events;
        row.waste_naive = waste_by_count(x, naive_packing(x).total_squares());
        if (!r.agrees()) {
            row.ok = false;
            row.error = "waste totals disagree: count " + std::to_string(r.waste_total) + " vs regions " +
                        std::to_string(r.region_total);
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

std::vector<SweepRow> run_sweep(const std::vector<double>& xs, bool naive, const BuildOptions& build,
                                const AuditOptions& audit_options) {
    std::vector<std::future<SweepRow>> jobs;
    for (const double x : xs) {
        jobs.push_back(std::async(std::launch::async, [=] {
            return naive ? evaluate_naive(x) : evaluate_point(x, build, audit_options);
        }));
    }
    std::vector<SweepRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.x < b.x; });
    return rows;
}

}  // namespace sqpack
