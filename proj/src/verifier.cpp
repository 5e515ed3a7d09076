#include "sqpack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace sqpack {

namespace {

constexpr double kZ99 = 2.5758293035489004;

bool inside_square(const PlacedSquare& s, Point2 p) {
    const Point2 u = direction(s.angle);
    const Point2 d = p - s.corner;
    const double a = dot(d, u);
    const double b = cross(u, d);
    return a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0;
}

}  // namespace

VerifyResult verify_packing(std::span<const PlacedSquare> squares, const ConvexPoly& region, double tol) {
    VerifyResult r;
    r.pairs = find_overlaps(squares, tol);
    r.overlap_violations = static_cast<long long>(r.pairs.size());
    for (std::size_t i = 0; i < squares.size(); ++i) {
        if (!contains(region, squares[i], tol)) r.outside.push_back(i);
    }
    r.containment_violations = static_cast<long long>(r.outside.size());
    return r;
}

double waste_by_count(double x, long long total_squares) {
    const double w = x * x - static_cast<double>(total_squares);
    if (w < -1e-9 * std::max(1.0, x * x)) {
        throw InconsistencyError(std::to_string(total_squares) + " unit squares cannot fit in area " +
                                 std::to_string(x * x));
    }
    return std::max(w, 0.0);
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

std::map<std::string, double> waste_by_region(std::span<const LedgerEntry> ledger) {
    std::map<std::string, double> out;
    for (const LedgerEntry& e : ledger) out[e.tag] += e.area;
    return out;
}

std::map<std::string, double> waste_by_region(std::span<const LedgerEntry> ledger, double expected_total) {
    auto out = waste_by_region(ledger);
    double total = 0.0;
    for (const auto& [tag, a] : out) total += a;
    if (relative_gap(total, expected_total) > kWasteAgreementTol) {
        throw InconsistencyError("ledger total " + std::to_string(total) + " differs from " +
                                 std::to_string(expected_total));
    }
    return out;
}

std::vector<PlacedSquare> explicit_squares(const Packing& p, const AuditOptions& options, bool* sampled) {
    std::vector<PlacedSquare> out;
    const int k = p.k;
    if (p.grid_count > 0) {
        if (p.grid_count <= options.grid_limit) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) out.push_back({{double(i), double(j)}, 0.0});
        } else {
            for (int i = 0; i < k; ++i) out.push_back({{double(i), double(k - 1)}, 0.0});
            for (int j = 0; j + 1 < k; ++j) out.push_back({{double(k - 1), double(j)}, 0.0});
        }
    }

    long long inclined = 0;
    for (const TaggedStack& ts : p.stacks)
        if (ts.tag == "stack") inclined += ts.stack.count;
    const bool thin = inclined > options.expand_limit;
    if (sampled) *sampled = thin;

    // Stacks of one rectangle are contiguous; keep both ends of every run.
    std::vector<std::size_t> run_start(p.stacks.size(), 0), run_end(p.stacks.size(), 0);
    for (std::size_t i = 0; i < p.stacks.size();) {
        std::size_t j = i;
        while (j < p.stacks.size() && p.stacks[j].tag == p.stacks[i].tag) ++j;
        for (std::size_t q = i; q < j; ++q) {
            run_start[q] = i;
            run_end[q] = j;
        }
        i = j;
    }
    for (std::size_t i = 0; i < p.stacks.size(); ++i) {
        const TaggedStack& ts = p.stacks[i];
        if (thin && ts.tag == "stack") {
            const std::size_t from_start = i - run_start[i];
            const std::size_t to_end = run_end[i] - 1 - i;
            if (from_start >= 2 && to_end >= 2 && from_start % static_cast<std::size_t>(options.sample_stride) != 0)
                continue;
        }
        for (int q = 0; q < ts.stack.count; ++q) out.push_back(ts.stack.square(q));
    }
    return out;
}

WasteReport audit(const Packing& p, const AuditOptions& options) {
    WasteReport r;
    r.x = p.x;
    r.total_squares = p.total_squares();
    r.fallback_events = p.fallback_events;
    r.waste_total = waste_by_count(p.x, r.total_squares);
    r.waste_by_region = waste_by_region(p.ledger);
    for (const auto& [tag, a] : r.waste_by_region) r.region_total += a;

    const std::vector<PlacedSquare> squares = explicit_squares(p, options, &r.sampled);
    r.checked_squares = static_cast<long long>(squares.size());
    const VerifyResult v = verify_packing(squares, rectangle(0.0, 0.0, p.x, p.x), options.tol);
    r.overlap_violations = v.overlap_violations;
    r.containment_violations = v.containment_violations;
    return r;
}

ExponentFit fit_exponent(std::vector<std::pair<double, double>> points) {
    if (points.size() < 3) throw std::invalid_argument("exponent fit needs at least 3 points");
    for (const auto& [x, w] : points) {
        if (!(x > 0.0) || !(w > 0.0)) {
            throw std::invalid_argument("exponent fit needs positive x and W (got x=" + std::to_string(x) +
                                        ", W=" + std::to_string(w) + ")");
        }
    }
    ExponentFit f;
    f.points = std::move(points);
    const double n = static_cast<double>(f.points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, w] : f.points) {
        mx += std::log(x);
        my += std::log(w);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, w] : f.points) {
        sxx += (std::log(x) - mx) * (std::log(x) - mx);
        sxy += (std::log(x) - mx) * (std::log(w) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("exponent fit needs distinct x values");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (const auto& [x, w] : f.points) {
        const double e = std::log(w) - (f.intercept + f.slope * std::log(x));
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

MonteCarloEstimate monte_carlo_uncovered(std::span<const PlacedSquare> squares, std::span<const Box> boxes,
                                         std::uint64_t samples, std::uint64_t seed) {
    MonteCarloEstimate est;
    est.samples = samples;
    std::vector<double> cumulative;
    for (const Box& b : boxes) {
        est.area += (b.max_x - b.min_x) * (b.max_y - b.min_y);
        cumulative.push_back(est.area);
    }
    if (samples == 0 || !(est.area > 0.0)) return est;

    // Bucket squares by every unit cell their bounding box touches.
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
    auto key = [](std::int64_t cx, std::int64_t cy) {
        return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
    };
    for (std::size_t i = 0; i < squares.size(); ++i) {
        const Box b = bounding_box(square_vertices(squares[i]));
        for (auto cx = static_cast<std::int64_t>(std::floor(b.min_x)); cx <= static_cast<std::int64_t>(std::floor(b.max_x)); ++cx)
            for (auto cy = static_cast<std::int64_t>(std::floor(b.min_y)); cy <= static_cast<std::int64_t>(std::floor(b.max_y)); ++cy)
                cells[key(cx, cy)].push_back(static_cast<std::uint32_t>(i));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t s = 0; s < samples; ++s) {
        const double pick = unit(rng) * est.area;
        const std::size_t bi = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(),
                                     static_cast<std::ptrdiff_t>(boxes.size()) - 1));
        const Box& b = boxes[bi];
        const Point2 p{b.min_x + unit(rng) * (b.max_x - b.min_x), b.min_y + unit(rng) * (b.max_y - b.min_y)};
        bool covered = false;
        const auto it = cells.find(key(static_cast<std::int64_t>(std::floor(p.x)), static_cast<std::int64_t>(std::floor(p.y))));
        if (it != cells.end()) {
            for (const std::uint32_t i : it->second) {
                if (inside_square(squares[i], p)) {
                    covered = true;
                    break;
                }
            }
        }
        if (!covered) ++est.uncovered_hits;
    }
    const double frac = static_cast<double>(est.uncovered_hits) / static_cast<double>(samples);
    est.uncovered = frac * est.area;
    est.half_width = kZ99 * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples)) * est.area;
    return est;
}

}  // namespace sqpack
