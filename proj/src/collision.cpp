#include "sqpack/collision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace sqpack {

namespace {

constexpr double kCell = 2.0;

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
}

Point2 centre(const PlacedSquare& s) {
    const Point2 u = direction(s.angle);
    return s.corner + Point2{u.x - u.y, u.y + u.x} * 0.5;
}

double axis_overlap(const SquareVertices& va, const SquareVertices& vb, Point2 axis) {
    double alo = dot(va[0], axis), ahi = alo, blo = dot(vb[0], axis), bhi = blo;
    for (int i = 1; i < 4; ++i) {
        alo = std::min(alo, dot(va[i], axis));
        ahi = std::max(ahi, dot(va[i], axis));
        blo = std::min(blo, dot(vb[i], axis));
        bhi = std::max(bhi, dot(vb[i], axis));
    }
    return std::min(ahi, bhi) - std::max(alo, blo);
}

}  // namespace

double penetration_depth(const PlacedSquare& a, const PlacedSquare& b) {
    if (norm(centre(a) - centre(b)) >= std::sqrt(2.0)) return 0.0;
    const SquareVertices va = square_vertices(a);
    const SquareVertices vb = square_vertices(b);
    double depth = std::numeric_limits<double>::infinity();
    for (const double ang : {a.angle, b.angle}) {
        const Point2 u = direction(ang);
        depth = std::min({depth, axis_overlap(va, vb, u), axis_overlap(va, vb, {-u.y, u.x})});
    }
    return std::max(depth, 0.0);
}

std::vector<OverlapPair> find_overlaps(std::span<const PlacedSquare> squares, double tol, std::size_t max_report) {
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    grid.reserve(squares.size());
    std::vector<std::pair<std::int64_t, std::int64_t>> cells(squares.size());
    for (std::size_t i = 0; i < squares.size(); ++i) {
        const Point2 c = centre(squares[i]);
        cells[i] = {static_cast<std::int64_t>(std::floor(c.x / kCell)), static_cast<std::int64_t>(std::floor(c.y / kCell))};
        grid[cell_key(cells[i].first, cells[i].second)].push_back(i);
    }
    std::vector<OverlapPair> out;
    for (std::size_t i = 0; i < squares.size() && out.size() < max_report; ++i) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find(cell_key(cells[i].first + dx, cells[i].second + dy));
                if (it == grid.end()) continue;
                for (const std::size_t j : it->second) {
                    if (j <= i) continue;
                    const double d = penetration_depth(squares[i], squares[j]);
                    if (d > tol) out.push_back({i, j, d});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const OverlapPair& p, const OverlapPair& q) {
        return p.a != q.a ? p.a < q.a : p.b < q.b;
    });
    if (out.size() > max_report) out.resize(max_report);
    return out;
}

std::vector<OverlapPair> find_overlaps_brute(std::span<const PlacedSquare> squares, double tol) {
    std::vector<OverlapPair> out;
    for (std::size_t i = 0; i < squares.size(); ++i) {
        for (std::size_t j = i + 1; j < squares.size(); ++j) {
            const double d = penetration_depth(squares[i], squares[j]);
            if (d > tol) out.push_back({i, j, d});
        }
    }
    return out;
}

}  // namespace sqpack
