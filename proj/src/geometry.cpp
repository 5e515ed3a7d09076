#include "sqpack/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace sqpack {

namespace {

constexpr double kStepTol = 1e-12;

Point2 rotate_quarter(Point2 v, int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return v;
        case 1: return {-v.y, v.x};
        case 2: return {-v.x, -v.y};
        default: return {v.y, -v.x};
    }
}

void require_polygon(const ConvexPoly& p) {
    if (p.vertices.size() < 3 || !(signed_area(p.vertices) > 0.0)) {
        throw GeometryError("degenerate polygon: need >= 3 counterclockwise vertices with positive area");
    }
}

// Projection interval of a vertex loop on an axis.
std::pair<double, double> project(std::span<const Point2> pts, Point2 axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point2& p : pts) {
        const double d = dot(p, axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

// True when some edge normal of `edges_of` separates a and b up to `tol`.
bool has_separating_axis(std::span<const Point2> edges_of, std::span<const Point2> a,
                         std::span<const Point2> b, double tol) {
    const std::size_t n = edges_of.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e = edges_of[(i + 1) % n] - edges_of[i];
        const double len = norm(e);
        if (len == 0.0) continue;
        const Point2 axis{e.y / len, -e.x / len};
        const auto [alo, ahi] = project(a, axis);
        const auto [blo, bhi] = project(b, axis);
        if (std::min(ahi, bhi) - std::max(alo, blo) <= tol) return true;
    }
    return false;
}

}  // namespace

SquareVertices square_vertices(const PlacedSquare& s) {
    const Point2 u = direction(s.angle);
    const Point2 v{-u.y, u.x};
    return {s.corner, s.corner + u, s.corner + u + v, s.corner + v};
}

Stack make_row(const PlacedSquare& base, int count) {
    return Stack{base, direction(base.angle), count};
}

Stack make_column(const PlacedSquare& base, int count) {
    const Point2 u = direction(base.angle);
    return Stack{base, {-u.y, u.x}, count};
}

void validate_stack(const Stack& st) {
    if (st.count < 1) throw GeometryError("stack count must be >= 1");
    if (std::abs(norm(st.step) - 1.0) > kStepTol) throw GeometryError("stack step must have unit length");
    const Point2 u = direction(st.base.angle);
    const bool along_u = std::abs(cross(st.step, u)) <= kStepTol;
    const bool along_v = std::abs(dot(st.step, u)) <= kStepTol;
    if (!along_u && !along_v) throw GeometryError("stack step must follow an edge of the base square");
}

std::vector<PlacedSquare> expand_stack(const Stack& st) {
    std::vector<PlacedSquare> out;
    out.reserve(static_cast<std::size_t>(std::max(st.count, 0)));
    for (int i = 0; i < st.count; ++i) out.push_back(st.square(i));
    return out;
}

ConvexPoly make_convex(std::vector<Point2> vertices) {
    std::vector<Point2> clean;
    clean.reserve(vertices.size());
    for (const Point2& p : vertices) {
        if (clean.empty() || norm(p - clean.back()) > 1e-12) clean.push_back(p);
    }
    while (clean.size() > 1 && norm(clean.front() - clean.back()) <= 1e-12) clean.pop_back();

    ConvexPoly poly{std::move(clean)};
    require_polygon(poly);
    const std::size_t n = poly.vertices.size();
    double scale = 0.0;
    for (const Point2& p : poly.vertices) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double eps = 1e-12 * std::max(1.0, scale * scale);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly.vertices[i];
        const Point2 b = poly.vertices[(i + 1) % n];
        const Point2 c = poly.vertices[(i + 2) % n];
        if (cross(b - a, c - b) < -eps) throw GeometryError("polygon is not convex");
    }
    return poly;
}

ConvexPoly square_polygon(const PlacedSquare& s) {
    const SquareVertices v = square_vertices(s);
    return ConvexPoly{{v.begin(), v.end()}};
}

ConvexPoly rectangle(double x0, double y0, double x1, double y1) {
    return make_convex({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double signed_area(std::span<const Point2> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) return 0.0;
    // Shift to the first vertex to keep the cross products small.
    const Point2 o = vertices[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(vertices[i] - o, vertices[i + 1] - o);
    return 0.5 * twice;
}

double polygon_area(const ConvexPoly& p) { return std::abs(signed_area(p.vertices)); }

bool convex_overlap(const ConvexPoly& a, const ConvexPoly& b, double tol) {
    require_polygon(a);
    require_polygon(b);
    if (has_separating_axis(a.vertices, a.vertices, b.vertices, tol)) return false;
    if (has_separating_axis(b.vertices, a.vertices, b.vertices, tol)) return false;
    return true;
}

bool squares_overlap(const PlacedSquare& a, const PlacedSquare& b, double tol) {
    const SquareVertices va = square_vertices(a);
    const SquareVertices vb = square_vertices(b);
    const Point2 ca = (va[0] + va[2]) * 0.5;
    const Point2 cb = (vb[0] + vb[2]) * 0.5;
    if (norm(ca - cb) > std::numbers::sqrt2 + tol) return false;
    if (has_separating_axis(va, va, vb, tol)) return false;
    if (has_separating_axis(vb, va, vb, tol)) return false;
    return true;
}

bool contains_point(const ConvexPoly& region, Point2 p, double tol) {
    const std::size_t n = region.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = region.vertices[i];
        const Point2 e = region.vertices[(i + 1) % n] - a;
        if (cross(e, p - a) / norm(e) < -tol) return false;
    }
    return true;
}

bool contains(const ConvexPoly& region, const PlacedSquare& s, double tol) {
    for (const Point2& p : square_vertices(s)) {
        if (!contains_point(region, p, tol)) return false;
    }
    return true;
}

std::vector<Point2> clip(std::span<const Point2> loop, const HalfPlane& hp) {
    std::vector<Point2> out;
    const std::size_t n = loop.size();
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = loop[i];
        const Point2 q = loop[(i + 1) % n];
        const double fp = hp.violation(p);
        const double fq = hp.violation(q);
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) out.push_back(p + (q - p) * (fp / (fp - fq)));
    }
    return out;
}

double intersection_area(const ConvexPoly& a, const ConvexPoly& b) {
    std::vector<Point2> loop = a.vertices;
    const std::size_t n = b.vertices.size();
    for (std::size_t i = 0; i < n && loop.size() >= 3; ++i) {
        const Point2 p = b.vertices[i];
        const Point2 e = b.vertices[(i + 1) % n] - p;
        const HalfPlane hp{{e.y, -e.x}, dot(Point2{e.y, -e.x}, p)};
        loop = clip(loop, hp);
    }
    return loop.size() >= 3 ? std::max(0.0, signed_area(loop)) : 0.0;
}

HalfPlane Line::left_half() const {
    const Point2 nrm{dir.y, -dir.x};
    return {nrm, dot(nrm, point)};
}

HalfPlane Line::right_half() const {
    const Point2 nrm{-dir.y, dir.x};
    return {nrm, dot(nrm, point)};
}

std::optional<Point2> intersect(const Line& a, const Line& b) {
    const double den = cross(a.dir, b.dir);
    if (den == 0.0) return std::nullopt;
    const double t = cross(b.point - a.point, b.dir) / den;
    return a.point + a.dir * t;
}

Point2 Rigid::rotate(Point2 v) const { return rotate_quarter(v, quarter_turns); }

Point2 Rigid::apply(Point2 p) const { return rotate(p) + shift; }

double Rigid::angle() const { return (((quarter_turns % 4) + 4) % 4) * (std::numbers::pi / 2.0); }

Rigid Rigid::then(const Rigid& outer) const {
    return {quarter_turns + outer.quarter_turns, outer.rotate(shift) + outer.shift};
}

PlacedSquare transform(const Rigid& t, const PlacedSquare& s) {
    constexpr double kQuarter = std::numbers::pi / 2.0;
    const double turned = s.angle + t.angle();
    const int r = static_cast<int>(std::ceil((turned - std::numbers::pi / 4.0) / kQuarter));
    const SquareVertices v = square_vertices(s);
    const int corner_index = ((-r % 4) + 4) % 4;
    return {t.apply(v[static_cast<std::size_t>(corner_index)]), turned - r * kQuarter};
}

Stack transform(const Rigid& t, const Stack& st) {
    return {transform(t, st.base), t.rotate(st.step), st.count};
}

ConvexPoly transform(const Rigid& t, const ConvexPoly& p) {
    ConvexPoly out;
    out.vertices.reserve(p.vertices.size());
    for (const Point2& v : p.vertices) out.vertices.push_back(t.apply(v));
    return out;
}

Box bounding_box(const SquareVertices& v) {
    Box b{v[0].x, v[0].y, v[0].x, v[0].y};
    for (const Point2& p : v) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

Box bounding_box(const ConvexPoly& p) {
    Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point2& v : p.vertices) {
        b.min_x = std::min(b.min_x, v.x);
        b.min_y = std::min(b.min_y, v.y);
        b.max_x = std::max(b.max_x, v.x);
        b.max_y = std::max(b.max_y, v.y);
    }
    return b;
}

}  // namespace sqpack
