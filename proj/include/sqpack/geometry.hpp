#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sqpack {

/// Raised when a geometric input violates a precondition (degenerate
/// polygon, non-unit stack step, ...).
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Contact tolerance used by audits unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    constexpr Point2 operator-() const { return {-x, -y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Unit vector at `angle` radians counterclockwise from +x.
inline Point2 direction(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// A unit square. The pose rotates the axis-aligned square [0,1]^2 about its
/// lower-left corner by `angle` radians (counterclockwise) and then moves that
/// corner to `corner`.
struct PlacedSquare {
    Point2 corner;
    double angle = 0.0;
};

using SquareVertices = std::array<Point2, 4>;

/// Vertices in counterclockwise order, starting at `s.corner`.
SquareVertices square_vertices(const PlacedSquare& s);

/// Arithmetic run of `count` unit squares that share the base pose's angle;
/// square i sits at base.corner + i * step.
struct Stack {
    PlacedSquare base;
    Point2 step;
    int count = 1;

    PlacedSquare square(int i) const { return {base.corner + step * static_cast<double>(i), base.angle}; }
};

/// Squares laid along the base square's bottom edge direction.
Stack make_row(const PlacedSquare& base, int count);
/// Squares laid along the base square's left edge direction.
Stack make_column(const PlacedSquare& base, int count);

/// Throws GeometryError unless consecutive squares of `st` share a full edge.
void validate_stack(const Stack& st);

std::vector<PlacedSquare> expand_stack(const Stack& st);

/// Convex polygon with counterclockwise vertices.
struct ConvexPoly {
    std::vector<Point2> vertices;
};

/// Builds a ConvexPoly, dropping repeated vertices. Throws GeometryError if the
/// result is not a simple counterclockwise convex polygon with >= 3 vertices.
ConvexPoly make_convex(std::vector<Point2> vertices);

ConvexPoly square_polygon(const PlacedSquare& s);
ConvexPoly rectangle(double x0, double y0, double x1, double y1);

/// Shoelace area of the closed vertex loop (signed; positive for CCW).
double signed_area(std::span<const Point2> vertices);
double polygon_area(const ConvexPoly& p);

/// True iff the interiors intersect with penetration depth greater than
/// `tol` on every separating-axis candidate of both polygons.
bool convex_overlap(const ConvexPoly& a, const ConvexPoly& b, double tol = kDefaultTol);

/// Specialisation of convex_overlap for two unit squares.
bool squares_overlap(const PlacedSquare& a, const PlacedSquare& b, double tol = kDefaultTol);

/// True iff every vertex of `s` lies inside `region` or within `tol` of it.
bool contains(const ConvexPoly& region, const PlacedSquare& s, double tol = kDefaultTol);
bool contains_point(const ConvexPoly& region, Point2 p, double tol = kDefaultTol);

/// Half-plane {p : dot(normal, p) <= offset}.
struct HalfPlane {
    Point2 normal;
    double offset = 0.0;

    double violation(Point2 p) const { return dot(normal, p) - offset; }
};

/// Sutherland-Hodgman clip of a convex loop against one half-plane. The
/// result may be empty or degenerate; callers check the area.
std::vector<Point2> clip(std::span<const Point2> loop, const HalfPlane& hp);

/// Area of the intersection of two convex polygons.
double intersection_area(const ConvexPoly& a, const ConvexPoly& b);

/// Infinite line through `point` along `dir` (not necessarily unit length).
struct Line {
    Point2 point;
    Point2 dir;

    double y_at(double x) const { return point.y + (x - point.x) * dir.y / dir.x; }
    double x_at(double y) const { return point.x + (y - point.y) * dir.x / dir.y; }
    /// Positive when `p` lies to the left of the direction of travel.
    double side(Point2 p) const { return cross(dir, p - point) / norm(dir); }
    /// Half-plane of points on the left of the line (or on its right).
    HalfPlane left_half() const;
    HalfPlane right_half() const;
};

std::optional<Point2> intersect(const Line& a, const Line& b);

/// Line through `p` that descends to the right at `angle` radians.
inline Line descending_line(Point2 p, double angle) { return {p, {std::cos(angle), -std::sin(angle)}}; }

/// Proper rigid motion restricted to quarter turns: p -> R(quarter_turns * 90deg) p + shift.
struct Rigid {
    int quarter_turns = 0;
    Point2 shift;

    Point2 apply(Point2 p) const;
    Point2 rotate(Point2 v) const;
    double angle() const;
    Rigid then(const Rigid& outer) const;
};

/// Re-expresses a transformed square with its angle normalised to (-pi/4, pi/4].
PlacedSquare transform(const Rigid& t, const PlacedSquare& s);
Stack transform(const Rigid& t, const Stack& st);
ConvexPoly transform(const Rigid& t, const ConvexPoly& p);

struct Box {
    double min_x, min_y, max_x, max_y;
};

Box bounding_box(const SquareVertices& v);
Box bounding_box(const ConvexPoly& p);

}  // namespace sqpack
