#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sqpack/geometry.hpp"

using namespace sqpack;

namespace {

bool same_vertex_set(const SquareVertices& a, const SquareVertices& b, double tol) {
    for (const Point2& p : a) {
        const bool found = std::any_of(b.begin(), b.end(), [&](const Point2& q) { return norm(p - q) <= tol; });
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("square vertices run counterclockwise from the corner") {
    const SquareVertices v = square_vertices({{2.0, 3.0}, 0.0});
    CHECK(v[0] == Point2{2.0, 3.0});
    CHECK(v[1].x == doctest::Approx(3.0));
    CHECK(v[2].y == doctest::Approx(4.0));
    CHECK(v[3].x == doctest::Approx(2.0));
    CHECK(signed_area(std::vector<Point2>(v.begin(), v.end())) == doctest::Approx(1.0));
}

TEST_CASE("rows and columns step along the base square's edges") {
    const Stack row = make_row({{0.0, 0.0}, 0.3}, 4);
    const Stack col = make_column({{0.0, 0.0}, 0.3}, 4);
    CHECK(norm(row.square(3).corner - Point2{3 * std::cos(0.3), 3 * std::sin(0.3)}) < 1e-15);
    CHECK(norm(col.square(2).corner - Point2{-2 * std::sin(0.3), 2 * std::cos(0.3)}) < 1e-15);
    CHECK_NOTHROW(validate_stack(row));
    CHECK_NOTHROW(validate_stack(col));
    CHECK(expand_stack(row).size() == 4);
    for (int i = 0; i + 1 < 4; ++i) CHECK_FALSE(squares_overlap(row.square(i), row.square(i + 1)));
}

TEST_CASE("malformed stacks are rejected") {
    CHECK_THROWS_AS(validate_stack(Stack{{{0, 0}, 0.0}, {1, 0}, 0}), GeometryError);
    CHECK_THROWS_AS(validate_stack(Stack{{{0, 0}, 0.0}, {1.1, 0}, 2}), GeometryError);
    CHECK_THROWS_AS(validate_stack(Stack{{{0, 0}, 0.0}, {std::sqrt(0.5), std::sqrt(0.5)}, 2}), GeometryError);
}

TEST_CASE("overlap uses penetration depth against the tolerance") {
    const PlacedSquare a{{0.0, 0.0}, 0.0};
    CHECK(squares_overlap(a, a));
    CHECK_FALSE(squares_overlap(a, {{1.0, 0.0}, 0.0}));
    CHECK_FALSE(squares_overlap(a, {{1.0 - 1e-10, 0.0}, 0.0}));
    CHECK(squares_overlap(a, {{1.0 - 1e-8, 0.0}, 0.0}));
    CHECK_FALSE(squares_overlap(a, {{1.0 - 1e-8, 0.0}, 0.0}, 1e-7));
    // A diamond touching the square's right edge at one vertex.
    CHECK_FALSE(squares_overlap(a, {{1.0, 0.5}, -std::numbers::pi / 4}));
    CHECK(squares_overlap(a, {{0.99, 0.5}, -std::numbers::pi / 4}));
    CHECK(convex_overlap(square_polygon(a), rectangle(0.5, 0.5, 3.0, 3.0)));
    CHECK_FALSE(convex_overlap(square_polygon(a), rectangle(1.0, 0.0, 3.0, 3.0)));
}

TEST_CASE("containment allows contact within tolerance") {
    const ConvexPoly box = rectangle(0.0, 0.0, 2.0, 2.0);
    CHECK(contains(box, {{1.0, 1.0}, 0.0}));
    CHECK(contains(box, {{1.0 + 1e-10, 0.0}, 0.0}));
    CHECK_FALSE(contains(box, {{1.0 + 1e-8, 0.0}, 0.0}));
    CHECK_FALSE(contains(box, {{1.0, 1.0}, 0.3}));
    CHECK(contains_point(box, {2.0, 2.0}));
}

TEST_CASE("make_convex validates orientation and convexity") {
    CHECK_THROWS_AS(make_convex({{0, 0}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(make_convex({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(make_convex({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), GeometryError);
    const ConvexPoly p = make_convex({{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
    CHECK(p.vertices.size() == 4);
    CHECK(polygon_area(p) == doctest::Approx(1.0));
}

TEST_CASE("intersection areas match closed forms") {
    const ConvexPoly unit = rectangle(0, 0, 1, 1);
    CHECK(intersection_area(unit, rectangle(0.5, 0.5, 2, 2)) == doctest::Approx(0.25));
    CHECK(intersection_area(unit, rectangle(1, 0, 2, 1)) == doctest::Approx(0.0));
    // Unit square turned 45 degrees about the common centre: a regular octagon
    // of area 2 (sqrt 2 - 1).
    const double r = std::sqrt(0.5);
    const ConvexPoly diamond{{{0.5, 0.5 - r}, {0.5 + r, 0.5}, {0.5, 0.5 + r}, {0.5 - r, 0.5}}};
    CHECK(intersection_area(unit, diamond) == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("clip keeps the requested side") {
    const ConvexPoly unit = rectangle(0, 0, 2, 2);
    const auto loop = clip(unit.vertices, HalfPlane{{1, 0}, 0.5});
    CHECK(signed_area(loop) == doctest::Approx(1.0));
    CHECK(clip(unit.vertices, HalfPlane{{1, 0}, -1}).empty());
}

TEST_CASE("lines") {
    const Line a = descending_line({0, 1}, std::numbers::pi / 4);
    CHECK(a.y_at(1.0) == doctest::Approx(0.0));
    CHECK(a.x_at(-1.0) == doctest::Approx(2.0));
    const auto p = intersect(a, Line{{0, 0}, {1, 1}});
    REQUIRE(p);
    CHECK(p->x == doctest::Approx(0.5));
    CHECK_FALSE(intersect(a, descending_line({5, 5}, std::numbers::pi / 4)));
    CHECK(a.side({0, 0}) < 0.0);
    CHECK(a.left_half().violation({0, 5}) < 0.0);
    CHECK(a.right_half().violation({0, 0}) < 0.0);
}

TEST_CASE("quarter-turn transforms keep squares and normalise angles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-20.0, 20.0), ang(-0.78, 0.78);
    for (int trial = 0; trial < 500; ++trial) {
        const PlacedSquare s{{coord(rng), coord(rng)}, ang(rng)};
        const Rigid t{static_cast<int>(trial % 7) - 3, {coord(rng), coord(rng)}};
        const PlacedSquare u = transform(t, s);
        CHECK(u.angle > -std::numbers::pi / 4 - 1e-12);
        CHECK(u.angle <= std::numbers::pi / 4 + 1e-12);
        SquareVertices moved;
        const SquareVertices orig = square_vertices(s);
        for (int i = 0; i < 4; ++i) moved[i] = t.apply(orig[i]);
        CHECK(same_vertex_set(moved, square_vertices(u), 1e-12));
    }
}

TEST_CASE("rigid composition applies inner then outer") {
    const Rigid inner{1, {2.0, -1.0}};
    const Rigid outer{3, {0.5, 4.0}};
    const Point2 p{1.25, -3.5};
    const Point2 a = inner.then(outer).apply(p);
    const Point2 b = outer.apply(inner.apply(p));
    CHECK(norm(a - b) < 1e-14);
    const ConvexPoly sq = rectangle(0, 0, 1, 2);
    CHECK(signed_area(transform(Rigid{2, {5, 5}}, sq).vertices) == doctest::Approx(2.0));
}

TEST_CASE("bounding boxes") {
    const Box b = bounding_box(square_vertices({{0, 0}, std::numbers::pi / 4}));
    CHECK(b.min_x == doctest::Approx(-std::sqrt(0.5)));
    CHECK(b.max_y == doctest::Approx(std::sqrt(2.0)));
}
