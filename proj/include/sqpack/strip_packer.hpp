#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqpack/angle_solver.hpp"
#include "sqpack/coarse_packer.hpp"
#include "sqpack/constants.hpp"
#include "sqpack/geometry.hpp"

namespace sqpack {

/// A snug placement collided with another square, or the construction left
/// the trapezoid. Carries enough context to reproduce the failing step.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, int strip, std::string snapshot)
        : std::runtime_error(what), strip_(strip), snapshot_(std::move(snapshot)) {}
    int strip() const { return strip_; }
    const std::string& snapshot() const { return snapshot_; }

private:
    int strip_;
    std::string snapshot_;
};

/// Where the next strip starts, in the trapezoid frame.
struct StripFrame {
    double wall_x = 0.0;   ///< x of the vertical wall the strip leans on
    Line incline_wall;     ///< real inclined wall, through its bottom end, pointing up
    Line top_edge;         ///< upper boundary, descending to the right
    double top_angle = 0.0;
    double floor_y = 0.0;

    double remaining_height() const { return top_edge.y_at(wall_x) - floor_y; }
    /// Signed distance from `p` to the inclined wall, positive inside.
    double clearance(Point2 p) const;
    std::string describe() const;
};

struct FirstResult {
    int m = 0;
    Point2 opening_corner;        ///< bottom-left of the opening row
    double epsilon = 0.0;         ///< clearance of the opening row's top-right vertex
    std::vector<Stack> rows;      ///< m, m-1, ..., 1 squares, inclined at -phi
    std::vector<Stack> columns;   ///< m, m-1, ..., 1 squares, inclined at theta
    Line shifted_wall;            ///< parallel to the inclined wall, through the opening row's top-right vertex
    Line bottom_edge;             ///< supports the columns' bottom-left vertices, descending at psi
    std::optional<ConvexPoly> gap;  ///< sliver between shifted_wall and the real wall
};

struct SecondResult {
    int m = 0;
    int m_prime = 0;
    double epsilon_prime = 0.0;   ///< clearance of the first row's top-right vertex
    std::vector<Stack> rows;      ///< m+1, m, ..., m+2-m' squares, inclined at -psi
    std::vector<Stack> columns;   ///< axis-aligned columns 2..m'-1 off the wall
    std::vector<Stack> wall_columns;  ///< the two wall columns, down to the floor
    double wall_tops[2] = {0.0, 0.0};
    Line virtual_wall;            ///< through the rows' right ends, at theta' from vertical
    Line bottom_edge;             ///< descending at phi' through the columns' bottom-left vertices
};

/// Width of the opening row of m squares at angle phi, measured along x.
double opening_span(const AngleSet& angles, int m);

/// Narrow-end width that leaves room for the first opening row plus a margin
/// of one unit and one column pitch above it.
double top_width_target(const AngleSet& angles, int m);

/// Smallest m whose first-algorithm bottom edge leaves room for an (m+1)-row
/// in the second algorithm. Independent of the strip position. Throws
/// InfeasibleGeometry when nothing up to 8 * ceil(1 / theta) fits.
int compute_m(const AngleSet& angles);

/// Bottom-left corner of an m-row at angle -phi leaning on `frame`'s vertical
/// wall, pushed up against `frame.top_edge`.
Point2 place_opening_row(const StripFrame& frame, const AngleSet& angles, int m);

FirstResult run_first_algorithm(const StripFrame& frame, const AngleSet& angles, int m);

/// The second algorithm runs under the first's bottom edge; `frame` must carry
/// that edge as its top.
SecondResult run_second_algorithm(const StripFrame& frame, const AngleSet& angles, int m, int m_prime);

/// Bottom edge the second algorithm would leave with m' rows, without placing them.
Line second_bottom_edge(const StripFrame& frame, const AngleSet& angles, int m_prime);

/// Frame whose opening m-row has its bottom-left corner at the origin and
/// touches the inclined wall, with the floor far below.
StripFrame snug_opening_frame(const AngleSet& angles, int m);

struct MPrimeChoice {
    int m_prime = 0;
    double next_epsilon = 0.0;
};

/// Least m' in 1..m after which the next strip's opening row still clears
/// the inclined wall, or nullopt when none does.
std::optional<MPrimeChoice> compute_m_prime(const StripFrame& frame, const AngleSet& angles, int m);

/// Axis-aligned columns of unit squares at x_start, x_start + 1, ... filling a
/// convex region, each bottom-aligned at the lowest admissible height.
std::vector<Stack> pack_columns(const ConvexPoly& region, double x_start);

struct RegionWaste {
    std::string tag;
    int strip = -1;
    ConvexPoly polygon;
    double area = 0.0;
    double covered = 0.0;
    double waste = 0.0;
};

struct StripRecord {
    int index = 0;
    double wall_x = 0.0;
    double height = 0.0;  ///< drop of the top edge at the wall, top of strip to its bottom edge
    FirstResult first;
    SecondResult second;
    double next_epsilon = 0.0;
    long long squares = 0;
};

struct TrapezoidPacking {
    TrapezoidSpec spec;
    AngleSet angles;
    int m = 0;
    double opening_clearance = 0.0;
    std::vector<StripRecord> strips;
    std::vector<Stack> top_band;
    std::vector<Stack> bottom_band;
    std::vector<RegionWaste> regions;
    int fallback_events = 0;
    std::string termination;
    long long square_count = 0;

    /// Every stack in the trapezoid frame, tagged.
    std::vector<std::pair<std::string, Stack>> tagged_stacks() const;
    double waste() const;
};

struct StripOptions {
    bool self_check = true;
    double tol = kDefaultTol;
    int max_strips = 1 << 20;
    /// A strip whose opening clearance exceeds this multiple of theta is not
    /// built; the rest of the trapezoid is packed trivially and the event counted.
    double epsilon_limit = constants::kEpsilon;
};

TrapezoidPacking pack_trapezoid(const TrapezoidSpec& spec, const AngleSet& angles, const StripOptions& options = {});

}  // namespace sqpack
