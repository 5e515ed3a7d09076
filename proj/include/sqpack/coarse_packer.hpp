#pragma once

#include <string>
#include <vector>

#include "sqpack/angle_solver.hpp"
#include "sqpack/geometry.hpp"

namespace sqpack {

class PlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One end region of a stack rectangle, in its own frame: the vertical wall is
/// the segment x = 0, 0 <= y <= height, the bottom is y = 0 and the inclined
/// wall runs from (bottom_width, 0) up-left at angle theta from vertical.
struct TrapezoidSpec {
    double height = 0.0;
    double incline_angle = 0.0;
    double top_width = 0.0;
    double bottom_width = 0.0;
    ConvexPoly region;
    /// Maps the trapezoid frame into the frame of the owning rectangle.
    Rigid to_rect;

    /// Inclined wall as a line through its bottom end, pointing up.
    Line incline_wall() const;
};

TrapezoidSpec make_trapezoid(double height, double theta, double top_width);

/// Axis-aligned rectangle [0, length] x [0, width] of the stage-1 leftover.
struct StripRect {
    std::string name;
    double length = 0.0;
    double width = 0.0;
    Rigid to_global;
};

struct Stage1 {
    int k = 0;
    double h = 0.0;
    std::vector<StripRect> rects;  ///< top strip (k x h) then side strip (x x h)
};

/// Packs the k x k corner of S(x) on the integer lattice, k = floor(x - h_target),
/// and returns the two width-h rectangles left over.
Stage1 plan_stage1(double x, double h_target);

/// Stacks of one rectangle plus the two end trapezoids they leave.
struct StackPlan {
    int stack_count = 0;
    int n = 0;
    double theta = 0.0;
    double pitch = 0.0;
    std::vector<Stack> stacks;  ///< rectangle frame
    TrapezoidSpec left;
    TrapezoidSpec right;
    ConvexPoly stack_region;  ///< parallelogram covered by the stacks (empty when no stacks)
};

/// Fills a length x width rectangle with n-stacks inclined at theta, keeping
/// both end trapezoids at least `w_target` wide at their narrow end.
StackPlan plan_stacks(double length, double width, double theta, int n, double w_target);

struct CoarsePlan {
    double x = 0.0;
    int k = 0;
    double h = 0.0;
    int n = 0;
    double theta = 0.0;
    long long grid_count = 0;
    double waste_grid_edges = 0.0;
    std::vector<StripRect> rects;
    std::vector<StackPlan> stack_plans;  ///< parallel to rects
};

/// Area of the stack parallelogram not covered by stacks.
double stage2_waste(const StackPlan& plan);
double stage2_waste(const CoarsePlan& plan);

CoarsePlan plan_coarse(double x, double h_target, const AngleSet& angles, double w_target);

}  // namespace sqpack
