#include "sqpack/coarse_packer.hpp"

#include <cmath>
#include <string>

namespace sqpack {

Line TrapezoidSpec::incline_wall() const {
    return {{bottom_width, 0.0}, {-std::sin(incline_angle), std::cos(incline_angle)}};
}

TrapezoidSpec make_trapezoid(double height, double theta, double top_width) {
    TrapezoidSpec t;
    t.height = height;
    t.incline_angle = theta;
    t.top_width = top_width;
    t.bottom_width = top_width + height * std::tan(theta);
    if (top_width > 0.0) {
        t.region = make_convex({{0.0, 0.0}, {t.bottom_width, 0.0}, {top_width, height}, {0.0, height}});
    } else {
        // The inclined wall meets the vertical wall at or below the top.
        const double apex = t.bottom_width / std::tan(theta);
        t.region = make_convex({{0.0, 0.0}, {t.bottom_width, 0.0}, {0.0, std::min(apex, height)}});
    }
    return t;
}

Stage1 plan_stage1(double x, double h_target) {
    if (!(h_target > 2.0) || !(x > h_target)) {
        throw PlanError("need x > h_target > 2 (x=" + std::to_string(x) + ", h_target=" + std::to_string(h_target) + ")");
    }
    Stage1 s;
    s.k = static_cast<int>(std::floor(x - h_target));
    if (s.k < 1) throw PlanError("x=" + std::to_string(x) + " is too small for a stage-1 grid");
    s.h = x - s.k;
    // Top strip sits on the grid; the side strip is the full-height column on
    // the right, turned a quarter so its short side runs along x.
    s.rects.push_back({"top", static_cast<double>(s.k), s.h, Rigid{0, {0.0, static_cast<double>(s.k)}}});
    s.rects.push_back({"side", x, s.h, Rigid{1, {x, 0.0}}});
    return s;
}

StackPlan plan_stacks(double length, double width, double theta, int n, double w_target) {
    StackPlan p;
    p.n = n;
    p.theta = theta;
    p.pitch = 1.0 / std::cos(theta);
    const double lean = width * std::tan(theta);
    const double room = length - 2.0 * w_target - lean;
    if (room < 0.0) {
        throw PlanError("rectangle of length " + std::to_string(length) + " cannot hold two end trapezoids of width " +
                        std::to_string(w_target));
    }
    p.stack_count = static_cast<int>(std::floor(room / p.pitch));
    const double slack = room - p.stack_count * p.pitch;
    const double w_end = w_target + 0.5 * slack;

    p.left = make_trapezoid(width, theta, w_end);
    p.right = make_trapezoid(width, theta, w_end);
    p.right.to_rect = Rigid{2, {length, width}};

    const double x0 = p.left.bottom_width;
    for (int j = 0; j < p.stack_count; ++j) {
        p.stacks.push_back(make_column({{x0 + j * p.pitch, 0.0}, theta}, n));
    }
    if (p.stack_count > 0) {
        const double run = p.stack_count * p.pitch;
        p.stack_region = make_convex({{x0, 0.0}, {x0 + run, 0.0}, {x0 + run - lean, width}, {x0 - lean, width}});
    }
    return p;
}

double stage2_waste(const StackPlan& plan) {
    if (plan.stack_count == 0) return 0.0;
    const double waste = polygon_area(plan.stack_region) - static_cast<double>(plan.stack_count) * plan.n;
    if (waste < -1e-9 * std::max(1.0, polygon_area(plan.stack_region))) {
        throw PlanError("negative stack waste " + std::to_string(waste));
    }
    return waste;
}

double stage2_waste(const CoarsePlan& plan) {
    double total = 0.0;
    for (const StackPlan& p : plan.stack_plans) total += stage2_waste(p);
    return total;
}

CoarsePlan plan_coarse(double x, double h_target, const AngleSet& angles, double w_target) {
    const Stage1 s1 = plan_stage1(x, h_target);
    CoarsePlan plan;
    plan.x = x;
    plan.k = s1.k;
    plan.h = s1.h;
    plan.n = angles.n;
    plan.theta = angles.theta;
    plan.grid_count = static_cast<long long>(s1.k) * s1.k;
    plan.rects = s1.rects;
    for (const StripRect& r : plan.rects) {
        plan.stack_plans.push_back(plan_stacks(r.length, r.width, angles.theta, angles.n, w_target));
    }
    return plan;
}

}  // namespace sqpack
