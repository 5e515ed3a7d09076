#include "sqpack/packing.hpp"

#include <cmath>
#include <string>

namespace sqpack {

namespace {

std::string region_tag(const std::string& tag) {
    if (tag == "top-band") return "trivial-bands";
    if (tag == "bottom-band") return "bottom-remainder";
    return "strip-" + tag;
}

void add_trapezoid(Packing& out, const TrapezoidSpec& spec, const Rigid& to_global, const AngleSet& angles,
                   const BuildOptions& options, int rect, int side) {
    StripOptions so;
    so.tol = options.tol;
    so.self_check = options.self_check;
    const TrapezoidPacking tp = pack_trapezoid(spec, angles, so);
    const Rigid t = spec.to_rect.then(to_global);
    const int index = static_cast<int>(out.trapezoids.size());

    for (const auto& [tag, st] : tp.tagged_stacks()) out.stacks.push_back({tag, transform(t, st)});
    for (const StripRecord& rec : tp.strips) {
        if (rec.first.gap) out.skipped.push_back(transform(t, *rec.first.gap));
    }

    TrapezoidSummary summary;
    summary.rect = rect;
    summary.side = side;
    summary.top_width = spec.top_width;
    summary.waste = tp.waste();
    summary.squares = tp.square_count;
    summary.fallback_events = tp.fallback_events;
    summary.termination = tp.termination;
    for (const StripRecord& rec : tp.strips) {
        StripSummary s;
        s.m_prime = rec.second.m_prime;
        s.epsilon = rec.first.epsilon;
        s.epsilon_prime = rec.second.epsilon_prime;
        s.height = rec.height;
        s.squares = rec.squares;
        for (const Stack& st : rec.first.rows) s.first_squares += st.count;
        for (const Stack& st : rec.first.columns) s.first_squares += st.count;
        summary.strips.push_back(s);
    }
    for (const RegionWaste& rw : tp.regions) {
        if (rw.strip >= 0) summary.strips[static_cast<std::size_t>(rw.strip)].waste += rw.waste;
        out.ledger.push_back({region_tag(rw.tag), transform(t, rw.polygon), rw.waste, rect, index, rw.strip});
    }
    out.fallback_events += tp.fallback_events;
    out.trapezoids.push_back(std::move(summary));
}

}  // namespace

long long Packing::total_squares() const {
    long long n = grid_count;
    for (const TaggedStack& ts : stacks) n += ts.stack.count;
    return n;
}

bool is_integer_side(double x) { return std::floor(x) == x; }

Packing naive_packing(double x) {
    if (!(x > 0.0)) throw PlanError("side length must be positive");
    Packing p;
    p.x = x;
    p.k = static_cast<int>(std::floor(x));
    p.h = x - p.k;
    p.grid_count = static_cast<long long>(p.k) * p.k;
    if (p.h > 0.0) {
        const double k = p.k;
        p.ledger.push_back({"grid-edge", rectangle(0.0, k, k, x), k * p.h});
        p.ledger.push_back({"grid-edge", rectangle(k, 0.0, x, x), x * p.h});
    }
    return p;
}

Packing build_packing(double x, const BuildOptions& options) {
    if (!(x > kMinSide)) throw PlanError("x=" + std::to_string(x) + " is too small; need x > 4");
    if (is_integer_side(x)) return naive_packing(x);

    const double h_target = options.h_target.value_or(std::pow(x, 0.8));
    const Stage1 s1 = plan_stage1(x, h_target);
    const AngleSet angles = solve_all(s1.h);
    const int m = compute_m(angles);
    const CoarsePlan plan = plan_coarse(x, h_target, angles, top_width_target(angles, m));

    Packing out;
    out.x = x;
    out.h = plan.h;
    out.k = plan.k;
    out.angles = angles;
    out.m = m;
    out.grid_count = plan.grid_count;
    for (std::size_t r = 0; r < plan.rects.size(); ++r) {
        const StripRect& rect = plan.rects[r];
        const StackPlan& sp = plan.stack_plans[r];
        for (const Stack& st : sp.stacks) out.stacks.push_back({"stack", transform(rect.to_global, st)});
        if (sp.stack_count > 0) {
            out.ledger.push_back({"stack-slivers", transform(rect.to_global, sp.stack_region), stage2_waste(sp),
                                  static_cast<int>(r)});
        }
        add_trapezoid(out, sp.left, rect.to_global, angles, options, static_cast<int>(r), 0);
        add_trapezoid(out, sp.right, rect.to_global, angles, options, static_cast<int>(r), 1);
    }
    return out;
}

}  // namespace sqpack
