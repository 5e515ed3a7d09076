#include "sqpack/strip_packer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sqpack/collision.hpp"

namespace sqpack {

namespace {

constexpr double kFitTol = 1e-12;

struct Basis {
    Point2 u_phi, v_phi, u_psi, v_psi, nrm, wall_dir;
    double s;  // sin(phi + theta)
};

Basis basis(const AngleSet& a) {
    Basis b;
    b.u_phi = {std::cos(a.phi), -std::sin(a.phi)};
    b.v_phi = {std::sin(a.phi), std::cos(a.phi)};
    b.u_psi = {std::cos(a.psi), -std::sin(a.psi)};
    b.v_psi = {std::sin(a.psi), std::cos(a.psi)};
    b.nrm = {std::cos(a.theta), std::sin(a.theta)};
    b.wall_dir = {-std::sin(a.theta), std::cos(a.theta)};
    b.s = std::sin(a.phi + a.theta);
    return b;
}

Point2 meet(const Line& a, const Line& b) {
    const auto p = intersect(a, b);
    if (!p) throw GeometryError("parallel lines do not meet");
    return *p;
}

HalfPlane right_of_x(double x) { return {{-1.0, 0.0}, -x}; }
HalfPlane left_of_x(double x) { return {{1.0, 0.0}, x}; }

std::optional<ConvexPoly> clip_region(const ConvexPoly& base, std::initializer_list<HalfPlane> planes) {
    std::vector<Point2> loop = base.vertices;
    for (const HalfPlane& hp : planes) {
        if (loop.size() < 3) break;
        const double len = norm(hp.normal);
        loop = clip(loop, {hp.normal * (1.0 / len), hp.offset / len});
    }
    std::vector<Point2> clean;
    for (const Point2& p : loop) {
        if (clean.empty() || norm(p - clean.back()) > 1e-12) clean.push_back(p);
    }
    while (clean.size() > 1 && norm(clean.front() - clean.back()) <= 1e-12) clean.pop_back();
    if (clean.size() < 3 || signed_area(clean) <= 1e-14) return std::nullopt;
    return ConvexPoly{std::move(clean)};
}

double min_y(const std::vector<Stack>& stacks) {
    double lo = std::numeric_limits<double>::infinity();
    for (const Stack& st : stacks) {
        for (const int i : {0, st.count - 1}) {
            for (const Point2& p : square_vertices(st.square(i))) lo = std::min(lo, p.y);
        }
    }
    return lo;
}

long long count_squares(const std::vector<Stack>& stacks) {
    long long n = 0;
    for (const Stack& st : stacks) n += st.count;
    return n;
}

}  // namespace

double StripFrame::clearance(Point2 p) const {
    const Point2 nrm{incline_wall.dir.y, -incline_wall.dir.x};
    return dot(incline_wall.point - p, nrm) / norm(nrm);
}

std::string StripFrame::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "wall_x=" << wall_x << " top_point=(" << top_edge.point.x << ',' << top_edge.point.y << ") top_angle=" << top_angle
       << " floor_y=" << floor_y << " remaining_height=" << remaining_height();
    return os.str();
}

double opening_span(const AngleSet& angles, int m) {
    return m * std::cos(angles.phi) + std::sin(angles.phi);
}

double top_width_target(const AngleSet& angles, int m) {
    const double depth = m * std::sin(angles.phi) + 1.0 + 1.0 / std::sin(angles.theta);
    return std::max(0.0, opening_span(angles, m) - depth * std::tan(angles.theta));
}

int compute_m(const AngleSet& angles) {
    const Basis b = basis(angles);
    const int cap = 8 * static_cast<int>(std::ceil(1.0 / angles.theta));
    for (int m = 1; m <= cap; ++m) {
        const Point2 r0 = Point2{} + b.u_phi * m + b.v_phi;
        const Point2 k0 = Point2{} + b.u_phi * m - b.nrm * (1.0 - b.s) - b.wall_dir * m;
        const Line bottom = descending_line(k0, angles.psi);
        const Point2 t{std::sin(angles.psi), bottom.y_at(std::sin(angles.psi))};
        const Point2 r = meet(bottom, Line{r0, b.wall_dir});
        if (dot(r - t, b.u_psi) >= m + 1 - kFitTol) return m;
    }
    throw InfeasibleGeometry("no row length up to " + std::to_string(cap) + " fits at h=" +
                             std::to_string(angles.h));
}

Point2 place_opening_row(const StripFrame& frame, const AngleSet& angles, int m) {
    const Basis b = basis(angles);
    if (angles.phi >= frame.top_angle) {
        return {frame.wall_x, frame.top_edge.y_at(frame.wall_x + b.v_phi.x) - b.v_phi.y};
    }
    const Point2 d = b.u_phi * m + b.v_phi;
    return {frame.wall_x, frame.top_edge.y_at(frame.wall_x + d.x) - d.y};
}

FirstResult run_first_algorithm(const StripFrame& frame, const AngleSet& angles, int m) {
    if (m < 1) throw GeometryError("row length must be >= 1");
    const Basis b = basis(angles);
    FirstResult r;
    r.m = m;
    r.opening_corner = place_opening_row(frame, angles, m);
    const Point2 r0 = r.opening_corner + b.u_phi * m + b.v_phi;
    r.epsilon = frame.clearance(r0);
    r.shifted_wall = {r0, b.wall_dir};

    std::vector<Point2> feet;
    for (int i = 0; i < m; ++i) {
        const int len = m - i;
        const Point2 p{r.opening_corner.x, r.opening_corner.y - i / std::cos(angles.phi)};
        r.rows.push_back(make_row({p, -angles.phi}, len));
        const Point2 right_end = p + b.u_phi * len;
        const Point2 foot = right_end - b.nrm * (1.0 - b.s) - b.wall_dir * len;
        r.columns.push_back(make_column({foot, angles.theta}, len));
        feet.push_back(foot);
    }
    r.bottom_edge = descending_line(feet.front(), angles.psi);

    if (r.epsilon > kFitTol) {
        const Point2 a = meet(r.bottom_edge, r.shifted_wall);
        const Point2 c = meet(r.bottom_edge, frame.incline_wall);
        const Point2 d = meet(frame.top_edge, frame.incline_wall);
        const Point2 e = meet(frame.top_edge, r.shifted_wall);
        if (signed_area(std::vector<Point2>{a, c, d, e}) > 0.0) r.gap = ConvexPoly{{a, c, d, e}};
    }
    return r;
}

Line second_bottom_edge(const StripFrame& frame, const AngleSet& angles, int m_prime) {
    const double start_y = frame.top_edge.y_at(frame.wall_x + std::sin(angles.psi)) - std::cos(angles.psi);
    return descending_line({frame.wall_x, start_y - std::tan(angles.psi) - m_prime}, angles.phi_prime);
}

SecondResult run_second_algorithm(const StripFrame& frame, const AngleSet& angles, int m, int m_prime) {
    if (m < 1 || m_prime < 1 || m_prime > m + 1) {
        throw GeometryError("need 1 <= m' <= m + 1 (m=" + std::to_string(m) + ", m'=" + std::to_string(m_prime) + ")");
    }
    const Basis b = basis(angles);
    const double xw = frame.wall_x;
    const double tan_psi = std::tan(angles.psi);
    const double drop = (1.0 + std::sin(angles.psi)) / std::cos(angles.psi);
    const Point2 start{xw, frame.top_edge.y_at(xw + b.v_psi.x) - b.v_psi.y};

    SecondResult r;
    r.m = m;
    r.m_prime = m_prime;
    std::vector<double> tops, feet;
    for (int i = 0; i < m_prime; ++i) {
        const Point2 p{xw + i, start.y - i * drop};
        r.rows.push_back(make_row({p, -angles.psi}, m + 1 - i));
        tops.push_back(p.y - tan_psi);
    }
    if (m_prime == 1) tops.push_back(start.y - 2.0 * tan_psi);
    for (int i = 0; i < m_prime; ++i) feet.push_back(tops[i] - (m_prime - i));
    feet[0] = second_bottom_edge(frame, angles, m_prime).point.y;
    for (int i = 2; i < m_prime; ++i) r.columns.push_back(make_column({{xw + i, feet[i]}, 0.0}, m_prime - i));
    for (int i = 0; i < 2; ++i) {
        r.wall_tops[i] = tops[i];
        const int count = static_cast<int>(std::floor(tops[i] - frame.floor_y + kFitTol));
        if (count >= 1) r.wall_columns.push_back(make_column({{xw + i, tops[i] - count}, 0.0}, count));
    }

    const Point2 r0 = start + b.u_psi * (m + 1) + b.v_psi;
    r.epsilon_prime = frame.clearance(r0);
    r.virtual_wall = {r0, {-std::sin(angles.theta_prime), std::cos(angles.theta_prime)}};
    r.bottom_edge = descending_line({xw, feet[0]}, angles.phi_prime);
    return r;
}

std::optional<MPrimeChoice> compute_m_prime(const StripFrame& frame, const AngleSet& angles, int m) {
    const Basis b = basis(angles);
    for (int mp = 1; mp <= m; ++mp) {
        StripFrame next = frame;
        next.wall_x = frame.wall_x + 2.0;
        next.top_edge = second_bottom_edge(frame, angles, mp);
        next.top_angle = angles.phi_prime;
        const Point2 p = place_opening_row(next, angles, m);
        const double eps = next.clearance(p + b.u_phi * m + b.v_phi);
        if (eps >= -kFitTol) return MPrimeChoice{mp, eps};
    }
    return std::nullopt;
}

StripFrame snug_opening_frame(const AngleSet& angles, int m) {
    const Basis b = basis(angles);
    StripFrame f;
    f.incline_wall = {b.u_phi * m + b.v_phi, b.wall_dir};
    f.top_edge = descending_line(b.v_phi, angles.phi);
    f.top_angle = angles.phi;
    f.floor_y = -8.0 * (m + 2);
    return f;
}

std::vector<Stack> pack_columns(const ConvexPoly& region, double x_start) {
    struct Edge {
        Point2 n;
        double c;
    };
    std::vector<Edge> edges;
    const std::size_t nv = region.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const Point2 a = region.vertices[i];
        const Point2 e = region.vertices[(i + 1) % nv] - a;
        const double len = norm(e);
        if (len <= 1e-15) continue;
        const Point2 n{e.y / len, -e.x / len};
        edges.push_back({n, dot(n, a)});
    }
    const Box box = bounding_box(region);
    std::vector<Stack> out;
    for (int j = 0;; ++j) {
        const double x0 = x_start + j;
        if (x0 + 1.0 > box.max_x + kFitTol) break;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (const Edge& ed : edges) {
            for (const double dx : {0.0, 1.0}) {
                const double fixed = ed.n.x * (x0 + dx);
                if (std::abs(ed.n.y) <= 1e-15) {
                    if (fixed > ed.c + kFitTol) ok = false;
                    continue;
                }
                for (const double dy : {0.0, 1.0}) {
                    const double bound = (ed.c - fixed - ed.n.y * dy) / ed.n.y;
                    if (ed.n.y > 0.0) hi = std::min(hi, bound);
                    else lo = std::max(lo, bound);
                }
            }
        }
        if (!ok || !(hi >= lo - kFitTol)) continue;
        const int count = static_cast<int>(std::floor(std::max(hi - lo, 0.0) + kFitTol)) + 1;
        out.push_back(make_column({{x0, lo}, 0.0}, count));
    }
    return out;
}

std::vector<std::pair<std::string, Stack>> TrapezoidPacking::tagged_stacks() const {
    std::vector<std::pair<std::string, Stack>> out;
    for (const Stack& s : top_band) out.emplace_back("band", s);
    for (const StripRecord& rec : strips) {
        for (const Stack& s : rec.first.rows) out.emplace_back("H", s);
        for (const Stack& s : rec.first.columns) out.emplace_back("V", s);
        for (const Stack& s : rec.second.rows) out.emplace_back("Hp", s);
        for (const Stack& s : rec.second.columns) out.emplace_back("Vp", s);
        for (const Stack& s : rec.second.wall_columns) out.emplace_back("wall", s);
    }
    for (const Stack& s : bottom_band) out.emplace_back("band", s);
    return out;
}

double TrapezoidPacking::waste() const {
    double w = 0.0;
    for (const RegionWaste& r : regions) w += r.waste;
    return w;
}

TrapezoidPacking pack_trapezoid(const TrapezoidSpec& spec, const AngleSet& angles, const StripOptions& options) {
    const Basis b = basis(angles);
    TrapezoidPacking out;
    out.spec = spec;
    out.angles = angles;
    out.m = compute_m(angles);
    const int m = out.m;
    const ConvexPoly& region = spec.region;

    StripFrame frame;
    frame.wall_x = 0.0;
    frame.incline_wall = spec.incline_wall();
    frame.floor_y = 0.0;

    // Opening row of the first strip touches the inclined wall unless that
    // would push it through the top.
    const Point2 span = b.u_phi * m + b.v_phi;
    double y0 = dot(frame.incline_wall.point - span, b.nrm) / b.nrm.y;
    if (y0 + b.v_phi.y > spec.height) y0 = spec.height - b.v_phi.y;
    const Point2 opening{0.0, y0};
    out.opening_clearance = frame.clearance(opening + span);
    frame.top_edge = descending_line(opening + b.v_phi, angles.phi);
    frame.top_angle = angles.phi;

    const Line first_top = frame.top_edge;
    std::vector<Line> tops;
    out.termination = "floor";
    if (y0 < 0.0) out.termination = "no-room";
    while (y0 >= 0.0) {
        const int k = static_cast<int>(out.strips.size());
        if (k >= options.max_strips) {
            out.termination = "limit";
            break;
        }
        StripRecord rec;
        rec.index = k;
        rec.wall_x = frame.wall_x;
        rec.first = run_first_algorithm(frame, angles, m);
        if (rec.first.epsilon < -options.tol) {
            throw ConstructionError("opening row crosses the inclined wall (clearance " +
                                        std::to_string(rec.first.epsilon) + ")",
                                    k, frame.describe());
        }
        if (rec.first.epsilon > options.epsilon_limit * angles.theta + options.tol) {
            ++out.fallback_events;
            out.termination = "fallback";
            break;
        }
        StripFrame under = frame;
        under.top_edge = rec.first.bottom_edge;
        under.top_angle = angles.psi;
        const auto choice = compute_m_prime(under, angles, m);
        if (!choice) {
            ++out.fallback_events;
            out.termination = "fallback";
            break;
        }
        rec.second = run_second_algorithm(under, angles, m, choice->m_prime);
        rec.next_epsilon = choice->next_epsilon;
        const double lowest = std::min({min_y(rec.first.rows), min_y(rec.first.columns), min_y(rec.second.rows),
                                        rec.second.columns.empty() ? 0.0 : min_y(rec.second.columns)});
        if (lowest < frame.floor_y - kFitTol) break;

        rec.height = frame.top_edge.y_at(frame.wall_x) - rec.second.bottom_edge.y_at(frame.wall_x);
        rec.squares = count_squares(rec.first.rows) + count_squares(rec.first.columns) +
                      count_squares(rec.second.rows) + count_squares(rec.second.columns) +
                      count_squares(rec.second.wall_columns);
        tops.push_back(frame.top_edge);
        out.strips.push_back(std::move(rec));

        frame.wall_x += 2.0;
        frame.top_edge = out.strips.back().second.bottom_edge;
        frame.top_angle = angles.phi_prime;
    }

    // Regions: the band above the first strip, three pieces per strip, and the
    // band below the last one.
    auto add_region = [&](std::string tag, int strip, std::optional<ConvexPoly> poly) {
        if (!poly) return;
        RegionWaste rw;
        rw.tag = std::move(tag);
        rw.strip = strip;
        rw.area = polygon_area(*poly);
        rw.polygon = std::move(*poly);
        out.regions.push_back(std::move(rw));
    };
    if (out.strips.empty()) {
        out.top_band = pack_columns(region, 0.0);
        add_region("top-band", -1, region);
    } else {
        const auto top = clip_region(region, {first_top.left_half()});
        if (top) out.top_band = pack_columns(*top, 0.0);
        add_region("top-band", -1, top);
        for (const StripRecord& rec : out.strips) {
            const Line& t = tops[static_cast<std::size_t>(rec.index)];
            const Line& kl = rec.first.bottom_edge;
            const Line& pl = rec.second.bottom_edge;
            add_region("first", rec.index, clip_region(region, {right_of_x(rec.wall_x), t.right_half(), kl.left_half()}));
            add_region("second", rec.index, clip_region(region, {right_of_x(rec.wall_x), kl.right_half(), pl.left_half()}));
            add_region("wall", rec.index,
                       clip_region(region, {right_of_x(rec.wall_x), left_of_x(rec.wall_x + 2.0), pl.right_half()}));
        }
        const auto bottom = clip_region(region, {right_of_x(frame.wall_x), frame.top_edge.right_half()});
        if (bottom) out.bottom_band = pack_columns(*bottom, frame.wall_x);
        add_region("bottom-band", -1, bottom);
    }

    std::vector<PlacedSquare> squares;
    for (const auto& [tag, st] : out.tagged_stacks()) {
        for (int i = 0; i < st.count; ++i) squares.push_back(st.square(i));
    }
    out.square_count = static_cast<long long>(squares.size());

    for (RegionWaste& rw : out.regions) {
        const Box rb = bounding_box(rw.polygon);
        for (const PlacedSquare& s : squares) {
            const Box sb = bounding_box(square_vertices(s));
            if (sb.max_x <= rb.min_x || sb.min_x >= rb.max_x || sb.max_y <= rb.min_y || sb.min_y >= rb.max_y) continue;
            rw.covered += intersection_area(square_polygon(s), rw.polygon);
        }
        rw.waste = rw.area - rw.covered;
    }

    if (options.self_check) {
        for (std::size_t i = 0; i < squares.size(); ++i) {
            if (!contains(region, squares[i], options.tol)) {
                std::ostringstream os;
                os.precision(17);
                os << "square " << i << " at (" << squares[i].corner.x << ',' << squares[i].corner.y << ") angle "
                   << squares[i].angle << " leaves the trapezoid";
                throw ConstructionError(os.str(), static_cast<int>(out.strips.size()), frame.describe());
            }
        }
        const auto hits = find_overlaps(squares, options.tol, 1);
        if (!hits.empty()) {
            const PlacedSquare& a = squares[hits[0].a];
            const PlacedSquare& c = squares[hits[0].b];
            std::ostringstream os;
            os.precision(17);
            os << "squares " << hits[0].a << " (" << a.corner.x << ',' << a.corner.y << ", " << a.angle << ") and "
               << hits[0].b << " (" << c.corner.x << ',' << c.corner.y << ", " << c.angle << ") overlap by "
               << hits[0].depth;
            throw ConstructionError(os.str(), static_cast<int>(out.strips.size()), frame.describe());
        }
    }
    return out;
}

}  // namespace sqpack
