#include "sqpack/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace sqpack {

namespace {

using nlohmann::json;

json point(Point2 p) { return json::array({p.x, p.y}); }

json polygon(const ConvexPoly& poly) {
    json a = json::array();
    for (const Point2& v : poly.vertices) a.push_back(point(v));
    return a;
}

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(path + "/" + key, "missing");
    return j.at(key);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

long long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<long long>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

Point2 read_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

ConvexPoly read_polygon(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() < 3) throw SchemaError(path, "expected at least 3 vertices");
    ConvexPoly p;
    for (std::size_t i = 0; i < j.size(); ++i) p.vertices.push_back(read_point(j[i], path + "/" + std::to_string(i)));
    return p;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fill_for(const std::string& tag) {
    if (tag == "stack") return "#9ecae1";
    if (tag == "H") return "#6baed6";
    if (tag == "V") return "#fdae6b";
    if (tag == "Hp") return "#74c476";
    if (tag == "Vp") return "#fb6a4a";
    if (tag == "wall") return "#bdbdbd";
    return "#bcbddc";
}

}  // namespace

std::string packing_to_json(const Packing& p, const WasteReport* report) {
    json j;
    j["x"] = p.x;
    j["h"] = p.h;
    j["k"] = p.k;
    json angles = json::object();
    if (p.angles) {
        const AngleSet& a = *p.angles;
        angles = {{"n", a.n},         {"theta", a.theta},         {"phi", a.phi},
                  {"psi", a.psi},     {"theta_prime", a.theta_prime}, {"phi_prime", a.phi_prime},
                  {"m", p.m},
                  {"residuals",
                   {{"theta", a.residuals.theta},
                    {"phi", a.residuals.phi},
                    {"psi", a.residuals.psi},
                    {"theta_prime", a.residuals.theta_prime}}}};
    }
    j["angles"] = angles;
    j["grid_count"] = p.grid_count;
    json stacks = json::array();
    for (const TaggedStack& ts : p.stacks) {
        stacks.push_back({{"corner", point(ts.stack.base.corner)},
                          {"angle", ts.stack.base.angle},
                          {"step", point(ts.stack.step)},
                          {"count", ts.stack.count},
                          {"tag", ts.tag}});
    }
    j["stacks"] = std::move(stacks);
    json skipped = json::array();
    for (const ConvexPoly& s : p.skipped) skipped.push_back(polygon(s));
    j["skipped"] = std::move(skipped);
    json ledger = json::array();
    for (const LedgerEntry& e : p.ledger) {
        json item = {{"tag", e.tag}, {"polygon", polygon(e.polygon)}, {"area", e.area}};
        if (e.rect >= 0) item["rect"] = e.rect;
        if (e.trapezoid >= 0) item["trapezoid"] = e.trapezoid;
        if (e.strip >= 0) item["strip"] = e.strip;
        ledger.push_back(std::move(item));
    }
    j["waste_ledger"] = std::move(ledger);

    json meta;
    meta["fallback_events"] = p.fallback_events;
    json traps = json::array();
    for (const TrapezoidSummary& t : p.trapezoids) {
        json strips = json::array();
        for (const StripSummary& s : t.strips) {
            strips.push_back({{"m_prime", s.m_prime},
                              {"epsilon", s.epsilon},
                              {"epsilon_prime", s.epsilon_prime},
                              {"height", s.height},
                              {"waste", s.waste},
                              {"first_squares", s.first_squares},
                              {"squares", s.squares}});
        }
        traps.push_back({{"rect", t.rect},
                         {"side", t.side},
                         {"top_width", t.top_width},
                         {"waste", t.waste},
                         {"squares", t.squares},
                         {"fallback_events", t.fallback_events},
                         {"termination", t.termination},
                         {"strips", std::move(strips)}});
    }
    meta["trapezoids"] = std::move(traps);
    if (report) meta["report"] = json::parse(report_to_json(*report));
    j["meta"] = std::move(meta);
    return j.dump(1) + "\n";
}

Packing packing_from_json(const std::string& body) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("not valid JSON: ") + e.what());
    }
    Packing p;
    p.x = number(field(j, "x", ""), "/x");
    p.h = number(field(j, "h", ""), "/h");
    p.grid_count = integer(field(j, "grid_count", ""), "/grid_count");
    if (p.grid_count < 0) throw SchemaError("/grid_count", "must be nonnegative");
    if (j.contains("k")) {
        p.k = static_cast<int>(integer(j["k"], "/k"));
    } else {
        p.k = static_cast<int>(std::llround(std::sqrt(static_cast<double>(p.grid_count))));
    }
    if (static_cast<long long>(p.k) * p.k != p.grid_count) throw SchemaError("/grid_count", "must equal k^2");

    const json& angles = field(j, "angles", "");
    if (!angles.is_object()) throw SchemaError("/angles", "expected an object");
    if (!angles.empty()) {
        AngleSet a;
        a.h = p.h;
        a.n = static_cast<int>(integer(field(angles, "n", "/angles"), "/angles/n"));
        a.theta = number(field(angles, "theta", "/angles"), "/angles/theta");
        a.phi = number(field(angles, "phi", "/angles"), "/angles/phi");
        a.psi = number(field(angles, "psi", "/angles"), "/angles/psi");
        a.theta_prime = number(field(angles, "theta_prime", "/angles"), "/angles/theta_prime");
        a.phi_prime = number(field(angles, "phi_prime", "/angles"), "/angles/phi_prime");
        if (angles.contains("residuals")) {
            const json& r = angles["residuals"];
            a.residuals.theta = number(field(r, "theta", "/angles/residuals"), "/angles/residuals/theta");
            a.residuals.phi = number(field(r, "phi", "/angles/residuals"), "/angles/residuals/phi");
            a.residuals.psi = number(field(r, "psi", "/angles/residuals"), "/angles/residuals/psi");
            a.residuals.theta_prime =
                number(field(r, "theta_prime", "/angles/residuals"), "/angles/residuals/theta_prime");
        }
        if (angles.contains("m")) p.m = static_cast<int>(integer(angles["m"], "/angles/m"));
        p.angles = a;
    }

    const json& stacks = field(j, "stacks", "");
    if (!stacks.is_array()) throw SchemaError("/stacks", "expected an array");
    for (std::size_t i = 0; i < stacks.size(); ++i) {
        const std::string path = "/stacks/" + std::to_string(i);
        const json& s = stacks[i];
        TaggedStack ts;
        ts.stack.base.corner = read_point(field(s, "corner", path), path + "/corner");
        ts.stack.base.angle = number(field(s, "angle", path), path + "/angle");
        ts.stack.step = read_point(field(s, "step", path), path + "/step");
        ts.stack.count = static_cast<int>(integer(field(s, "count", path), path + "/count"));
        ts.tag = text(field(s, "tag", path), path + "/tag");
        try {
            validate_stack(ts.stack);
        } catch (const GeometryError& e) {
            throw SchemaError(path, e.what());
        }
        p.stacks.push_back(std::move(ts));
    }

    const json& skipped = field(j, "skipped", "");
    if (!skipped.is_array()) throw SchemaError("/skipped", "expected an array");
    for (std::size_t i = 0; i < skipped.size(); ++i)
        p.skipped.push_back(read_polygon(skipped[i], "/skipped/" + std::to_string(i)));

    const json& ledger = field(j, "waste_ledger", "");
    if (!ledger.is_array()) throw SchemaError("/waste_ledger", "expected an array");
    for (std::size_t i = 0; i < ledger.size(); ++i) {
        const std::string path = "/waste_ledger/" + std::to_string(i);
        const json& e = ledger[i];
        LedgerEntry le;
        le.tag = text(field(e, "tag", path), path + "/tag");
        le.polygon = read_polygon(field(e, "polygon", path), path + "/polygon");
        le.area = number(field(e, "area", path), path + "/area");
        if (e.contains("rect")) le.rect = static_cast<int>(integer(e["rect"], path + "/rect"));
        if (e.contains("trapezoid")) le.trapezoid = static_cast<int>(integer(e["trapezoid"], path + "/trapezoid"));
        if (e.contains("strip")) le.strip = static_cast<int>(integer(e["strip"], path + "/strip"));
        p.ledger.push_back(std::move(le));
    }
    if (!j.contains("meta")) return p;
    const json& meta = j["meta"];
    if (meta.contains("fallback_events"))
        p.fallback_events = static_cast<int>(integer(meta["fallback_events"], "/meta/fallback_events"));
    if (!meta.contains("trapezoids")) return p;
    const json& traps = meta["trapezoids"];
    if (!traps.is_array()) throw SchemaError("/meta/trapezoids", "expected an array");
    for (std::size_t i = 0; i < traps.size(); ++i) {
        const std::string path = "/meta/trapezoids/" + std::to_string(i);
        const json& t = traps[i];
        TrapezoidSummary ts;
        ts.rect = static_cast<int>(integer(field(t, "rect", path), path + "/rect"));
        ts.side = static_cast<int>(integer(field(t, "side", path), path + "/side"));
        ts.top_width = number(field(t, "top_width", path), path + "/top_width");
        ts.waste = number(field(t, "waste", path), path + "/waste");
        ts.squares = integer(field(t, "squares", path), path + "/squares");
        ts.fallback_events = static_cast<int>(integer(field(t, "fallback_events", path), path + "/fallback_events"));
        ts.termination = text(field(t, "termination", path), path + "/termination");
        const json& strips = field(t, "strips", path);
        if (!strips.is_array()) throw SchemaError(path + "/strips", "expected an array");
        for (std::size_t q = 0; q < strips.size(); ++q) {
            const std::string sp = path + "/strips/" + std::to_string(q);
            const json& s = strips[q];
            StripSummary ss;
            ss.m_prime = static_cast<int>(integer(field(s, "m_prime", sp), sp + "/m_prime"));
            ss.epsilon = number(field(s, "epsilon", sp), sp + "/epsilon");
            ss.epsilon_prime = number(field(s, "epsilon_prime", sp), sp + "/epsilon_prime");
            ss.height = number(field(s, "height", sp), sp + "/height");
            ss.waste = number(field(s, "waste", sp), sp + "/waste");
            ss.first_squares = integer(field(s, "first_squares", sp), sp + "/first_squares");
            ss.squares = integer(field(s, "squares", sp), sp + "/squares");
            ts.strips.push_back(ss);
        }
        p.trapezoids.push_back(std::move(ts));
    }
    return p;
}

std::string report_to_json(const WasteReport& r) {
    json j = {{"x", r.x},
              {"total_squares", r.total_squares},
              {"waste_total", r.waste_total},
              {"region_total", r.region_total},
              {"waste_by_region", r.waste_by_region},
              {"overlap_violations", r.overlap_violations},
              {"containment_violations", r.containment_violations},
              {"fallback_events", r.fallback_events},
              {"checked_squares", r.checked_squares},
              {"sampled", r.sampled}};
    return j.dump(1);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::vector<SweepRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) { return a.x < b.x; });
    std::ostringstream os;
    os << "x,h,theta,m,strips,W,violations,W_naive,fallbacks,error\n";
    char buf[512];
    for (const SweepRow& r : sorted) {
        if (r.ok) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%d,%.17g,%lld,%.17g,%d,\n", r.x, r.h, r.theta, r.m,
                          r.strips, r.waste, r.violations, r.waste_naive, r.fallback_events);
        } else {
            std::string err = r.error;
            std::replace(err.begin(), err.end(), ',', ';');
            std::replace(err.begin(), err.end(), '\n', ' ');
            std::snprintf(buf, sizeof buf, "%.17g,,,,,,,,,%s\n", r.x, err.c_str());
        }
        os << buf;
    }
    return os.str();
}

std::string packing_to_svg(const Packing& p) {
    constexpr double kScale = 10.0;
    std::ostringstream os;
    const double size = p.x * kScale;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size + 20) << "\" height=\"" << fmt(size + 40)
       << "\" viewBox=\"-10 -30 " << fmt(size + 20) << ' ' << fmt(size + 40) << "\">\n";
    os << "<defs><pattern id=\"grid\" width=\"" << fmt(kScale) << "\" height=\"" << fmt(kScale)
       << "\" patternUnits=\"userSpaceOnUse\"><rect width=\"" << fmt(kScale) << "\" height=\"" << fmt(kScale)
       << "\" fill=\"#eeeeee\" stroke=\"#999999\" stroke-width=\"0.5\"/></pattern></defs>\n";
    os << "<text x=\"0\" y=\"-12\" font-family=\"monospace\" font-size=\"12\">x=" << fmt(p.x) << " h=" << fmt(p.h)
       << " squares=" << p.total_squares() << "</text>\n";
    // Flip y so the packing's frame reads bottom-up.
    os << "<g transform=\"translate(0," << fmt(size) << ") scale(" << fmt(kScale) << ',' << fmt(-kScale) << ")\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(p.x) << "\" height=\"" << fmt(p.x)
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"0.05\"/>\n";
    os << "</g>\n";
    if (p.k > 0) {
        os << "<rect x=\"0\" y=\"" << fmt(size - p.k * kScale) << "\" width=\"" << fmt(p.k * kScale) << "\" height=\""
           << fmt(p.k * kScale) << "\" fill=\"url(#grid)\"/>\n";
    }
    os << "<g transform=\"translate(0," << fmt(size) << ") scale(" << fmt(kScale) << ',' << fmt(-kScale) << ")\">\n";
    for (const LedgerEntry& e : p.ledger) {
        os << "<polygon class=\"waste " << e.tag << "\" points=\"";
        for (std::size_t i = 0; i < e.polygon.vertices.size(); ++i)
            os << (i ? " " : "") << fmt(e.polygon.vertices[i].x) << ',' << fmt(e.polygon.vertices[i].y);
        os << "\" fill=\"#ffcccc\" stroke=\"#cc6666\" stroke-width=\"0.02\"/>\n";
    }
    for (const TaggedStack& ts : p.stacks) {
        const std::string fill = fill_for(ts.tag);
        for (int i = 0; i < ts.stack.count; ++i) {
            const PlacedSquare s = ts.stack.square(i);
            os << "<rect width=\"1\" height=\"1\" transform=\"translate(" << fmt(s.corner.x) << ',' << fmt(s.corner.y)
               << ") rotate(" << fmt(s.angle * 180.0 / std::numbers::pi) << ")\" fill=\"" << fill
               << "\" stroke=\"#333333\" stroke-width=\"0.02\"/>\n";
        }
    }
    for (const ConvexPoly& g : p.skipped) {
        os << "<polygon class=\"skipped\" points=\"";
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            os << (i ? " " : "") << fmt(g.vertices[i].x) << ',' << fmt(g.vertices[i].y);
        os << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.03\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace sqpack
