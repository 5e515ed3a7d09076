#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqpack/angle_solver.hpp"
#include "sqpack/io.hpp"
#include "sqpack/packing.hpp"
#include "sqpack/strip_packer.hpp"
#include "sqpack/sweep.hpp"
#include "sqpack/verifier.hpp"

namespace {

using namespace sqpack;

enum Exit { kOk = 0, kPrecondition = 2, kConstruction = 3, kVerification = 4 };

int cmd_pack(double x, std::optional<double> h, double tol, const std::string& out) {
    if (!(x > kMinSide)) {
        std::cerr << "error: x=" << x << " is too small; need x > 4\n";
        return kPrecondition;
    }
    if (!(tol >= 1e-12 && tol <= 1e-6)) {
        std::cerr << "error: tol must lie in [1e-12, 1e-6]\n";
        return kPrecondition;
    }
    BuildOptions bo;
    bo.h_target = h;
    bo.tol = tol;
    Packing p;
    try {
        p = build_packing(x, bo);
    } catch (const ConstructionError& e) {
        std::cerr << "construction failed in strip " << e.strip() << ": " << e.what() << "\n  frame: " << e.snapshot()
                  << "\n";
        return kConstruction;
    } catch (const PlanError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const InfeasibleGeometry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    AuditOptions ao;
    ao.tol = tol;
    const WasteReport r = audit(p, ao);
    write_file(out, packing_to_json(p, &r));
    std::cout << report_to_json(r) << "\n";
    if (r.fallback_events > 0) return kConstruction;
    if (r.overlap_violations > 0 || r.containment_violations > 0 || !r.agrees()) return kVerification;
    return kOk;
}

int cmd_sweep(double x0, double ratio, int count, std::optional<double> frac, const std::string& baseline,
              const std::string& out) {
    if (count < 3) {
        std::cerr << "error: a sweep needs at least 3 points\n";
        return kPrecondition;
    }
    if (!baseline.empty() && baseline != "naive") {
        std::cerr << "error: unknown baseline '" << baseline << "'\n";
        return kPrecondition;
    }
    const std::vector<double> xs = sweep_points(x0, ratio, count, frac);
    for (const double x : xs) {
        if (!(x > kMinSide)) {
            std::cerr << "error: sweep point x=" << x << " is too small; need x > 4\n";
            return kPrecondition;
        }
    }
    const std::vector<SweepRow> rows = run_sweep(xs, baseline == "naive");
    write_file(out, sweep_to_csv(rows));

    int code = kOk;
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& r : rows) {
        if (!r.ok) {
            std::cerr << "point x=" << r.x << " failed: " << r.error << "\n";
            code = kConstruction;
            continue;
        }
        if (r.violations > 0) code = std::max<int>(code, kVerification);
        if (r.fallback_events > 0 && code == kOk) code = kConstruction;
        pts.emplace_back(r.x, r.waste);
    }
    std::printf("points: %zu\n", rows.size());
    try {
        const ExponentFit f = fit_exponent(pts);
        std::printf("slope: %.6f\nintercept: %.6f\nresidual: %.6f\n", f.slope, f.intercept, f.residual);
        std::printf("reference slopes: 3/5 = 0.600000, (3+sqrt2)/7 = %.6f, 7/11 = %.6f\n",
                    (3.0 + std::numbers::sqrt2) / 7.0, 7.0 / 11.0);
    } catch (const std::invalid_argument& e) {
        std::printf("fit refused: %s\n", e.what());
    }
    return code;
}

int cmd_render(const std::string& in, const std::string& out) {
    std::string text;
    try {
        text = read_file(in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    try {
        write_file(out, packing_to_svg(packing_from_json(text)));
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what() << "\n";
        return kPrecondition;
    }
    return kOk;
}

int cmd_angles(double h, std::optional<int> n) {
    if (!(h > 2.0)) {
        std::cerr << "error: need h > 2\n";
        return kPrecondition;
    }
    try {
        const AngleSet a = n ? solve_all(h, *n) : solve_all(h);
        const int m = compute_m(a);
        nlohmann::json j = {{"h", a.h},
                            {"n", a.n},
                            {"theta", a.theta},
                            {"phi", a.phi},
                            {"psi", a.psi},
                            {"theta_prime", a.theta_prime},
                            {"phi_prime", a.phi_prime},
                            {"m", m},
                            {"m_estimate", 1.0 / a.theta},
                            {"residuals",
                             {{"theta", a.residuals.theta},
                              {"phi", a.residuals.phi},
                              {"psi", a.residuals.psi},
                              {"theta_prime", a.residuals.theta_prime}}}};
        std::printf("h=%.17g n=%d\n  theta  = %.15f\n  phi    = %.15f\n  psi    = %.15f\n  theta' = %.15f\n"
                    "  phi'   = %.15f\n  m = %d (1/theta = %.3f)\n",
                    a.h, a.n, a.theta, a.phi, a.psi, a.theta_prime, a.phi_prime, m, 1.0 / a.theta);
        std::cout << j.dump(1) << "\n";
    } catch (const InfeasibleGeometry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Packs a square of side x with unit squares and measures the waste"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    double x = 0.0, tol = kDefaultTol;
    std::optional<double> h;
    std::string out;
    auto* pack = app.add_subcommand("pack", "build, verify and write one packing");
    pack->add_option("--x", x, "side length")->required();
    pack->add_option("--h", h, "target rectangle width (default x^0.8)");
    pack->add_option("--tol", tol, "contact tolerance");
    pack->add_option("--out", out, "packing JSON path")->required();

    double x0 = 0.0, ratio = 2.0;
    int count = 0;
    std::optional<double> frac;
    std::string baseline, sweep_out;
    auto* sweep = app.add_subcommand("sweep", "pack a geometric range of x and fit the waste exponent");
    sweep->add_option("--x0", x0, "first side length")->required();
    sweep->add_option("--ratio", ratio, "growth factor")->required();
    sweep->add_option("--count", count, "number of points")->required();
    sweep->add_option("--frac", frac, "replace the fractional part of every point");
    sweep->add_option("--baseline", baseline, "use the axis-aligned packer instead")->check(CLI::IsMember({"naive"}));
    sweep->add_option("--out", sweep_out, "CSV path")->required();

    std::string in, svg_out;
    auto* render = app.add_subcommand("render", "draw a packing file as SVG");
    render->add_option("--in", in, "packing JSON")->required();
    render->add_option("--out", svg_out, "SVG path")->required();

    double ah = 0.0;
    std::optional<int> an;
    auto* angles = app.add_subcommand("angles", "solve the construction angles for a width h");
    angles->add_option("--h", ah, "rectangle width")->required();
    angles->add_option("--n", an, "stack length (default floor(h) + 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kPrecondition;
    }

    try {
        if (*pack) return cmd_pack(x, h, tol, out);
        if (*sweep) return cmd_sweep(x0, ratio, count, frac, baseline, sweep_out);
        if (*render) return cmd_render(in, svg_out);
        if (*angles) return cmd_angles(ah, an);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConstruction;
    }
    return kOk;
}
