// Acceptance checks for the reference benchmark. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion K]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rhtunnel/errors.hpp"
#include "rhtunnel/verification.hpp"

using namespace rhtunnel;

namespace {

constexpr double kGamma = 20.0;
constexpr double kR = 5.0;
constexpr double kH = 10.0;
constexpr double kStressScale = kGamma * kH;
const double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string details;
};

struct Criterion {
    int id;
    const char* description;
    std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct GridCase {
    double h_over_R, k0, x0_over_h;
    DerivedGeometry g;
    Material m;
};

std::vector<GridCase> parameter_grid() {
    std::vector<GridCase> cases;
    for (double hR : {1.1, 2.0, 3.0})
        for (double k0 : {0.8, 1.0, 1.2})
            for (double x0h : {1.0, 10.0, 100.0}) {
                const double h = kR * hR;
                cases.push_back({hR, k0, x0h, derive_geometry({kR, h, h * x0h}),
                                 make_material(kGamma, k0, 20000.0, 0.3)});
            }
    return cases;
}

FieldModel table1_model(double x0_over_h, bool lanczos) {
    const auto g = derive_geometry(oracle::table1_geometry(x0_over_h));
    const auto m = oracle::table1_material();
    return make_field_model(run_solver(g, m, SolverConfig{}), g, m, lanczos);
}

Outcome geometry_constants() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = derive_geometry({kR, kH, kH});
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const double deg = g.theta0 * 180.0 / kPi;
    const bool ok = std::abs(g.r - 0.267949) <= 1e-6 && std::abs(deg - 81.8) <= 0.05 && ms < 1.0;
    return {ok, fmt("r=%.9f theta0=%.4f deg time=%.4f ms", g.r, deg, ms)};
}

Outcome constraint_identities() {
    const auto g = derive_geometry(oracle::table1_geometry(100.0));
    const auto m = oracle::table1_material();
    const auto sol = run_solver(g, m, SolverConfig{});
    const double gR2 = kGamma * kR * kR;
    const double a_ref = -gR2 / (2.0 * (1.0 + m.kappa)), b_ref = m.kappa * gR2 / (2.0 * (1.0 + m.kappa));
    const double ea = std::abs(sol.A[-1] - a_ref) / std::abs(a_ref);
    const double eb = std::abs(sol.B[-1] - b_ref) / std::abs(b_ref);
    return {ea <= 1e-10 && eb <= 1e-10,
            fmt("A_-1=%.12g (rel err %.2e) B_-1=%.12g (rel err %.2e)", sol.A[-1], ea, sol.B[-1], eb)};
}

Outcome convergence_speed() {
    int worst_reps = 0, failures = 0;
    std::ostringstream bad;
    for (const auto& c : parameter_grid()) {
        int reps = -1;
        bool monotone = true;
        try {
            const auto sol = run_solver(c.g, c.m, SolverConfig{});
            reps = sol.reps;
            for (std::size_t q = 2; q < sol.history.size(); ++q) monotone = monotone && sol.history[q] < sol.history[q - 1];
        } catch (const ConvergenceError& e) {
            reps = static_cast<int>(e.history().size()) - 1;
            monotone = false;
        }
        worst_reps = std::max(worst_reps, reps);
        if (reps > 30 || !monotone) {
            ++failures;
            bad << fmt(" [h/R=%g k0=%g x0/h=%g reps=%d%s]", c.h_over_R, c.k0, c.x0_over_h, reps,
                       monotone ? "" : " non-monotone");
        }
    }
    return {failures == 0, fmt("27 cases, max reps=%d, failing=%d", worst_reps, failures) + bad.str()};
}

Outcome conditioning() {
    double worst = 0.0;
    std::string where;
    for (const auto& c : parameter_grid()) {
        SolverConfig cfg;
        const auto series = make_expansion(cfg.N, c.m.lambda, c.g.theta0);
        auto lc = loading_constants(c.g, c.m);
        compute_E(cfg.N, lc);
        const auto mats = assemble_matrices(series, assemble_blocks(series, lc, c.g, c.m, cfg.N), cfg);
        for (const DenseMatrix* A : {&mats.A1, &mats.A2, &mats.A3}) {
            const double k = condition_number_2norm(*A);
            if (k > worst) {
                worst = k;
                where = fmt("h/R=%g k0=%g x0/h=%g", c.h_over_R, c.k0, c.x0_over_h);
            }
        }
    }
    return {worst < 100.0, fmt("max cond=%.4g at %s", worst, where.c_str())};
}

Outcome equilibrium() {
    const auto rep = residual_report(table1_model(100.0, true), 2000);
    const double F = kGamma * kPi * kR * kR;
    const double ey = std::abs(rep.resultant_recovered.Fy - F) / F;
    const double ex = std::abs(rep.resultant_recovered.Fx) / F;
    return {ey <= 0.02 && ex <= 0.01, fmt("Fx=%.4g Fy=%.6g kN/m (target %.6g; rel %.2e, %.2e)", rep.resultant_recovered.Fx,
                                          rep.resultant_recovered.Fy, F, ex, ey)};
}

Outcome boundary_residuals() {
    bool ok = true;
    int constrained_cases = 0;
    std::string details;
    for (double x0h : {1.0, 10.0, 100.0}) {
        const auto rep = residual_report(table1_model(x0h, true), 2000, 5.0);
        const bool free_ok = rep.free_surface_traction_median <= 0.02;
        const bool tunnel_ok = rep.tunnel_traction_median_rel_error <= 0.03;
        bool cons_ok = true;
        if (rep.constrained_samples > 0) {
            ++constrained_cases;
            cons_ok = rep.constrained_surface_disp_median <= 0.02;
        }
        ok = ok && free_ok && tunnel_ok && cons_ok;
        details += fmt("[x0/h=%g free=%.3e cons=%s tunnel=%.3e] ", x0h, rep.free_surface_traction_median,
                       rep.constrained_samples ? fmt("%.3e", rep.constrained_surface_disp_median).c_str()
                                               : "n/a(arc inside band)",
                       rep.tunnel_traction_median_rel_error);
    }
    return {ok && constrained_cases > 0, details};
}

Outcome singularity_elimination() {
    const auto fm = table1_model(100.0, true);
    const auto [u, v] = eval_annulus_displacement(1.0, fm);
    const auto p = eval_physical(std::polar(1.0, 1e-3), fm);
    const auto& s = p.induced;
    const double mag = std::max({std::abs(s.sigma_x), std::abs(s.sigma_y), std::abs(s.tau_xy)});
    return {u == 0.0 && v == 0.0 && mag <= 1e-3 * kStressScale,
            fmt("u=%g v=%g at zeta=1; induced |sigma|=%.3e kPa at theta=1e-3 (limit %.3g)", u, v, mag,
                1e-3 * kStressScale)};
}

// Largest departure of sigma_theta from its running mean over one period of the highest retained
// harmonic, along the constrained arc.
double constrained_arc_oscillation(const FieldModel& fm) {
    const int N = fm.coeffs.A.hi();
    const double period = 2.0 * kPi / N;
    const int per = 32;
    const double step = period / per;
    const double lo = -fm.geom.theta0, hi = fm.geom.theta0;
    std::vector<double> th, s;
    for (double t = lo + step / 2.0; t < hi; t += step) {
        if (std::abs(t) < 2.0 * kFieldExclusion) continue;
        th.push_back(t);
        s.push_back(eval_annulus_stress(std::polar(1.0, t), fm).sigma_theta);
    }
    double worst = 0.0;
    for (std::size_t i = per / 2; i + per / 2 < s.size(); ++i) {
        if (th[i + per / 2] - th[i - per / 2] > period * 1.5) continue;
        double mean = 0.0;
        for (std::size_t j = i - per / 2; j < i + per / 2; ++j) mean += s[j];
        mean /= per;
        worst = std::max(worst, std::abs(s[i] - mean));
    }
    return worst;
}

Outcome filter_efficacy() {
    bool ok = true;
    std::string details;
    for (double x0h : {1.0, 10.0}) {
        const double f = constrained_arc_oscillation(table1_model(x0h, true));
        const double u = constrained_arc_oscillation(table1_model(x0h, false));
        ok = ok && f < u;
        details += fmt("[x0/h=%g oscillation filtered=%.4g kPa unfiltered=%.4g kPa] ", x0h, f, u);
    }
    return {ok, details};
}

Outcome degeneration() {
    const auto rep = degeneration_check(20, 50, derive_geometry(oracle::table1_geometry()).r, 48, 20240601);
    return {rep.worst() <= 1e-12, fmt("20 spectra, harmonics %.2e, first %.2e, constant %.2e, Re(A3) %.2e",
                                      rep.max_harmonic_discrepancy, rep.max_first_discrepancy,
                                      rep.max_constant_discrepancy, rep.max_a3_real_part)};
}

Outcome symmetry() {
    const auto fm = table1_model(100.0, true);
    const GridSpec spec{-4.0 * kH, 4.0 * kH, -4.0 * kH, 0.0, 101, 101};
    const auto grid = evaluate_grid(spec, fm, 1);
    double ds = 0.0, du = 0.0, axis = 0.0;
    int pairs = 0;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            const auto& p = grid[iy * spec.nx + ix];
            const auto& q = grid[iy * spec.nx + (spec.nx - 1 - ix)];
            if (p.status != q.status) return {false, fmt("classification differs at (%g, %g)", p.x, p.y)};
            if (p.status == PointStatus::Absent) continue;
            ++pairs;
            const auto& a = p.field.total;
            const auto& b = q.field.total;
            ds = std::max({ds, std::abs(a.sigma_x - b.sigma_x), std::abs(a.sigma_y - b.sigma_y),
                           std::abs(a.tau_xy + b.tau_xy)});
            du = std::max({du, std::abs(p.field.u + q.field.u), std::abs(p.field.v - q.field.v)});
            if (ix == spec.nx / 2) axis = std::max(axis, std::abs(p.field.u));
        }
    return {ds <= 1e-10 && du <= 1e-10 && axis <= 1e-10,
            fmt("%d points; stress parity %.2e kPa, displacement parity %.2e m, on-axis |u| %.2e m", pairs, ds, du,
                axis)};
}

Outcome x0_trend() {
    const auto study = convergence_study(oracle::table1_geometry(), oracle::table1_material(), SolverConfig{},
                                         {1.0, 10.0, 100.0}, 720);
    if (study.differences.size() != 2) return {false, "a study case failed to solve"};
    const auto& a = study.differences[0];
    const auto& b = study.differences[1];
    const bool ok = b.surface_max() < a.surface_max() && b.tunnel_max() < a.tunnel_max();
    return {ok, fmt("surface %.3g -> %.3g, tunnel %.3g -> %.3g; per component 1->10 / 10->100: "
                    "surface sx %.3g/%.3g sy %.3g/%.3g txy %.3g/%.3g u %.3g/%.3g v %.3g/%.3g; "
                    "tunnel sx %.3g/%.3g sy %.3g/%.3g txy %.3g/%.3g u %.3g/%.3g v %.3g/%.3g",
                    a.surface_max(), b.surface_max(), a.tunnel_max(), b.tunnel_max(), a.surface_sx, b.surface_sx,
                    a.surface_sy, b.surface_sy, a.surface_txy, b.surface_txy, a.surface_u, b.surface_u, a.surface_v,
                    b.surface_v, a.tunnel_sx, b.tunnel_sx, a.tunnel_sy, b.tunnel_sy, a.tunnel_txy, b.tunnel_txy,
                    a.tunnel_u, b.tunnel_u, a.tunnel_v, b.tunnel_v)};
}

Outcome performance() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto fm = table1_model(100.0, true);
    const auto surface = sample_surface(fm, 720);
    const auto tunnel = sample_tunnel(fm, 720);
    const auto rep = residual_report(fm, 2000);
    const double s = std::chrono::duration<double>(clock::now() - t0).count();
    return {s < 1.0 && surface.size() == 720 && tunnel.size() == 720 && rep.tunnel_samples == 2000,
            fmt("solve + 2x720 boundary samples + residuals in %.3f s", s)};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion K]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "geometry constants", geometry_constants},
        {2, "constraint identities", constraint_identities},
        {3, "convergence speed over the parameter grid", convergence_speed},
        {4, "conditioning over the parameter grid", conditioning},
        {5, "static equilibrium recovery", equilibrium},
        {6, "boundary residuals", boundary_residuals},
        {7, "displacement singularity elimination", singularity_elimination},
        {8, "filter efficacy on the constrained arc", filter_efficacy},
        {9, "degeneration identities", degeneration},
        {10, "mirror symmetry", symmetry},
        {11, "x0/h convergence trend", x0_trend},
        {12, "performance", performance},
    };

    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        ++ran;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.description, o.details.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return failed ? 1 : 0;
}
