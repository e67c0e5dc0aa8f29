#include "rhtunnel_app/artifacts.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace rhtunnel::app {
namespace fs = std::filesystem;

namespace {

#ifndef RHTUNNEL_VERSION_STRING
#define RHTUNNEL_VERSION_STRING "0.0.0"
#endif

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

double norm(double value, double scale) { return scale > 0.0 ? value / scale : value; }

void physical_columns(std::ostream& o, const PhysicalField& f, const NormalizationScales& sc) {
    o << num(f.total.sigma_x) << ',' << num(f.total.sigma_y) << ',' << num(f.total.tau_xy) << ','
      << num(f.u) << ',' << num(f.v) << ',' << num(norm(f.total.sigma_x, sc.stress_scale)) << ','
      << num(norm(f.total.sigma_y, sc.stress_scale)) << ',' << num(norm(f.u, sc.disp_scale)) << ','
      << num(norm(f.v, sc.disp_scale));
}

std::string boundary_csv(const char* lead, const std::vector<BoundarySample>& samples,
                         const NormalizationScales& sc) {
    std::ostringstream o;
    o << lead << ",sx_kPa,sy_kPa,txy_kPa,u_m,v_m,sx_norm,sy_norm,u_norm,v_norm\n";
    for (const auto& s : samples) {
        o << num(s.coord) << ',';
        physical_columns(o, s.field, sc);
        o << '\n';
    }
    return o.str();
}

const char* status_name(PointStatus s) {
    switch (s) {
        case PointStatus::Interior: return "interior";
        case PointStatus::Boundary: return "boundary";
        default: return "absent";
    }
}

std::string grid_csv(const std::vector<GridPoint>& grid, const NormalizationScales& sc) {
    std::ostringstream o;
    o << "x_m,y_m,status,sx_kPa,sy_kPa,txy_kPa,smax_kPa,smin_kPa,u_m,v_m,"
         "sx_norm,sy_norm,txy_norm,smax_norm,smin_norm,u_norm,v_norm\n";
    for (const auto& p : grid) {
        o << num(p.x) << ',' << num(p.y) << ',' << status_name(p.status);
        if (p.status == PointStatus::Absent) {
            for (int i = 0; i < 14; ++i) o << ",nan";
            o << '\n';
            continue;
        }
        const auto& f = p.field;
        const double s = sc.stress_scale, u = sc.disp_scale;
        o << ',' << num(f.total.sigma_x) << ',' << num(f.total.sigma_y) << ',' << num(f.total.tau_xy) << ','
          << num(f.sigma_max) << ',' << num(f.sigma_min) << ',' << num(f.u) << ',' << num(f.v) << ','
          << num(norm(f.total.sigma_x, s)) << ',' << num(norm(f.total.sigma_y, s)) << ','
          << num(norm(f.total.tau_xy, s)) << ',' << num(norm(f.sigma_max, s)) << ','
          << num(norm(f.sigma_min, s)) << ',' << num(norm(f.u, u)) << ',' << num(norm(f.v, u)) << '\n';
    }
    return o.str();
}

std::string residuals_csv(const ResidualReport& r) {
    std::ostringstream o;
    o << "metric,value\n"
      << "free_surface_traction_median," << num(r.free_surface_traction_median) << '\n'
      << "free_surface_traction_max," << num(r.free_surface_traction_max) << '\n'
      << "free_samples," << r.free_samples << '\n'
      << "constrained_surface_disp_median," << num(r.constrained_surface_disp_median) << '\n'
      << "constrained_surface_disp_max," << num(r.constrained_surface_disp_max) << '\n'
      << "constrained_samples," << r.constrained_samples << '\n'
      << "tunnel_traction_median_rel_error," << num(r.tunnel_traction_median_rel_error) << '\n'
      << "tunnel_traction_max_rel_error," << num(r.tunnel_traction_max_rel_error) << '\n'
      << "tunnel_samples," << r.tunnel_samples << '\n'
      << "resultant_Fx_kN_per_m," << num(r.resultant_recovered.Fx) << '\n'
      << "resultant_Fy_kN_per_m," << num(r.resultant_recovered.Fy) << '\n'
      << "exclusion_band_deg," << num(r.exclusion_band_deg) << '\n';
    return o.str();
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream o;
    o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return o.str();
}

std::string manifest(const RunConfig& cfg, const ArtifactSet& set, const DerivedGeometry& g, const Material& m) {
    const auto& sol = set.solution;
    const auto& r = set.residuals;
    std::ostringstream o;
    o << "software.name=rhtunnel\n"
      << "software.version=" << software_version() << '\n';
    std::istringstream echo(format_config(cfg));
    for (std::string line; std::getline(echo, line);) {
        const auto eq = line.find(" = ");
        o << "input." << line.substr(0, eq) << '=' << line.substr(eq + 3) << '\n';
    }
    o << "geometry.a_m=" << num(g.a) << '\n'
      << "geometry.r=" << num(g.r) << '\n'
      << "geometry.theta0_deg=" << num(g.theta0 * 180.0 / std::numbers::pi) << '\n'
      << "material.kappa=" << num(m.kappa) << '\n'
      << "material.G_kPa=" << num(m.G) << '\n'
      << "material.lambda=" << num(m.lambda) << '\n'
      << "scales.stress_kPa=" << num(set.scales.stress_scale) << '\n'
      << "scales.disp_m=" << num(set.scales.disp_scale) << '\n'
      << "solver.reps=" << sol.reps << '\n'
      << "solver.cond_A1=" << num(sol.cond[0]) << '\n'
      << "solver.cond_A2=" << num(sol.cond[1]) << '\n'
      << "solver.cond_A3=" << num(sol.cond[2]) << '\n'
      << "solver.final_increment=" << num(sol.history.back()) << '\n'
      << "solver.A_minus1=" << num(sol.A[-1]) << '\n'
      << "solver.B_minus1=" << num(sol.B[-1]) << '\n'
      << "solver.Ca=" << num(sol.Ca) << '\n'
      << "solver.C0=" << num(sol.C0) << '\n'
      << "solver.warnings=" << sol.warnings.size() << '\n';
    for (std::size_t i = 0; i < sol.warnings.size(); ++i)
        o << "solver.warning." << i + 1 << '=' << sol.warnings[i] << '\n';
    o << "filter.lanczos=" << (cfg.lanczos ? "true" : "false") << '\n'
      << "residual.free_surface_traction_median=" << num(r.free_surface_traction_median) << '\n'
      << "residual.free_surface_traction_max=" << num(r.free_surface_traction_max) << '\n'
      << "residual.constrained_surface_disp_median=" << num(r.constrained_surface_disp_median) << '\n'
      << "residual.constrained_surface_disp_max=" << num(r.constrained_surface_disp_max) << '\n'
      << "residual.tunnel_traction_median_rel_error=" << num(r.tunnel_traction_median_rel_error) << '\n'
      << "residual.resultant_Fx=" << num(r.resultant_recovered.Fx) << '\n'
      << "residual.resultant_Fy=" << num(r.resultant_recovered.Fy) << '\n'
      << "artifact.files=surface.csv,tunnel.csv,grid.csv,residuals.csv,input.cfg\n"
      << "run.timestamp=" << utc_timestamp() << '\n'
      << "run.solve_seconds=" << num(set.solve_seconds) << '\n'
      << "run.fields_seconds=" << num(set.fields_seconds) << '\n';
    return o.str();
}

std::string num_key(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        if (c != '\n' && c != '\r') out += c;
    }
    return out + '"';
}

}  // namespace

const char* software_version() { return RHTUNNEL_VERSION_STRING; }

const std::string& ArtifactSet::file(const std::string& name) const {
    for (const auto& [n, body] : files)
        if (n == name) return body;
    throw IoError("artifact " + name + " was not produced");
}

ArtifactSet build_case(const RunConfig& cfg) {
    validate(cfg);
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const DerivedGeometry g = derive_geometry(cfg.geometry());
    const Material m = cfg.material();

    ArtifactSet set;
    set.solution = run_solver(g, m, cfg.solver());
    const auto t1 = clock::now();

    const FieldModel model = make_field_model(set.solution, g, m, cfg.lanczos);
    set.scales = normalization_scales(g, m);
    set.surface = sample_surface(model, cfg.boundary_samples);
    set.tunnel = sample_tunnel(model, cfg.boundary_samples);
    set.grid = evaluate_grid(cfg.grid(), model, cfg.workers);
    set.residuals = residual_report(model, cfg.residual_samples, cfg.gibbs_band_deg);
    const auto t2 = clock::now();
    set.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
    set.fields_seconds = std::chrono::duration<double>(t2 - t1).count();

    set.files.emplace_back("surface.csv", boundary_csv("x_m", set.surface, set.scales));
    set.files.emplace_back("tunnel.csv", boundary_csv("theta_deg", set.tunnel, set.scales));
    set.files.emplace_back("grid.csv", grid_csv(set.grid, set.scales));
    set.files.emplace_back("residuals.csv", residuals_csv(set.residuals));
    set.files.emplace_back("input.cfg", format_config(cfg));
    set.files.emplace_back("manifest.txt", manifest(cfg, set, g, m));
    return set;
}

void write_artifacts(const ArtifactSet& set, const fs::path& dir) {
    std::vector<fs::path> written;
    auto rollback = [&] {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
    };
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    for (const auto& [name, body] : set.files) {
        const fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (out) written.push_back(p);
        out << body;
        out.close();
        if (!out) {
            rollback();
            throw IoError("failed to write " + p.string());
        }
    }
}

ArtifactSet run_case(const RunConfig& cfg) {
    ArtifactSet set = build_case(cfg);
    write_artifacts(set, cfg.output);
    return set;
}

std::vector<SweepCase> run_sweep(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    std::vector<SweepCase> cases;
    for (double hR : cfg.sweep_h_over_R)
        for (double k0 : cfg.sweep_k0)
            for (double x0h : cfg.sweep_x0_over_h) {
                SweepCase c;
                c.h_over_R = hR;
                c.k0 = k0;
                c.x0_over_h = x0h;
                c.directory = "hR_" + num_key(hR) + "-k0_" + num_key(k0) + "-x0h_" + num_key(x0h);
                cases.push_back(c);
            }

    std::mutex log_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            SweepCase& c = cases[i];
            RunConfig one = cfg;
            one.h_over_R = c.h_over_R;
            one.k0 = c.k0;
            one.x0_over_h = c.x0_over_h;
            one.output = (fs::path(cfg.output) / c.directory).string();
            one.workers = 1;
            try {
                const ArtifactSet set = run_case(one);
                const auto& sc = set.scales;
                c.reps = set.solution.reps;
                c.cond = set.solution.cond;
                c.smax_norm_max = -INFINITY;
                c.smin_norm_min = INFINITY;
                c.v_norm_min = INFINITY;
                c.v_norm_max = -INFINITY;
                auto visit = [&](const PhysicalField& f) {
                    c.smax_norm_max = std::max(c.smax_norm_max, norm(f.sigma_max, sc.stress_scale));
                    c.smin_norm_min = std::min(c.smin_norm_min, norm(f.sigma_min, sc.stress_scale));
                    c.u_norm_absmax = std::max(c.u_norm_absmax, std::abs(norm(f.u, sc.disp_scale)));
                    c.v_norm_min = std::min(c.v_norm_min, norm(f.v, sc.disp_scale));
                    c.v_norm_max = std::max(c.v_norm_max, norm(f.v, sc.disp_scale));
                };
                for (const auto& p : set.grid)
                    if (p.status != PointStatus::Absent) visit(p.field);
                for (const auto& s : set.surface) visit(s.field);
                for (const auto& s : set.tunnel) visit(s.field);
                c.ok = true;
            } catch (const std::exception& e) {
                c.error = e.what();
                std::lock_guard lock(log_mutex);
                log << "case " << c.directory << " failed: " << e.what() << '\n';
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const int n = std::max(1, std::min<int>(cfg.workers, static_cast<int>(cases.size())));
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    }

    std::ostringstream o;
    o << "case,h_over_R,k0,x0_over_h,status,reps,cond_A1,cond_A2,cond_A3,"
         "smax_norm_max,smin_norm_min,u_norm_absmax,v_norm_min,v_norm_max,error\n";
    for (const auto& c : cases) {
        o << c.directory << ',' << num(c.h_over_R) << ',' << num(c.k0) << ',' << num(c.x0_over_h) << ','
          << (c.ok ? "ok" : "failed") << ',';
        if (c.ok)
            o << c.reps << ',' << num(c.cond[0]) << ',' << num(c.cond[1]) << ',' << num(c.cond[2]) << ','
              << num(c.smax_norm_max) << ',' << num(c.smin_norm_min) << ',' << num(c.u_norm_absmax) << ','
              << num(c.v_norm_min) << ',' << num(c.v_norm_max) << ",\n";
        else
            o << ",,,,,,,,," << csv_quote(c.error) << '\n';
    }
    ArtifactSet summary;
    summary.files.emplace_back("summary.csv", o.str());
    write_artifacts(summary, cfg.output);
    return cases;
}

bool run_verification(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const DerivedGeometry g = derive_geometry(cfg.geometry());
    const Material m = cfg.material();
    const SolverConfig sc = cfg.solver();
    bool ok = true;

    out << "case: h/R = " << num(cfg.h_over_R) << ", k0 = " << num(cfg.k0) << ", x0/h = " << num(cfg.x0_over_h)
        << ", N = " << cfg.N << "\n";
    try {
        const SolutionCoefficients sol = run_solver(g, m, sc);
        out << "reps = " << sol.reps << ", cond = " << num(sol.cond[0]) << ", " << num(sol.cond[1]) << ", "
            << num(sol.cond[2]) << "\n";
        for (const auto& w : sol.warnings) out << "warning: " << w << "\n";
        for (bool filtered : {true, false}) {
            const ResidualReport r =
                residual_report(make_field_model(sol, g, m, filtered), cfg.residual_samples, cfg.gibbs_band_deg);
            out << (filtered ? "filtered" : "unfiltered") << " residuals:\n"
                << "  free surface |traction|/(gamma h): median " << num(r.free_surface_traction_median) << ", max "
                << num(r.free_surface_traction_max) << " (" << r.free_samples << " samples)\n"
                << "  constrained surface |u+iv|/u0: median " << num(r.constrained_surface_disp_median) << ", max "
                << num(r.constrained_surface_disp_max) << " (" << r.constrained_samples << " samples)\n"
                << "  tunnel traction relative error: median " << num(r.tunnel_traction_median_rel_error)
                << ", max " << num(r.tunnel_traction_max_rel_error) << "\n"
                << "  recovered resultant: Fx = " << num(r.resultant_recovered.Fx)
                << ", Fy = " << num(r.resultant_recovered.Fy) << " (expected 0, "
                << num(resultant(cfg.geometry(), m).Fy) << ")\n";
        }
    } catch (const Error& e) {
        out << "solver failed: " << e.what() << "\n";
        ok = false;
    }

    const int kmax = std::min(20, cfg.N - 2);
    const DegenerationReport d = degeneration_check(20, cfg.N, g.r, kmax, 20240601);
    out << "degeneration identities (" << d.spectra << " spectra, k <= " << d.kmax
        << "): worst relative discrepancy " << num(d.worst()) << "\n";

    const std::vector<double> ratios{1.0, 10.0, 100.0, 1000.0, 10000.0};
    const ConvergenceStudy study = convergence_study(cfg.geometry(), m, sc, ratios, cfg.boundary_samples);
    out << "x0/h study (max-norm change of normalised profiles):\n";
    for (const auto& c : study.cases) {
        if (!c.ok) {
            out << "  x0/h = " << num(c.x0_over_h) << " failed: " << c.error << "\n";
            ok = false;
        }
    }
    for (const auto& diff : study.differences)
        out << "  " << num(diff.from) << " -> " << num(diff.to) << ": surface " << num(diff.surface_max())
            << ", tunnel " << num(diff.tunnel_max()) << " (tunnel v " << num(diff.tunnel_v) << ")\n";
    return ok;
}

fs::path emit_plot_script(const fs::path& dir) {
    const bool surface = fs::exists(dir / "surface.csv");
    const bool tunnel = fs::exists(dir / "tunnel.csv");
    const bool grid = fs::exists(dir / "grid.csv");
    if (!surface && !tunnel && !grid) throw IoError("no artifacts found in " + dir.string());

    std::ostringstream o;
    o << "# Figures for the artifacts in this directory. Run: gnuplot plot.gp\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 1000,700\n"
      << "set grid\n";
    if (surface) {
        std::string range = "[0:*]";
        if (fs::exists(dir / "input.cfg")) {
            try {
                const RunConfig c = load_config(dir / "input.cfg");
                range = "[0:" + num(4.0 * c.h_over_R * c.R) + "]";
            } catch (const Error&) {
            }
        }
        o << "\n# Ground surface: stresses over gamma h, displacements over u0\n"
          << "set output 'surface.png'\n"
          << "set xlabel 'x (m)'\n"
          << "set xrange " << range << "\n"
          << "plot 'surface.csv' using 1:7 skip 1 with lines title 'sx/gamma h', \\\n"
          << "     '' using 1:8 skip 1 with lines title 'sy/gamma h', \\\n"
          << "     '' using 1:9 skip 1 with lines title 'u/u0', \\\n"
          << "     '' using 1:10 skip 1 with lines title 'v/u0'\n"
          << "set xrange [*:*]\n";
    }
    if (tunnel) {
        o << "\n# Tunnel periphery against the local polar angle\n"
          << "set output 'tunnel.png'\n"
          << "set xlabel 'theta (deg)'\n"
          << "set xrange [0:360]\n"
          << "plot 'tunnel.csv' using 1:7 skip 1 with lines title 'sx/gamma h', \\\n"
          << "     '' using 1:8 skip 1 with lines title 'sy/gamma h', \\\n"
          << "     '' using 1:9 skip 1 with lines title 'u/u0', \\\n"
          << "     '' using 1:10 skip 1 with lines title 'v/u0'\n"
          << "set xrange [*:*]\n";
    }
    if (grid) {
        o << "\n# Field maps; absent points are nan and left blank\n"
          << "set xlabel 'x (m)'\n"
          << "set ylabel 'y (m)'\n"
          << "set size ratio -1\n"
          << "set palette rgbformulae 33,13,10\n";
        const char* maps[][3] = {{"smax", "14", "sigma_max/gamma h"},
                                 {"smin", "15", "sigma_min/gamma h"},
                                 {"u", "16", "u/u0"},
                                 {"v", "17", "v/u0"}};
        for (const auto& m : maps)
            o << "set output 'grid_" << m[0] << ".png'\n"
              << "set title '" << m[2] << "'\n"
              << "plot 'grid.csv' using 1:2:" << m[1] << " skip 1 with image notitle\n";
    }

    const fs::path path = dir / "plot.gp";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << o.str();
    out.close();
    if (!out) throw IoError("failed to write " + path.string());
    return path;
}

}  // namespace rhtunnel::app
