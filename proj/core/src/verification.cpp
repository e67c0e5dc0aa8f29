#include "rhtunnel/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {
namespace {

constexpr double kPi = std::numbers::pi;

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double max_of(const std::vector<double>& v) {
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(v.begin(), v.end());
}

double scaled(double value, double scale) { return scale > 0.0 ? value / scale : value; }

}  // namespace

cplx recovered_tunnel_traction(double theta, const FieldModel& model) {
    const cplx zeta = std::polar(model.geom.r, theta);
    const AnnulusStress s = eval_annulus_stress(zeta, model);
    const cplx zd = map_derivative(zeta, model.geom);
    // e^{i theta} z'/|z'| is the unit normal pointing into the material; the traction the
    // material exerts on the tunnel uses the opposite normal.
    const cplx normal = -std::polar(1.0, theta) * zd / std::abs(zd);
    return normal * cplx(s.sigma_rho, s.tau_rhotheta);
}

ResidualReport residual_report(const FieldModel& model, int samples, double band_deg) {
    const auto& g = model.geom;
    const NormalizationScales sc = normalization_scales(g, model.mat);
    const double band = band_deg * kPi / 180.0;
    const double th0 = g.theta0;
    ResidualReport rep;
    rep.exclusion_band_deg = band_deg;

    std::vector<double> free_res, cons_res, tunnel_res;
    for (int i = 0; i < samples; ++i) {
        const double th = th0 + (2.0 * kPi - 2.0 * th0) * (i + 0.5) / samples;
        if (std::min(th - th0, 2.0 * kPi - th0 - th) < band) continue;
        const AnnulusStress s = eval_annulus_stress(std::polar(1.0, th), model);
        free_res.push_back(scaled(std::hypot(s.sigma_rho, s.tau_rhotheta), sc.stress_scale));
    }
    for (int i = 0; i < samples; ++i) {
        const double th = -th0 + 2.0 * th0 * (i + 0.5) / samples;
        if (th0 - std::abs(th) < band) continue;
        const auto [u, v] = eval_annulus_displacement(std::polar(1.0, th), model);
        cons_res.push_back(scaled(std::hypot(u, v), sc.disp_scale));
    }

    const TunnelGeometry tg{g.R, g.h, g.x0};
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * kPi * i / samples;
        const cplx zeta = std::polar(g.r, th);
        const cplx t = recovered_tunnel_traction(th, model);
        const double vartheta = std::arg(map_backward(zeta, g) + cplx(0.0, g.h));
        const cplx T = periphery_traction(vartheta, tg, model.mat);
        const double err = std::abs(t - T);
        tunnel_res.push_back(std::abs(T) > 0.0 ? err / std::abs(T) : err);
    }

    rep.resultant_recovered = clockwise_resultant(
        [&](double th) { return recovered_tunnel_traction(th, model); },
        [&](double th) { return std::abs(map_derivative(std::polar(g.r, th), g)) * g.r; }, samples);

    rep.free_samples = free_res.size();
    rep.constrained_samples = cons_res.size();
    rep.tunnel_samples = tunnel_res.size();
    rep.free_surface_traction_median = median(free_res);
    rep.free_surface_traction_max = max_of(free_res);
    rep.constrained_surface_disp_median = median(cons_res);
    rep.constrained_surface_disp_max = max_of(cons_res);
    rep.tunnel_traction_median_rel_error = median(tunnel_res);
    rep.tunnel_traction_max_rel_error = max_of(tunnel_res);
    return rep;
}

TractionHarmonics traction_harmonics(const OffsetSeries& A, const OffsetSeries& B, double Ca, double r, int kmax) {
    const double r2 = r * r;
    TractionHarmonics h;
    h.negative.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    h.positive.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        const double rk = std::pow(r, k), rmk = std::pow(r, -k);
        h.negative[k] = 2.0 * rmk / (-k) * A[-k - 1] - 2.0 * rmk / (-k - 1.0) * A[-k - 2] +
                        2.0 * rk / k * B[-k - 1] - 2.0 * rk * r2 / (k + 1.0) * B[-k - 2] +
                        2.0 * (1.0 - r2) * rk * (A[k] - A[k - 1]);
        if (k < 2) continue;
        h.positive[k] = 2.0 * rk / k * A[k - 1] - 2.0 * rk / (k - 1.0) * A[k - 2] +
                        2.0 * rmk / (-k) * B[k - 1] - 2.0 * rmk * r2 / (-k + 1.0) * B[k - 2] +
                        2.0 * (1.0 - r2) * rmk * (A[-k] - A[-k - 1]);
    }
    const double Ct = -(A[0] - A[-2]) + 2.0 * (A[-1] + B[-1]) * std::log(r) + 2.0 * Ca;
    h.first = 2.0 * (B[0] - r2 * A[0]) + 2.0 * (1.0 - r2) * A[-2] + 2.0 * (r2 - 1.0) * A[-1] + r2 * Ct;
    h.constant = 2.0 * (1.0 - r2) * A[0] + 2.0 * (A[-2] - r2 * B[-2]) + 2.0 * (r2 - 1.0) * A[-1] + Ct;
    return h;
}

double DegenerationReport::worst() const {
    return std::max({max_harmonic_discrepancy, max_first_discrepancy, max_constant_discrepancy, max_a3_real_part});
}

DegenerationReport degeneration_check(int spectra, int N, double r, int kmax, std::uint64_t seed) {
    if (kmax > N - 2) throw std::invalid_argument("degeneration_check needs kmax <= N - 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const cplx I(0.0, 1.0);
    const double r2 = r * r;

    DegenerationReport rep;
    rep.spectra = spectra;
    rep.kmax = kmax;
    for (int s = 0; s < spectra; ++s) {
        OffsetSeries A(-N, N), B(-N - 2, N - 1);
        for (int k = -N; k <= N; ++k) A.at(k) = k == -1 ? 0.0 : unit(rng);
        for (int k = -N - 2; k <= N - 1; ++k) B.at(k) = A[k];
        const double Ca = unit(rng);
        const TractionHarmonics h = traction_harmonics(A, B, Ca, r, kmax);

        // Balanced-traction coefficients, written directly in complex form.
        const cplx C = I / 2.0 * (A[-2] - A[0]) + I * Ca;
        rep.max_a3_real_part = std::max(rep.max_a3_real_part, std::abs((I / 2.0 * (A[-2] - A[0])).real()));
        for (int k = 1; k <= kmax; ++k) {
            const double rk = std::pow(r, k), rmk = std::pow(r, -k);
            const cplx t1 = (rmk - rk) * I * A[-k - 1] / double(-k);
            const cplx t2 = (rk * r2 - rmk) * I * A[-k - 2] / double(-k - 1);
            const cplx t3 = (1.0 - r2) * rk * I * (A[k] - A[k - 1]);
            const double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
            rep.max_harmonic_discrepancy =
                std::max(rep.max_harmonic_discrepancy, std::abs(I / 2.0 * h.negative[k] - (t1 + t2 + t3)) / scale);
            if (k < 2) continue;
            const cplx p1 = (rk - rmk) * I * A[k - 1] / double(k);
            const cplx p2 = (rmk * r2 - rk) * I * A[k - 2] / double(k - 1);
            const cplx p3 = (1.0 - r2) * rmk * I * (A[-k] - A[-k - 1]);
            const double pscale = std::max({1.0, std::abs(p1), std::abs(p2), std::abs(p3)});
            rep.max_harmonic_discrepancy =
                std::max(rep.max_harmonic_discrepancy, std::abs(I / 2.0 * h.positive[k] - (p1 + p2 + p3)) / pscale);
        }
        const cplx shared = I * (1.0 - r2) * (A[0] + A[-2]);
        rep.max_first_discrepancy = std::max(rep.max_first_discrepancy, std::abs(I / 2.0 * h.first - (shared + r2 * C)));
        rep.max_constant_discrepancy = std::max(rep.max_constant_discrepancy, std::abs(I / 2.0 * h.constant - (shared + C)));
    }
    return rep;
}

double ProfileDifference::surface_max() const {
    return std::max({surface_sx, surface_sy, surface_txy, surface_u, surface_v});
}

double ProfileDifference::tunnel_max() const {
    return std::max({tunnel_sx, tunnel_sy, tunnel_txy, tunnel_u, tunnel_v});
}

namespace {

struct ComponentDiff {
    double sx = 0.0, sy = 0.0, txy = 0.0, u = 0.0, v = 0.0;
};

ComponentDiff profile_diff(const std::vector<BoundarySample>& p, const std::vector<BoundarySample>& q,
                           const NormalizationScales& sc) {
    ComponentDiff d;
    for (std::size_t i = 0; i < std::min(p.size(), q.size()); ++i) {
        const auto& a = p[i].field;
        const auto& b = q[i].field;
        d.sx = std::max(d.sx, scaled(std::abs(a.total.sigma_x - b.total.sigma_x), sc.stress_scale));
        d.sy = std::max(d.sy, scaled(std::abs(a.total.sigma_y - b.total.sigma_y), sc.stress_scale));
        d.txy = std::max(d.txy, scaled(std::abs(a.total.tau_xy - b.total.tau_xy), sc.stress_scale));
        d.u = std::max(d.u, scaled(std::abs(a.u - b.u), sc.disp_scale));
        d.v = std::max(d.v, scaled(std::abs(a.v - b.v), sc.disp_scale));
    }
    return d;
}

}  // namespace

ConvergenceStudy convergence_study(const TunnelGeometry& base, const Material& m, const SolverConfig& cfg,
                                   const std::vector<double>& x0_over_h, int samples) {
    ConvergenceStudy study;
    NormalizationScales sc{};
    for (double ratio : x0_over_h) {
        ProfileCase pc;
        pc.x0_over_h = ratio;
        try {
            const DerivedGeometry g = derive_geometry({base.R, base.h, ratio * base.h});
            const SolutionCoefficients sol = run_solver(g, m, cfg);
            const FieldModel model = make_field_model(sol, g, m, cfg.lanczos_enabled);
            sc = normalization_scales(g, m);
            pc.reps = sol.reps;
            pc.surface = sample_surface(model, samples);
            pc.tunnel = sample_tunnel(model, samples);
            pc.ok = true;
        } catch (const Error& e) {
            pc.error = e.what();
        }
        study.cases.push_back(std::move(pc));
    }

    const ProfileCase* prev = nullptr;
    for (const auto& pc : study.cases) {
        if (!pc.ok) continue;
        if (prev) {
            const ComponentDiff s = profile_diff(prev->surface, pc.surface, sc);
            const ComponentDiff t = profile_diff(prev->tunnel, pc.tunnel, sc);
            study.differences.push_back({prev->x0_over_h, pc.x0_over_h, s.sx, s.sy, s.txy, s.u, s.v,
                                         t.sx, t.sy, t.txy, t.u, t.v});
        }
        prev = &pc;
    }
    return study;
}

}  // namespace rhtunnel
