#include "rhtunnel/fields.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {
namespace {

// Powers base^lo .. base^hi by repeated multiplication.
class PowerTable {
public:
    PowerTable(cplx base, int lo, int hi) : lo_(lo), p_(static_cast<std::size_t>(hi - lo + 1)) {
        p_[static_cast<std::size_t>(-lo)] = 1.0;
        for (int k = 1; k <= hi; ++k) at(k) = at(k - 1) * base;
        const cplx inv = 1.0 / base;
        for (int k = -1; k >= lo; --k) at(k) = at(k + 1) * inv;
    }
    cplx operator()(int k) const { return p_[static_cast<std::size_t>(k - lo_)]; }

private:
    cplx& at(int k) { return p_[static_cast<std::size_t>(k - lo_)]; }
    int lo_;
    std::vector<cplx> p_;
};

void check_annulus(cplx zeta, const DerivedGeometry& g) {
    const double rho = std::abs(zeta);
    if (rho < g.r - kCircleTolerance || rho > 1.0 + kCircleTolerance) {
        std::ostringstream msg;
        msg << "point |zeta| = " << rho << " lies outside the annulus [" << g.r << ", 1]";
        throw DomainError(msg.str());
    }
}

void check_exclusion(cplx zeta) {
    if (std::abs(zeta - 1.0) < kFieldExclusion)
        throw DomainError("point lies within the exclusion radius of zeta = 1");
}

bool on_unit_circle(cplx zeta) { return std::abs(std::abs(zeta) - 1.0) <= kCircleTolerance; }

}  // namespace

FieldCoefficients apply_filter(const SolutionCoefficients& sol, const FilterWeights& w, const Material& m) {
    FieldCoefficients c{apply_weights(sol.A, w), apply_weights(sol.B, w), 0.0, true};
    c.C0 = compute_C0(c.A, c.B, m.kappa);
    return c;
}

FieldCoefficients unfiltered_coefficients(const SolutionCoefficients& sol, const Material& m) {
    FieldCoefficients c{sol.A, sol.B, 0.0, false};
    c.C0 = compute_C0(c.A, c.B, m.kappa);
    return c;
}

FieldModel make_field_model(const SolutionCoefficients& sol, const DerivedGeometry& g, const Material& m,
                            bool lanczos) {
    return {g, m, lanczos ? apply_filter(sol, FilterWeights(sol.N), m) : unfiltered_coefficients(sol, m)};
}

NormalizationScales normalization_scales(const DerivedGeometry& g, const Material& m) {
    const double s = m.gamma * g.h;
    return {s, s * g.R / (2.0 * m.G)};
}

AnnulusStress eval_annulus_stress(cplx zeta, const FieldModel& model) {
    check_annulus(zeta, model.geom);
    check_exclusion(zeta);
    const auto& A = model.coeffs.A;
    const auto& B = model.coeffs.B;
    const int N = A.hi();
    const double a = model.geom.a;

    const cplx zb = std::conj(zeta);
    const PowerTable zp(zeta, -N, N);
    const PowerTable zbp(zb, -N - 2, N + 2);

    // The rotation e^{-2i theta} written as conj(zeta) / zeta.
    const cplx s = zb / zeta;
    const cplx omz2 = (1.0 - zeta) * (1.0 - zeta);
    const cplx omzb = 1.0 - zb;
    const cplx c1 = omzb * omzb / (-2.0 * a);
    const cplx c2 = s * omz2 / (-4.0 * a);
    const cplx c3 = s * omz2 / (4.0 * a);
    const cplx c4 = (1.0 - zeta * zeta) / (-2.0 * a) * omzb * s;
    const cplx c5 = (1.0 - zeta * zeta) / (4.0 * a) * omzb * omzb * s;
    const cplx c6 = omz2 / (-2.0 * a);
    const cplx cB = omz2 * s / (2.0 * a);

    cplx phi = 0.0, mixed = 0.0, bsum = 0.0;
    for (int k = -N; k <= N; ++k) {
        const double Ak = A[k];
        if (Ak == 0.0) continue;
        phi += Ak * zp(k);
        mixed += Ak * ((c1 + c4) * zbp(k) + c2 * (k + 2.0) * zbp(k + 1) + (c3 + c5) * double(k) * zbp(k - 1));
    }
    for (int k = B.lo(); k <= B.hi(); ++k) bsum += B[k] * zbp(-k - 2);

    const double trace = 4.0 * (c6 * phi).real();
    const cplx rho_tau = mixed + c6 * phi + cB * bsum;
    return {rho_tau.real(), trace - rho_tau.real(), rho_tau.imag()};
}

std::pair<double, double> eval_annulus_displacement(cplx zeta, const FieldModel& model) {
    check_annulus(zeta, model.geom);
    const bool boundary = on_unit_circle(zeta);
    if (!boundary) check_exclusion(zeta);

    const auto& A = model.coeffs.A;
    const auto& B = model.coeffs.B;
    const double kappa = model.mat.kappa;
    const int N = A.hi();
    const cplx I(0.0, 1.0);
    const cplx zb = std::conj(zeta);

    cplx asum = 0.0;
    const PowerTable zbp(zb, -N, N);
    for (int k = -N; k <= N; ++k) asum += A[k] * zbp(k);

    cplx g = I * displacement_sums(A, B, kappa, zeta);
    if (boundary) {
        g -= I * (1.0 - zeta * zeta) / (2.0 * zeta * zeta) * asum;
    } else {
        g -= I * (1.0 + zeta) / 2.0 * (1.0 - zb) * (1.0 - zb) / (1.0 - zeta) * asum;
        g += I * (kappa * A[-1] - B[-1]) * std::log(std::abs(zeta));
    }
    g += I * model.coeffs.C0;
    const cplx w = g / (2.0 * model.mat.G);
    return {w.real(), w.imag()};
}

AnnulusField eval_annulus(cplx zeta, const FieldModel& model) {
    const AnnulusStress s = eval_annulus_stress(zeta, model);
    const auto [u, v] = eval_annulus_displacement(zeta, model);
    return {s.sigma_rho, s.sigma_theta, s.tau_rhotheta, u, v};
}

std::pair<double, double> principal(double sx, double sy, double txy) {
    const double mean = 0.5 * (sx + sy);
    const double rad = std::hypot(0.5 * (sx - sy), txy);
    return {mean + rad, mean - rad};
}

PhysicalField to_physical(cplx zeta, const AnnulusField& f, const FieldModel& model) {
    check_exclusion(zeta);
    PhysicalField p;
    p.z = map_backward(zeta, model.geom);
    const cplx zd = map_derivative(zeta, model.geom);
    const cplx rot = (std::conj(zeta) / zeta) * (std::conj(zd) / zd);

    const double sum = f.sigma_rho + f.sigma_theta;
    const cplx diff = cplx(f.sigma_theta - f.sigma_rho, 2.0 * f.tau_rhotheta) * rot;
    p.induced = {0.5 * (sum - diff.real()), 0.5 * (sum + diff.real()), 0.5 * diff.imag()};

    const StressState s0 = initial_stress(p.z.imag(), model.mat);
    p.total = {p.induced.sigma_x + s0.sigma_x, p.induced.sigma_y + s0.sigma_y, p.induced.tau_xy + s0.tau_xy};
    std::tie(p.sigma_max, p.sigma_min) = principal(p.total.sigma_x, p.total.sigma_y, p.total.tau_xy);
    p.u = f.u;
    p.v = f.v;
    return p;
}

PhysicalField eval_physical(cplx zeta, const FieldModel& model) {
    return to_physical(zeta, eval_annulus(zeta, model), model);
}

std::vector<GridPoint> evaluate_grid(const GridSpec& spec, const FieldModel& model, int workers) {
    const auto& g = model.geom;
    const double margin = 1e-6 * g.R;
    const std::size_t total = static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);
    std::vector<GridPoint> out(total);

    auto coord = [](double lo, double hi, int n, int i) {
        return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    };

    auto evaluate = [&](std::size_t idx) {
        const int iy = static_cast<int>(idx / static_cast<std::size_t>(spec.nx));
        const int ix = static_cast<int>(idx % static_cast<std::size_t>(spec.nx));
        GridPoint& gp = out[idx];
        gp.x = coord(spec.x_min, spec.x_max, spec.nx, ix);
        gp.y = coord(spec.y_max, spec.y_min, spec.ny, iy);

        const cplx centre(0.0, -g.h);
        cplx z(gp.x, gp.y);
        const double dist = std::abs(z - centre);
        if (gp.y > margin || dist < g.R - margin) return;
        if (std::abs(gp.y) <= margin) {
            gp.status = PointStatus::Boundary;
            z = cplx(gp.x, 0.0);
        } else if (std::abs(dist - g.R) <= margin) {
            gp.status = PointStatus::Boundary;
            z = centre + g.R * (z - centre) / dist;
        } else {
            gp.status = PointStatus::Interior;
        }

        cplx zeta = map_forward(z, g);
        if (std::abs(zeta - 1.0) < kFieldExclusion) {
            gp.status = PointStatus::Absent;
            return;
        }
        if (gp.status == PointStatus::Boundary) {
            const double rho = std::abs(zeta);
            zeta *= (std::abs(rho - 1.0) < std::abs(rho - g.r) ? 1.0 : g.r) / rho;
        }
        gp.field = eval_physical(zeta, model);
    };

    const int nthreads = std::max(1, std::min<int>(workers, static_cast<int>(total)));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < total; ++i) evaluate(i);
        return out;
    }
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < total; i += static_cast<std::size_t>(nthreads))
                evaluate(i);
        });
    pool.clear();
    return out;
}

std::vector<BoundarySample> sample_surface(const FieldModel& model, int count) {
    std::vector<BoundarySample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double theta = std::numbers::pi * (count - j) / count;
        BoundarySample s;
        s.zeta = std::polar(1.0, theta);
        s.field = eval_physical(s.zeta, model);
        s.coord = s.field.z.real();
        out.push_back(s);
    }
    return out;
}

std::vector<BoundarySample> sample_tunnel(const FieldModel& model, int count) {
    const auto& g = model.geom;
    std::vector<BoundarySample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double deg = 360.0 * j / count;
        const double t = deg * std::numbers::pi / 180.0;
        const cplx z = cplx(0.0, -g.h) + std::polar(g.R, t);
        cplx zeta = map_forward(z, g);
        zeta *= g.r / std::abs(zeta);
        BoundarySample s;
        s.coord = deg;
        s.zeta = zeta;
        s.field = eval_physical(zeta, model);
        out.push_back(s);
    }
    return out;
}

}  // namespace rhtunnel
