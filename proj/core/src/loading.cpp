#include "rhtunnel/loading.hpp"

#include <cmath>
#include <string>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {

Material make_material(double gamma, double k0, double E, double nu, PlaneCondition plane) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be non-negative");
    if (!(k0 >= 0.0) || !std::isfinite(k0)) throw ConfigError("k0 must be non-negative");
    if (!(E > 0.0) || !std::isfinite(E)) throw ConfigError("E must be positive");
    if (!(nu > 0.0 && nu < 0.5)) throw ConfigError("nu must lie in (0, 0.5)");

    Material m;
    m.gamma = gamma;
    m.k0 = k0;
    m.E = E;
    m.nu = nu;
    m.plane = plane;
    m.kappa = plane == PlaneCondition::Strain ? 3.0 - 4.0 * nu : (3.0 - nu) / (1.0 + nu);
    m.G = E / (2.0 * (1.0 + nu));
    m.lambda = std::log(m.kappa) / (2.0 * std::numbers::pi);
    return m;
}

StressState initial_stress(double y, const Material& m) {
    if (y > 1e-9) throw DomainError("initial_stress: y = " + std::to_string(y) + " lies above the surface");
    y = std::min(y, 0.0);
    return {m.k0 * m.gamma * y, m.gamma * y, 0.0};
}

cplx periphery_traction(double vartheta, const TunnelGeometry& geom, const Material& m) {
    const double depth = -geom.h + geom.R * std::sin(vartheta);
    return {m.k0 * m.gamma * depth * std::cos(vartheta), m.gamma * depth * std::sin(vartheta)};
}

Resultant resultant(const TunnelGeometry& geom, const Material& m) {
    return {0.0, m.gamma * std::numbers::pi * geom.R * geom.R};
}

Resultant periphery_resultant_quadrature(const TunnelGeometry& geom, const Material& m, int nodes) {
    return clockwise_resultant([&](double t) { return periphery_traction(t, geom, m); },
                               [&](double) { return geom.R; }, nodes);
}

double LoadingCoefficients::f(int k) const { return K1 * std::pow(r, k); }

double LoadingCoefficients::g(int k) const {
    return K2 * k * std::pow(r, k - 1) + K3 * (k - 1) * std::pow(r, k - 2);
}

double LoadingCoefficients::E_closed(int k) const {
    if (k >= 2) {
        const double rk = std::pow(r, k);
        return L1 * f(k - 2) + L2 * rk - L6 * rk / k + L6 * rk / (k - 1);
    }
    if (k == 1) return L1 * g(1) + (L2 - L6) * r;
    if (k == 0) return L1 * g(2) + L2 - L4 * r + L5 - L6 * r * r;
    const int n = -k;
    return L1 * g(n + 2) + L3 * (n - 1) * std::pow(r, n - 2) - L3 * n * std::pow(r, n) +
           L4 * std::pow(r, n - 1) - L4 * std::pow(r, n + 1) + L6 * std::pow(r, n) / n -
           L6 * std::pow(r, n + 2) / (n + 1);
}

LoadingCoefficients loading_constants(const DerivedGeometry& g, const Material& m) {
    const double r = g.r, r2 = r * r, q = (1.0 - r2) * (1.0 - r2);
    const double a = g.a, gm = m.gamma;
    LoadingCoefficients lc;
    lc.r = r;
    lc.K1 = r2 / q;
    lc.K2 = r / q;
    lc.K3 = (1.0 - 2.0 * r2) / q;
    lc.L1 = -m.k0 * gm * a * a * q;
    lc.L2 = -gm * a * a;
    lc.L3 = gm * a * a * r2;
    lc.L4 = gm * a * g.R;
    lc.L5 = -gm * a * r * g.R;
    lc.L6 = gm * g.R * g.R;
    return lc;
}

void compute_E(int N, LoadingCoefficients& lc) {
    if (N < 2) throw ConfigError("compute_E requires N >= 2");
    lc.E = OffsetSeries(-N, N);
    for (int k = -N; k <= N; ++k) lc.E.at(k) = lc.E_closed(k);
}

}  // namespace rhtunnel
