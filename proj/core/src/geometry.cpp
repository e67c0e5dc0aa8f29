#include "rhtunnel/geometry.hpp"

#include <cmath>
#include <numbers>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {

DerivedGeometry derive_geometry(const TunnelGeometry& geom) {
    if (!(geom.R > 0.0) || !std::isfinite(geom.R))
        throw ConfigError("tunnel radius R must be positive");
    if (!(geom.x0 > 0.0) || !std::isfinite(geom.x0))
        throw ConfigError("free surface half-width x0 must be positive");
    if (!(geom.h > geom.R) || !std::isfinite(geom.h))
        throw GeometryError("tunnel centre depth h must exceed radius R");

    DerivedGeometry g;
    g.R = geom.R;
    g.h = geom.h;
    g.x0 = geom.x0;
    g.r = geom.R / (geom.h + std::sqrt(geom.h * geom.h - geom.R * geom.R));
    g.a = geom.h * (1.0 - g.r * g.r) / (1.0 + g.r * g.r);
    g.theta0 = 2.0 * std::atan(g.a / geom.x0);
    return g;
}

cplx map_forward(cplx z, const DerivedGeometry& g) {
    const cplx ia(0.0, g.a);
    const cplx den = z - ia;
    if (std::abs(den) <= 1e-12 * g.a)
        throw DomainError("map_forward: z coincides with the pole z = ia");
    return (z + ia) / den;
}

cplx map_backward(cplx zeta, const DerivedGeometry& g) {
    const cplx den = 1.0 - zeta;
    if (std::abs(den) < kInfinityExclusion)
        throw DomainError("map_backward: zeta = 1 is the image of infinity");
    return cplx(0.0, -g.a) * (1.0 + zeta) / den;
}

cplx map_derivative(cplx zeta, const DerivedGeometry& g) {
    const cplx den = 1.0 - zeta;
    if (std::abs(den) < kInfinityExclusion)
        throw DomainError("map_derivative: second-order pole at zeta = 1");
    return cplx(0.0, -2.0 * g.a) / (den * den);
}

double convergence_radius_limit() { return 1.0 / (2.0 + std::numbers::sqrt3); }

}  // namespace rhtunnel
