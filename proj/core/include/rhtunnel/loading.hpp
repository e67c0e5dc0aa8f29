#pragma once

#include <numbers>

#include "rhtunnel/geometry.hpp"
#include "rhtunnel/offset_series.hpp"

namespace rhtunnel {

enum class PlaneCondition { Strain, Stress };

/// Geomaterial parameters in kN/m^3 and kPa, with the derived elastic constants.
struct Material {
    double gamma = 20.0;
    double k0 = 0.8;
    double E = 20000.0;
    double nu = 0.3;
    PlaneCondition plane = PlaneCondition::Strain;
    double kappa = 0.0;   ///< Kolosov coefficient
    double G = 0.0;       ///< shear modulus
    double lambda = 0.0;  ///< ln(kappa) / 2pi
};

/// Validates the inputs and fills kappa, G and lambda.
Material make_material(double gamma, double k0, double E, double nu,
                       PlaneCondition plane = PlaneCondition::Strain);

struct StressState {
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    double tau_xy = 0.0;
};

/// Force per unit tunnel length, kN/m.
struct Resultant {
    double Fx = 0.0;
    double Fy = 0.0;
};

/// Gravitational initial stress (k0 gamma y, gamma y, 0). Throws DomainError above the surface.
StressState initial_stress(double y, const Material& m);

/// Traction (Xi, Yi) on the tunnel periphery at local polar angle vartheta.
cplx periphery_traction(double vartheta, const TunnelGeometry& geom, const Material& m);

/// Closed-form unbalanced resultant (0, gamma pi R^2).
Resultant resultant(const TunnelGeometry& geom, const Material& m);

/// Clockwise line integral of a traction around a closed contour.
///
/// The contour is parametrised by s in [0, 2pi); `traction(s)` returns Xi + iYi and
/// `speed(s)` returns |dS/ds|. Walking clockwise means ds < 0 and |dS| = -speed ds,
/// so every node contributes t * speed * (2pi / nodes) with a positive weight.
template <class TractionFn, class SpeedFn>
Resultant clockwise_resultant(TractionFn&& traction, SpeedFn&& speed, int nodes) {
    const double ds = 2.0 * std::numbers::pi / nodes;
    cplx sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double s = ds * j;
        sum += traction(s) * speed(s);
    }
    sum *= ds;
    return {sum.real(), sum.imag()};
}

/// Quadrature of the periphery tractions over the physical tunnel circle.
Resultant periphery_resultant_quadrature(const TunnelGeometry& geom, const Material& m, int nodes);

/// Partial-fraction constants K1..K3, lumped loads L1..L6 and the traction series E_k.
struct LoadingCoefficients {
    double r = 0.0;
    double K1 = 0.0, K2 = 0.0, K3 = 0.0;
    double L1 = 0.0, L2 = 0.0, L3 = 0.0, L4 = 0.0, L5 = 0.0, L6 = 0.0;
    OffsetSeries E;  ///< window [-N, N] once compute_E has run

    double f(int k) const;
    double g(int k) const;
    /// Closed-form E_k for any k, independent of the stored window.
    double E_closed(int k) const;
};

LoadingCoefficients loading_constants(const DerivedGeometry& g, const Material& m);

/// Fills lc.E over [-N, N]. Requires N >= 2.
void compute_E(int N, LoadingCoefficients& lc);

}  // namespace rhtunnel
