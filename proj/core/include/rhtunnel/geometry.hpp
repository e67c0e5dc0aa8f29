#pragma once

#include <complex>

namespace rhtunnel {

using cplx = std::complex<double>;

/// Tunnel radius R, centre depth h and half-width x0 of the free surface segment (metres).
struct TunnelGeometry {
    double R = 5.0;
    double h = 10.0;
    double x0 = 1000.0;
};

/// Constants of the half-plane to annulus mapping, with the input carried along.
struct DerivedGeometry {
    double R = 0.0;
    double h = 0.0;
    double x0 = 0.0;
    double a = 0.0;       ///< mapping constant, metres
    double r = 0.0;       ///< inner annulus radius
    double theta0 = 0.0;  ///< polar angle of the surface transition points, radians
};

/// Tolerance on |zeta| used to classify a point as lying on an annulus circle.
inline constexpr double kCircleTolerance = 1e-9;
/// Mapping operations reject points closer than this to zeta = 1.
inline constexpr double kInfinityExclusion = 1e-6;

DerivedGeometry derive_geometry(const TunnelGeometry& geom);

/// zeta = (z + ia) / (z - ia).
cplx map_forward(cplx z, const DerivedGeometry& g);

/// z = -ia (1 + zeta) / (1 - zeta).
cplx map_backward(cplx zeta, const DerivedGeometry& g);

/// dz/dzeta = -2ia / (1 - zeta)^2.
cplx map_derivative(cplx zeta, const DerivedGeometry& g);

/// Inner radius above which the paper's convergence argument no longer applies.
double convergence_radius_limit();

}  // namespace rhtunnel
