#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rhtunnel/fields.hpp"
#include "rhtunnel/loading.hpp"
#include "rhtunnel/solver.hpp"

namespace rhtunnel {

struct ResidualReport {
    double free_surface_traction_median = 0.0;  ///< fraction of gamma h
    double free_surface_traction_max = 0.0;
    std::size_t free_samples = 0;
    double constrained_surface_disp_median = 0.0;  ///< fraction of u0; NaN when no samples survive the band
    double constrained_surface_disp_max = 0.0;
    std::size_t constrained_samples = 0;
    double tunnel_traction_median_rel_error = 0.0;
    double tunnel_traction_max_rel_error = 0.0;
    std::size_t tunnel_samples = 0;
    Resultant resultant_recovered;
    double exclusion_band_deg = 5.0;
};

/// Samples each boundary condition at `samples` uniform angles and summarises the misfit.
/// The free arc is |theta| > theta0 (through zeta = -1); the constrained arc is |theta| < theta0.
/// Points within band_deg of +-theta0 are left out of the surface statistics.
ResidualReport residual_report(const FieldModel& model, int samples = 2000, double band_deg = 5.0);

/// Traction (Xi + iYi) recovered on the tunnel from the annulus stresses at zeta = r e^{i theta}.
cplx recovered_tunnel_traction(double theta, const FieldModel& model);

/// Real coefficients of the tunnel traction-matching series, before the loads are equated.
struct TractionHarmonics {
    std::vector<double> negative;  ///< e^{-ik theta}, index k = 1..kmax (entry 0 unused)
    std::vector<double> positive;  ///< e^{ik theta}, index k = 2..kmax (entries 0, 1 unused)
    double first = 0.0;            ///< multiplier of -r^{-1} e^{i theta}
    double constant = 0.0;
};

TractionHarmonics traction_harmonics(const OffsetSeries& A, const OffsetSeries& B, double Ca, double r, int kmax);

struct DegenerationReport {
    int spectra = 0;
    int kmax = 0;
    double max_harmonic_discrepancy = 0.0;  ///< relative to the largest contributing term
    double max_first_discrepancy = 0.0;
    double max_constant_discrepancy = 0.0;
    double max_a3_real_part = 0.0;  ///< |Re| of (i/2)(A_-2 - A_0), zero for real spectra

    double worst() const;
};

/// Compares the general traction coefficients, scaled by i/2, with the balanced-traction forms on
/// random spectra satisfying A_-1 = B_-1 = 0 and B_k = A_k otherwise.
DegenerationReport degeneration_check(int spectra, int N, double r, int kmax, std::uint64_t seed);

struct ProfileCase {
    double x0_over_h = 0.0;
    bool ok = false;
    std::string error;
    int reps = 0;
    std::vector<BoundarySample> surface;
    std::vector<BoundarySample> tunnel;
};

/// Max-norm change of each normalised profile between consecutive cases.
struct ProfileDifference {
    double from = 0.0;
    double to = 0.0;
    double surface_sx = 0.0, surface_sy = 0.0, surface_txy = 0.0, surface_u = 0.0, surface_v = 0.0;
    double tunnel_sx = 0.0, tunnel_sy = 0.0, tunnel_txy = 0.0, tunnel_u = 0.0, tunnel_v = 0.0;

    double surface_max() const;
    double tunnel_max() const;
};

struct ConvergenceStudy {
    std::vector<ProfileCase> cases;
    std::vector<ProfileDifference> differences;  ///< between consecutive successful cases
};

ConvergenceStudy convergence_study(const TunnelGeometry& base, const Material& m, const SolverConfig& cfg,
                                   const std::vector<double>& x0_over_h, int samples = 720);

}  // namespace rhtunnel
