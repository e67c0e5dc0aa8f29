#pragma once

#include <utility>
#include <vector>

#include "rhtunnel/geometry.hpp"
#include "rhtunnel/loading.hpp"
#include "rhtunnel/offset_series.hpp"
#include "rhtunnel/series.hpp"
#include "rhtunnel/solver.hpp"

namespace rhtunnel {

/// Field evaluation rejects points closer than this to zeta = 1.
inline constexpr double kFieldExclusion = 1e-4;

/// The A_k, B_k and C0 that actually enter the field formulas.
struct FieldCoefficients {
    OffsetSeries A;
    OffsetSeries B;
    double C0 = 0.0;
    bool filtered = false;
};

/// Everything a pointwise evaluation needs.
struct FieldModel {
    DerivedGeometry geom;
    Material mat;
    FieldCoefficients coeffs;
};

/// Scales A_k, B_k by the weights and recomputes C0 from the scaled series.
FieldCoefficients apply_filter(const SolutionCoefficients& sol, const FilterWeights& w, const Material& m);
FieldCoefficients unfiltered_coefficients(const SolutionCoefficients& sol, const Material& m);
FieldModel make_field_model(const SolutionCoefficients& sol, const DerivedGeometry& g, const Material& m,
                            bool lanczos);

struct AnnulusStress {
    double sigma_rho = 0.0;
    double sigma_theta = 0.0;
    double tau_rhotheta = 0.0;
};

struct AnnulusField {
    double sigma_rho = 0.0;
    double sigma_theta = 0.0;
    double tau_rhotheta = 0.0;
    double u = 0.0;
    double v = 0.0;
};

struct NormalizationScales {
    double stress_scale = 0.0;  ///< gamma h
    double disp_scale = 0.0;    ///< gamma h R / (2G)
};

NormalizationScales normalization_scales(const DerivedGeometry& g, const Material& m);

AnnulusStress eval_annulus_stress(cplx zeta, const FieldModel& model);
/// (u, v) in metres.
std::pair<double, double> eval_annulus_displacement(cplx zeta, const FieldModel& model);
AnnulusField eval_annulus(cplx zeta, const FieldModel& model);

struct PhysicalField {
    cplx z;
    StressState induced;
    StressState total;
    double u = 0.0;
    double v = 0.0;
    double sigma_max = 0.0;  ///< principal stresses of the total field
    double sigma_min = 0.0;
};

/// Rotates annulus stresses onto x, y and adds the initial stress at y = Im z.
PhysicalField to_physical(cplx zeta, const AnnulusField& f, const FieldModel& model);
PhysicalField eval_physical(cplx zeta, const FieldModel& model);

/// (sigma_max, sigma_min).
std::pair<double, double> principal(double sigma_x, double sigma_y, double tau_xy);

struct GridSpec {
    double x_min = 0.0;
    double x_max = 40.0;
    double y_min = -40.0;
    double y_max = 0.0;
    int nx = 201;
    int ny = 201;
};

enum class PointStatus { Interior, Boundary, Absent };

struct GridPoint {
    double x = 0.0;
    double y = 0.0;
    PointStatus status = PointStatus::Absent;
    PhysicalField field;
};

/// Row-major over y then x. Absent points carry no field values.
std::vector<GridPoint> evaluate_grid(const GridSpec& spec, const FieldModel& model, int workers = 1);

struct BoundarySample {
    double coord = 0.0;  ///< x in metres on the surface, local angle in degrees on the tunnel
    cplx zeta;
    PhysicalField field;
};

/// Right half of the ground surface, uniform in the mapping angle over (0, pi], x ascending.
std::vector<BoundarySample> sample_surface(const FieldModel& model, int count);

/// Tunnel periphery at uniform local polar angles starting from 0.
std::vector<BoundarySample> sample_tunnel(const FieldModel& model, int count);

}  // namespace rhtunnel
