#pragma once

#include <array>
#include <string>
#include <vector>

#include "rhtunnel/geometry.hpp"
#include "rhtunnel/loading.hpp"
#include "rhtunnel/numerics.hpp"
#include "rhtunnel/offset_series.hpp"
#include "rhtunnel/series.hpp"

namespace rhtunnel {

struct SolverConfig {
    int N = 50;               ///< truncation order
    double epsilon = 1e-16;   ///< stop once max |d^(q)| falls to this
    int max_reps = 500;       ///< iteration cap
    bool lanczos_enabled = true;
};

void validate(const SolverConfig& cfg);

/// Coefficients of the tunnel-traction matching equations that fix d_-1, d_0, d_1 and C_a.
struct SystemBlocks {
    double r = 0.0;
    OffsetSeries I;  ///< [-N, N]
    OffsetSeries J;  ///< [-N, N]
    double Iprime = 0.0;
    double Jprime = 0.0;
    double A_minus1 = 0.0;  ///< -gamma R^2 / (2 (1 + kappa)), fixed by force equilibrium
    double B_minus1 = 0.0;  ///< kappa gamma R^2 / (2 (1 + kappa)), fixed by single-valued displacement
};

struct SystemMatrices {
    DenseMatrix A1;  ///< (N-1)^2, unknowns d_-2 .. d_-N
    DenseMatrix A2;  ///< (N-1)^2, unknowns d_2 .. d_N
    DenseMatrix A3;  ///< 4x4, unknowns d_-1, d_0, d_1, C_a
};

/// Each system factored once and reused by every repetition.
struct FactoredSystems {
    explicit FactoredSystems(const SystemMatrices& m) : s1(m.A1), s2(m.A2), s3(m.A3) {}
    LinearSystem s1, s2, s3;
};

/// The d_n and C_a produced by one repetition.
struct Increment {
    OffsetSeries d;  ///< [-N, N]
    double Ca = 0.0;
};

struct ABSeries {
    OffsetSeries A;  ///< [-N, N]
    OffsetSeries B;  ///< [-N-2, N-1]
};

struct SolutionCoefficients {
    int N = 0;
    OffsetSeries d;
    double Ca = 0.0;
    OffsetSeries A;
    OffsetSeries B;
    OffsetSeries psi;  ///< [-N-1, N+1], the full support of the psi' coefficients
    double C0 = 0.0;   ///< from the filtered A, B when lanczos_enabled
    int reps = 0;
    std::array<double, 3> cond{};
    std::vector<double> history;  ///< max |d^(q)| for q = 0 .. reps
    std::vector<std::string> warnings;
};

SystemBlocks assemble_blocks(const AngularExpansion& series, const LoadingCoefficients& lc,
                             const DerivedGeometry& g, const Material& m, int N);

SystemMatrices assemble_matrices(const AngularExpansion& series, const SystemBlocks& blocks,
                                 const SolverConfig& cfg);

ABSeries compute_AB(const OffsetSeries& d, const AngularExpansion& series, int N);

Increment initial_phase(const SystemBlocks& blocks, const FactoredSystems& systems,
                        const AngularExpansion& series, const LoadingCoefficients& lc,
                        const SolverConfig& cfg);

/// Next increment from the A, B of the previous increment.
Increment iteration_phase(const ABSeries& previous, const SystemBlocks& blocks,
                          const FactoredSystems& systems, const AngularExpansion& series,
                          const SolverConfig& cfg);

/// psi_k = (k+1)/2 (A_{k-1} - A_{k+1}) - B_{-k-2}.
OffsetSeries psi_coefficients(const OffsetSeries& A, const OffsetSeries& B);

/// The two bilateral sums of g(zeta) without the leading factor i.
/// C0 and the boundary displacement both go through this function so that g(1) = 0 exactly.
cplx displacement_sums(const OffsetSeries& A, const OffsetSeries& B, double kappa, cplx zeta);

/// C0 = -(sums at zeta = 1).
double compute_C0(const OffsetSeries& A, const OffsetSeries& B, double kappa);

SolutionCoefficients run_solver(const DerivedGeometry& g, const Material& m, const SolverConfig& cfg);

}  // namespace rhtunnel
