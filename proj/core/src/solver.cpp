#include "rhtunnel/solver.hpp"

#include <cmath>
#include <sstream>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {
namespace {

// Solves the three sets for one repetition. b3_const carries (I', J', A_-1, B_-1) in the
// initial phase and zeros afterwards.
Increment solve_sets(const DenseVector& b1, const DenseVector& b2, const std::array<double, 4>& b3_const,
                     const SystemBlocks& blocks, const FactoredSystems& systems,
                     const AngularExpansion& series, int N) {
    Increment inc{OffsetSeries(-N, N), 0.0};

    const DenseVector x1 = systems.s1.solve(b1);
    for (int j = 0; j < N - 1; ++j) inc.d.at(-(j + 2)) = x1(j);
    const DenseVector x2 = systems.s2.solve(b2);
    for (int j = 0; j < N - 1; ++j) inc.d.at(j + 2) = x2(j);

    const auto& d = inc.d;
    double s_i = 0.0, s_j = 0.0, s_a = 0.0, s_b = 0.0;
    for (int n = 2; n <= N; ++n) {
        s_i += blocks.I[-n] * d[-n] + blocks.I[n] * d[n];
        s_j += blocks.J[-n] * d[-n] + blocks.J[n] * d[n];
        s_a += series.a(n - 1) * d[-n];
        s_b += series.b(n + 1) * d[n];
    }
    DenseVector b3(4);
    b3 << b3_const[0] - s_i, b3_const[1] - s_j, b3_const[2] - s_a, b3_const[3] - s_b;
    const DenseVector y = systems.s3.solve(b3);
    inc.d.at(-1) = y(0);
    inc.d.at(0) = y(1);
    inc.d.at(1) = y(2);
    inc.Ca = y(3);
    return inc;
}

}  // namespace

void validate(const SolverConfig& cfg) {
    if (cfg.N < 4) throw ConfigError("N must be at least 4");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (cfg.max_reps < 1) throw ConfigError("max_reps must be at least 1");
}

SystemBlocks assemble_blocks(const AngularExpansion& s, const LoadingCoefficients& lc,
                             const DerivedGeometry& g, const Material& m, int N) {
    const double r = g.r, r2 = r * r;
    SystemBlocks b;
    b.r = r;
    b.I = OffsetSeries(-N, N);
    b.J = OffsetSeries(-N, N);
    for (int n = 1; n <= N; ++n) {
        b.I.at(n) = 2.0 * s.b(n);
        b.J.at(n) = -2.0 * r2 * s.b(n + 2);
    }
    b.I.at(0) = -3.0 * r2 * s.a(0);
    b.I.at(-1) = -3.0 * r2 * s.a(1);
    b.J.at(0) = (1.0 - 2.0 * r2) * s.a(0) - 2.0 * r2 * s.b(2);
    b.J.at(-1) = (1.0 - 2.0 * r2) * s.a(1) - 2.0 * r2 * s.b(1);
    for (int n = 2; n <= N; ++n) {
        b.I.at(-n) = (2.0 - r2) * s.a(n - 2) - 3.0 * r2 * s.a(n);
        b.J.at(-n) = (1.0 - 2.0 * r2) * s.a(n) + 3.0 * s.a(n - 2);
    }

    const double gR2 = m.gamma * g.R * g.R;
    const double k = m.kappa;
    const double lr = std::log(r);
    b.Iprime = -gR2 * (1.0 - r2) / (1.0 + k) + (1.0 - k) / (1.0 + k) * gR2 * r2 * lr - r * lc.E_closed(1);
    b.Jprime = -gR2 * (1.0 - r2) / (1.0 + k) + (1.0 - k) / (1.0 + k) * gR2 * lr + lc.E_closed(0);
    b.A_minus1 = -gR2 / (2.0 * (1.0 + k));
    b.B_minus1 = k * gR2 / (2.0 * (1.0 + k));
    return b;
}

SystemMatrices assemble_matrices(const AngularExpansion& s, const SystemBlocks& b, const SolverConfig& cfg) {
    const int n = cfg.N - 1;
    SystemMatrices m;
    m.A1 = DenseMatrix::Zero(n, n);
    m.A2 = DenseMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            m.A1(i, j) = s.a(j - i);
            m.A2(i, j) = s.b(j - i + 1);
        }
    }
    const double r2 = b.r * b.r;
    m.A3.resize(4, 4);
    m.A3 << b.I[-1], b.I[0], b.I[1], 2.0 * r2,
            b.J[-1], b.J[0], b.J[1], 2.0,
            s.a(0), 0.0, 0.0, 0.0,
            0.0, s.b(1), s.b(2), 0.0;
    return m;
}

ABSeries compute_AB(const OffsetSeries& d, const AngularExpansion& s, int N) {
    ABSeries ab{OffsetSeries(-N, N), OffsetSeries(-N - 2, N - 1)};
    for (int k = -N; k <= N; ++k) {
        double acc = 0.0;
        for (int n = -N; n <= k; ++n) acc += s.a(k - n) * d[n];
        ab.A.at(k) = acc;
    }
    for (int k = -N - 2; k <= N - 1; ++k) {
        double acc = 0.0;
        for (int n = std::max(k + 1, -N); n <= N; ++n) acc += s.b(n - k) * d[n];
        ab.B.at(k) = acc;
    }
    return ab;
}

Increment initial_phase(const SystemBlocks& blocks, const FactoredSystems& systems,
                        const AngularExpansion& series, const LoadingCoefficients& lc,
                        const SolverConfig& cfg) {
    const int N = cfg.N;
    const double r = blocks.r, r2 = r * r;
    auto E = [&](int k) { return lc.E.contains(k) ? lc.E[k] : lc.E_closed(k); };

    DenseVector b1(N - 1), b2(N - 1);
    for (int k = 2; k <= N; ++k)
        b1(k - 2) = -(k - 1) / 2.0 * std::pow(r, k - 1) * E(-k + 1);
    for (int k = 1; k <= N - 1; ++k)
        b2(k - 1) = -k * (k + 1) / 2.0 * (1.0 - r2) * std::pow(r, k) * E(-k) -
                    (k + 1) / 2.0 * std::pow(r, k + 1) * E(k + 1);
    return solve_sets(b1, b2, {blocks.Iprime, blocks.Jprime, blocks.A_minus1, blocks.B_minus1},
                      blocks, systems, series, N);
}

Increment iteration_phase(const ABSeries& prev, const SystemBlocks& blocks, const FactoredSystems& systems,
                          const AngularExpansion& series, const SolverConfig& cfg) {
    const int N = cfg.N;
    const double r = blocks.r, r2 = r * r, q = 1.0 - r2;
    const auto& A = prev.A;
    const auto& B = prev.B;

    DenseVector b1(N - 1), b2(N - 1);
    for (int k = 2; k <= N; ++k) {
        const double f = (k - 1.0) / k;
        const double p = std::pow(r, 2 * k - 2);
        b1(k - 2) = f * A[-k - 1] + p * B[-k] - f * p * r2 * B[-k - 1] + (k - 1) * q * p * (A[k - 1] - A[k - 2]);
    }
    for (int k = 1; k <= N - 1; ++k) {
        const double f = (k + 1.0) / k;
        const double p = std::pow(r, 2 * k);
        b2(k - 1) = f * r2 * B[k - 1] + p * r2 * A[k] - f * p * r2 * A[k - 1] - q * A[-k - 2] +
                    (k + 1) * q * p * B[-k - 1] - k * q * p * r2 * B[-k - 2] +
                    k * (k + 1.0) * q * q * p * (A[k] - A[k - 1]);
    }
    return solve_sets(b1, b2, {0.0, 0.0, 0.0, 0.0}, blocks, systems, series, N);
}

OffsetSeries psi_coefficients(const OffsetSeries& A, const OffsetSeries& B) {
    const int N = A.hi();
    OffsetSeries psi(-N - 1, N + 1);
    for (int k = -N - 1; k <= N + 1; ++k)
        psi.at(k) = (k + 1) / 2.0 * (A[k - 1] - A[k + 1]) - B[-k - 2];
    return psi;
}

cplx displacement_sums(const OffsetSeries& A, const OffsetSeries& B, double kappa, cplx zeta) {
    const int kmax = std::max(A.hi(), B.hi()) + 3;
    const cplx zinv = 1.0 / zeta;
    const cplx zb = std::conj(zeta), zbinv = std::conj(zinv);
    cplx zk = 1.0, zbk = 1.0, zmk = 1.0, zbmk = 1.0;
    cplx sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        zk *= zeta;
        zbk *= zb;
        zmk *= zinv;
        zbmk *= zbinv;
        sum += kappa * A[k - 1] / k * zk;
        sum += (0.5 * (A[k - 2] - A[k]) - B[-k - 1] / k) * zbk;
        sum += kappa * A[-k - 1] / (-k) * zmk;
        sum += (0.5 * (A[-k - 2] - A[-k]) - B[k - 1] / (-k)) * zbmk;
    }
    return sum;
}

double compute_C0(const OffsetSeries& A, const OffsetSeries& B, double kappa) {
    return -displacement_sums(A, B, kappa, 1.0).real();
}

SolutionCoefficients run_solver(const DerivedGeometry& g, const Material& m, const SolverConfig& cfg) {
    validate(cfg);
    const int N = cfg.N;
    SolutionCoefficients sol;
    sol.N = N;
    if (g.r > convergence_radius_limit() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "inner radius r = " << g.r << " exceeds (2+sqrt3)^-1; iteration contraction is not guaranteed";
        sol.warnings.push_back(msg.str());
    }

    const AngularExpansion series = make_expansion(N, m.lambda, g.theta0);
    LoadingCoefficients lc = loading_constants(g, m);
    compute_E(N, lc);
    const SystemBlocks blocks = assemble_blocks(series, lc, g, m, N);
    const SystemMatrices mats = assemble_matrices(series, blocks, cfg);
    const FactoredSystems systems(mats);
    sol.cond = {systems.s1.condition(), systems.s2.condition(), systems.s3.condition()};

    Increment inc = initial_phase(blocks, systems, series, lc, cfg);
    sol.d = inc.d;
    sol.Ca = inc.Ca;
    sol.history.push_back(inc.d.max_abs());
    while (sol.history.back() > cfg.epsilon) {
        if (sol.reps >= cfg.max_reps) {
            std::ostringstream msg;
            msg << "no convergence after " << sol.reps << " repetitions (last increment "
                << sol.history.back() << ")";
            throw ConvergenceError(msg.str(), sol.history);
        }
        inc = iteration_phase(compute_AB(inc.d, series, N), blocks, systems, series, cfg);
        sol.d += inc.d;
        sol.Ca += inc.Ca;
        sol.history.push_back(inc.d.max_abs());
        ++sol.reps;
    }

    ABSeries ab = compute_AB(sol.d, series, N);
    sol.A = std::move(ab.A);
    sol.B = std::move(ab.B);
    sol.psi = psi_coefficients(sol.A, sol.B);
    if (cfg.lanczos_enabled) {
        const FilterWeights w(N);
        sol.C0 = compute_C0(apply_weights(sol.A, w), apply_weights(sol.B, w), m.kappa);
    } else {
        sol.C0 = compute_C0(sol.A, sol.B, m.kappa);
    }
    return sol;
}

}  // namespace rhtunnel
