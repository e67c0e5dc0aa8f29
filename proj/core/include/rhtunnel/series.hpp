#pragma once

#include <vector>

#include "rhtunnel/offset_series.hpp"

namespace rhtunnel {

/// Taylor coefficients of the Riemann-Hilbert kernel X(zeta) inside (alpha) and outside (beta)
/// the unit circle. beta[0] is unused and held at zero so that beta[k] matches beta_k.
struct AngularExpansion {
    std::vector<double> alpha;
    std::vector<double> beta;
    double lambda = 0.0;
    double theta0 = 0.0;

    double a(int k) const { return k >= 0 && k < static_cast<int>(alpha.size()) ? alpha[k] : 0.0; }
    double b(int k) const { return k >= 1 && k < static_cast<int>(beta.size()) ? beta[k] : 0.0; }
};

/// Imaginary residue allowed on a coefficient before it is discarded.
inline constexpr double kRealityTolerance = 1e-12;

/// alpha_0 .. alpha_M. Requires M >= 2.
std::vector<double> compute_alpha(int M, double lambda, double theta0);

/// beta_0 (= 0) .. beta_M. Requires M >= 3.
std::vector<double> compute_beta(int M, double lambda, double theta0);

/// Expansion sized for truncation order N: alpha to 2N, beta to 2N + 2.
AngularExpansion make_expansion(int N, double lambda, double theta0);

/// Lanczos sigma factors; weights vanish for |k| >= N.
class FilterWeights {
public:
    FilterWeights() = default;
    explicit FilterWeights(int N);

    int order() const noexcept { return N_; }
    double operator()(int k) const noexcept;

private:
    int N_ = 0;
};

FilterWeights lanczos_weights(int N);

/// Copy of c with every entry c_k scaled by w(k).
OffsetSeries apply_weights(const OffsetSeries& c, const FilterWeights& w);

}  // namespace rhtunnel
