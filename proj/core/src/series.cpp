#include "rhtunnel/series.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include "rhtunnel/errors.hpp"

namespace rhtunnel {
namespace {

using cplx = std::complex<double>;

// c_k = prod_{l=1..k} (1/2 - i lambda - l) / k! * e^{i sign k theta0}, built by ratios.
std::vector<cplx> product_series(int M, double lambda, double theta0, double sign) {
    std::vector<cplx> c(static_cast<std::size_t>(M) + 1);
    const cplx phase = std::polar(1.0, sign * theta0);
    c[0] = 1.0;
    for (int k = 1; k <= M; ++k)
        c[k] = c[k - 1] * (cplx(0.5 - k, -lambda) / static_cast<double>(k)) * phase;
    return c;
}

// Cauchy product of c with its conjugate, entries 0..M.
std::vector<cplx> self_conjugate_convolution(const std::vector<cplx>& c, int M) {
    std::vector<cplx> out(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) {
        cplx s = 0.0;
        for (int j = 0; j <= k; ++j) s += c[j] * std::conj(c[k - j]);
        out[k] = s;
    }
    return out;
}

double checked_real(cplx v, const char* name, int k) {
    if (std::abs(v.imag()) > kRealityTolerance * std::max(1.0, std::abs(v.real())))
        throw NumericalError(std::string(name) + "_" + std::to_string(k) +
                             " has imaginary residue " + std::to_string(v.imag()));
    return v.real();
}

}  // namespace

std::vector<double> compute_alpha(int M, double lambda, double theta0) {
    if (M < 2) throw std::invalid_argument("compute_alpha requires M >= 2");
    const auto conv = self_conjugate_convolution(product_series(M, lambda, theta0, +1.0), M);
    const double scale = -std::exp(-2.0 * lambda * theta0);
    std::vector<double> alpha(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k)
        alpha[k] = checked_real(scale * (k % 2 ? -1.0 : 1.0) * conv[k], "alpha", k);
    return alpha;
}

std::vector<double> compute_beta(int M, double lambda, double theta0) {
    if (M < 3) throw std::invalid_argument("compute_beta requires M >= 3");
    const auto conv = self_conjugate_convolution(product_series(M - 1, lambda, theta0, -1.0), M - 1);
    std::vector<double> beta(static_cast<std::size_t>(M) + 1, 0.0);
    for (int k = 1; k <= M; ++k)
        beta[k] = checked_real((k % 2 ? 1.0 : -1.0) * conv[k - 1], "beta", k);
    return beta;
}

AngularExpansion make_expansion(int N, double lambda, double theta0) {
    AngularExpansion e;
    e.alpha = compute_alpha(2 * N, lambda, theta0);
    e.beta = compute_beta(2 * N + 2, lambda, theta0);
    e.lambda = lambda;
    e.theta0 = theta0;
    return e;
}

FilterWeights::FilterWeights(int N) : N_(N) {
    if (N < 1) throw std::invalid_argument("lanczos_weights requires N >= 1");
}

double FilterWeights::operator()(int k) const noexcept {
    if (k == 0) return 1.0;
    if (std::abs(k) >= N_) return 0.0;
    const double x = k * std::numbers::pi / N_;
    return std::sin(x) / x;
}

FilterWeights lanczos_weights(int N) { return FilterWeights(N); }

OffsetSeries apply_weights(const OffsetSeries& c, const FilterWeights& w) {
    OffsetSeries out = c;
    for (int k = c.lo(); k <= c.hi(); ++k) out.at(k) *= w(k);
    return out;
}

}  // namespace rhtunnel
