#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "selnb/log_value.hpp"

namespace selnb {

// Node counts for the two fixed quadrature rules: K alpha-nodes placed at
// midpoint quantiles of the Inverse-Gamma prior, and M equally spaced theta
// nodes for composite Simpson integration (M must be odd).
struct QuadratureSpec {
    int K = 30;
    int M = 21;
    void validate() const;
};

// log of U(f0, f1, n0, n1) = Gamma(f0+f1) Gamma(f0+n0) Gamma(f1+n1) /
// [Gamma(f0) Gamma(f1) Gamma(f0+f1+n0+n1)] — the marginal probability of a
// specific binary sequence with n0 zeros and n1 ones when the one-rate has a
// Beta(f1-side, f0-side) law. The equivalent product form defines the limits
// at f0 = 0 or f1 = 0 (zero pseudo-count): a zero pseudo-count with a
// positive count gives probability 0; with a zero count the factors are
// empty and the value stays finite.
LogValue log_U(double f0, double f1, long n0, long n1);

// Pearson sample correlation of two binary sequences, computed from exact
// integer sufficient statistics so that lattice boundary cases evaluate
// without rounding flicker. Returns exactly 0.0 when either sequence is
// constant (zero-denominator convention).
double sample_correlation(const std::vector<std::uint8_t>& y,
                          const std::vector<std::uint8_t>& x);

// The same correlation as a function of the within-class one-counts
// (I0, I1), total case count n, and class-1 fraction ybar (n*ybar integral).
double cor_counts(long I0, long I1, long n, double ybar);

// Integer-count overload used by the lattice scan: class sizes m0 = n*(1-ybar)
// and m1 = n*ybar directly.
double cor_counts_mm(long I0, long I1, long m0, long m1);

// Composite Simpson rule on [0,1] with M equally spaced nodes (M odd, >= 3).
double simpson_integrate(const std::function<double(double)>& f, int M);

// Simpson weights (including the 1/(M-1)/3 step factor) and the node grid.
std::vector<double> simpson_weights(int M);
std::vector<double> theta_grid(int M);

// The (i+0.5)/K quantiles, i = 0..K-1, of the Inverse-Gamma(a, b)
// distribution with density proportional to x^-(1+a) e^(-b/x). Computed by
// bracketed bisection on the regularized incomplete gamma function of the
// reciprocal variable, to relative tolerance 1e-10.
std::vector<double> inverse_gamma_quantile_nodes(double a, double b, int K);

// log density of Inverse-Gamma(a, b) at x.
double inverse_gamma_log_pdf(double x, double a, double b);

}  // namespace selnb
