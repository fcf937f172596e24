#pragma once
#include <vector>

#include "selnb/exec.hpp"
#include "selnb/log_value.hpp"
#include "selnb/numerics.hpp"

namespace selnb {

// Boundary of the positive high-correlation region of the (I0, I1) lattice:
// the lattice points with cor > gamma are exactly { (I0, I1) : I1 >= b0,
// I0 <= r[I1] }, where r[I1] = -1 marks a row with no qualifying point.
// r is nondecreasing in I1 because the correlation increases in I1 and
// decreases in I0.
struct LatticeFrontier {
    long n = 0;
    double ybar = 0.0;
    long m0 = 0;  // class-0 size n*(1-ybar)
    long m1 = 0;  // class-1 size n*ybar
    double gamma = 0.0;
    long b0 = 0;
    std::vector<long> r;  // indexed by I1 in [0, m1]; -1 below b0 / empty rows

    bool empty() const { return b0 > m1; }
};

LatticeFrontier build_frontier(long n, double ybar, double gamma);

// Probability mass function of the one-count I in a class of size m, given
// the concentration alpha and mean theta of the Beta law of the per-feature
// rate: P(I) = C(m, I) * U(alpha*theta, alpha*(1-theta), I, m-I). Computed
// in linear space by the multiplicative ratio recurrence (no gamma
// functions); theta in {0,1} yields the point masses at I=0 / I=m.
std::vector<double> class_lattice_pmf(long m, double alpha, double theta);

// Probability that a single feature's (I0, I1) falls in the positive
// high-correlation region, at fixed alpha and theta: a double sum over the
// frontier, factorized into per-class terms with the inner prefix sum
// updated incrementally. The result lies in [0,1]; when the two classes have
// equal size it is at most 1/2 by the class-swap symmetry, and its integral
// over theta is at most 1/2 for any class split (the reflection
// theta -> 1-theta maps the positive region onto the negative one).
double sum_H_plus_given_theta(const LatticeFrontier& fr, double alpha, double theta);

// log P(|COR| <= gamma | alpha, labels) for one feature: by the sign
// symmetry of the two high-correlation regions this is
// log(1 - 2 * integral over theta of sum_H_plus_given_theta), with the
// theta-integral done by Simpson on M nodes and the log taken via log1p for
// accuracy near 1. The argument is clamped to >= 1e-300; if that happens
// (quadrature breakdown) *clamped is set.
LogValue nonselection_log_prob(const LatticeFrontier& fr, double alpha,
                               const QuadratureSpec& quad, bool* clamped = nullptr);

// log of the full selection-adjustment factor: omitted_count features each
// independently failed the screening, so the log probability is just
// omitted_count * nonselection_log_prob — cost independent of omitted_count.
LogValue adjustment_log_factor(const LatticeFrontier& fr, double alpha,
                               long omitted_count, const QuadratureSpec& quad,
                               bool* clamped = nullptr);

// Per-alpha-node cache of nonselection log probabilities for one training
// label vector and threshold; built once and reused for every test case.
struct AdjustmentCache {
    std::vector<double> log_nonselection;  // one entry per alpha node, <= 0
    bool clamped = false;

    static AdjustmentCache build(const LatticeFrontier& fr,
                                 const std::vector<double>& alpha_nodes,
                                 const QuadratureSpec& quad, const Exec& ex = Exec());
};

}  // namespace selnb
