#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "selnb/adjustment.hpp"
#include "selnb/dataset.hpp"
#include "selnb/exec.hpp"
#include "selnb/log_value.hpp"
#include "selnb/numerics.hpp"
#include "selnb/selection.hpp"

namespace selnb {

// Hyper-prior configuration: Beta(f1, f0) pseudo-counts for the class
// probability (f1 pairs with class 1), and shape a / rate b of the
// Inverse-Gamma prior on the concentration alpha.
struct PriorConfig {
    double f0 = 1.0;
    double f1 = 1.0;
    double a = 0.5;
    double b = 5.0;
    void validate() const;
};

// Posterior-mean probability of class 1 after integrating the class
// probability out against its Beta prior.
double class_predictive(const PriorConfig& prior, long N0, long N1);

// log of the integral over theta in [0,1] of
//   U(alpha*theta, alpha*(1-theta), I1, O1) * U(alpha*theta, alpha*(1-theta), I0, O0)
// — the marginal probability of one feature's training column given alpha,
// with the per-class rates and their common mean integrated out (Simpson on
// M nodes; alpha*theta pairs with the one-counts).
LogValue feature_train_log_marginal(const FeatureCounts& c, double alpha, int M);

// log of the same integral with an extra Bernoulli factor for a test bit:
// the integrand gains Bernoulli(xstar; phi_hat) where phi_hat =
// (alpha*theta + I_ystar) / (alpha + N_ystar) is the posterior-mean rate of
// class ystar. Summing the two xstar values recovers the train marginal.
LogValue feature_predictive_log_factor(const FeatureCounts& c, double alpha,
                                       int ystar, int xstar, long Nystar, int M);

// Per-alpha-node cache of everything prediction needs: log train marginals
// and log predictive factors for each retained feature, plus the log
// adjustment factor. Immutable after build; predictions are table lookups.
struct AlphaGrid {
    std::vector<double> nodes;       // K alpha values, strictly increasing
    long k = 0;                      // retained feature count
    long n = 0, N0 = 0, N1 = 0;
    double psi_hat = 0.5;            // class-1 predictive probability
    long omitted = 0;                // p - k
    std::vector<double> log_train;   // [node*k + j]
    std::vector<double> log_pred;    // [((node*k + j)*2 + ystar)*2 + xstar]
    std::vector<double> log_adjust;  // per node: omitted * log nonselection
    bool adjust_clamped = false;

    double train(long node, long j) const { return log_train[node * k + j]; }
    double pred(long node, long j, int ystar, int xstar) const {
        return log_pred[((node * k + j) * 2 + ystar) * 2 + xstar];
    }
};

// Build the grid for the retained features of `sel`. `summary` must be the
// counts of the full training set; the adjustment term conditions on the
// label vector through (n, ybar) and on sel.gamma, and is skipped (log 1)
// when nothing was omitted or gamma admits every correlation.
AlphaGrid build_alpha_grid(const CountsSummary& summary, const SelectionResult& sel,
                           const PriorConfig& prior, const QuadratureSpec& quad,
                           const Exec& ex = Exec());

struct PredictiveDistribution {
    double p1 = 0.5;        // probability of class 1
    bool corrected = false; // whether the adjustment factor was applied
};

// Predictive class probability for one test case (bits in retained order):
// for each class, average over alpha nodes of exp(sum of per-feature log
// factors + optional log adjustment), shifted by a common maximum before
// exponentiation, weighted by the class predictive, then normalized.
PredictiveDistribution predict(const AlphaGrid& grid,
                               const std::vector<std::uint8_t>& test_bits,
                               bool corrected);

// Convenience: build a grid and predict in one call.
PredictiveDistribution predict(const std::vector<std::uint8_t>& test_bits,
                               const CountsSummary& summary, const SelectionResult& sel,
                               const PriorConfig& prior, const QuadratureSpec& quad,
                               bool corrected);

// Posterior density of log(alpha) evaluated at the K grid nodes: node
// weights proportional to exp(sum of retained-feature train marginals +
// optional adjustment) are rescaled to sum to K, then multiplied by the
// change-of-variable factor alpha * InverseGammaPdf(alpha). Returned as
// (log alpha, density) pairs.
std::vector<std::pair<double, double>> posterior_alpha_density(
    const CountsSummary& summary, const SelectionResult& sel, const PriorConfig& prior,
    const QuadratureSpec& quad, bool corrected, const Exec& ex = Exec());

}  // namespace selnb
