#include "selnb/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace selnb {

void PriorConfig::validate() const {
    if (!(f0 > 0.0) || !(f1 > 0.0) || !(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("PriorConfig: f0, f1, a, b must all be positive");
}

double class_predictive(const PriorConfig& prior, long N0, long N1) {
    prior.validate();
    if (N0 < 0 || N1 < 0)
        throw std::invalid_argument("class_predictive: counts must be nonnegative");
    return (prior.f1 + N1) / (prior.f0 + prior.f1 + N0 + N1);
}

namespace {

// log of a Simpson integral over [0,1] whose integrand is supplied in log
// space; the midpoint value anchors a shift so tiny magnitudes survive the
// exponentiation.
template <typename LogF>
double log_simpson(LogF&& log_f, int M) {
    const std::vector<double> w = simpson_weights(M);
    const std::vector<double> t = theta_grid(M);
    double shift = log_f(0.5);
    if (!std::isfinite(shift)) shift = 0.0;
    double acc = 0.0;
    for (int i = 0; i < M; ++i) {
        const double lv = log_f(t[i]);
        if (lv != -std::numeric_limits<double>::infinity()) acc += w[i] * std::exp(lv - shift);
    }
    if (acc <= 0.0) return -std::numeric_limits<double>::infinity();
    return shift + std::log(acc);
}

void check_counts(const FeatureCounts& c) {
    if (c.I0 < 0 || c.O0 < 0 || c.I1 < 0 || c.O1 < 0)
        throw std::invalid_argument("feature counts must be nonnegative");
}

}  // namespace

LogValue feature_train_log_marginal(const FeatureCounts& c, double alpha, int M) {
    check_counts(c);
    if (!(alpha > 0.0))
        throw std::invalid_argument("feature_train_log_marginal: alpha must be > 0");
    const double v = log_simpson(
        [&](double theta) {
            return log_U(alpha * theta, alpha * (1.0 - theta), c.I1, c.O1).v +
                   log_U(alpha * theta, alpha * (1.0 - theta), c.I0, c.O0).v;
        },
        M);
    return LogValue(v);
}

LogValue feature_predictive_log_factor(const FeatureCounts& c, double alpha, int ystar,
                                       int xstar, long Nystar, int M) {
    check_counts(c);
    if (!(alpha > 0.0))
        throw std::invalid_argument("feature_predictive_log_factor: alpha must be > 0");
    if ((ystar != 0 && ystar != 1) || (xstar != 0 && xstar != 1))
        throw std::invalid_argument("feature_predictive_log_factor: ystar/xstar must be bits");
    if (Nystar < 0)
        throw std::invalid_argument("feature_predictive_log_factor: Nystar must be >= 0");
    const long Iy = ystar ? c.I1 : c.I0;
    const double v = log_simpson(
        [&](double theta) {
            // Posterior-mean rate of the test case's class at this theta.
            const double phi_hat = (alpha * theta + Iy) / (alpha + Nystar);
            const double bern = xstar ? phi_hat : 1.0 - phi_hat;
            if (bern <= 0.0) return -std::numeric_limits<double>::infinity();
            return std::log(bern) +
                   log_U(alpha * theta, alpha * (1.0 - theta), c.I1, c.O1).v +
                   log_U(alpha * theta, alpha * (1.0 - theta), c.I0, c.O0).v;
        },
        M);
    return LogValue(v);
}

namespace {

// Shared by the predictive grid and the alpha-posterior diagnostic: per-node
// log adjustment factors (omitted count times the single-feature
// nonselection log probability), with the degenerate thresholds short-cut.
std::vector<double> per_node_log_adjust(const CountsSummary& summary,
                                        const SelectionResult& sel,
                                        const QuadratureSpec& quad,
                                        const std::vector<double>& nodes, const Exec& ex,
                                        bool* clamped_any) {
    std::vector<double> adj(nodes.size(), 0.0);
    if (clamped_any) *clamped_any = false;
    const long omitted = sel.p - sel.k;
    if (omitted <= 0) return adj;
    if (sel.gamma >= 1.0) return adj;  // every correlation qualifies as small
    // A gamma of exactly zero can only arise when the weakest retained
    // feature is constant; the discard event {|cor| <= 0} equals
    // {|cor| <= eps} for any eps below the smallest nonzero lattice
    // correlation, so nudge gamma into the frontier builder's open interval.
    const double gamma = sel.gamma > 0.0 ? sel.gamma : 1e-12;
    const double ybar = static_cast<double>(summary.N1) / summary.n;
    const LatticeFrontier fr = build_frontier(summary.n, ybar, gamma);
    const AdjustmentCache cache = AdjustmentCache::build(fr, nodes, quad, ex);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        adj[i] = static_cast<double>(omitted) * cache.log_nonselection[i];
    if (clamped_any) *clamped_any = cache.clamped;
    return adj;
}

}  // namespace

AlphaGrid build_alpha_grid(const CountsSummary& summary, const SelectionResult& sel,
                           const PriorConfig& prior, const QuadratureSpec& quad,
                           const Exec& ex) {
    prior.validate();
    quad.validate();
    if (summary.p() != sel.p)
        throw std::invalid_argument("build_alpha_grid: summary does not match selection");
    const CountsSummary r = restrict_to_selection(summary, sel);
    AlphaGrid grid;
    grid.nodes = inverse_gamma_quantile_nodes(prior.a, prior.b, quad.K);
    grid.k = sel.k;
    grid.n = summary.n;
    grid.N0 = summary.N0;
    grid.N1 = summary.N1;
    grid.psi_hat = class_predictive(prior, summary.N0, summary.N1);
    grid.omitted = sel.p - sel.k;
    grid.log_train.assign(static_cast<std::size_t>(quad.K) * sel.k, 0.0);
    grid.log_pred.assign(static_cast<std::size_t>(quad.K) * sel.k * 4, 0.0);
    grid.log_adjust = per_node_log_adjust(summary, sel, quad, grid.nodes, ex,
                                          &grid.adjust_clamped);
    parallel_for(ex, quad.K, [&](std::int64_t node) {
        const double alpha = grid.nodes[node];
        for (long j = 0; j < sel.k; ++j) {
            const FeatureCounts c = feature_counts(r, j);
            grid.log_train[node * sel.k + j] = feature_train_log_marginal(c, alpha, quad.M).v;
            for (int ystar = 0; ystar < 2; ++ystar) {
                const long Ny = ystar ? summary.N1 : summary.N0;
                for (int xstar = 0; xstar < 2; ++xstar) {
                    grid.log_pred[((node * sel.k + j) * 2 + ystar) * 2 + xstar] =
                        feature_predictive_log_factor(c, alpha, ystar, xstar, Ny, quad.M).v;
                }
            }
        }
    });
    return grid;
}

PredictiveDistribution predict(const AlphaGrid& grid,
                               const std::vector<std::uint8_t>& test_bits, bool corrected) {
    if (grid.nodes.empty()) throw std::invalid_argument("predict: empty alpha grid");
    if (static_cast<long>(test_bits.size()) != grid.k)
        throw std::invalid_argument("predict: test vector length != retained count");
    const long K = static_cast<long>(grid.nodes.size());
    std::vector<double> L0(K), L1(K);
    for (long node = 0; node < K; ++node) {
        double base = corrected ? grid.log_adjust[node] : 0.0;
        double a0 = base, a1 = base;
        for (long j = 0; j < grid.k; ++j) {
            const int x = test_bits[j] ? 1 : 0;
            a0 += grid.pred(node, j, 0, x);
            a1 += grid.pred(node, j, 1, x);
        }
        L0[node] = a0;
        L1[node] = a1;
    }
    // One shift shared by both classes keeps their ratio intact.
    double shift = L0[0];
    for (long node = 0; node < K; ++node)
        shift = std::max(shift, std::max(L0[node], L1[node]));
    double s0 = 0.0, s1 = 0.0;
    for (long node = 0; node < K; ++node) {
        s0 += std::exp(L0[node] - shift);
        s1 += std::exp(L1[node] - shift);
    }
    const double num0 = (1.0 - grid.psi_hat) * (s0 / K);
    const double num1 = grid.psi_hat * (s1 / K);
    PredictiveDistribution out;
    out.corrected = corrected;
    out.p1 = num1 / (num0 + num1);
    return out;
}

PredictiveDistribution predict(const std::vector<std::uint8_t>& test_bits,
                               const CountsSummary& summary, const SelectionResult& sel,
                               const PriorConfig& prior, const QuadratureSpec& quad,
                               bool corrected) {
    const AlphaGrid grid = build_alpha_grid(summary, sel, prior, quad, Exec::serial());
    return predict(grid, test_bits, corrected);
}

std::vector<std::pair<double, double>> posterior_alpha_density(
    const CountsSummary& summary, const SelectionResult& sel, const PriorConfig& prior,
    const QuadratureSpec& quad, bool corrected, const Exec& ex) {
    prior.validate();
    quad.validate();
    if (summary.p() != sel.p)
        throw std::invalid_argument("posterior_alpha_density: summary does not match selection");
    const CountsSummary r = restrict_to_selection(summary, sel);
    const std::vector<double> nodes = inverse_gamma_quantile_nodes(prior.a, prior.b, quad.K);
    std::vector<double> log_adjust =
        per_node_log_adjust(summary, sel, quad, nodes, ex, nullptr);
    const long K = static_cast<long>(nodes.size());
    std::vector<double> logw(K, 0.0);
    parallel_for(ex, K, [&](std::int64_t node) {
        double acc = corrected ? log_adjust[node] : 0.0;
        for (long j = 0; j < sel.k; ++j)
            acc += feature_train_log_marginal(feature_counts(r, j), nodes[node], quad.M).v;
        logw[node] = acc;
    });
    const double shift = *std::max_element(logw.begin(), logw.end());
    std::vector<double> w(K);
    double total = 0.0;
    for (long i = 0; i < K; ++i) total += (w[i] = std::exp(logw[i] - shift));
    const double scale = static_cast<double>(K) / total;
    // Weights rescaled to sum to K, then mapped to a density of log(alpha)
    // via the change-of-variable factor alpha * pdf(alpha).
    std::vector<std::pair<double, double>> curve(K);
    for (long i = 0; i < K; ++i) {
        const double dens =
            w[i] * scale * nodes[i] * std::exp(inverse_gamma_log_pdf(nodes[i], prior.a, prior.b));
        curve[i] = {std::log(nodes[i]), dens};
    }
    return curve;
}

}  // namespace selnb
