#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "oracle.hpp"
#include "selnb/datagen.hpp"
#include "selnb/model.hpp"
#include "selnb/selection.hpp"

using namespace selnb;

namespace {

// Small random binary dataset with both labels guaranteed present.
BinaryDataset random_dataset(long n, long p, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::bernoulli_distribution bit(0.5);
    BinaryDataset ds;
    ds.n = n;
    ds.p = p;
    ds.bits.resize(static_cast<std::size_t>(n) * p);
    ds.labels.resize(n);
    for (long i = 0; i < n; ++i) ds.labels[i] = bit(eng) ? 1 : 0;
    ds.labels[0] = 0;
    ds.labels[n - 1] = 1;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < p; ++j) ds.at(i, j) = bit(eng) ? 1 : 0;
    ds.feature_ids.resize(p);
    for (long j = 0; j < p; ++j) ds.feature_ids[j] = "c" + std::to_string(j);
    return ds;
}

BinaryDataset complement_labels(BinaryDataset ds) {
    for (auto& y : ds.labels) y = y ? 0 : 1;
    return ds;
}

long argmax_density(const std::vector<std::pair<double, double>>& curve) {
    long best = 0;
    for (long i = 1; i < static_cast<long>(curve.size()); ++i)
        if (curve[i].second > curve[best].second) best = i;
    return best;
}

}  // namespace

TEST_CASE("class_predictive pinned values") {
    CHECK(class_predictive(PriorConfig{}, 100, 100) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(class_predictive(PriorConfig{}, 0, 2) == doctest::Approx(0.75).epsilon(1e-14));
    PriorConfig pr;
    pr.f0 = 2.0;
    pr.f1 = 3.0;
    CHECK(class_predictive(pr, 4, 1) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("class_predictive rejects bad input") {
    CHECK_THROWS_AS(class_predictive(PriorConfig{}, -1, 0), std::invalid_argument);
    PriorConfig bad;
    bad.f1 = 0.0;
    CHECK_THROWS_AS(class_predictive(bad, 1, 1), std::invalid_argument);
    bad = PriorConfig{};
    bad.b = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("train marginal: single observation gives 1/2") {
    // One case, label 1, bit 1: integrand is theta, so any Simpson grid is
    // exact and the answer holds for every alpha.
    for (double alpha : {0.3, 1.0, 7.5, 120.0}) {
        const LogValue v = feature_train_log_marginal(FeatureCounts{0, 0, 1, 0}, alpha, 21);
        CHECK(v.v == doctest::Approx(std::log(0.5)).epsilon(1e-13));
    }
}

TEST_CASE("train marginal: two same-class ones at alpha=2 give 7/18") {
    // Integrand (2t)(2t+1)/6 is quadratic, so composite Simpson is exact.
    const LogValue v = feature_train_log_marginal(FeatureCounts{0, 0, 2, 0}, 2.0, 21);
    CHECK(v.v == doctest::Approx(std::log(7.0 / 18.0)).epsilon(1e-12));
}

TEST_CASE("train marginal: empty counts give log 1") {
    const LogValue v = feature_train_log_marginal(FeatureCounts{0, 0, 0, 0}, 3.0, 21);
    CHECK(std::fabs(v.v) <= 1e-14);
}

TEST_CASE("train marginal matches dense-quadrature oracle") {
    const FeatureCounts c{1, 5, 4, 2};
    for (double alpha : {0.5, 2.7, 40.0}) {
        const double impl = std::exp(feature_train_log_marginal(c, alpha, 201).v);
        const double dense = oracle::train_marginal_dense(c, alpha, 200000);
        CHECK(impl == doctest::Approx(dense).epsilon(1e-8));
    }
}

TEST_CASE("train marginal normalizes over all feature columns") {
    // Summing the marginal over every possible feature column of a fixed
    // label vector must give 1: the theta-integrand of the sum is constant 1
    // and Simpson is linear, so this holds to rounding at any M.
    for (auto [n, N1] : std::vector<std::pair<long, long>>{{6, 3}, {7, 2}, {8, 5}}) {
        const long m1 = N1, m0 = n - N1;
        for (double alpha : {0.7, 3.0}) {
            double total = 0.0;
            for (long mask = 0; mask < (1L << n); ++mask) {
                long I1 = 0, I0 = 0;
                for (long i = 0; i < n; ++i)
                    if (mask & (1L << i)) (i < m0 ? I0 : I1) += 1;
                const FeatureCounts c{I0, m0 - I0, I1, m1 - I1};
                total += std::exp(feature_train_log_marginal(c, alpha, 21).v);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("predictive factors sum over xstar to the train marginal") {
    const FeatureCounts c{2, 6, 5, 3};
    for (double alpha : {0.6, 4.2})
        for (int ystar : {0, 1}) {
            const long Ny = ystar ? c.I1 + c.O1 : c.I0 + c.O0;
            const double p0 = std::exp(feature_predictive_log_factor(c, alpha, ystar, 0, Ny, 21).v);
            const double p1 = std::exp(feature_predictive_log_factor(c, alpha, ystar, 1, Ny, 21).v);
            const double t = std::exp(feature_train_log_marginal(c, alpha, 21).v);
            CHECK(p0 + p1 == doctest::Approx(t).epsilon(1e-12));
        }
}

TEST_CASE("predictive factor with no training data is 1/2") {
    for (double alpha : {0.5, 10.0})
        for (int ystar : {0, 1})
            for (int xstar : {0, 1}) {
                const LogValue v = feature_predictive_log_factor(FeatureCounts{0, 0, 0, 0},
                                                                 alpha, ystar, xstar, 0, 21);
                CHECK(std::exp(v.v) == doctest::Approx(0.5).epsilon(1e-13));
            }
}

TEST_CASE("predictive factor pinned counts match dense-quadrature oracle") {
    const FeatureCounts c{0, 3, 3, 0};
    const double impl = std::exp(feature_predictive_log_factor(c, 1.0, 1, 1, 3, 201).v);
    const double dense = oracle::predictive_dense(c, 1.0, 1, 1, 3, 100000);
    CHECK(std::fabs(impl - dense) <= 1e-8);
}

TEST_CASE("model operations reject bad arguments") {
    CHECK_THROWS_AS(feature_train_log_marginal(FeatureCounts{-1, 0, 0, 0}, 1.0, 21),
                    std::invalid_argument);
    CHECK_THROWS_AS(feature_train_log_marginal(FeatureCounts{}, 0.0, 21),
                    std::invalid_argument);
    CHECK_THROWS_AS(feature_predictive_log_factor(FeatureCounts{}, 1.0, 2, 0, 0, 21),
                    std::invalid_argument);
    CHECK_THROWS_AS(feature_predictive_log_factor(FeatureCounts{}, 1.0, 0, 3, 0, 21),
                    std::invalid_argument);
    CHECK_THROWS_AS(feature_predictive_log_factor(FeatureCounts{}, 1.0, 0, 0, -1, 21),
                    std::invalid_argument);
}

TEST_CASE("alpha grid exposes the quantile nodes and the class predictive") {
    const BinaryDataset ds = random_dataset(14, 4, 11);
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 3, 5);
    const PriorConfig prior;
    const QuadratureSpec quad;
    const AlphaGrid grid = build_alpha_grid(s, sel, prior, quad);
    CHECK(grid.nodes == inverse_gamma_quantile_nodes(prior.a, prior.b, quad.K));
    CHECK(grid.psi_hat == class_predictive(prior, s.N0, s.N1));
    CHECK(grid.k == 3);
    CHECK(grid.omitted == 1);
    // Table entries are exactly the public per-feature operations.
    const CountsSummary r = restrict_to_selection(s, sel);
    for (long node : {0L, 7L, static_cast<long>(quad.K) - 1})
        for (long j = 0; j < sel.k; ++j) {
            const FeatureCounts c = feature_counts(r, j);
            CHECK(grid.train(node, j) ==
                  feature_train_log_marginal(c, grid.nodes[node], quad.M).v);
            for (int ystar : {0, 1})
                for (int xstar : {0, 1})
                    CHECK(grid.pred(node, j, ystar, xstar) ==
                          feature_predictive_log_factor(c, grid.nodes[node], ystar, xstar,
                                                        ystar ? s.N1 : s.N0, quad.M)
                              .v);
        }
}

TEST_CASE("predict with nothing omitted: corrected equals uncorrected") {
    const BinaryDataset ds = random_dataset(16, 5, 3);
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 5, 9);
    const AlphaGrid grid = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    CHECK(grid.omitted == 0);
    std::mt19937_64 eng(4);
    std::bernoulli_distribution bit(0.5);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<std::uint8_t> x(5);
        for (auto& b : x) b = bit(eng) ? 1 : 0;
        const double pc = predict(grid, x, true).p1;
        const double pu = predict(grid, x, false).p1;
        CHECK(std::fabs(pc - pu) <= 1e-12);
        CHECK(pu >= 0.0);
        CHECK(pu <= 1.0);
    }
}

TEST_CASE("predict with no retained features returns the class predictive") {
    const BinaryDataset ds = random_dataset(20, 6, 8);
    const CountsSummary s = summarize(ds);
    // A threshold above every |COR| retains nothing but still records an
    // omitted count, so the corrected path exercises a live adjustment that
    // must cancel between the classes.
    const SelectionResult sel = select_by_threshold(ds, 0.95);
    REQUIRE(sel.k == 0);
    const AlphaGrid grid = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    CHECK(grid.omitted == 6);
    const double psi = class_predictive(PriorConfig{}, s.N0, s.N1);
    CHECK(std::fabs(predict(grid, {}, false).p1 - psi) <= 1e-12);
    CHECK(std::fabs(predict(grid, {}, true).p1 - psi) <= 1e-12);
}

TEST_CASE("predict on a class-symmetric training set gives 1/2") {
    BinaryDataset ds;
    ds.n = 4;
    ds.p = 2;
    ds.labels = {0, 0, 1, 1};
    ds.bits = {0, 1, 1, 0, 0, 1, 1, 0};  // columns (0,1,0,1) and (1,0,1,0)
    ds.feature_ids = {"a", "b"};
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 2, 1);
    const AlphaGrid grid = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    for (std::vector<std::uint8_t> x :
         {std::vector<std::uint8_t>{0, 0}, {1, 1}, {0, 1}, {1, 0}})
        CHECK(std::fabs(predict(grid, x, false).p1 - 0.5) <= 1e-12);
}

TEST_CASE("label complement flips the predictive probability") {
    const BinaryDataset ds = random_dataset(12, 4, 21);
    const BinaryDataset sw = complement_labels(ds);
    const CountsSummary s = summarize(ds);
    const CountsSummary s2 = summarize(sw);
    // |COR| is invariant under the complement, so both screenings retain the
    // same columns in the same order.
    const SelectionResult sel = select_by_threshold(ds, 0.1);
    const SelectionResult sel2 = select_by_threshold(sw, 0.1);
    REQUIRE(sel.retained == sel2.retained);
    const AlphaGrid g1 = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    const AlphaGrid g2 = build_alpha_grid(s2, sel2, PriorConfig{}, QuadratureSpec{});
    std::mt19937_64 eng(2);
    std::bernoulli_distribution bit(0.5);
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<std::uint8_t> x(sel.k);
        for (auto& b : x) b = bit(eng) ? 1 : 0;
        for (bool corrected : {false, true}) {
            const double p = predict(g1, x, corrected).p1;
            const double q = predict(g2, x, corrected).p1;
            CHECK(p + q == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("flipping a class-1-favoring test bit lowers p1") {
    BinaryDataset ds;
    ds.n = 10;
    ds.p = 1;
    ds.labels.assign(10, 0);
    for (long i = 5; i < 10; ++i) ds.labels[i] = 1;
    ds.bits.assign(10, 0);
    for (long i = 5; i < 10; ++i) ds.bits[i] = 1;  // feature == label
    ds.feature_ids = {"f"};
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 1, 0);
    const AlphaGrid grid = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    const double hi = predict(grid, {1}, false).p1;
    const double lo = predict(grid, {0}, false).p1;
    CHECK(hi > 0.5);
    CHECK(lo < 0.5);
    CHECK(hi > lo);
}

TEST_CASE("predict rejects malformed input") {
    const BinaryDataset ds = random_dataset(10, 3, 5);
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 2, 0);
    const AlphaGrid grid = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    CHECK_THROWS_AS(predict(grid, {1, 0, 1}, false), std::invalid_argument);
    CHECK_THROWS_AS(predict(AlphaGrid{}, {}, false), std::invalid_argument);
    // Summary/selection disagreement is rejected at grid-build time.
    const BinaryDataset other = random_dataset(10, 5, 6);
    CHECK_THROWS_AS(build_alpha_grid(summarize(other), sel, PriorConfig{}, QuadratureSpec{}),
                    std::invalid_argument);
}

TEST_CASE("convenience predict equals grid-then-predict") {
    const BinaryDataset ds = random_dataset(12, 4, 13);
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 2, 3);
    const AlphaGrid grid = build_alpha_grid(s, sel, PriorConfig{}, QuadratureSpec{});
    const std::vector<std::uint8_t> x{1, 0};
    for (bool corrected : {false, true})
        CHECK(predict(x, s, sel, PriorConfig{}, QuadratureSpec{}, corrected).p1 ==
              predict(grid, x, corrected).p1);
}

TEST_CASE("posterior density with no features reduces to the prior Jacobian") {
    CountsSummary s;
    s.n = 4;
    s.N0 = 2;
    s.N1 = 2;
    SelectionResult sel;  // k = 0, p = 0
    const PriorConfig prior;
    const QuadratureSpec quad;
    const auto curve = posterior_alpha_density(s, sel, prior, quad, false);
    const auto nodes = inverse_gamma_quantile_nodes(prior.a, prior.b, quad.K);
    REQUIRE(curve.size() == nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(curve[i].first == doctest::Approx(std::log(nodes[i])).epsilon(1e-14));
        const double jac = nodes[i] * std::exp(inverse_gamma_log_pdf(nodes[i], prior.a, prior.b));
        CHECK(curve[i].second == doctest::Approx(jac).epsilon(1e-12));
    }
}

TEST_CASE("posterior density ratios follow the adjustment factor") {
    const BinaryDataset ds = random_dataset(18, 8, 17);
    const CountsSummary s = summarize(ds);
    const SelectionResult sel = select_top_k(ds, 3, 2);
    const PriorConfig prior;
    const QuadratureSpec quad;
    const AlphaGrid grid = build_alpha_grid(s, sel, prior, quad);
    REQUIRE(grid.omitted == 5);
    const auto dc = posterior_alpha_density(s, sel, prior, quad, true);
    const auto du = posterior_alpha_density(s, sel, prior, quad, false);
    const double base = (dc[0].second / du[0].second);
    for (std::size_t i = 1; i < dc.size(); ++i) {
        const double ratio = (dc[i].second / du[i].second) / base;
        const double expected = std::exp(grid.log_adjust[i] - grid.log_adjust[0]);
        CHECK(ratio == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("correction shifts the posterior mode toward larger alpha") {
    SyntheticSpec spec;
    spec.alpha_true = 300.0;
    spec.p = 500;
    spec.n_train = 100;
    spec.n_test = 0;
    spec.balanced = true;
    spec.seed = 7;
    const SimulatedData sim = simulate(spec);
    const CountsSummary s = summarize(sim.train);
    const SelectionResult sel = select_top_k(sim.train, 10, 7);
    const PriorConfig prior;
    const QuadratureSpec quad;
    const auto dc = posterior_alpha_density(s, sel, prior, quad, true);
    const auto du = posterior_alpha_density(s, sel, prior, quad, false);
    const long mc = argmax_density(dc);
    const long mu = argmax_density(du);
    CHECK(mc >= mu);
    CHECK(mc > mu);  // pronounced screening bias on this draw
}
