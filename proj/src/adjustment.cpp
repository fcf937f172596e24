#include "selnb/adjustment.hpp"

#include <cmath>
#include <stdexcept>

namespace selnb {

LatticeFrontier build_frontier(long n, double ybar, double gamma) {
    if (!(ybar > 0.0 && ybar < 1.0))
        throw std::invalid_argument(
            "build_frontier: degenerate labels (all correlations are zero)");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("build_frontier: gamma must lie in (0,1)");
    const double m1_real = static_cast<double>(n) * ybar;
    const long m1 = std::lround(m1_real);
    if (n <= 0 || std::fabs(m1_real - static_cast<double>(m1)) > 1e-6 || m1 <= 0 || m1 >= n)
        throw std::invalid_argument("build_frontier: n*ybar must be integral");
    LatticeFrontier fr;
    fr.n = n;
    fr.ybar = ybar;
    fr.m1 = m1;
    fr.m0 = n - m1;
    fr.gamma = gamma;
    // Smallest I1 whose row can contain points with cor > gamma, from solving
    // cor(0, I1) = gamma in the reals and taking the ceiling (clamped to >= 1
    // because (0,0) has correlation 0 by convention). Rows whose boundary
    // solution is an exact tie carry no qualifying points; the scan below
    // leaves them empty, so ceiling rounding at ties is harmless.
    fr.b0 = std::max(
        1L, static_cast<long>(std::ceil(
                1.0 / (1.0 / n + (1.0 - ybar) / (n * ybar * gamma * gamma)))));
    fr.r.assign(m1 + 1, -1);
    if (fr.b0 > fr.m1) return fr;
    // Largest qualifying I0 per row. The correlation rises with I1 and falls
    // with I0, so the cut positions are nondecreasing and one two-pointer
    // sweep covers the whole frontier in O(n).
    long rv = -1;
    for (long I1 = fr.b0; I1 <= fr.m1; ++I1) {
        while (rv + 1 <= fr.m0 && cor_counts_mm(rv + 1, I1, fr.m0, fr.m1) > gamma) ++rv;
        fr.r[I1] = rv;
    }
    return fr;
}

std::vector<double> class_lattice_pmf(long m, double alpha, double theta) {
    if (m < 0) throw std::invalid_argument("class_lattice_pmf: m must be >= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("class_lattice_pmf: alpha must be > 0");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("class_lattice_pmf: theta must lie in [0,1]");
    std::vector<double> pmf(m + 1, 0.0);
    if (theta == 0.0) {  // rate pinned at 0: all mass on the all-zeros column
        pmf[0] = 1.0;
        return pmf;
    }
    if (theta == 1.0) {
        pmf[m] = 1.0;
        return pmf;
    }
    const double f0 = alpha * theta;        // pairs with one-counts
    const double f1 = alpha * (1.0 - theta);
    // P(0) = prod_{l=1..m} (f1+l-1)/(alpha+l-1), then the multiplicative
    // recurrence P(I+1) = P(I) * (m-I)/(I+1) * (f0+I)/(f1+m-I-1); linear
    // space is safe at these magnitudes and avoids gamma functions.
    double v = 1.0;
    for (long l = 1; l <= m; ++l) v *= (f1 + l - 1.0) / (alpha + l - 1.0);
    pmf[0] = v;
    for (long I = 0; I < m; ++I) {
        v *= static_cast<double>(m - I) / static_cast<double>(I + 1) * (f0 + I) /
             (f1 + m - I - 1.0);
        pmf[I + 1] = v;
    }
    return pmf;
}

double sum_H_plus_given_theta(const LatticeFrontier& fr, double alpha, double theta) {
    if (fr.empty()) return 0.0;
    const std::vector<double> p1 = class_lattice_pmf(fr.m1, alpha, theta);
    const std::vector<double> p0 = class_lattice_pmf(fr.m0, alpha, theta);
    double total = 0.0, prefix = 0.0;
    long last = -1;
    for (long I1 = fr.b0; I1 <= fr.m1; ++I1) {
        while (last < fr.r[I1]) prefix += p0[++last];
        total += p1[I1] * prefix;
    }
    return total;
}

LogValue nonselection_log_prob(const LatticeFrontier& fr, double alpha,
                               const QuadratureSpec& quad, bool* clamped) {
    quad.validate();
    if (!(alpha > 0.0))
        throw std::invalid_argument("nonselection_log_prob: alpha must be > 0");
    if (clamped) *clamped = false;
    const double S = simpson_integrate(
        [&](double theta) { return sum_H_plus_given_theta(fr, alpha, theta); }, quad.M);
    // P(discard) = 1 - P(cor > gamma) - P(cor < -gamma) = 1 - 2*S, since the
    // integrated positive and negative region probabilities coincide under
    // the reflection theta -> 1 - theta.
    if (1.0 - 2.0 * S < 1e-300) {
        if (clamped) *clamped = true;
        return LogValue(std::log(1e-300));
    }
    return LogValue(std::log1p(-2.0 * S));
}

LogValue adjustment_log_factor(const LatticeFrontier& fr, double alpha,
                               long omitted_count, const QuadratureSpec& quad,
                               bool* clamped) {
    if (omitted_count < 0)
        throw std::invalid_argument("adjustment_log_factor: omitted_count must be >= 0");
    if (omitted_count == 0) {
        if (clamped) *clamped = false;
        return LogValue::one();
    }
    const LogValue single = nonselection_log_prob(fr, alpha, quad, clamped);
    return LogValue(static_cast<double>(omitted_count) * single.v);
}

AdjustmentCache AdjustmentCache::build(const LatticeFrontier& fr,
                                       const std::vector<double>& alpha_nodes,
                                       const QuadratureSpec& quad, const Exec& ex) {
    AdjustmentCache cache;
    cache.log_nonselection.assign(alpha_nodes.size(), 0.0);
    std::vector<std::uint8_t> clamped(alpha_nodes.size(), 0);
    parallel_for(ex, static_cast<std::int64_t>(alpha_nodes.size()), [&](std::int64_t i) {
        bool c = false;
        cache.log_nonselection[i] = nonselection_log_prob(fr, alpha_nodes[i], quad, &c).v;
        clamped[i] = c ? 1 : 0;
    });
    for (const std::uint8_t c : clamped) cache.clamped |= (c != 0);
    return cache;
}

}  // namespace selnb
