#include "selnb/numerics.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace selnb {

void QuadratureSpec::validate() const {
    if (K < 1) throw std::invalid_argument("QuadratureSpec: K must be >= 1");
    if (M < 3 || M % 2 == 0)
        throw std::invalid_argument("QuadratureSpec: M must be odd and >= 3");
}

LogValue log_U(double f0, double f1, long n0, long n1) {
    if (f0 < 0.0 || f1 < 0.0)
        throw std::invalid_argument("log_U: pseudo-counts must be nonnegative");
    if (n0 < 0 || n1 < 0)
        throw std::invalid_argument("log_U: counts must be nonnegative");
    // Zero pseudo-counts are limits of the product form: a zero pseudo-count
    // beside a positive count zeroes the probability; beside a zero count the
    // rate is pinned to the other side and the remaining factors cancel to 1.
    if (f0 == 0.0 || f1 == 0.0) {
        if ((f0 == 0.0 && n0 >= 1) || (f1 == 0.0 && n1 >= 1)) return LogValue::zero();
        return LogValue::one();
    }
    // Grouping (f0+f1) and (n0+n1) keeps the value bit-identical under the
    // side swap (f0,n0) <-> (f1,n1); callers rely on that exact symmetry.
    const double v = (std::lgamma(f0 + n0) - std::lgamma(f0)) +
                     (std::lgamma(f1 + n1) - std::lgamma(f1)) -
                     (std::lgamma((f0 + f1) + static_cast<double>(n0 + n1)) -
                      std::lgamma(f0 + f1));
    return LogValue(v);
}

double cor_counts_mm(long I0, long I1, long m0, long m1) {
    const long n = m0 + m1;
    if (I0 < 0 || I1 < 0 || I0 > m0 || I1 > m1)
        throw std::invalid_argument("cor_counts: counts out of range");
    const long s = I0 + I1;
    if (m0 == 0 || m1 == 0 || s == 0 || s == n) return 0.0;
    // All quantities below are integer-valued and exactly representable for
    // any realistic n, so boundary lattice points (correlation exactly equal
    // to a threshold) evaluate without rounding flicker.
    const double num = static_cast<double>(m0) * static_cast<double>(I1) -
                       static_cast<double>(m1) * static_cast<double>(I0);
    const double den2 = static_cast<double>(m0) * static_cast<double>(m1) *
                        static_cast<double>(s) * static_cast<double>(n - s);
    return num / std::sqrt(den2);
}

double cor_counts(long I0, long I1, long n, double ybar) {
    if (n <= 0) throw std::invalid_argument("cor_counts: n must be positive");
    const double m1_real = static_cast<double>(n) * ybar;
    const long m1 = std::lround(m1_real);
    if (std::fabs(m1_real - static_cast<double>(m1)) > 1e-6 || m1 < 0 || m1 > n)
        throw std::invalid_argument("cor_counts: n*ybar must be integral");
    return cor_counts_mm(I0, I1, n - m1, m1);
}

double sample_correlation(const std::vector<std::uint8_t>& y,
                          const std::vector<std::uint8_t>& x) {
    if (y.empty()) throw std::invalid_argument("sample_correlation: empty sequence");
    if (y.size() != x.size())
        throw std::invalid_argument("sample_correlation: length mismatch");
    long S1 = 0, I1 = 0, I0 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > 1 || x[i] > 1)
            throw std::invalid_argument("sample_correlation: entries must be 0/1");
        S1 += y[i];
        if (x[i]) (y[i] ? I1 : I0) += 1;
    }
    const long n = static_cast<long>(y.size());
    return cor_counts_mm(I0, I1, n - S1, S1);
}

std::vector<double> theta_grid(int M) {
    std::vector<double> t(M);
    for (int i = 0; i < M; ++i) t[i] = static_cast<double>(i) / (M - 1);
    return t;
}

std::vector<double> simpson_weights(int M) {
    if (M < 3 || M % 2 == 0)
        throw std::invalid_argument("simpson: node count must be odd and >= 3");
    const double h = 1.0 / (M - 1);
    std::vector<double> w(M, h / 3.0);
    for (int i = 1; i + 1 < M; ++i) w[i] *= (i % 2 == 1) ? 4.0 : 2.0;
    return w;
}

double simpson_integrate(const std::function<double(double)>& f, int M) {
    const std::vector<double> w = simpson_weights(M);
    const std::vector<double> t = theta_grid(M);
    double acc = 0.0;
    for (int i = 0; i < M; ++i) acc += w[i] * f(t[i]);
    return acc;
}

std::vector<double> inverse_gamma_quantile_nodes(double a, double b, int K) {
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("inverse_gamma_quantile_nodes: a, b must be positive");
    if (K < 1) throw std::invalid_argument("inverse_gamma_quantile_nodes: K must be >= 1");
    std::vector<double> nodes(K);
    for (int i = 0; i < K; ++i) {
        const double q = (i + 0.5) / K;
        // If X ~ InvGamma(a, b) then b/X ~ Gamma(a, 1), so the q-quantile of X
        // is b over the x solving Q(a, x) = q, with Q the upper regularized
        // incomplete gamma (decreasing in x). Bracket the root and bisect.
        double lo = std::min(a, 1.0), hi = std::max(a, 1.0);
        while (boost::math::gamma_q(a, lo) <= q) lo *= 0.5;
        while (boost::math::gamma_q(a, hi) >= q) hi *= 2.0;
        for (int it = 0; it < 500 && (hi - lo) > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (boost::math::gamma_q(a, mid) > q ? lo : hi) = mid;
        }
        nodes[i] = b / (0.5 * (lo + hi));
    }
    for (int i = 1; i < K; ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::logic_error("inverse_gamma_quantile_nodes: nodes not increasing");
    return nodes;
}

double inverse_gamma_log_pdf(double x, double a, double b) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    return a * std::log(b) - std::lgamma(a) - (a + 1.0) * std::log(x) - b / x;
}

}  // namespace selnb
