#include "selnb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace selnb {

namespace {

void check_pair(const std::vector<double>& p1, const std::vector<std::uint8_t>& labels) {
    if (p1.empty()) throw std::invalid_argument("metrics: empty predictions");
    if (p1.size() != labels.size())
        throw std::invalid_argument("metrics: predictions/labels length mismatch");
}

}  // namespace

double error_rate(const std::vector<double>& p1, const std::vector<std::uint8_t>& labels) {
    check_pair(p1, labels);
    long wrong = 0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const int pred = p1[i] >= 0.5 ? 1 : 0;  // ties predict class 1
        if (pred != static_cast<int>(labels[i])) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(p1.size());
}

double expected_error_rate(const std::vector<double>& p1) {
    if (p1.empty()) throw std::invalid_argument("metrics: empty predictions");
    double acc = 0.0;
    for (double p : p1) acc += p >= 0.5 ? 1.0 - p : p;
    return acc / static_cast<double>(p1.size());
}

double mean_neg_log_prob(const std::vector<double>& p1,
                         const std::vector<std::uint8_t>& labels) {
    check_pair(p1, labels);
    double acc = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double p = std::clamp(p1[i], 1e-15, 1.0 - 1e-15);
        acc += labels[i] ? std::log(p) : std::log(1.0 - p);
    }
    return -acc / static_cast<double>(p1.size());
}

double mean_squared_error(const std::vector<double>& p1,
                          const std::vector<std::uint8_t>& labels) {
    check_pair(p1, labels);
    double acc = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double d = static_cast<double>(labels[i]) - p1[i];
        acc += d * d;
    }
    return acc / static_cast<double>(p1.size());
}

CalibrationTable calibration_table(const std::vector<double>& p1,
                                   const std::vector<std::uint8_t>& labels) {
    check_pair(p1, labels);
    CalibrationTable table;
    std::array<double, 10> sum_p{};
    std::array<double, 10> sum_y{};
    for (std::size_t i = 0; i < p1.size(); ++i) {
        int bin = static_cast<int>(p1[i] * 10.0);
        if (bin > 9) bin = 9;  // the last bin is closed at 1.0
        if (bin < 0) bin = 0;
        table.rows[bin].count += 1;
        sum_p[bin] += p1[i];
        sum_y[bin] += labels[i];
    }
    for (int b = 0; b < 10; ++b) {
        if (table.rows[b].count > 0) {
            table.rows[b].pred_mean = sum_p[b] / table.rows[b].count;
            table.rows[b].actual_frac = sum_y[b] / table.rows[b].count;
        }
    }
    return table;
}

std::string CalibrationTable::to_tsv() const {
    std::ostringstream os;
    os << "bin\tcount\tpred\tactual\n";
    for (int b = 0; b < 10; ++b) {
        os << b / 10.0 << "-" << (b + 1) / 10.0 << "\t" << rows[b].count << "\t";
        if (rows[b].count > 0)
            os << rows[b].pred_mean << "\t" << rows[b].actual_frac;
        else
            os << "-\t-";
        os << "\n";
    }
    return os.str();
}

MetricsReport compute_metrics(const std::vector<double>& p1,
                              const std::vector<std::uint8_t>& labels) {
    MetricsReport r;
    r.error_rate = error_rate(p1, labels);
    r.expected_error_rate = expected_error_rate(p1);
    r.mean_neg_log_prob = mean_neg_log_prob(p1, labels);
    r.mean_squared_error = mean_squared_error(p1, labels);
    return r;
}

}  // namespace selnb
