#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace selnb {

// Reliability table: predictions binned by first decimal of p1 (last bin
// closed at 1.0), with per-bin count, mean prediction, and empirical
// class-1 fraction. Empty bins have count 0 and undefined Pred/Actual.
struct CalibrationTable {
    struct Row {
        long count = 0;
        double pred_mean = 0.0;
        double actual_frac = 0.0;
    };
    std::array<Row, 10> rows;

    std::string to_tsv() const;
};

struct MetricsReport {
    double error_rate = 0.0;
    double expected_error_rate = 0.0;
    double mean_neg_log_prob = 0.0;
    double mean_squared_error = 0.0;
};

// Fraction of cases misclassified by thresholding p1 at 1/2 (p1 >= 0.5
// predicts class 1).
double error_rate(const std::vector<double>& p1, const std::vector<std::uint8_t>& labels);

// Error rate the model itself expects given its stated probabilities:
// mean of p1 where p1 < 0.5 and of 1-p1 elsewhere.
double expected_error_rate(const std::vector<double>& p1);

// Minus the mean log probability assigned to the true class, with p1
// clamped 1e-15 away from {0,1}.
double mean_neg_log_prob(const std::vector<double>& p1, const std::vector<std::uint8_t>& labels);

// Mean squared difference between the 0/1 label and p1 (Brier score).
double mean_squared_error(const std::vector<double>& p1, const std::vector<std::uint8_t>& labels);

CalibrationTable calibration_table(const std::vector<double>& p1,
                                   const std::vector<std::uint8_t>& labels);

MetricsReport compute_metrics(const std::vector<double>& p1,
                              const std::vector<std::uint8_t>& labels);

}  // namespace selnb
