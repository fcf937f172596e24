#pragma once
#include <cmath>
#include <limits>
#include <stdexcept>

namespace selnb {

// Log of a nonnegative quantity. Negative infinity encodes log(0) and is the
// only non-finite value permitted; NaN is rejected at construction.
struct LogValue {
    double v = 0.0;

    LogValue() = default;
    explicit LogValue(double log_of_value) : v(log_of_value) {
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("LogValue: must be finite or -inf");
    }

    static LogValue zero() { return LogValue(-std::numeric_limits<double>::infinity()); }
    static LogValue one() { return LogValue(0.0); }

    bool is_log_zero() const { return v == -std::numeric_limits<double>::infinity(); }
    double exp() const { return std::exp(v); }
};

}  // namespace selnb
