#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "selnb/exec.hpp"

namespace selnb {

// Binary n x p feature matrix with class labels and stable per-feature
// identifiers (identifiers survive selection and partitioning so reports can
// reference original columns).
struct BinaryDataset {
    long n = 0;
    long p = 0;
    std::vector<std::uint8_t> bits;     // row-major n*p, entries in {0,1}
    std::vector<std::uint8_t> labels;   // length n, entries in {0,1}
    std::vector<std::string> feature_ids;  // length p

    std::uint8_t at(long i, long j) const { return bits[static_cast<std::size_t>(i) * p + j]; }
    std::uint8_t& at(long i, long j) { return bits[static_cast<std::size_t>(i) * p + j]; }
    void validate() const;
};

// Real-valued n x p matrix (pre-binarization input format).
struct RealValuedDataset {
    long n = 0;
    long p = 0;
    std::vector<double> values;         // row-major
    std::vector<std::uint8_t> labels;
    std::vector<std::string> feature_ids;

    double at(long i, long j) const { return values[static_cast<std::size_t>(i) * p + j]; }
    double& at(long i, long j) { return values[static_cast<std::size_t>(i) * p + j]; }
    void validate() const;
};

// Per-feature within-class one-counts and zero-counts: I[y][j] counts cases
// with label y and feature bit 1; O[y][j] the bit-0 complement. These counts
// are the only data dependence of the integrated-out model.
struct CountsSummary {
    long n = 0;
    long N0 = 0;
    long N1 = 0;
    std::vector<long> I[2];
    std::vector<long> O[2];
    std::vector<std::string> feature_ids;

    long p() const { return static_cast<long>(I[0].size()); }
};

// The four counts of one feature, as consumed by the model operations.
struct FeatureCounts {
    long I0 = 0, O0 = 0, I1 = 0, O1 = 0;
};

inline FeatureCounts feature_counts(const CountsSummary& s, long j) {
    return FeatureCounts{s.I[0][j], s.O[0][j], s.I[1][j], s.O[1][j]};
}

CountsSummary summarize(const BinaryDataset& ds, const Exec& ex = Exec());

}  // namespace selnb
