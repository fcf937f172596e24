#pragma once
#include <cstdint>
#include <vector>

#include "selnb/dataset.hpp"
#include "selnb/exec.hpp"

namespace selnb {

// Outcome of correlation screening. `retained` holds original column
// indices, ordered by descending |correlation| (ties by index); gamma is the
// threshold the screening conditions on — either the caller's threshold or
// the |correlation| of the weakest retained feature.
struct SelectionResult {
    std::vector<long> retained;
    std::vector<std::string> retained_ids;
    std::vector<double> correlations;  // |COR| per retained feature, same order
    long k = 0;
    long p = 0;
    double gamma = 0.0;
};

// Absolute sample correlation of every feature with the labels.
std::vector<double> abs_correlations(const BinaryDataset& ds, const Exec& ex = Exec());

// Keep exactly the features with |COR| strictly greater than gamma.
SelectionResult select_by_threshold(const BinaryDataset& ds, double gamma,
                                    const Exec& ex = Exec());

// Keep the k features of largest |COR|, breaking ties by a seeded random
// key; gamma is set to the |COR| of the weakest retained feature.
SelectionResult select_top_k(const BinaryDataset& ds, long k, std::uint64_t seed,
                             const Exec& ex = Exec());

// Restrict a counts summary to the retained features (in retained order).
CountsSummary restrict_to_selection(const CountsSummary& s, const SelectionResult& sel);

}  // namespace selnb
