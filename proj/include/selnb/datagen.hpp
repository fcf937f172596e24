#pragma once
#include <cstdint>
#include <vector>

#include "selnb/dataset.hpp"
#include "selnb/exec.hpp"

namespace selnb {

// Specification of a synthetic draw from the model: fixed concentration
// alpha_true, p features, and balanced-by-construction labels when
// `balanced` is set (otherwise the class probability is itself drawn
// uniformly and labels are sampled from it).
struct SyntheticSpec {
    double alpha_true = 300.0;
    long p = 1000;
    long n_train = 200;
    long n_test = 1000;
    bool balanced = true;
    std::uint64_t seed = 0;
    void validate() const;
};

struct SimulatedData {
    BinaryDataset train;
    BinaryDataset test;
    std::vector<double> theta;  // per-feature Beta mean
    std::vector<double> phi0;   // per-feature class-0 rate
    std::vector<double> phi1;   // per-feature class-1 rate
};

// Draw theta_j uniformly, phi_{0,j} and phi_{1,j} from
// Beta(alpha_true*theta_j, alpha_true*(1-theta_j)), then Bernoulli feature
// bits given each case's label. Each feature consumes its own derived
// random stream, so enlarging p leaves earlier features' draws unchanged.
SimulatedData simulate(const SyntheticSpec& spec, const Exec& ex = Exec());

}  // namespace selnb
