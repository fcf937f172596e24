#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selnb/dataset.hpp"
#include "selnb/datagen.hpp"
#include "selnb/exec.hpp"
#include "selnb/metrics.hpp"
#include "selnb/model.hpp"

namespace selnb {

enum class SelectionMode { top_k, threshold };
enum class CorrectedMode { both, on, off };

struct ExperimentConfig {
    PriorConfig prior;
    QuadratureSpec quad;
    SelectionMode mode = SelectionMode::top_k;
    long k = 5;
    double gamma = 0.2;      // used by threshold mode
    CorrectedMode corrected = CorrectedMode::both;
    std::uint64_t seed = 0;
    Exec exec;
    void validate() const;
};

// Per feature: bit = 1 iff the value is strictly greater than that
// feature's median (even-length medians are midpoints of the two central
// order statistics; values equal to the median map to 0).
BinaryDataset binarize_by_median(const RealValuedDataset& data, const Exec& ex = Exec());

// Seeded uniform random partition of the features into `groups` datasets of
// equal width, each keeping all cases and the original feature identifiers.
std::vector<BinaryDataset> partition_features(const BinaryDataset& ds, long groups,
                                              std::uint64_t seed);

struct LoocvCase {
    long index = 0;
    int label = 0;
    double p1_corrected = 0.0;
    double p1_uncorrected = 0.0;
    double gamma = 0.0;
    bool skipped = false;  // fold degenerate: remaining labels all identical
};

struct LoocvResult {
    std::vector<LoocvCase> cases;
    long skipped = 0;
    MetricsReport corrected;
    MetricsReport uncorrected;
};

// Leave-one-out cross-validation: every case is predicted by a model whose
// features are reselected (top-k, per-fold derived tie-break seed) and whose
// caches are rebuilt on the other n-1 cases alone.
LoocvResult loocv(const BinaryDataset& ds, const ExperimentConfig& cfg);

struct StudyEntry {
    long k = 0;
    double gamma = 0.0;
    MetricsReport metrics_corrected;
    MetricsReport metrics_uncorrected;
    CalibrationTable calibration_corrected;
    CalibrationTable calibration_uncorrected;
    std::vector<std::pair<double, double>> posterior_corrected;
    std::vector<std::pair<double, double>> posterior_uncorrected;
    std::vector<double> p1_corrected;    // per test case
    std::vector<double> p1_uncorrected;
    double wall_ms_setup = 0.0;        // selection + factor grid build
    double wall_ms_corrected = 0.0;    // corrected prediction pass
    double wall_ms_uncorrected = 0.0;  // uncorrected prediction pass
};

struct StudyReport {
    SyntheticSpec spec;
    std::vector<StudyEntry> entries;                       // one per subset size
    std::optional<StudyEntry> all_features;                // optional k = p run
    std::vector<std::pair<double, double>> posterior_all;  // all-feature alpha posterior
};

// Simulation study: generate train/test from `spec`, then for each subset
// size select, predict the test set corrected and uncorrected, and collect
// metrics, calibration tables, posterior curves, and wall time.
StudyReport run_simulation_study(const SyntheticSpec& spec,
                                 const std::vector<long>& subset_sizes,
                                 const ExperimentConfig& cfg,
                                 bool include_all_features = false);

// Deterministic real-valued 62-case x 2000-feature dataset with a 22/40
// class split, shaped like a small two-class expression matrix; exercises
// the binarize -> partition -> loocv pipeline when no external file is
// supplied.
RealValuedDataset make_standin_dataset(std::uint64_t seed);

}  // namespace selnb
