#pragma once
#include <string>
#include <vector>

#include "selnb/dataset.hpp"
#include "selnb/harness.hpp"
#include "selnb/selection.hpp"

namespace selnb {

// Delimited-text dataset format: first row is a header whose first column
// names the label column, remaining columns are feature identifiers; each
// following row is one case. Binary files hold 0/1 entries; real-valued
// files hold finite reals. Tab, comma, or space delimited (auto-detected).

BinaryDataset read_binary_dataset(const std::string& path);
void write_binary_dataset(const BinaryDataset& ds, const std::string& path);

RealValuedDataset read_real_dataset(const std::string& path);
void write_real_dataset(const RealValuedDataset& ds, const std::string& path);

// SelectionResult as a small JSON document.
void write_selection(const SelectionResult& sel, const std::string& path);
SelectionResult read_selection(const std::string& path);

// Per-case predictions as a delimited table (index, label if known, p1 per
// requested method).
void write_predictions(const std::vector<double>& p1_corrected,
                       const std::vector<double>& p1_uncorrected,
                       const std::vector<std::uint8_t>& labels, bool have_labels,
                       CorrectedMode mode, const std::string& path);

// Reports as JSON documents.
void write_loocv_report(const LoocvResult& res, const ExperimentConfig& cfg,
                        const std::string& path);
void write_study_report(const StudyReport& report, const std::string& path);
void write_posterior_curve(const std::vector<std::pair<double, double>>& curve,
                           const std::string& path);
std::string metrics_to_json(const MetricsReport& m);

}  // namespace selnb
