#include "selnb/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace selnb {

namespace {

using nlohmann::json;

std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

char detect_delimiter(const std::string& header) {
    if (header.find('\t') != std::string::npos) return '\t';
    if (header.find(',') != std::string::npos) return ',';
    return ' ';
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    if (delim == ' ') {
        std::istringstream is(line);
        std::string tok;
        while (is >> tok) out.push_back(tok);
        return out;
    }
    std::string tok;
    std::istringstream is(line);
    while (std::getline(is, tok, delim)) out.push_back(tok);
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::runtime_error("empty dataset file: " + path);
    return lines;
}

int parse_bit(const std::string& tok, const std::string& path) {
    if (tok == "0") return 0;
    if (tok == "1") return 1;
    throw std::runtime_error("non-binary entry '" + tok + "' in " + path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.precision(17);
    return out;
}

json metrics_json(const MetricsReport& m) {
    return json{{"error_rate", m.error_rate},
                {"expected_error_rate", m.expected_error_rate},
                {"mean_neg_log_prob", m.mean_neg_log_prob},
                {"mean_squared_error", m.mean_squared_error}};
}

json calibration_json(const CalibrationTable& t) {
    json rows = json::array();
    for (int b = 0; b < 10; ++b) {
        json row{{"bin_low", b / 10.0}, {"count", t.rows[b].count}};
        if (t.rows[b].count > 0) {
            row["pred"] = t.rows[b].pred_mean;
            row["actual"] = t.rows[b].actual_frac;
        }
        rows.push_back(row);
    }
    return rows;
}

json curve_json(const std::vector<std::pair<double, double>>& curve) {
    json arr = json::array();
    for (const auto& [la, dens] : curve) arr.push_back(json::array({la, dens}));
    return arr;
}

json entry_json(const StudyEntry& e) {
    return json{{"k", e.k},
                {"gamma", e.gamma},
                {"metrics_corrected", metrics_json(e.metrics_corrected)},
                {"metrics_uncorrected", metrics_json(e.metrics_uncorrected)},
                {"calibration_corrected", calibration_json(e.calibration_corrected)},
                {"calibration_uncorrected", calibration_json(e.calibration_uncorrected)},
                {"posterior_corrected", curve_json(e.posterior_corrected)},
                {"posterior_uncorrected", curve_json(e.posterior_uncorrected)},
                {"p1_corrected", e.p1_corrected},
                {"p1_uncorrected", e.p1_uncorrected},
                {"wall_ms_setup", e.wall_ms_setup},
                {"wall_ms_corrected", e.wall_ms_corrected},
                {"wall_ms_uncorrected", e.wall_ms_uncorrected}};
}

}  // namespace

BinaryDataset read_binary_dataset(const std::string& path) {
    const auto lines = read_lines(path);
    const char delim = detect_delimiter(lines[0]);
    const auto header = split_line(lines[0], delim);
    if (header.size() < 2)
        throw std::runtime_error("dataset header needs a label column and features: " + path);
    BinaryDataset ds;
    ds.p = static_cast<long>(header.size()) - 1;
    ds.feature_ids.assign(header.begin() + 1, header.end());
    ds.n = static_cast<long>(lines.size()) - 1;
    if (ds.n < 1) throw std::runtime_error("dataset has no cases: " + path);
    ds.bits.resize(static_cast<std::size_t>(ds.n) * ds.p);
    ds.labels.resize(ds.n);
    for (long i = 0; i < ds.n; ++i) {
        const auto toks = split_line(lines[i + 1], delim);
        if (static_cast<long>(toks.size()) != ds.p + 1)
            throw std::runtime_error("row " + std::to_string(i + 1) + " has " +
                                     std::to_string(toks.size()) + " fields, expected " +
                                     std::to_string(ds.p + 1) + ": " + path);
        ds.labels[i] = static_cast<std::uint8_t>(parse_bit(toks[0], path));
        for (long j = 0; j < ds.p; ++j)
            ds.at(i, j) = static_cast<std::uint8_t>(parse_bit(toks[j + 1], path));
    }
    ds.validate();
    return ds;
}

void write_binary_dataset(const BinaryDataset& ds, const std::string& path) {
    ds.validate();
    auto out = open_out(path);
    out << "label";
    for (const auto& id : ds.feature_ids) out << '\t' << id;
    out << '\n';
    for (long i = 0; i < ds.n; ++i) {
        out << static_cast<int>(ds.labels[i]);
        for (long j = 0; j < ds.p; ++j) out << '\t' << static_cast<int>(ds.at(i, j));
        out << '\n';
    }
}

RealValuedDataset read_real_dataset(const std::string& path) {
    const auto lines = read_lines(path);
    const char delim = detect_delimiter(lines[0]);
    const auto header = split_line(lines[0], delim);
    if (header.size() < 2)
        throw std::runtime_error("dataset header needs a label column and features: " + path);
    RealValuedDataset ds;
    ds.p = static_cast<long>(header.size()) - 1;
    ds.feature_ids.assign(header.begin() + 1, header.end());
    ds.n = static_cast<long>(lines.size()) - 1;
    if (ds.n < 1) throw std::runtime_error("dataset has no cases: " + path);
    ds.values.resize(static_cast<std::size_t>(ds.n) * ds.p);
    ds.labels.resize(ds.n);
    for (long i = 0; i < ds.n; ++i) {
        const auto toks = split_line(lines[i + 1], delim);
        if (static_cast<long>(toks.size()) != ds.p + 1)
            throw std::runtime_error("row " + std::to_string(i + 1) + " has " +
                                     std::to_string(toks.size()) + " fields, expected " +
                                     std::to_string(ds.p + 1) + ": " + path);
        ds.labels[i] = static_cast<std::uint8_t>(parse_bit(toks[0], path));
        for (long j = 0; j < ds.p; ++j) {
            const double v = std::stod(toks[j + 1]);
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite entry in " + path);
            ds.at(i, j) = v;
        }
    }
    ds.validate();
    return ds;
}

void write_real_dataset(const RealValuedDataset& ds, const std::string& path) {
    ds.validate();
    auto out = open_out(path);
    out << "label";
    for (const auto& id : ds.feature_ids) out << '\t' << id;
    out << '\n';
    for (long i = 0; i < ds.n; ++i) {
        out << static_cast<int>(ds.labels[i]);
        for (long j = 0; j < ds.p; ++j) out << '\t' << ds.at(i, j);
        out << '\n';
    }
}

void write_selection(const SelectionResult& sel, const std::string& path) {
    json doc{{"k", sel.k},
             {"p", sel.p},
             {"gamma", sel.gamma},
             {"retained", sel.retained},
             {"retained_ids", sel.retained_ids},
             {"correlations", sel.correlations}};
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

SelectionResult read_selection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json doc = json::parse(in);
    SelectionResult sel;
    sel.k = doc.at("k").get<long>();
    sel.p = doc.at("p").get<long>();
    sel.gamma = doc.at("gamma").get<double>();
    sel.retained = doc.at("retained").get<std::vector<long>>();
    sel.retained_ids = doc.at("retained_ids").get<std::vector<std::string>>();
    sel.correlations = doc.at("correlations").get<std::vector<double>>();
    if (static_cast<long>(sel.retained.size()) != sel.k ||
        static_cast<long>(sel.correlations.size()) != sel.k)
        throw std::runtime_error("inconsistent selection document: " + path);
    return sel;
}

void write_predictions(const std::vector<double>& p1_corrected,
                       const std::vector<double>& p1_uncorrected,
                       const std::vector<std::uint8_t>& labels, bool have_labels,
                       CorrectedMode mode, const std::string& path) {
    const bool has_c = mode != CorrectedMode::off;
    const bool has_u = mode != CorrectedMode::on;
    const std::size_t n = has_c ? p1_corrected.size() : p1_uncorrected.size();
    auto out = open_out(path);
    out << "case";
    if (have_labels) out << "\tlabel";
    if (has_c) out << "\tp1_corrected";
    if (has_u) out << "\tp1_uncorrected";
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << i;
        if (have_labels) out << '\t' << static_cast<int>(labels[i]);
        if (has_c) out << '\t' << p1_corrected[i];
        if (has_u) out << '\t' << p1_uncorrected[i];
        out << '\n';
    }
}

void write_loocv_report(const LoocvResult& res, const ExperimentConfig& cfg,
                        const std::string& path) {
    json cases = json::array();
    for (const auto& c : res.cases) {
        json row{{"index", c.index}, {"label", c.label}, {"skipped", c.skipped}};
        if (!c.skipped) {
            row["gamma"] = c.gamma;
            row["p1_corrected"] = c.p1_corrected;
            row["p1_uncorrected"] = c.p1_uncorrected;
        }
        cases.push_back(row);
    }
    json doc{{"config",
              {{"k", cfg.k},
               {"seed", cfg.seed},
               {"prior", {cfg.prior.f0, cfg.prior.f1, cfg.prior.a, cfg.prior.b}},
               {"alpha_nodes", cfg.quad.K},
               {"theta_nodes", cfg.quad.M},
               {"median_ties", "strict-greater maps ties to 0"},
               {"fold_tie_seeds", "derived from seed and fold index"}}},
             {"cases", cases},
             {"skipped", res.skipped},
             {"metrics_corrected", metrics_json(res.corrected)},
             {"metrics_uncorrected", metrics_json(res.uncorrected)}};
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_study_report(const StudyReport& report, const std::string& path) {
    json entries = json::array();
    for (const auto& e : report.entries) entries.push_back(entry_json(e));
    json doc{{"spec",
              {{"alpha_true", report.spec.alpha_true},
               {"p", report.spec.p},
               {"n_train", report.spec.n_train},
               {"n_test", report.spec.n_test},
               {"balanced", report.spec.balanced},
               {"seed", report.spec.seed}}},
             {"entries", entries},
             {"posterior_all", curve_json(report.posterior_all)}};
    if (report.all_features) doc["all_features"] = entry_json(*report.all_features);
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_posterior_curve(const std::vector<std::pair<double, double>>& curve,
                           const std::string& path) {
    auto out = open_out(path);
    out << "log_alpha\tdensity\n";
    for (const auto& [la, dens] : curve) out << la << '\t' << dens << '\n';
}

std::string metrics_to_json(const MetricsReport& m) { return metrics_json(m).dump(2); }

}  // namespace selnb
