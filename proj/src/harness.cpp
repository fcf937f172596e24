#include "selnb/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "selnb/rng.hpp"
#include "selnb/selection.hpp"

namespace selnb {

namespace {

constexpr std::uint64_t kFoldTag = 0xf01d0000u;       // per-fold tie-break streams
constexpr std::uint64_t kStudyTag = 0x5e1ec700u;      // per-subset-size tie-break streams
constexpr std::uint64_t kPartitionTag = 0x70617274u;  // feature partition shuffle
constexpr std::uint64_t kStandinTag = 0x57a9d000u;    // stand-in dataset streams

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

void ExperimentConfig::validate() const {
    prior.validate();
    quad.validate();
    if (mode == SelectionMode::top_k && k < 1)
        throw std::invalid_argument("ExperimentConfig: top-k selection needs k >= 1");
    if (mode == SelectionMode::threshold && !(gamma > 0.0))
        throw std::invalid_argument("ExperimentConfig: threshold selection needs gamma > 0");
}

BinaryDataset binarize_by_median(const RealValuedDataset& data, const Exec& ex) {
    data.validate();
    if (data.n < 1) throw std::invalid_argument("binarize_by_median: need at least one case");
    BinaryDataset out;
    out.n = data.n;
    out.p = data.p;
    out.labels = data.labels;
    out.feature_ids = data.feature_ids;
    out.bits.assign(static_cast<std::size_t>(data.n) * data.p, 0);
    parallel_for(ex, data.p, [&](std::int64_t j) {
        std::vector<double> col(data.n);
        for (long i = 0; i < data.n; ++i) col[i] = data.at(i, j);
        std::sort(col.begin(), col.end());
        const long h = data.n / 2;
        const double median =
            (data.n % 2 == 1) ? col[h] : 0.5 * (col[h - 1] + col[h]);
        for (long i = 0; i < data.n; ++i)
            out.at(i, j) = data.at(i, j) > median ? 1 : 0;  // ties map to 0
    });
    out.validate();
    return out;
}

std::vector<BinaryDataset> partition_features(const BinaryDataset& ds, long groups,
                                              std::uint64_t seed) {
    ds.validate();
    if (groups < 1) throw std::invalid_argument("partition_features: groups must be >= 1");
    if (ds.p % groups != 0)
        throw std::invalid_argument("partition_features: p not divisible by groups");
    std::vector<long> perm(ds.p);
    for (long j = 0; j < ds.p; ++j) perm[j] = j;
    auto eng = make_engine(derive_seed(seed, kPartitionTag));
    for (long j = ds.p - 1; j > 0; --j)
        std::swap(perm[j], perm[uniform_below(eng, static_cast<std::uint64_t>(j) + 1)]);
    const long width = ds.p / groups;
    std::vector<BinaryDataset> out(groups);
    for (long g = 0; g < groups; ++g) {
        std::vector<long> cols(perm.begin() + g * width, perm.begin() + (g + 1) * width);
        std::sort(cols.begin(), cols.end());  // original column order within a group
        BinaryDataset& d = out[g];
        d.n = ds.n;
        d.p = width;
        d.labels = ds.labels;
        d.bits.resize(static_cast<std::size_t>(ds.n) * width);
        d.feature_ids.resize(width);
        for (long j = 0; j < width; ++j) {
            d.feature_ids[j] = ds.feature_ids[cols[j]];
            for (long i = 0; i < ds.n; ++i) d.at(i, j) = ds.at(i, cols[j]);
        }
    }
    return out;
}

LoocvResult loocv(const BinaryDataset& ds, const ExperimentConfig& cfg) {
    ds.validate();
    cfg.validate();
    if (ds.n < 2) throw std::invalid_argument("loocv: need at least two cases");
    LoocvResult res;
    res.cases.resize(ds.n);
    // Folds are independent jobs; inner model calls run serially so the
    // per-fold results do not depend on the execution mode.
    parallel_for(cfg.exec, ds.n, [&](std::int64_t i) {
        LoocvCase& c = res.cases[i];
        c.index = i;
        c.label = ds.labels[i];
        BinaryDataset fold;
        fold.n = ds.n - 1;
        fold.p = ds.p;
        fold.feature_ids = ds.feature_ids;
        fold.bits.reserve(static_cast<std::size_t>(fold.n) * ds.p);
        fold.labels.reserve(fold.n);
        for (long r = 0; r < ds.n; ++r) {
            if (r == i) continue;
            fold.labels.push_back(ds.labels[r]);
            fold.bits.insert(fold.bits.end(), ds.bits.begin() + r * ds.p,
                             ds.bits.begin() + (r + 1) * ds.p);
        }
        const long ones = std::count(fold.labels.begin(), fold.labels.end(), 1);
        if (ones == 0 || ones == fold.n) {
            c.skipped = true;  // degenerate fold: one class absent
            return;
        }
        const Exec inner = Exec::serial();
        SelectionResult sel;
        if (cfg.mode == SelectionMode::top_k) {
            const long k = std::min(cfg.k, ds.p);
            sel = select_top_k(fold, k, derive_seed(cfg.seed, kFoldTag + static_cast<std::uint64_t>(i)),
                               inner);
        } else {
            sel = select_by_threshold(fold, cfg.gamma, inner);
        }
        const CountsSummary summary = summarize(fold, inner);
        const AlphaGrid grid = build_alpha_grid(summary, sel, cfg.prior, cfg.quad, inner);
        std::vector<std::uint8_t> bits(sel.k);
        for (long j = 0; j < sel.k; ++j) bits[j] = ds.at(i, sel.retained[j]);
        c.gamma = sel.gamma;
        c.p1_corrected = predict(grid, bits, true).p1;
        c.p1_uncorrected = predict(grid, bits, false).p1;
    });
    std::vector<double> pc, pu;
    std::vector<std::uint8_t> labels;
    for (const auto& c : res.cases) {
        if (c.skipped) {
            ++res.skipped;
            continue;
        }
        pc.push_back(c.p1_corrected);
        pu.push_back(c.p1_uncorrected);
        labels.push_back(static_cast<std::uint8_t>(c.label));
    }
    if (!pc.empty()) {
        res.corrected = compute_metrics(pc, labels);
        res.uncorrected = compute_metrics(pu, labels);
    }
    return res;
}

namespace {

StudyEntry run_study_entry(const BinaryDataset& train, const BinaryDataset& test,
                           const CountsSummary& summary, long k,
                           const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const SelectionResult sel =
        select_top_k(train, k, derive_seed(cfg.seed, kStudyTag + static_cast<std::uint64_t>(k)),
                     cfg.exec);
    const AlphaGrid grid = build_alpha_grid(summary, sel, cfg.prior, cfg.quad, cfg.exec);
    StudyEntry e;
    e.k = sel.k;
    e.gamma = sel.gamma;
    e.wall_ms_setup = ms_since(t0);
    e.p1_corrected.resize(test.n);
    e.p1_uncorrected.resize(test.n);
    std::vector<std::vector<std::uint8_t>> bits(test.n);
    for (long i = 0; i < test.n; ++i) {
        bits[i].resize(sel.k);
        for (long j = 0; j < sel.k; ++j) bits[i][j] = test.at(i, sel.retained[j]);
    }
    const auto tc = std::chrono::steady_clock::now();
    parallel_for(cfg.exec, test.n,
                 [&](std::int64_t i) { e.p1_corrected[i] = predict(grid, bits[i], true).p1; });
    e.wall_ms_corrected = ms_since(tc);
    const auto tu = std::chrono::steady_clock::now();
    parallel_for(cfg.exec, test.n,
                 [&](std::int64_t i) { e.p1_uncorrected[i] = predict(grid, bits[i], false).p1; });
    e.wall_ms_uncorrected = ms_since(tu);
    e.metrics_corrected = compute_metrics(e.p1_corrected, test.labels);
    e.metrics_uncorrected = compute_metrics(e.p1_uncorrected, test.labels);
    e.calibration_corrected = calibration_table(e.p1_corrected, test.labels);
    e.calibration_uncorrected = calibration_table(e.p1_uncorrected, test.labels);
    e.posterior_corrected =
        posterior_alpha_density(summary, sel, cfg.prior, cfg.quad, true, cfg.exec);
    e.posterior_uncorrected =
        posterior_alpha_density(summary, sel, cfg.prior, cfg.quad, false, cfg.exec);
    return e;
}

}  // namespace

StudyReport run_simulation_study(const SyntheticSpec& spec,
                                 const std::vector<long>& subset_sizes,
                                 const ExperimentConfig& cfg, bool include_all_features) {
    spec.validate();
    cfg.validate();
    if (subset_sizes.empty())
        throw std::invalid_argument("run_simulation_study: no subset sizes given");
    for (long k : subset_sizes)
        if (k < 1 || k > spec.p)
            throw std::invalid_argument("run_simulation_study: subset size outside [1, p]");
    const SimulatedData sim = simulate(spec, cfg.exec);
    const CountsSummary summary = summarize(sim.train, cfg.exec);
    StudyReport report;
    report.spec = spec;
    for (long k : subset_sizes)
        report.entries.push_back(run_study_entry(sim.train, sim.test, summary, k, cfg));
    // All-features reference: no omission, so corrected == uncorrected.
    const SelectionResult sel_all = select_top_k(
        sim.train, spec.p, derive_seed(cfg.seed, kStudyTag + static_cast<std::uint64_t>(spec.p)),
        cfg.exec);
    report.posterior_all =
        posterior_alpha_density(summary, sel_all, cfg.prior, cfg.quad, false, cfg.exec);
    if (include_all_features)
        report.all_features = run_study_entry(sim.train, sim.test, summary, spec.p, cfg);
    return report;
}

RealValuedDataset make_standin_dataset(std::uint64_t seed) {
    // 62 cases (22 class 0, 40 class 1), 2000 positive expression-like
    // features; every fortieth feature carries a class shift so median
    // binarization plus top-5 screening finds moderate correlations.
    RealValuedDataset ds;
    ds.n = 62;
    ds.p = 2000;
    ds.labels.assign(ds.n, 1);
    for (long i = 0; i < 22; ++i) ds.labels[i] = 0;
    ds.values.resize(static_cast<std::size_t>(ds.n) * ds.p);
    ds.feature_ids.resize(ds.p);
    for (long j = 0; j < ds.p; ++j) {
        ds.feature_ids[j] = "g" + std::to_string(j);
        auto eng = make_engine(derive_seed(seed, kStandinTag + static_cast<std::uint64_t>(j)));
        const double mu = 4.0 + 4.0 * uniform01(eng);
        double delta = 0.0;
        if (j % 40 == 0) {
            const double sign = uniform01(eng) < 0.5 ? -1.0 : 1.0;
            delta = sign * (0.8 + 0.8 * uniform01(eng));
        }
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (long i = 0; i < ds.n; ++i) {
            const double shift = ds.labels[i] ? delta : 0.0;
            ds.at(i, j) = std::exp(mu + shift + gauss(eng));
        }
    }
    ds.validate();
    return ds;
}

}  // namespace selnb
