#include "selnb/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "selnb/numerics.hpp"
#include "selnb/rng.hpp"

namespace selnb {

std::vector<double> abs_correlations(const BinaryDataset& ds, const Exec& ex) {
    const CountsSummary s = summarize(ds, ex);
    std::vector<double> cors(ds.p);
    parallel_for(ex, ds.p, [&](std::int64_t j) {
        cors[j] = std::fabs(cor_counts_mm(s.I[0][j], s.I[1][j], s.N0, s.N1));
    });
    return cors;
}

namespace {

SelectionResult finish(const BinaryDataset& ds, std::vector<long> retained,
                       const std::vector<double>& cors, double gamma) {
    // Deterministic report order: descending |COR|, then original identifier.
    std::sort(retained.begin(), retained.end(), [&](long a, long b) {
        if (cors[a] != cors[b]) return cors[a] > cors[b];
        return a < b;
    });
    SelectionResult sel;
    sel.retained = retained;
    sel.k = static_cast<long>(retained.size());
    sel.p = ds.p;
    sel.gamma = gamma;
    sel.retained_ids.reserve(retained.size());
    sel.correlations.reserve(retained.size());
    for (const long j : retained) {
        sel.retained_ids.push_back(ds.feature_ids[j]);
        sel.correlations.push_back(cors[j]);
    }
    return sel;
}

}  // namespace

SelectionResult select_by_threshold(const BinaryDataset& ds, double gamma, const Exec& ex) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("select_by_threshold: gamma must be positive");
    const std::vector<double> cors = abs_correlations(ds, ex);
    std::vector<long> retained;
    for (long j = 0; j < ds.p; ++j)
        if (cors[j] > gamma) retained.push_back(j);
    return finish(ds, std::move(retained), cors, gamma);
}

SelectionResult select_top_k(const BinaryDataset& ds, long k, std::uint64_t seed,
                             const Exec& ex) {
    if (k < 1 || k > ds.p)
        throw std::invalid_argument("select_top_k: k must be in [1, p]");
    const std::vector<double> cors = abs_correlations(ds, ex);
    // Rank by descending |COR| with seeded random tie-break keys.
    std::vector<std::uint64_t> tie_key(ds.p);
    std::mt19937_64 eng = make_engine(derive_seed(seed, 0x7165u));
    for (long j = 0; j < ds.p; ++j) tie_key[j] = eng();
    std::vector<long> order(ds.p);
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        if (cors[a] != cors[b]) return cors[a] > cors[b];
        if (tie_key[a] != tie_key[b]) return tie_key[a] < tie_key[b];
        return a < b;
    });
    std::vector<long> retained(order.begin(), order.begin() + k);
    const double gamma = cors[order[k - 1]];
    return finish(ds, std::move(retained), cors, gamma);
}

CountsSummary restrict_to_selection(const CountsSummary& s, const SelectionResult& sel) {
    CountsSummary r;
    r.n = s.n;
    r.N0 = s.N0;
    r.N1 = s.N1;
    for (int y = 0; y < 2; ++y) {
        r.I[y].reserve(sel.retained.size());
        r.O[y].reserve(sel.retained.size());
    }
    r.feature_ids.reserve(sel.retained.size());
    for (const long j : sel.retained) {
        if (j < 0 || j >= s.p())
            throw std::invalid_argument("restrict_to_selection: selection inconsistent");
        for (int y = 0; y < 2; ++y) {
            r.I[y].push_back(s.I[y][j]);
            r.O[y].push_back(s.O[y][j]);
        }
        r.feature_ids.push_back(s.feature_ids[j]);
    }
    return r;
}

}  // namespace selnb
