#include "selnb/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace selnb {

void BinaryDataset::validate() const {
    if (n <= 0 || p < 0) throw std::invalid_argument("BinaryDataset: empty");
    if (static_cast<long>(labels.size()) != n)
        throw std::invalid_argument("BinaryDataset: row count != label count");
    if (bits.size() != static_cast<std::size_t>(n) * p)
        throw std::invalid_argument("BinaryDataset: matrix size mismatch");
    if (static_cast<long>(feature_ids.size()) != p)
        throw std::invalid_argument("BinaryDataset: feature id count mismatch");
    for (const std::uint8_t b : bits)
        if (b > 1) throw std::invalid_argument("BinaryDataset: entries must be 0/1");
    for (const std::uint8_t y : labels)
        if (y > 1) throw std::invalid_argument("BinaryDataset: labels must be 0/1");
}

void RealValuedDataset::validate() const {
    if (n <= 0 || p < 0) throw std::invalid_argument("RealValuedDataset: empty");
    if (static_cast<long>(labels.size()) != n)
        throw std::invalid_argument("RealValuedDataset: row count != label count");
    if (values.size() != static_cast<std::size_t>(n) * p)
        throw std::invalid_argument("RealValuedDataset: matrix size mismatch");
    if (static_cast<long>(feature_ids.size()) != p)
        throw std::invalid_argument("RealValuedDataset: feature id count mismatch");
    for (const double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("RealValuedDataset: entries must be finite");
}

CountsSummary summarize(const BinaryDataset& ds, const Exec& ex) {
    ds.validate();
    CountsSummary s;
    s.n = ds.n;
    s.feature_ids = ds.feature_ids;
    for (long i = 0; i < ds.n; ++i) (ds.labels[i] ? s.N1 : s.N0) += 1;
    for (int y = 0; y < 2; ++y) {
        s.I[y].assign(ds.p, 0);
        s.O[y].assign(ds.p, 0);
    }
    parallel_for(ex, ds.p, [&](std::int64_t j) {
        long ones[2] = {0, 0};
        for (long i = 0; i < ds.n; ++i) ones[ds.labels[i]] += ds.at(i, j);
        s.I[0][j] = ones[0];
        s.I[1][j] = ones[1];
        s.O[0][j] = s.N0 - ones[0];
        s.O[1][j] = s.N1 - ones[1];
    });
    return s;
}

}  // namespace selnb
