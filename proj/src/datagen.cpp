#include "selnb/datagen.hpp"

#include <stdexcept>
#include <string>

#include "selnb/rng.hpp"

namespace selnb {

void SyntheticSpec::validate() const {
    if (!(alpha_true > 0.0))
        throw std::invalid_argument("SyntheticSpec: alpha_true must be > 0");
    if (p < 1) throw std::invalid_argument("SyntheticSpec: p must be >= 1");
    if (n_train < 2) throw std::invalid_argument("SyntheticSpec: n_train must be >= 2");
    if (n_test < 0) throw std::invalid_argument("SyntheticSpec: n_test must be >= 0");
    if (balanced && (n_train % 2 != 0 || n_test % 2 != 0))
        throw std::invalid_argument("SyntheticSpec: balanced requires even case counts");
}

namespace {

constexpr std::uint64_t kLabelsTag = 0x6c61626573u;   // labels stream
constexpr std::uint64_t kFeatureTag = 0x66656174u;    // feature stream base

std::vector<std::uint8_t> draw_labels(const SyntheticSpec& spec, long n, bool is_test) {
    std::vector<std::uint8_t> y(n, 0);
    if (spec.balanced) {
        for (long i = n / 2; i < n; ++i) y[i] = 1;
    } else {
        auto eng = make_engine(derive_seed(spec.seed, kLabelsTag));
        const double psi = uniform01(eng);
        // The train labels come first on the stream so the test block cannot
        // perturb them.
        if (is_test)
            for (long i = 0; i < spec.n_train; ++i) (void)uniform01(eng);
        for (long i = 0; i < n; ++i) y[i] = uniform01(eng) < psi ? 1 : 0;
    }
    return y;
}

}  // namespace

SimulatedData simulate(const SyntheticSpec& spec, const Exec& ex) {
    spec.validate();
    SimulatedData out;
    out.train.n = spec.n_train;
    out.train.p = spec.p;
    out.train.labels = draw_labels(spec, spec.n_train, false);
    out.train.bits.assign(static_cast<std::size_t>(spec.n_train) * spec.p, 0);
    out.test.n = spec.n_test;
    out.test.p = spec.p;
    out.test.labels = draw_labels(spec, spec.n_test, true);
    out.test.bits.assign(static_cast<std::size_t>(spec.n_test) * spec.p, 0);
    out.train.feature_ids.resize(spec.p);
    for (long j = 0; j < spec.p; ++j) out.train.feature_ids[j] = "f" + std::to_string(j);
    out.test.feature_ids = out.train.feature_ids;
    out.theta.resize(spec.p);
    out.phi0.resize(spec.p);
    out.phi1.resize(spec.p);

    // One derived stream per feature: theta, phi0, phi1, then the train and
    // test column bits. Distinct features write disjoint slots, so parallel
    // execution is bit-identical to serial.
    parallel_for(ex, spec.p, [&](std::int64_t j) {
        auto eng = make_engine(derive_seed(spec.seed, kFeatureTag + static_cast<std::uint64_t>(j)));
        const double theta = uniform01(eng);
        const double a = spec.alpha_true * theta;
        const double b = spec.alpha_true * (1.0 - theta);
        const double phi0 = beta_draw(eng, a, b);
        const double phi1 = beta_draw(eng, a, b);
        out.theta[j] = theta;
        out.phi0[j] = phi0;
        out.phi1[j] = phi1;
        for (long i = 0; i < spec.n_train; ++i) {
            const double phi = out.train.labels[i] ? phi1 : phi0;
            out.train.bits[static_cast<std::size_t>(i) * spec.p + j] =
                uniform01(eng) < phi ? 1 : 0;
        }
        for (long i = 0; i < spec.n_test; ++i) {
            const double phi = out.test.labels[i] ? phi1 : phi0;
            out.test.bits[static_cast<std::size_t>(i) * spec.p + j] =
                uniform01(eng) < phi ? 1 : 0;
        }
    });
    out.train.validate();
    // n_test == 0 is a legal request (train-only studies); the empty test
    // block is consistent by construction, so only validate a non-empty one.
    if (out.test.n > 0) out.test.validate();
    return out;
}

}  // namespace selnb
