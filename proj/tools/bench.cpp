// Micro-benchmarks: serial vs OpenMP wall time of the data-parallel kernels,
// and the omitted-count independence of the adjustment factor.
#include <chrono>
#include <cstdio>
#include <vector>

#include "selnb/adjustment.hpp"
#include "selnb/datagen.hpp"
#include "selnb/harness.hpp"
#include "selnb/model.hpp"
#include "selnb/selection.hpp"

using namespace selnb;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.2f ms %10.2f ms   x%.2f\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
    SyntheticSpec spec;
    spec.p = 4000;
    spec.n_train = 200;
    spec.n_test = 200;
    spec.seed = 17;
    const Exec ser = Exec::serial();
    const Exec par = Exec::parallel(0);

    std::printf("%-28s %13s %13s   %s\n", "kernel", "serial", "parallel", "speedup");

    SimulatedData sim_s = simulate(spec, ser);
    row("simulate (200x4000)", time_ms([&] { sim_s = simulate(spec, ser); }),
        time_ms([&] { (void)simulate(spec, par); }));

    CountsSummary summary = summarize(sim_s.train, ser);
    row("summarize", time_ms([&] { summary = summarize(sim_s.train, ser); }),
        time_ms([&] { (void)summarize(sim_s.train, par); }));

    row("abs_correlations", time_ms([&] { (void)abs_correlations(sim_s.train, ser); }),
        time_ms([&] { (void)abs_correlations(sim_s.train, par); }));

    const SelectionResult sel = select_top_k(sim_s.train, 50, 1, ser);
    const PriorConfig prior;
    const QuadratureSpec quad;
    AlphaGrid grid;
    row("build_alpha_grid (k=50)",
        time_ms([&] { grid = build_alpha_grid(summary, sel, prior, quad, ser); }, 2),
        time_ms([&] { (void)build_alpha_grid(summary, sel, prior, quad, par); }, 2));

    std::vector<std::vector<std::uint8_t>> bits(sim_s.test.n);
    for (long i = 0; i < sim_s.test.n; ++i) {
        bits[i].resize(sel.k);
        for (long j = 0; j < sel.k; ++j) bits[i][j] = sim_s.test.at(i, sel.retained[j]);
    }
    std::vector<double> p1(sim_s.test.n);
    row("predict (200 cases)",
        time_ms([&] {
            parallel_for(ser, sim_s.test.n,
                         [&](std::int64_t i) { p1[i] = predict(grid, bits[i], true).p1; });
        }),
        time_ms([&] {
            parallel_for(par, sim_s.test.n,
                         [&](std::int64_t i) { p1[i] = predict(grid, bits[i], true).p1; });
        }));

    // Omitted-count independence: the adjustment factor's cost must not grow
    // with the number of omitted features.
    const LatticeFrontier fr = build_frontier(200, 0.5, 0.2);
    const std::vector<double> nodes = inverse_gamma_quantile_nodes(prior.a, prior.b, quad.K);
    const double t_small = time_ms([&] {
        for (double a : nodes) (void)adjustment_log_factor(fr, a, 10, quad);
    }, 5);
    const double t_large = time_ms([&] {
        for (double a : nodes) (void)adjustment_log_factor(fr, a, 10000, quad);
    }, 5);
    std::printf("\nadjustment_log_factor over %d alpha nodes (n=200, gamma=0.2):\n", quad.K);
    std::printf("  omitted=10     %10.3f ms\n", t_small);
    std::printf("  omitted=10000  %10.3f ms   ratio %.3f\n", t_large, t_large / t_small);
    return 0;
}
