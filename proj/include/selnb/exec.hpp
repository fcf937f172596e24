#pragma once
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace selnb {

// Execution policy for data-parallel loops. Every parallel loop in this
// library assigns each index to exactly one output slot, so the serial and
// OpenMP policies produce bit-identical results (verified by tests).
struct Exec {
    enum class Mode { serial, openmp };
    Mode mode = Mode::openmp;
    int threads = 0;  // 0 = library default

    static Exec serial() { return Exec{Mode::serial, 1}; }
    static Exec parallel(int threads = 0) { return Exec{Mode::openmp, threads}; }
};

template <typename F>
void parallel_for(const Exec& ex, std::int64_t count, F&& body) {
#ifdef _OPENMP
    if (ex.mode == Exec::Mode::openmp) {
        if (ex.threads > 0) {
#pragma omp parallel for schedule(static) num_threads(ex.threads)
            for (std::int64_t i = 0; i < count; ++i) body(i);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < count; ++i) body(i);
        }
        return;
    }
#endif
    for (std::int64_t i = 0; i < count; ++i) body(i);
}

}  // namespace selnb
