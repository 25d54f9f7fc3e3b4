#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nkl {

// Invalid configuration or argument misuse. CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical self-check failed (quadrature identity, eigensolver failure,
// overflow). CLI maps this to exit code 3.
struct NumericalDiagnostic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Worker cap: NKL_THREADS if set, otherwise hardware concurrency.
inline unsigned worker_count() {
    if (const char* s = std::getenv("NKL_THREADS")) {
        long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [0, count). Each item must write only its own slots,
// so results are identical regardless of scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        }));
    }
    for (auto& f : futs) f.get();
}

// Deterministic 64-bit generator (splitmix64), independent of platform RNGs.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
    double sign() { return (next() & 1u) ? 1.0 : -1.0; }
};

// 8- and 16-point Gauss-Legendre nodes/weights on [-1, 1].
struct GLPoint {
    double x, w;
};

inline const std::vector<GLPoint>& gl8() {
    static const std::vector<GLPoint> pts = {
        {-0.9602898564975362316836, 0.1012285362903762591525},
        {-0.7966664774136267395916, 0.2223810344533744705444},
        {-0.5255324099163289858177, 0.3137066458778872873380},
        {-0.1834346424956498049395, 0.3626837833783619829652},
        {0.1834346424956498049395, 0.3626837833783619829652},
        {0.5255324099163289858177, 0.3137066458778872873380},
        {0.7966664774136267395916, 0.2223810344533744705444},
        {0.9602898564975362316836, 0.1012285362903762591525},
    };
    return pts;
}

inline const std::vector<GLPoint>& gl16() {
    static const std::vector<GLPoint> pts = {
        {-0.9894009349916499325962, 0.02715245941175409485178},
        {-0.9445750230732325760780, 0.06225352393864789286284},
        {-0.8656312023878317438805, 0.09515851168249278480993},
        {-0.7554044083550030338951, 0.12462897125553387205250},
        {-0.6178762444026437484467, 0.14959598881657673208150},
        {-0.4580167776572273863424, 0.16915651939500253818930},
        {-0.2816035507792589132305, 0.18260341504492358886680},
        {-0.09501250983763744018532, 0.18945061045506849628540},
        {0.09501250983763744018532, 0.18945061045506849628540},
        {0.2816035507792589132305, 0.18260341504492358886680},
        {0.4580167776572273863424, 0.16915651939500253818930},
        {0.6178762444026437484467, 0.14959598881657673208150},
        {0.7554044083550030338951, 0.12462897125553387205250},
        {0.8656312023878317438805, 0.09515851168249278480993},
        {0.9445750230732325760780, 0.06225352393864789286284},
        {0.9894009349916499325962, 0.02715245941175409485178},
    };
    return pts;
}

// Composite Gauss-Legendre nodes/weights over consecutive [edges[k], edges[k+1]] panels.
inline void composite_gl(const std::vector<double>& edges, const std::vector<GLPoint>& base,
                         std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.clear();
    weights.clear();
    nodes.reserve((edges.size() - 1) * base.size());
    weights.reserve((edges.size() - 1) * base.size());
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double mid = 0.5 * (edges[k] + edges[k + 1]);
        const double rad = 0.5 * (edges[k + 1] - edges[k]);
        for (const auto& p : base) {
            nodes.push_back(mid + rad * p.x);
            weights.push_back(rad * p.w);
        }
    }
}

}  // namespace nkl
