#pragma once

#include <cstdint>
#include <vector>

namespace bslab {

// Deterministic splitmix64 stream. All randomness in the project flows
// through this generator so that runs are reproducible across platforms
// and thread counts (std::uniform_* distributions are not portable).
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) {
        // rejection sampling to stay unbiased
        uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(below(static_cast<uint64_t>(i) + 1));
            std::swap(p[i], p[j]);
        }
        return p;
    }

private:
    uint64_t state_;
};

// Per-task seed derivation: seed xor task-index pushed through splitmix.
inline uint64_t derive_seed(uint64_t seed, uint64_t task_index) {
    SplitMix64 g(seed ^ (task_index * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL));
    return g.next();
}

} // namespace bslab
