#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rlsd/types.hpp"

namespace rlsd {

// Deterministic scalar generator: an mt19937_64 stream (bit-exact per the
// C++ standard) with fixed mappings to doubles, so the same seed yields the
// same instance on every platform. The standard distributions are avoided
// on purpose; their output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller, producing pairs.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Uniform integer in [0, n) without modulo bias.
    std::uint64_t integer(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // k distinct indices from [0, n), by partial Fisher-Yates; sorted output.
    std::vector<Index> sample_indices(Index n, Index k);

    Matrix gaussian_matrix(Index rows, Index cols);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline std::vector<Index> Rng::sample_indices(Index n, Index k) {
    std::vector<Index> pool(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    std::vector<Index> out;
    out.reserve(static_cast<size_t>(k));
    for (Index i = 0; i < k; ++i) {
        const auto j = i + static_cast<Index>(integer(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
        out.push_back(pool[static_cast<size_t>(i)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Matrix Rng::gaussian_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
}

}  // namespace rlsd
