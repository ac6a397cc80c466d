#ifndef MOWST_RNG_HPP
#define MOWST_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace mowst {

/// Seedable random generator used everywhere in the library.
///
/// The engine is std::mt19937_64 (its output sequence is pinned by the C++
/// standard), and all draws below are implemented in this header rather than
/// with std::*_distribution, whose output is implementation-defined. Results
/// are therefore reproducible across platforms and standard libraries.
///
/// Stream splitting: independent operators get independent streams derived
/// from one experiment seed via Rng::stream(seed, id). The optimizers use
///   0 = population sampling, 1 = parent selection, 2 = crossover,
///   3 = mutation, 4 = miscellaneous engine draws.
class Rng {
public:
    enum Stream : std::uint64_t {
        kSampling = 0,
        kSelection = 1,
        kCrossover = 2,
        kMutation = 3,
        kMisc = 4,
    };

    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(splitmix64(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    /// Uniform integer in [0, n). Rejection sampling, unbiased.
    std::uint64_t index(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    long long int_in(long long lo, long long hi) { // inclusive bounds
        return lo + static_cast<long long>(index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin(double p) { return real01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Two distinct indices in [0, n), n >= 2; order matters.
    std::pair<std::size_t, std::size_t> two_distinct(std::size_t n) {
        std::size_t a = static_cast<std::size_t>(index(n));
        std::size_t b = static_cast<std::size_t>(index(n - 1));
        if (b >= a) ++b;
        return {a, b};
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace mowst

#endif
