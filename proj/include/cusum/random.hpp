#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace cusum {

// splitmix64 finalizer. Used to derive independent stream seeds from a
// master seed and a stream index.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seedable generator whose output is identical across standard libraries.
///
/// The engine is std::mt19937_64, which the standard fully specifies. The
/// std::*_distribution adaptors are not, so every variate is derived here:
///   uniform     top 53 bits of one engine draw, scaled to [0, 1)
///   normal      Marsaglia polar method; the second variate of each
///               accepted pair is cached and returned by the next call
///   exponential inversion, -mean * log1p(-u)
///   geometric   inversion on {1, 2, ...}
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Index in [0, size).
    std::size_t index(std::size_t size) {
        auto i = static_cast<std::size_t>(uniform() * static_cast<double>(size));
        return i < size ? i : size - 1;
    }

    bool bernoulli(double p) { return uniform() < p; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        double v = 0.0;
        double s = 0.0;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    // Trials up to and including the first success, success probability p in (0, 1].
    std::uint64_t geometric(double p) {
        if (p >= 1.0) {
            return 1;
        }
        const double u = 1.0 - uniform(); // (0, 1]
        return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace cusum
