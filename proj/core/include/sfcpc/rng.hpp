#ifndef SFCPC_RNG_HPP
#define SFCPC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace sfcpc {

/// Seeded generator with hand-rolled distributions. std::*_distribution is
/// implementation-defined, so sampling through those would give different
/// streams on different standard libraries; these primitives are pinned.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Unbiased integer in [0, n), n > 0. Lemire's multiply-shift with
    /// rejection.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = -n % n;
        for (;;) {
            const std::uint64_t r = gen_();
            const unsigned __int128 m =
                static_cast<unsigned __int128>(r) * static_cast<unsigned __int128>(n);
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via Box-Muller; the paired value is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

    double gaussian(double sigma) { return sigma * gaussian(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sfcpc

#endif
