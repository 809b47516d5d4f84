// Seeded random streams. One master seed; every consumer derives an
// independent stream from (master seed, purpose tag, index), so results never
// depend on scheduling order. Normal variates are produced by Box-Muller on
// top of the standardized mt19937_64 sequence, which keeps draws bit-for-bit
// reproducible across platforms and standard libraries.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace qcoh {

using Complex = std::complex<double>;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

// Combine (seed, tag, index) into a well-mixed stream seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
    std::uint64_t h = detail::splitmix64(master);
    h = detail::splitmix64(h ^ detail::fnv1a(tag));
    h = detail::splitmix64(h ^ index);
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log never sees zero.
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Complex cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    // Unbiased integer in [0, n).
    int uniform_int(int n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<int>(x % bound);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline Rng derived_rng(std::uint64_t master, std::string_view tag,
                       std::uint64_t index = 0) {
    return Rng(stream_seed(master, tag, index));
}

} // namespace qcoh
