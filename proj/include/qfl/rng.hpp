#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace qfl {

/// splitmix64 finalizer: bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic 64-bit generator (splitmix64). All randomness in the project
/// goes through this so runs reproduce bit-for-bit regardless of platform,
/// standard library, or client scheduling order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return mix64(state_ += 0x9e3779b97f4a7c15ull); }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Unbiased uniform integer in [0, n), n > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    /// Fisher-Yates shuffle with this generator.
    template <class T> void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[next_below(i)]);
    }

  private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and stream tags
/// (round index, client id, ...). Streams for different tags are decorrelated.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(base + 0x9e3779b97f4a7c15ull);
    for (std::uint64_t t : tags)
        s = mix64(s ^ mix64(t + 0x9e3779b97f4a7c15ull));
    return s;
}

} // namespace qfl
