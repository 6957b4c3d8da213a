// Counter-based splittable RNG. All randomness in the library flows from one
// 64-bit seed through named streams, so parallel work reproduces bit-identically
// for any worker count.
#pragma once

#include <cstdint>
#include <string_view>

namespace expanso {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}
} // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(seed) {}

    // Derive an independent stream; order of split() calls does not matter.
    CounterRng split(std::string_view stream) const {
        return CounterRng(detail::splitmix64(key_ ^ detail::fnv1a(stream)));
    }
    CounterRng split(std::uint64_t stream) const {
        return CounterRng(detail::splitmix64(key_ ^ detail::splitmix64(stream)));
    }

    std::uint64_t next_u64() { return detail::splitmix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, n) without modulo bias (Lemire reduction).
    std::uint64_t next_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace expanso
