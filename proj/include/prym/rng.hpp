#pragma once

#include <cstdint>
#include <string_view>

namespace prym {

// splitmix64: tiny, portable, deterministic across platforms. Every randomized
// subroutine in the library draws from one of these, seeded explicitly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound); bound > 0. Modulo bias is irrelevant here
    // (bounds are tiny primes), but reject the top sliver anyway.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

// Stable FNV-1a used to derive independent subseeds from (seed, tag).
inline std::uint64_t subseed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h ^ (seed * 0x9e3779b97f4a7c15ULL);
}

} // namespace prym
