#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <random>
#include <span>

namespace pwcount {

using Count = mpz_class;

// The engines draw raw 64-bit words only, never through std:: distributions,
// so a seed reproduces the same samples with any standard library.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection over bitlength(bound - 1) random
// bits taken from the high end of 64-bit engine words. bound must be positive.
template <typename Engine>
Count uniform_below(Engine &engine, const Count &bound);

// Index i with r in [w_0 + ... + w_{i-1}, w_0 + ... + w_i). Requires
// 0 <= r < sum(weights).
std::size_t bucket_of(std::span<const Count> weights, Count r);

// Index i with probability weights[i] / sum(weights), exactly. The weights
// must be nonnegative with a positive sum.
std::size_t choose_proportional(Rng &rng, std::span<const Count> weights);

// Independent seed for the index-th item of a seeded batch (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

[[noreturn]] void throw_nonpositive_bound();

template <typename Engine>
Count uniform_below(Engine &engine, const Count &bound) {
    static_assert(sizeof(typename Engine::result_type) == 8, "needs 64-bit words");
    if (sgn(bound) <= 0)
        throw_nonpositive_bound();
    if (bound == 1)
        return 0;
    const Count top = bound - 1;
    if (mpz_fits_ulong_p(top.get_mpz_t()) && sizeof(unsigned long) == 8) {
        const std::uint64_t limit = top.get_ui();
        const int shift = std::countl_zero(limit);
        for (;;) {
            const std::uint64_t word = static_cast<std::uint64_t>(engine()) >> shift;
            if (word <= limit)
                return Count(static_cast<unsigned long>(word));
        }
    }
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t spare = words * 64 - bits;
    Count draw;
    for (;;) {
        draw = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t word = engine();
            if (i == 0 && spare > 0)
                word >>= spare;
            draw <<= 64;
            // mpz_class has no uint64 constructor on every platform; go via two halves.
            draw += Count(static_cast<unsigned long>(word >> 32)) << 32;
            draw += static_cast<unsigned long>(word & 0xffffffffu);
        }
        if (draw < bound)
            return draw;
    }
}

} // namespace pwcount
