#include "pwcount/random.hpp"

#include "pwcount/errors.hpp"

namespace pwcount {

void throw_nonpositive_bound() { throw InvalidArgument("uniform_below needs a positive bound"); }

std::size_t bucket_of(std::span<const Count> weights, Count r) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (r < weights[i])
            return i;
        r -= weights[i];
    }
    throw InvalidArgument("bucket_of: value beyond the total weight");
}

std::size_t choose_proportional(Rng &rng, std::span<const Count> weights) {
    Count total = 0;
    for (const auto &w : weights) {
        if (sgn(w) < 0)
            throw InvalidArgument("negative weight");
        total += w;
    }
    return bucket_of(weights, uniform_below(rng, total));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace pwcount
