#pragma once

#include "pwcount/graph.hpp"
#include "pwcount/path_decomposition.hpp"
#include "pwcount/random.hpp"

#include <vector>

namespace pwcount {

// per_vertex[v] counts the cliques whose last-inserted vertex is v; every
// nonempty clique is counted at exactly one vertex.
struct CliqueCounts {
    std::vector<Count> per_vertex;
    Count total;
};

// Throws DirectedGraph for directed input and InvalidDecomposition when npd
// does not fit g.
CliqueCounts count_cliques(const Graph &g, const NicePathDecomposition &npd);

struct SampledClique {
    std::vector<Vertex> vertices; // sorted
    Vertex anchor;                // last-inserted vertex of the clique
    std::size_t event;            // 1-based index of the anchor's insertion
};

SampledClique sample_clique(const Graph &g, const NicePathDecomposition &npd, Rng &rng);

// Counts once, then draws any number of cliques.
class CliqueSampler {
public:
    CliqueSampler(const Graph &g, const NicePathDecomposition &npd);
    CliqueSampler(const Graph &&, const NicePathDecomposition &) = delete;

    const CliqueCounts &counts() const noexcept { return counts_; }
    SampledClique sample(Rng &rng) const;

private:
    const Graph &g_;
    std::vector<std::vector<Vertex>> insertion_bags_; // bag after each vertex's insertion
    std::vector<std::size_t> insertion_event_;
    CliqueCounts counts_;
};

} // namespace pwcount
