#include "pwcount/clique_engine.hpp"

#include "pwcount/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace pwcount {

namespace {

// Calls visit(mask) for every subset of the bag that contains the anchor and
// is a clique; bit i of mask stands for bag[i].
template <typename Visit>
void for_each_anchored_clique(const Graph &g, const std::vector<Vertex> &bag, Vertex anchor,
                              Visit &&visit) {
    const auto k = bag.size();
    if (k > 63)
        throw InvalidArgument("bags of more than 63 vertices are not supported");
    std::vector<std::uint64_t> adj(k, 0);
    std::size_t anchor_bit = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (bag[i] == anchor)
            anchor_bit = i;
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && g.adjacent(bag[i], bag[j]))
                adj[i] |= std::uint64_t{1} << j;
    }
    const std::uint64_t anchor_mask = std::uint64_t{1} << anchor_bit;
    const std::uint64_t others = ((std::uint64_t{1} << k) - 1) & ~anchor_mask;
    // Walk every subset of `others`, descending, then add the anchor.
    std::uint64_t sub = others;
    for (;;) {
        const std::uint64_t members = sub | anchor_mask;
        bool clique = true;
        for (std::size_t i = 0; i < k && clique; ++i)
            if ((members >> i) & 1)
                clique = ((adj[i] | (std::uint64_t{1} << i)) & members) == members;
        if (clique)
            visit(members);
        if (sub == 0)
            break;
        sub = (sub - 1) & others;
    }
}

} // namespace

CliqueSampler::CliqueSampler(const Graph &g, const NicePathDecomposition &npd) : g_(g) {
    if (g.directed())
        throw DirectedGraph();
    validate_nice(g, npd);
    const auto n = g.num_vertices();
    insertion_bags_.resize(n);
    insertion_event_.resize(n);
    counts_.per_vertex.assign(n, 0);
    counts_.total = 0;

    std::vector<Vertex> bag;
    for (std::size_t t = 0; t < npd.events.size(); ++t) {
        const auto [kind, v] = npd.events[t];
        if (kind == EventKind::remove) {
            bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
            continue;
        }
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        insertion_bags_[v] = bag;
        insertion_event_[v] = t + 1;
        std::uint64_t found = 0;
        for_each_anchored_clique(g, bag, v, [&](std::uint64_t) { ++found; });
        counts_.per_vertex[v] = static_cast<unsigned long>(found);
        counts_.total += counts_.per_vertex[v];
    }
}

SampledClique CliqueSampler::sample(Rng &rng) const {
    if (g_.num_vertices() == 0)
        throw InvalidArgument("the empty graph has no nonempty clique");
    const Vertex anchor = choose_proportional(rng, counts_.per_vertex);
    const auto pick = uniform_below(rng, counts_.per_vertex[anchor]).get_ui();
    const auto &bag = insertion_bags_[anchor];
    std::uint64_t seen = 0, chosen = 0;
    for_each_anchored_clique(g_, bag, anchor, [&](std::uint64_t members) {
        if (seen++ == pick)
            chosen = members;
    });
    SampledClique result{{}, anchor, insertion_event_[anchor]};
    for (std::size_t i = 0; i < bag.size(); ++i)
        if ((chosen >> i) & 1)
            result.vertices.push_back(bag[i]);
    return result;
}

CliqueCounts count_cliques(const Graph &g, const NicePathDecomposition &npd) {
    return CliqueSampler(g, npd).counts();
}

SampledClique sample_clique(const Graph &g, const NicePathDecomposition &npd, Rng &rng) {
    return CliqueSampler(g, npd).sample(rng);
}

} // namespace pwcount
