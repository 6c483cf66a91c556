#pragma once

// Instance generators shared by the unit and acceptance suites.

#include "pwcount/graph.hpp"
#include "pwcount/random.hpp"
#include "pwcount/stable_matching.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace pwcount::testing {

// Uniform double in [0,1) from one engine word.
inline double unit(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Graph random_graph(std::size_t n, double density, Rng &rng) {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (unit(rng) < density)
                edges.emplace_back(a, b);
    return Graph(n, std::move(edges), false);
}

inline std::vector<Vertex> shuffled(std::size_t n, Rng &rng) {
    std::vector<Vertex> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng() % i]);
    return perm;
}

// Orients each edge along a random vertex order, so the result is acyclic.
inline Graph random_orientation(const Graph &g, Rng &rng) {
    const auto order = shuffled(g.num_vertices(), rng);
    std::vector<std::size_t> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[order[i]] = i;
    std::vector<Edge> edges;
    for (auto [a, b] : g.edges())
        edges.push_back(pos[a] < pos[b] ? Edge{a, b} : Edge{b, a});
    return Graph(g.num_vertices(), std::move(edges), true);
}

inline Graph random_dag(std::size_t n, double density, Rng &rng) {
    return random_orientation(random_graph(n, density, rng), rng);
}

// Arbitrary digraph without self-loops (may contain cycles).
inline Graph random_digraph(std::size_t n, double density, Rng &rng) {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            if (a != b && unit(rng) < density)
                edges.emplace_back(a, b);
    return Graph(n, std::move(edges), true);
}

// Every labelled simple graph on n vertices (2^(n choose 2) of them).
inline std::vector<Graph> all_graphs(std::size_t n) {
    std::vector<Edge> slots;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            slots.emplace_back(a, b);
    std::vector<Graph> graphs;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if ((mask >> i) & 1)
                edges.push_back(slots[i]);
        graphs.emplace_back(n, std::move(edges), false);
    }
    return graphs;
}

// Same edges, oriented from the smaller to the larger id.
inline Graph forward_orientation(const Graph &g) { return Graph(g.num_vertices(), g.edges(), true); }

inline Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        edges.emplace_back(i, 5 + i);               // spokes
    }
    return Graph(10, std::move(edges), false);
}

inline SMInstance random_sm_instance(std::size_t n, Rng &rng) {
    Preferences men(n), women(n);
    for (auto &list : men)
        list = shuffled(n, rng);
    for (auto &list : women)
        list = shuffled(n, rng);
    return SMInstance(std::move(men), std::move(women));
}

// m1: w1 w2, m2: w2 w1, w1: m2 m1, w2: m1 m2 -- two stable matchings.
inline SMInstance two_matching_instance() { return SMInstance({{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}); }

// Man i and woman i rank each other first.
inline SMInstance mutual_first_choice(std::size_t n) {
    Preferences men(n), women(n);
    for (Person p = 0; p < n; ++p) {
        for (Person q = 0; q < n; ++q) {
            men[p].push_back((p + q) % n);
            women[p].push_back((p + q) % n);
        }
    }
    return SMInstance(std::move(men), std::move(women));
}

} // namespace pwcount::testing
