#include "doctest.h"

#include "pwcount/clique_engine.hpp"
#include "pwcount/errors.hpp"
#include "pwcount/oracle.hpp"
#include "support.hpp"

#include <algorithm>
#include <map>

using namespace pwcount;

namespace {

NicePathDecomposition nice_for(const Graph &g) { return to_nice(g, greedy_decomposition(g)); }

unsigned long oracle_cliques(const Graph &g) { return oracle::enumerate_cliques(g).size(); }

} // namespace

TEST_SUITE("clique_engine") {

TEST_CASE("small totals") {
    CHECK(oracle_cliques(complete_graph(3)) == 7);
    CHECK(oracle_cliques(path_graph(3)) == 5);
    CHECK(oracle_cliques(edgeless_graph(1)) == 1);
    CHECK(count_cliques(complete_graph(3), nice_for(complete_graph(3))).total == 7);
    CHECK(count_cliques(path_graph(3), nice_for(path_graph(3))).total == 5);
    CHECK(count_cliques(edgeless_graph(1), nice_for(edgeless_graph(1))).total == 1);

    auto petersen = testing::petersen_graph();
    CHECK(oracle_cliques(petersen) == 25);
    CHECK(count_cliques(petersen, nice_for(petersen)).total == 25);
}

TEST_CASE("per-vertex counts") {
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testing::random_graph(1 + rng() % 8, 0.5, rng);
        auto counts = count_cliques(g, nice_for(g));
        Count sum = 0;
        for (const auto &c : counts.per_vertex) {
            CHECK(c >= 1);
            sum += c;
        }
        CHECK(sum == counts.total);
    }
}

TEST_CASE("errors") {
    auto dag = chain_dag(3);
    NicePathDecomposition npd = to_nice(path_graph(3), greedy_decomposition(path_graph(3)));
    CHECK_THROWS_AS(count_cliques(dag, npd), DirectedGraph);
    CHECK_THROWS_AS(count_cliques(path_graph(4), npd), InvalidDecomposition);
    Graph empty(0, {}, false);
    NicePathDecomposition none;
    CHECK(count_cliques(empty, none).total == 0);
    Rng rng(2);
    CHECK_THROWS_AS(sample_clique(empty, none, rng), InvalidArgument);
}

TEST_CASE("totals match the oracle") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto &g : testing::all_graphs(n))
            CHECK(count_cliques(g, nice_for(g)).total == oracle_cliques(g));
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = testing::random_graph(6 + trial % 3, 0.2 + 0.7 * testing::unit(rng), rng);
        auto layout = testing::shuffled(g.num_vertices(), rng);
        auto any = to_nice(g, layout_to_decomposition(g, layout));
        CHECK(count_cliques(g, any).total == oracle_cliques(g));
        CHECK(count_cliques(g, nice_for(g)).total == oracle_cliques(g));
    }
}

TEST_CASE("samples are cliques inside their anchor bag") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testing::random_graph(1 + rng() % 8, 0.6, rng);
        auto npd = nice_for(g);
        auto bags = npd.bags();
        CliqueSampler sampler(g, npd);
        for (int i = 0; i < 20; ++i) {
            auto s = sampler.sample(rng);
            REQUIRE_FALSE(s.vertices.empty());
            CHECK(std::is_sorted(s.vertices.begin(), s.vertices.end()));
            for (std::size_t a = 0; a < s.vertices.size(); ++a)
                for (std::size_t b = a + 1; b < s.vertices.size(); ++b)
                    CHECK(g.adjacent(s.vertices[a], s.vertices[b]));
            CHECK(std::binary_search(s.vertices.begin(), s.vertices.end(), s.anchor));
            REQUIRE(s.event >= 1);
            REQUIRE(s.event < bags.size());
            CHECK(npd.events[s.event - 1] == Event{EventKind::insert, s.anchor});
            const auto &bag = bags[s.event];
            CHECK(std::includes(bag.begin(), bag.end(), s.vertices.begin(), s.vertices.end()));
        }
    }
}

TEST_CASE("sampling is uniform and reproducible") {
    auto single = edgeless_graph(1);
    Rng rng(5);
    CHECK(sample_clique(single, nice_for(single), rng).vertices == std::vector<Vertex>{0});

    auto k3 = complete_graph(3);
    auto npd = nice_for(k3);
    CliqueSampler sampler(k3, npd);
    std::map<std::vector<Vertex>, int> freq;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i)
        ++freq[sampler.sample(rng).vertices];
    CHECK(freq.size() == 7);
    for (auto [clique, count] : freq) {
        const double f = static_cast<double>(count) / samples;
        CHECK(f >= 0.133);
        CHECK(f <= 0.153);
    }

    Rng a(99), b(99);
    auto g = testing::petersen_graph();
    auto gnpd = nice_for(g);
    for (int i = 0; i < 10; ++i)
        CHECK(sample_clique(g, gnpd, a).vertices == sample_clique(g, gnpd, b).vertices);
}

}
