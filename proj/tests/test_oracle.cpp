#include "doctest.h"

#include "pwcount/errors.hpp"
#include "pwcount/oracle.hpp"
#include "support.hpp"

#include <set>

using namespace pwcount;

TEST_SUITE("oracle") {

TEST_CASE("labelings") {
    auto p3 = oracle::enumerate_valid_labelings(path_graph(3), independent_set());
    std::set<Labeling> got(p3.begin(), p3.end());
    CHECK(got == std::set<Labeling>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}});
    CHECK(oracle::enumerate_valid_labelings(Graph(2, {{0, 1}}, false), coloring(1)).empty());
    CHECK(oracle::enumerate_valid_labelings(edgeless_graph(3), coloring(2)).size() == 8);
    CHECK_THROWS_AS(oracle::enumerate_valid_labelings(path_graph(30), coloring(3)), BudgetExceeded);
}

TEST_CASE("cliques") {
    CHECK(oracle::enumerate_cliques(complete_graph(3)).size() == 7);
    auto p3 = oracle::enumerate_cliques(path_graph(3));
    std::set<std::vector<Vertex>> got(p3.begin(), p3.end());
    CHECK(got == std::set<std::vector<Vertex>>{{0}, {1}, {2}, {0, 1}, {1, 2}});
    CHECK(oracle::enumerate_cliques(edgeless_graph(1)) == std::vector<std::vector<Vertex>>{{0}});
    CHECK_THROWS_AS(oracle::enumerate_cliques(path_graph(30), {1000, std::chrono::milliseconds(1000)}),
                    BudgetExceeded);
}

TEST_CASE("stable matchings") {
    CHECK(oracle::enumerate_stable_matchings(testing::mutual_first_choice(3)).size() == 1);
    CHECK(oracle::enumerate_stable_matchings(testing::two_matching_instance()).size() == 2);
    Rng rng(4);
    CHECK_FALSE(oracle::enumerate_stable_matchings(testing::random_sm_instance(6, rng)).empty());
    CHECK_THROWS_AS(oracle::enumerate_stable_matchings(testing::random_sm_instance(6, rng), {100, {}}),
                    BudgetExceeded);
}

TEST_CASE("pathwidth") {
    CHECK(oracle::exact_pathwidth(path_graph(5)) == 1);
    CHECK(oracle::exact_pathwidth(complete_graph(4)) == 3);
    CHECK(oracle::exact_pathwidth(edgeless_graph(4)) == 0);
    CHECK(oracle::exact_pathwidth(Graph(0, {}, false)) == 0);
    // a width-1 decomposition of path(5) exists
    CHECK(validate(path_graph(5), PathDecomposition{{{0, 1}, {1, 2}, {2, 3}, {3, 4}}}).ok());
}

TEST_CASE("cycles") {
    CHECK_FALSE(oracle::has_directed_cycle(chain_dag(4)));
    CHECK(oracle::has_directed_cycle(Graph(2, {{0, 1}, {1, 0}}, true)));
    auto reach = oracle::reachability(chain_dag(3));
    CHECK(reach[0][2]);
    CHECK_FALSE(reach[2][0]);
}

}
