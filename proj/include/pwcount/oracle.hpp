#pragma once

// Brute-force reference implementations for tests and debugging. Nothing in
// the engines calls into this header.

#include "pwcount/graph.hpp"
#include "pwcount/labeling_problem.hpp"
#include "pwcount/stable_matching.hpp"

#include <chrono>
#include <cstdint>
#include <vector>

namespace pwcount::oracle {

struct EnumerationBudget {
    std::uint64_t max_items = 50'000'000;
    std::chrono::milliseconds max_time{60'000};
};

// All c^n labelings, filtered by check_labeling.
std::vector<Labeling> enumerate_valid_labelings(const Graph &g, const LabelingProblem &prob,
                                                const EnumerationBudget &budget = {});

// All nonempty cliques as sorted vertex lists.
std::vector<std::vector<Vertex>> enumerate_cliques(const Graph &g, const EnumerationBudget &budget = {});

// All perfect matchings without a blocking pair, in lexicographic order.
std::vector<Matching> enumerate_stable_matchings(const SMInstance &inst,
                                                 const EnumerationBudget &budget = {});

// Minimum vertex separation over all layouts, by dynamic programming over
// vertex subsets.
int exact_pathwidth(const Graph &g, const EnumerationBudget &budget = {});

// Directed cycle search through the transitive closure.
bool has_directed_cycle(const Graph &g);

// reach[u][v]: a directed path of length >= 1 leads from u to v.
std::vector<std::vector<bool>> reachability(const Graph &g);

} // namespace pwcount::oracle
