#pragma once

#include "pwcount/graph.hpp"
#include "pwcount/labeling_engine.hpp"
#include "pwcount/path_decomposition.hpp"
#include "pwcount/random.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pwcount {

using Person = std::size_t;
using Preferences = std::vector<std::vector<Person>>;

// n men and n women with complete strict preference lists (best first).
// Objective rankings, when present, list the women (resp. men) best first.
class SMInstance {
public:
    // Throws InvalidArgument unless every list is a permutation of 0..n-1.
    SMInstance(Preferences men, Preferences women,
               std::optional<std::vector<Person>> objective_women = std::nullopt,
               std::optional<std::vector<Person>> objective_men = std::nullopt);

    std::size_t size() const noexcept { return men_.size(); }
    const Preferences &men_prefs() const noexcept { return men_; }
    const Preferences &women_prefs() const noexcept { return women_; }
    const std::optional<std::vector<Person>> &objective_women() const noexcept { return objective_women_; }
    const std::optional<std::vector<Person>> &objective_men() const noexcept { return objective_men_; }

    // Position of w on m's list (0 = favourite), and of m on w's list.
    std::size_t man_rank(Person m, Person w) const { return man_rank_[m][w]; }
    std::size_t woman_rank(Person w, Person m) const { return woman_rank_[w][m]; }

    friend bool operator==(const SMInstance &a, const SMInstance &b) {
        return a.men_ == b.men_ && a.women_ == b.women_ && a.objective_women_ == b.objective_women_ &&
               a.objective_men_ == b.objective_men_;
    }

private:
    Preferences men_, women_;
    std::optional<std::vector<Person>> objective_women_, objective_men_;
    std::vector<std::vector<std::size_t>> man_rank_, woman_rank_;
};

// .sm text: n, then n men's lists and n women's lists (1-indexed, best
// first), optionally `o <women ranking>` and `o <men ranking>`.
SMInstance parse_sm(std::string_view text);
std::string serialize_sm(const SMInstance &inst);

struct Matching {
    std::vector<Person> wife; // wife[m]

    std::vector<Person> husbands() const;
    friend bool operator==(const Matching &, const Matching &) = default;
    friend auto operator<=>(const Matching &, const Matching &) = default;
};

enum class Side { men, women };

// Proposing side gets its optimal stable matching.
Matching gale_shapley(const SMInstance &inst, Side proposing);

// No man and woman both prefer each other to their partners.
bool is_stable(const SMInstance &inst, const Matching &matching);

// Cyclic (man, woman) pairs; eliminating it gives man i the woman of pair i+1.
using Rotation = std::vector<std::pair<Person, Person>>;

struct RotationDigraph {
    std::vector<Rotation> rotations; // in elimination order, a topological order
    std::vector<Edge> edges;         // (predecessor, successor), sorted
    Matching man_optimal;
    Matching woman_optimal;

    Graph graph() const;
};

RotationDigraph build_rotation_digraph(const SMInstance &inst);

// Eliminates the rotations of a predecessor-closed set starting from the
// man-optimal matching. Throws NotADownset otherwise.
Matching downset_to_matching(const RotationDigraph &rd, std::span<const std::size_t> downset);

// Nice decomposition used for downset counting: exact search within the
// budget, greedy layout when the budget runs out.
NicePathDecomposition decompose_for_counting(const Graph &g, const SearchBudget &budget = {2'000'000, {}});

Count count_stable_matchings(const SMInstance &inst);

// Builds G(I) and its downset trace once, then samples repeatedly.
class StableMatchingSampler {
public:
    explicit StableMatchingSampler(const SMInstance &inst);

    const RotationDigraph &digraph() const noexcept { return rd_; }
    const Count &count() const { return sampler_.total(); }
    Matching sample(Rng &rng) const;

private:
    RotationDigraph rd_;
    Graph graph_;
    NicePathDecomposition npd_;
    TraceSampler sampler_;
};

Matching sample_stable_matching(const SMInstance &inst, Rng &rng);

// Smallest k with |rank_p(q) - objective(q)| <= k - 1 for every person p and
// candidate q. Throws MissingObjective without objective rankings.
std::size_t range_of(const SMInstance &inst);

// Random instance whose lists all respect the k-range band around random
// objective rankings (attached to the result). Requires 1 <= k <= n.
SMInstance gen_k_range(std::size_t n, std::size_t k, Rng &rng);

} // namespace pwcount
