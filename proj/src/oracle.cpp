#include "pwcount/oracle.hpp"

#include "pwcount/errors.hpp"

#include <algorithm>
#include <numeric>

namespace pwcount::oracle {

namespace {

class Meter {
public:
    explicit Meter(const EnumerationBudget &budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void require_items(long double items) const {
        if (items > static_cast<long double>(budget_.max_items))
            throw BudgetExceeded("enumeration of " + std::to_string(static_cast<double>(items)) +
                                 " items exceeds the budget of " + std::to_string(budget_.max_items));
    }

    void tick() {
        if ((++ticks_ & 4095) == 0 && std::chrono::steady_clock::now() - start_ > budget_.max_time)
            throw BudgetExceeded("enumeration exceeded " + std::to_string(budget_.max_time.count()) + " ms");
    }

private:
    const EnumerationBudget &budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t ticks_ = 0;
};

} // namespace

std::vector<Labeling> enumerate_valid_labelings(const Graph &g, const LabelingProblem &prob,
                                                const EnumerationBudget &budget) {
    Meter meter(budget);
    const auto n = g.num_vertices();
    const Label c = prob.alphabet_size();
    long double total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= c;
    meter.require_items(total);

    std::vector<Labeling> valid;
    Labeling labeling(n, 0);
    for (;;) {
        meter.tick();
        if (check_labeling(g, prob, labeling))
            valid.push_back(labeling);
        // Odometer increment, vertex 0 fastest.
        std::size_t v = 0;
        while (v < n && ++labeling[v] == c)
            labeling[v++] = 0;
        if (v == n)
            break;
    }
    return valid;
}

std::vector<std::vector<Vertex>> enumerate_cliques(const Graph &g, const EnumerationBudget &budget) {
    Meter meter(budget);
    const auto n = g.num_vertices();
    if (n >= 63)
        throw BudgetExceeded("too many vertices for subset enumeration");
    meter.require_items(static_cast<long double>(std::uint64_t{1} << n));

    std::vector<std::vector<Vertex>> cliques;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        meter.tick();
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n; ++v)
            if ((mask >> v) & 1)
                members.push_back(v);
        bool clique = true;
        for (std::size_t i = 0; i < members.size() && clique; ++i)
            for (std::size_t j = i + 1; j < members.size() && clique; ++j)
                clique = g.adjacent(members[i], members[j]);
        if (clique)
            cliques.push_back(std::move(members));
    }
    return cliques;
}

std::vector<Matching> enumerate_stable_matchings(const SMInstance &inst, const EnumerationBudget &budget) {
    Meter meter(budget);
    const auto n = inst.size();
    long double perms = 1;
    for (std::size_t i = 2; i <= n; ++i)
        perms *= static_cast<long double>(i);
    meter.require_items(perms);

    std::vector<Person> wife(n);
    std::iota(wife.begin(), wife.end(), Person{0});
    std::vector<Matching> stable;
    do {
        meter.tick();
        std::vector<Person> husband(n);
        for (Person m = 0; m < n; ++m)
            husband[wife[m]] = m;
        bool blocked = false;
        for (Person m = 0; m < n && !blocked; ++m)
            for (Person w = 0; w < n && !blocked; ++w)
                blocked = w != wife[m] && inst.man_rank(m, w) < inst.man_rank(m, wife[m]) &&
                          inst.woman_rank(w, m) < inst.woman_rank(w, husband[w]);
        if (!blocked)
            stable.push_back(Matching{wife});
    } while (std::next_permutation(wife.begin(), wife.end()));
    return stable;
}

int exact_pathwidth(const Graph &g, const EnumerationBudget &budget) {
    Meter meter(budget);
    const auto n = g.num_vertices();
    if (n >= 40)
        throw BudgetExceeded("too many vertices for subset dynamic programming");
    meter.require_items(static_cast<long double>(std::uint64_t{1} << n));
    if (n == 0)
        return 0;

    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> adj(n, 0);
    for (auto [a, b] : g.edges()) {
        adj[a] |= std::uint64_t{1} << b;
        adj[b] |= std::uint64_t{1} << a;
    }
    // best[S]: min over orderings of S of the largest boundary over its prefixes.
    std::vector<int> best(std::size_t{1} << n, 0);
    for (std::uint64_t set = 1; set <= all; ++set) {
        meter.tick();
        int boundary = 0;
        for (Vertex v = 0; v < n; ++v)
            if (((set >> v) & 1) && (adj[v] & ~set))
                ++boundary;
        int cheapest = static_cast<int>(n);
        for (Vertex v = 0; v < n; ++v)
            if ((set >> v) & 1)
                cheapest = std::min(cheapest, best[set & ~(std::uint64_t{1} << v)]);
        best[set] = std::max(boundary, cheapest);
    }
    return best[all];
}

std::vector<std::vector<bool>> reachability(const Graph &g) {
    const auto n = g.num_vertices();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (auto [a, b] : g.edges()) {
        reach[a][b] = true;
        if (!g.directed())
            reach[b][a] = true;
    }
    for (Vertex k = 0; k < n; ++k)
        for (Vertex i = 0; i < n; ++i)
            if (reach[i][k])
                for (Vertex j = 0; j < n; ++j)
                    if (reach[k][j])
                        reach[i][j] = true;
    return reach;
}

bool has_directed_cycle(const Graph &g) {
    const auto reach = reachability(g);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (reach[v][v])
            return true;
    return false;
}

} // namespace pwcount::oracle
