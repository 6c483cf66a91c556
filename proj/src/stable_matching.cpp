#include "pwcount/stable_matching.hpp"

#include "pwcount/errors.hpp"
#include "pwcount/labeling_problem.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pwcount {

namespace {

constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

bool is_permutation_of_n(const std::vector<Person> &list, std::size_t n) {
    if (list.size() != n)
        return false;
    std::vector<bool> seen(n, false);
    for (auto p : list) {
        if (p >= n || seen[p])
            return false;
        seen[p] = true;
    }
    return true;
}

std::vector<std::vector<std::size_t>> ranks_of(const Preferences &prefs) {
    std::vector<std::vector<std::size_t>> rank(prefs.size(), std::vector<std::size_t>(prefs.size()));
    for (std::size_t p = 0; p < prefs.size(); ++p)
        for (std::size_t r = 0; r < prefs[p].size(); ++r)
            rank[p][prefs[p][r]] = r;
    return rank;
}

std::vector<Person> parse_list(const std::string &line, std::size_t line_no, std::size_t n) {
    std::istringstream in(line);
    std::vector<Person> list;
    std::string token;
    while (in >> token) {
        long long value = 0;
        try {
            std::size_t used = 0;
            value = std::stoll(token, &used);
            if (used != token.size())
                throw std::invalid_argument(token);
        } catch (const std::exception &) {
            throw ParseError(line_no, "malformed entry `" + token + "`");
        }
        if (value < 1 || static_cast<std::size_t>(value) > n)
            throw ParseError(line_no, "entry " + token + " outside 1.." + std::to_string(n));
        list.push_back(static_cast<Person>(value - 1));
    }
    if (list.size() != n)
        throw ParseError(line_no, "list has " + std::to_string(list.size()) + " entries, expected " +
                                      std::to_string(n));
    if (!is_permutation_of_n(list, n))
        throw ParseError(line_no, "list is not a permutation of 1.." + std::to_string(n));
    return list;
}

std::string list_text(const std::vector<Person> &list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i)
        out += (i ? " " : "") + std::to_string(list[i] + 1);
    return out;
}

// Uniform permutation of 0..n-1 (Fisher-Yates on raw engine words).
std::vector<Person> random_permutation(std::size_t n, Rng &rng) {
    std::vector<Person> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[uniform_below(rng, Count(static_cast<unsigned long>(i))).get_ui()]);
    return perm;
}

// List over the opposite side in which candidate q sits at a position within
// k-1 of objective_pos[q]. At each position, the candidate whose band ends
// there is forced; otherwise a uniform pick among the candidates whose band
// has started.
std::vector<Person> banded_list(const std::vector<std::size_t> &objective_pos,
                                const std::vector<Person> &by_objective, std::size_t k, Rng &rng) {
    const auto n = objective_pos.size();
    std::vector<bool> used(n, false);
    std::vector<Person> list;
    list.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        Person pick = none;
        if (p + 1 >= k) {
            const Person due = by_objective[p + 1 - k];
            if (!used[due])
                pick = due;
        }
        if (pick == none) {
            std::vector<Person> open;
            for (std::size_t r = (p + 1 >= k ? p + 1 - k : 0); r < std::min(n, p + k); ++r)
                if (!used[by_objective[r]])
                    open.push_back(by_objective[r]);
            pick = open[uniform_below(rng, Count(static_cast<unsigned long>(open.size()))).get_ui()];
        }
        used[pick] = true;
        list.push_back(pick);
    }
    return list;
}

} // namespace

SMInstance::SMInstance(Preferences men, Preferences women, std::optional<std::vector<Person>> objective_women,
                       std::optional<std::vector<Person>> objective_men)
    : men_(std::move(men)), women_(std::move(women)), objective_women_(std::move(objective_women)),
      objective_men_(std::move(objective_men)) {
    const auto n = men_.size();
    if (women_.size() != n)
        throw InvalidArgument("instance has " + std::to_string(n) + " men but " +
                              std::to_string(women_.size()) + " women");
    for (std::size_t p = 0; p < n; ++p) {
        if (!is_permutation_of_n(men_[p], n))
            throw InvalidArgument("list of man " + std::to_string(p) + " is not a permutation");
        if (!is_permutation_of_n(women_[p], n))
            throw InvalidArgument("list of woman " + std::to_string(p) + " is not a permutation");
    }
    if (objective_women_.has_value() != objective_men_.has_value())
        throw InvalidArgument("objective rankings must be given for both sides or neither");
    if (objective_women_ && (!is_permutation_of_n(*objective_women_, n) || !is_permutation_of_n(*objective_men_, n)))
        throw InvalidArgument("objective ranking is not a permutation");
    man_rank_ = ranks_of(men_);
    woman_rank_ = ranks_of(women_);
}

SMInstance parse_sm(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> n;
    Preferences men, women;
    std::vector<std::vector<Person>> objectives;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first) || first == "c")
            continue;
        if (!n) {
            std::string extra;
            long long value = -1;
            std::istringstream header(line);
            if (!(header >> value) || value < 0 || (header >> extra))
                throw ParseError(line_no, "malformed header, expected the instance size n");
            n = static_cast<std::size_t>(value);
            continue;
        }
        if (first == "o") {
            if (men.size() < *n || women.size() < *n)
                throw ParseError(line_no, "objective ranking before all preference lists");
            if (objectives.size() == 2)
                throw ParseError(line_no, "more than two objective rankings");
            objectives.push_back(parse_list(line.substr(line.find('o') + 1), line_no, *n));
            continue;
        }
        if (!objectives.empty())
            throw ParseError(line_no, "preference list after objective rankings");
        if (men.size() < *n)
            men.push_back(parse_list(line, line_no, *n));
        else if (women.size() < *n)
            women.push_back(parse_list(line, line_no, *n));
        else
            throw ParseError(line_no, "more than " + std::to_string(2 * *n) + " preference lists");
    }
    if (!n)
        throw ParseError(line_no, "missing header with the instance size n");
    if (men.size() != *n || women.size() != *n)
        throw ParseError(line_no, "expected " + std::to_string(2 * *n) + " preference lists, got " +
                                      std::to_string(men.size() + women.size()));
    if (objectives.size() == 1)
        throw ParseError(line_no, "objective rankings must be given for both sides");
    if (objectives.empty())
        return SMInstance(std::move(men), std::move(women));
    return SMInstance(std::move(men), std::move(women), std::move(objectives[0]), std::move(objectives[1]));
}

std::string serialize_sm(const SMInstance &inst) {
    std::string out = std::to_string(inst.size()) + "\n";
    for (const auto &list : inst.men_prefs())
        out += list_text(list) + "\n";
    for (const auto &list : inst.women_prefs())
        out += list_text(list) + "\n";
    if (inst.objective_women()) {
        out += "o " + list_text(*inst.objective_women()) + "\n";
        out += "o " + list_text(*inst.objective_men()) + "\n";
    }
    return out;
}

std::vector<Person> Matching::husbands() const {
    std::vector<Person> husband(wife.size());
    for (Person m = 0; m < wife.size(); ++m)
        husband[wife[m]] = m;
    return husband;
}

Matching gale_shapley(const SMInstance &inst, Side proposing) {
    const auto n = inst.size();
    const bool men_propose = proposing == Side::men;
    const auto &proposer_prefs = men_propose ? inst.men_prefs() : inst.women_prefs();
    auto prefers = [&](Person receiver, Person a, Person b) {
        return men_propose ? inst.woman_rank(receiver, a) < inst.woman_rank(receiver, b)
                           : inst.man_rank(receiver, a) < inst.man_rank(receiver, b);
    };

    std::vector<std::size_t> next(n, 0);
    std::vector<Person> holder(n, none), partner(n, none);
    std::vector<Person> free;
    for (Person p = n; p > 0; --p)
        free.push_back(p - 1);
    while (!free.empty()) {
        const Person p = free.back();
        free.pop_back();
        const Person r = proposer_prefs[p][next[p]++];
        if (holder[r] == none) {
            holder[r] = p;
            partner[p] = r;
        } else if (prefers(r, p, holder[r])) {
            free.push_back(holder[r]);
            partner[holder[r]] = none;
            holder[r] = p;
            partner[p] = r;
        } else {
            free.push_back(p);
        }
    }
    Matching result;
    result.wife = men_propose ? partner : holder;
    return result;
}

bool is_stable(const SMInstance &inst, const Matching &matching) {
    const auto n = inst.size();
    if (matching.wife.size() != n)
        return false;
    std::vector<Person> husband(n, none);
    for (Person m = 0; m < n; ++m) {
        if (matching.wife[m] >= n || husband[matching.wife[m]] != none)
            return false;
        husband[matching.wife[m]] = m;
    }
    for (Person m = 0; m < n; ++m)
        for (std::size_t r = 0; r < inst.man_rank(m, matching.wife[m]); ++r) {
            const Person w = inst.men_prefs()[m][r];
            if (inst.woman_rank(w, m) < inst.woman_rank(w, husband[w]))
                return false;
        }
    return true;
}

Graph RotationDigraph::graph() const { return Graph(rotations.size(), edges, true); }

RotationDigraph build_rotation_digraph(const SMInstance &inst) {
    const auto n = inst.size();
    RotationDigraph rd;
    rd.man_optimal = gale_shapley(inst, Side::men);
    rd.woman_optimal = gale_shapley(inst, Side::women);

    std::vector<Person> wife = rd.man_optimal.wife;
    std::vector<Person> husband = rd.man_optimal.husbands();
    // Scan position on each man's list; only moves forward because women's
    // partners only improve as rotations are eliminated.
    std::vector<std::size_t> scan(n);
    for (Person m = 0; m < n; ++m)
        scan[m] = inst.man_rank(m, wife[m]) + 1;

    // moved_to[m][w]: rotation giving m to w; moved_from[m][w]: taking m from w.
    std::vector<std::vector<std::size_t>> moved_to(n, std::vector<std::size_t>(n, none));
    std::vector<std::vector<std::size_t>> moved_from(n, std::vector<std::size_t>(n, none));
    // crossing[w][m]: rotation after which w prefers her partner to m, having
    // held m or someone worse before it.
    std::vector<std::vector<std::size_t>> crossing(n, std::vector<std::size_t>(n, none));

    std::vector<Person> successor(n, none);
    std::vector<int> state(n);
    for (;;) {
        bool done = true;
        for (Person m = 0; m < n; ++m) {
            successor[m] = none;
            if (wife[m] == rd.woman_optimal.wife[m])
                continue;
            done = false;
            scan[m] = std::max(scan[m], inst.man_rank(m, wife[m]) + 1);
            while (scan[m] < n) {
                const Person w = inst.men_prefs()[m][scan[m]];
                if (inst.woman_rank(w, m) < inst.woman_rank(w, husband[w]))
                    break;
                ++scan[m];
            }
            if (scan[m] == n)
                throw std::logic_error("man without a next stable partner before woman-optimal matching");
            successor[m] = husband[inst.men_prefs()[m][scan[m]]];
        }
        if (done)
            break;

        // Follow successors from the smallest unsettled man until a man repeats.
        std::fill(state.begin(), state.end(), 0);
        Person start = 0;
        while (successor[start] == none)
            ++start;
        std::vector<Person> walk;
        Person m = start;
        while (state[m] == 0) {
            if (successor[m] == none)
                throw std::logic_error("successor walk left the unsettled men");
            state[m] = 1;
            walk.push_back(m);
            m = successor[m];
        }
        auto first = std::find(walk.begin(), walk.end(), m);
        Rotation rotation;
        for (auto it = first; it != walk.end(); ++it)
            rotation.emplace_back(*it, wife[*it]);

        const std::size_t id = rd.rotations.size();
        const auto r = rotation.size();
        for (std::size_t i = 0; i < r; ++i) {
            const auto [mi, wi] = rotation[i];
            const auto [mn, wn] = rotation[(i + 1) % r];
            moved_from[mi][wi] = id;
            moved_to[mi][wn] = id;
            // wn trades mn for mi; every man ranked in (mi, mn] drops below her partner.
            for (auto rank = inst.woman_rank(wn, mi) + 1; rank <= inst.woman_rank(wn, mn); ++rank)
                crossing[wn][inst.women_prefs()[wn][rank]] = id;
        }
        for (std::size_t i = 0; i < r; ++i) {
            const Person mi = rotation[i].first;
            const Person wn = rotation[(i + 1) % r].second;
            wife[mi] = wn;
            husband[wn] = mi;
        }
        rd.rotations.push_back(std::move(rotation));
    }

    std::vector<Edge> edges;
    for (std::size_t id = 0; id < rd.rotations.size(); ++id) {
        const auto &rotation = rd.rotations[id];
        const auto r = rotation.size();
        for (std::size_t i = 0; i < r; ++i) {
            const auto [m, from] = rotation[i];
            const Person to = rotation[(i + 1) % r].second;
            // Rule 1: whoever brought m to `from` comes first.
            if (moved_to[m][from] != none)
                edges.emplace_back(moved_to[m][from], id);
            // Rule 2: women m skips over must already have risen above him.
            for (auto rank = inst.man_rank(m, from) + 1; rank < inst.man_rank(m, to); ++rank) {
                const Person w = inst.men_prefs()[m][rank];
                if (crossing[w][m] != none && crossing[w][m] != id)
                    edges.emplace_back(crossing[w][m], id);
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges)
        if (a >= b)
            throw std::logic_error("rotation edge against elimination order");
    rd.edges = std::move(edges);
    return rd;
}

Matching downset_to_matching(const RotationDigraph &rd, std::span<const std::size_t> downset) {
    const auto k = rd.rotations.size();
    std::vector<bool> member(k, false);
    for (auto id : downset) {
        if (id >= k)
            throw NotADownset("rotation " + std::to_string(id) + " does not exist");
        member[id] = true;
    }
    for (auto [a, b] : rd.edges)
        if (member[b] && !member[a])
            throw NotADownset("rotation " + std::to_string(b) + " is included but its predecessor " +
                              std::to_string(a) + " is not");
    Matching result = rd.man_optimal;
    // Index order is a topological order of the digraph.
    for (std::size_t id = 0; id < k; ++id) {
        if (!member[id])
            continue;
        const auto &rotation = rd.rotations[id];
        for (std::size_t i = 0; i < rotation.size(); ++i)
            result.wife[rotation[i].first] = rotation[(i + 1) % rotation.size()].second;
    }
    return result;
}

NicePathDecomposition decompose_for_counting(const Graph &g, const SearchBudget &budget) {
    PathDecomposition pd;
    try {
        pd = optimal_decomposition(g, budget);
    } catch (const BudgetExceeded &) {
        pd = greedy_decomposition(g);
    }
    return to_nice(g, pd);
}

Count count_stable_matchings(const SMInstance &inst) {
    const auto rd = build_rotation_digraph(inst);
    const auto g = rd.graph();
    const auto npd = decompose_for_counting(g);
    return count_valid_labelings(g, npd, downset());
}

StableMatchingSampler::StableMatchingSampler(const SMInstance &inst)
    : rd_(build_rotation_digraph(inst)), graph_(rd_.graph()), npd_(decompose_for_counting(graph_)),
      sampler_(graph_, npd_, downset()) {}

Matching StableMatchingSampler::sample(Rng &rng) const {
    const auto labels = sampler_.sample(rng);
    std::vector<std::size_t> chosen;
    for (std::size_t id = 0; id < labels.size(); ++id)
        if (labels[id] == 1)
            chosen.push_back(id);
    return downset_to_matching(rd_, chosen);
}

Matching sample_stable_matching(const SMInstance &inst, Rng &rng) {
    return StableMatchingSampler(inst).sample(rng);
}

std::size_t range_of(const SMInstance &inst) {
    if (!inst.objective_women())
        throw MissingObjective();
    const auto n = inst.size();
    std::vector<std::size_t> women_pos(n), men_pos(n);
    for (std::size_t r = 0; r < n; ++r) {
        women_pos[(*inst.objective_women())[r]] = r;
        men_pos[(*inst.objective_men())[r]] = r;
    }
    auto gap = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
    std::size_t widest = 0;
    for (Person p = 0; p < n; ++p)
        for (std::size_t r = 0; r < n; ++r) {
            widest = std::max(widest, gap(r, women_pos[inst.men_prefs()[p][r]]));
            widest = std::max(widest, gap(r, men_pos[inst.women_prefs()[p][r]]));
        }
    return widest + 1;
}

SMInstance gen_k_range(std::size_t n, std::size_t k, Rng &rng) {
    if (k < 1 || k > n)
        throw InvalidArgument("k-range generation needs 1 <= k <= n, got k=" + std::to_string(k) +
                              ", n=" + std::to_string(n));
    auto objective_women = random_permutation(n, rng);
    auto objective_men = random_permutation(n, rng);
    std::vector<std::size_t> women_pos(n), men_pos(n);
    for (std::size_t r = 0; r < n; ++r) {
        women_pos[objective_women[r]] = r;
        men_pos[objective_men[r]] = r;
    }
    Preferences men(n), women(n);
    for (Person m = 0; m < n; ++m)
        men[m] = banded_list(women_pos, objective_women, k, rng);
    for (Person w = 0; w < n; ++w)
        women[w] = banded_list(men_pos, objective_men, k, rng);
    return SMInstance(std::move(men), std::move(women), std::move(objective_women), std::move(objective_men));
}

} // namespace pwcount
