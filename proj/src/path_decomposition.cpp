#include "pwcount/path_decomposition.hpp"

#include "pwcount/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace pwcount {

namespace {

std::vector<Vertex> normalized(std::vector<Vertex> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    return bag;
}

// Connected components of the undirected view, each sorted, ordered by their
// smallest vertex.
std::vector<std::vector<Vertex>> components(const Graph &g) {
    const auto n = g.num_vertices();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Vertex>> result;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        std::vector<Vertex> comp{root};
        seen[root] = true;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (auto w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
    }
    return result;
}

// Greedy min-boundary layout. Key per candidate: (boundary after placing it,
// unplaced neighbors it would leave, id).
std::vector<Vertex> greedy_layout(const Graph &g) {
    const auto n = g.num_vertices();
    std::vector<std::size_t> in_count(n, 0);
    std::vector<bool> placed(n, false);
    std::set<Vertex> frontier;
    std::set<std::tuple<bool, std::size_t, Vertex>> fresh;
    for (Vertex v = 0; v < n; ++v)
        fresh.emplace(g.degree(v) > 0, g.degree(v), v);

    std::size_t boundary = 0;
    std::vector<Vertex> layout;
    layout.reserve(n);
    using Key = std::tuple<std::size_t, std::size_t, Vertex>;

    auto boundary_drop = [&](Vertex v) {
        std::size_t drop = 0;
        for (auto u : g.neighbors(v))
            if (placed[u] && g.degree(u) - in_count[u] == 1)
                ++drop;
        return drop;
    };

    for (std::size_t step = 0; step < n; ++step) {
        std::optional<Key> best;
        for (auto v : frontier) {
            const auto outside = g.degree(v) - in_count[v];
            Key key{boundary + (outside > 0 ? 1 : 0) - boundary_drop(v), outside, v};
            if (!best || key < *best)
                best = key;
        }
        if (!fresh.empty()) {
            auto [has_nb, deg, v] = *fresh.begin();
            Key key{boundary + (has_nb ? 1 : 0), deg, v};
            if (!best || key < *best)
                best = key;
        }
        const Vertex v = std::get<2>(*best);
        boundary = std::get<0>(*best);
        placed[v] = true;
        frontier.erase(v);
        fresh.erase({g.degree(v) > 0, g.degree(v), v});
        layout.push_back(v);
        for (auto w : g.neighbors(v)) {
            ++in_count[w];
            if (!placed[w] && in_count[w] == 1) {
                fresh.erase({g.degree(w) > 0, g.degree(w), w});
                frontier.insert(w);
            }
        }
    }
    return layout;
}

// Memoized depth-first search for a layout of one component whose every
// prefix has at most `limit` boundary vertices.
class LayoutSearch {
public:
    LayoutSearch(const SearchBudget &budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    std::optional<std::vector<Vertex>> run(const Graph &g, const std::vector<Vertex> &comp,
                                           std::size_t limit) {
        const auto k = comp.size();
        if (k > 64)
            throw BudgetExceeded("exact layout search supports components of at most 64 vertices, got " +
                                 std::to_string(k));
        adj_.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (auto w : g.neighbors(comp[i])) {
                auto j = static_cast<std::size_t>(
                    std::lower_bound(comp.begin(), comp.end(), w) - comp.begin());
                adj_[i] |= std::uint64_t{1} << j;
            }
        full_ = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
        limit_ = limit;
        failed_.clear();
        order_.clear();
        if (!search(0))
            return std::nullopt;
        std::vector<Vertex> layout;
        for (auto it = order_.rbegin(); it != order_.rend(); ++it)
            layout.push_back(comp[*it]);
        return layout;
    }

private:
    std::size_t boundary(std::uint64_t set) const {
        std::size_t count = 0;
        for (auto rest = set; rest != 0; rest &= rest - 1) {
            auto u = static_cast<std::size_t>(std::countr_zero(rest));
            if (adj_[u] & ~set)
                ++count;
        }
        return count;
    }

    void charge() {
        if (++nodes_ > budget_.max_nodes)
            throw BudgetExceeded("layout search exceeded " + std::to_string(budget_.max_nodes) +
                                 " nodes");
        if (budget_.max_time.count() > 0 && (nodes_ & 1023) == 0 &&
            std::chrono::steady_clock::now() - start_ > budget_.max_time)
            throw BudgetExceeded("layout search exceeded " + std::to_string(budget_.max_time.count()) +
                                 " ms");
    }

    // On success the chosen vertices are appended to order_ in reverse.
    bool search(std::uint64_t placed) {
        if (placed == full_)
            return true;
        if (failed_.contains(placed))
            return false;
        charge();

        // A vertex whose neighbors are all placed can go next without loss.
        for (auto rest = full_ & ~placed; rest != 0; rest &= rest - 1) {
            auto v = static_cast<std::size_t>(std::countr_zero(rest));
            if ((adj_[v] & ~placed) == 0) {
                if (search(placed | (std::uint64_t{1} << v))) {
                    order_.push_back(v);
                    return true;
                }
                failed_.insert(placed);
                return false;
            }
        }

        std::vector<std::pair<std::size_t, std::size_t>> moves;
        for (auto rest = full_ & ~placed; rest != 0; rest &= rest - 1) {
            auto v = static_cast<std::size_t>(std::countr_zero(rest));
            auto b = boundary(placed | (std::uint64_t{1} << v));
            if (b <= limit_)
                moves.emplace_back(b, v);
        }
        std::sort(moves.begin(), moves.end());
        for (auto [b, v] : moves)
            if (search(placed | (std::uint64_t{1} << v))) {
                order_.push_back(v);
                return true;
            }
        failed_.insert(placed);
        return false;
    }

    const SearchBudget &budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    std::vector<std::uint64_t> adj_;
    std::uint64_t full_ = 0;
    std::size_t limit_ = 0;
    std::unordered_set<std::uint64_t> failed_;
    std::vector<std::size_t> order_;
};

// Largest minimum degree over all subgraphs. Pathwidth is at least this.
std::size_t degeneracy(const Graph &g) {
    const auto n = g.num_vertices();
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.neighbors(v).size();
        queue.emplace(deg[v], v);
    }
    std::vector<bool> gone(n, false);
    std::size_t best = 0;
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        best = std::max(best, d);
        gone[v] = true;
        for (auto w : g.neighbors(v))
            if (!gone[w]) {
                queue.erase({deg[w], w});
                queue.emplace(--deg[w], w);
            }
    }
    return best;
}

std::optional<PathDecomposition> decide(const Graph &g, int max_width, LayoutSearch &search) {
    if (max_width < 0)
        throw InvalidArgument("max_width must be nonnegative");
    std::vector<Vertex> layout;
    for (const auto &comp : components(g)) {
        const Graph sub = g.induced_subgraph(comp);
        if (degeneracy(sub) > static_cast<std::size_t>(max_width))
            return std::nullopt;
        std::vector<Vertex> local;
        auto greedy = greedy_layout(sub);
        if (layout_to_decomposition(sub, greedy).width() <= max_width) {
            local = std::move(greedy);
        } else {
            std::vector<Vertex> ids(comp.size());
            for (std::size_t i = 0; i < ids.size(); ++i)
                ids[i] = i;
            auto found = search.run(sub, ids, static_cast<std::size_t>(max_width));
            if (!found)
                return std::nullopt;
            local = std::move(*found);
        }
        for (auto v : local)
            layout.push_back(comp[v]);
    }
    return layout_to_decomposition(g, layout);
}

} // namespace

int PathDecomposition::width() const {
    std::size_t largest = 0;
    for (const auto &bag : bags)
        largest = std::max(largest, bag.size());
    return largest == 0 ? 0 : static_cast<int>(largest) - 1;
}

std::string ValidationReport::describe() const {
    switch (violation) {
    case Violation::none:
        return "valid, width " + std::to_string(width);
    case Violation::vertex_out_of_range:
        return "bag entry " + std::to_string(vertex) + " is not a vertex";
    case Violation::missing_vertex:
        return "vertex " + std::to_string(vertex) + " appears in no bag";
    case Violation::uncovered_edge:
        return "edge (" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
               ") is not contained in any bag";
    case Violation::interval_gap:
        return "bags containing vertex " + std::to_string(vertex) + " are not contiguous";
    }
    return "unknown violation";
}

ValidationReport validate(const Graph &g, const PathDecomposition &pd) {
    const auto n = g.num_vertices();
    ValidationReport report;
    std::vector<std::vector<std::size_t>> where(n);
    for (std::size_t i = 0; i < pd.bags.size(); ++i)
        for (auto v : normalized(pd.bags[i])) {
            if (v >= n) {
                report.violation = Violation::vertex_out_of_range;
                report.vertex = v;
                return report;
            }
            where[v].push_back(i);
        }
    for (Vertex v = 0; v < n; ++v)
        if (where[v].empty()) {
            report.violation = Violation::missing_vertex;
            report.vertex = v;
            return report;
        }
    for (auto [a, b] : g.edges()) {
        const auto &x = where[a];
        const auto &y = where[b];
        std::size_t i = 0, j = 0;
        bool shared = false;
        while (i < x.size() && j < y.size() && !shared) {
            if (x[i] == y[j])
                shared = true;
            else if (x[i] < y[j])
                ++i;
            else
                ++j;
        }
        if (!shared) {
            report.violation = Violation::uncovered_edge;
            report.edge = {a, b};
            return report;
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (where[v].back() - where[v].front() + 1 != where[v].size()) {
            report.violation = Violation::interval_gap;
            report.vertex = v;
            return report;
        }
    report.width = pd.width();
    return report;
}

std::vector<std::vector<Vertex>> NicePathDecomposition::bags() const {
    std::vector<std::vector<Vertex>> result{{}};
    std::vector<Vertex> bag;
    for (const auto &e : events) {
        if (e.kind == EventKind::insert)
            bag.insert(std::upper_bound(bag.begin(), bag.end(), e.vertex), e.vertex);
        else
            bag.erase(std::lower_bound(bag.begin(), bag.end(), e.vertex));
        result.push_back(bag);
    }
    return result;
}

NicePathDecomposition to_nice(const Graph &g, const PathDecomposition &pd) {
    auto report = validate(g, pd);
    if (!report.ok())
        throw InvalidDecomposition(report.describe());

    NicePathDecomposition npd;
    npd.width = report.width;
    npd.events.reserve(2 * g.num_vertices());
    std::vector<Vertex> current;
    auto step_to = [&](const std::vector<Vertex> &next) {
        std::vector<Vertex> gone, added;
        std::set_difference(current.begin(), current.end(), next.begin(), next.end(),
                            std::back_inserter(gone));
        std::set_difference(next.begin(), next.end(), current.begin(), current.end(),
                            std::back_inserter(added));
        for (auto v : gone)
            npd.events.push_back({EventKind::remove, v});
        for (auto v : added)
            npd.events.push_back({EventKind::insert, v});
        current = next;
    };
    for (const auto &bag : pd.bags)
        step_to(normalized(bag));
    step_to({});
    return npd;
}

void validate_nice(const Graph &g, const NicePathDecomposition &npd) {
    const auto n = g.num_vertices();
    if (npd.events.size() != 2 * n)
        throw InvalidDecomposition("expected " + std::to_string(2 * n) + " events, got " +
                                   std::to_string(npd.events.size()));
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> inserted(n, unset), removed(n, unset);
    std::size_t bag = 0, largest = 0;
    for (std::size_t t = 0; t < npd.events.size(); ++t) {
        const auto [kind, v] = npd.events[t];
        if (v >= n)
            throw InvalidDecomposition("event " + std::to_string(t + 1) + " names vertex " +
                                       std::to_string(v) + " outside the graph");
        if (kind == EventKind::insert) {
            if (inserted[v] != unset)
                throw InvalidDecomposition("vertex " + std::to_string(v) + " inserted twice");
            inserted[v] = t;
            largest = std::max(largest, ++bag);
        } else {
            if (inserted[v] == unset || removed[v] != unset)
                throw InvalidDecomposition("vertex " + std::to_string(v) +
                                           " removed without a matching insertion");
            removed[v] = t;
            --bag;
        }
    }
    const int width = largest == 0 ? 0 : static_cast<int>(largest) - 1;
    if (npd.width != width)
        throw InvalidDecomposition("recorded width " + std::to_string(npd.width) +
                                   " differs from actual width " + std::to_string(width));
    for (auto [a, b] : g.edges())
        if (!(inserted[a] < removed[b] && inserted[b] < removed[a]))
            throw InvalidDecomposition("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                       ") is not contained in any bag");
}

std::vector<Interval> intervals(const NicePathDecomposition &npd) {
    std::vector<Interval> result(npd.num_vertices(), Interval{0, 0});
    for (std::size_t t = 0; t < npd.events.size(); ++t) {
        const auto &e = npd.events[t];
        if (e.kind == EventKind::insert)
            result[e.vertex].first = t + 1;
        else
            result[e.vertex].last = t;
    }
    return result;
}

std::optional<PathDecomposition> find_decomposition(const Graph &g, int max_width,
                                                    const SearchBudget &budget) {
    LayoutSearch search(budget);
    return decide(g, max_width, search);
}

PathDecomposition optimal_decomposition(const Graph &g, const SearchBudget &budget) {
    auto greedy = greedy_decomposition(g);
    LayoutSearch search(budget);
    for (int k = 0; k < greedy.width(); ++k)
        if (auto pd = decide(g, k, search))
            return *pd;
    return greedy;
}

PathDecomposition greedy_decomposition(const Graph &g) {
    return layout_to_decomposition(g, greedy_layout(g));
}

PathDecomposition layout_to_decomposition(const Graph &g, const std::vector<Vertex> &layout) {
    const auto n = g.num_vertices();
    if (layout.size() != n)
        throw InvalidArgument("layout must list every vertex exactly once");
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (layout[i] >= n || pos[layout[i]] != n)
            throw InvalidArgument("layout must list every vertex exactly once");
        pos[layout[i]] = i;
    }
    // Vertices leave the active set after the bag of their last neighbor.
    std::vector<std::vector<Vertex>> expire(n);
    for (Vertex v = 0; v < n; ++v) {
        std::size_t last = pos[v];
        for (auto w : g.neighbors(v))
            last = std::max(last, pos[w]);
        expire[last].push_back(v);
    }

    PathDecomposition pd;
    pd.bags.reserve(n);
    std::set<Vertex> active;
    for (std::size_t i = 0; i < n; ++i) {
        active.insert(layout[i]);
        pd.bags.emplace_back(active.begin(), active.end());
        for (auto v : expire[i])
            active.erase(v);
    }
    return pd;
}

PathDecomposition parse_decomposition(std::string_view text, std::size_t expected_vertices) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t bag_count = 0, declared_size = 0;
    PathDecomposition pd;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first) || first == "c")
            continue;
        if (!have_header) {
            std::string tag;
            long long r = -1, size = -1, n = -1;
            std::string extra;
            if (first != "s" || !(tokens >> tag >> r >> size >> n) || tag != "pd" || r < 0 ||
                size < 0 || n < 0 || (tokens >> extra))
                throw ParseError(line_no, "malformed header, expected `s pd <r> <width+1> <n>`");
            if (static_cast<std::size_t>(n) != expected_vertices)
                throw ParseError(line_no, "decomposition is for " + std::to_string(n) +
                                              " vertices but the graph has " +
                                              std::to_string(expected_vertices));
            bag_count = static_cast<std::size_t>(r);
            declared_size = static_cast<std::size_t>(size);
            have_header = true;
            continue;
        }
        long long index = 0;
        if (first != "b" || !(tokens >> index))
            throw ParseError(line_no, "malformed bag line, expected `b <i> <v...>`");
        if (static_cast<std::size_t>(index) != pd.bags.size() + 1)
            throw ParseError(line_no, "bag index " + std::to_string(index) + " out of sequence");
        std::vector<Vertex> bag;
        std::string token;
        while (tokens >> token) {
            long long v = 0;
            try {
                std::size_t used = 0;
                v = std::stoll(token, &used);
                if (used != token.size())
                    throw std::invalid_argument(token);
            } catch (const std::exception &) {
                throw ParseError(line_no, "malformed vertex `" + token + "`");
            }
            if (v < 1 || static_cast<std::size_t>(v) > expected_vertices)
                throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
            bag.push_back(static_cast<Vertex>(v - 1));
        }
        auto norm = normalized(bag);
        if (norm.size() != bag.size())
            throw ParseError(line_no, "bag lists a vertex twice");
        pd.bags.push_back(std::move(norm));
    }
    if (!have_header)
        throw ParseError(line_no, "missing header `s pd <r> <width+1> <n>`");
    if (pd.bags.size() != bag_count)
        throw ParseError(line_no, "header declares " + std::to_string(bag_count) + " bags but " +
                                      std::to_string(pd.bags.size()) + " were given");
    std::size_t largest = 0;
    for (const auto &bag : pd.bags)
        largest = std::max(largest, bag.size());
    if (largest != declared_size)
        throw ParseError(1, "header declares largest bag size " + std::to_string(declared_size) +
                                " but the largest bag has " + std::to_string(largest));
    return pd;
}

std::string serialize_decomposition(const PathDecomposition &pd, std::size_t num_vertices) {
    std::size_t largest = 0;
    for (const auto &bag : pd.bags)
        largest = std::max(largest, bag.size());
    std::string out = "s pd " + std::to_string(pd.bags.size()) + " " + std::to_string(largest) + " " +
                      std::to_string(num_vertices) + "\n";
    for (std::size_t i = 0; i < pd.bags.size(); ++i) {
        out += "b " + std::to_string(i + 1);
        for (auto v : normalized(pd.bags[i]))
            out += " " + std::to_string(v + 1);
        out += "\n";
    }
    return out;
}

} // namespace pwcount
