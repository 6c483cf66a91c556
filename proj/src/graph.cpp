#include "pwcount/graph.hpp"

#include "pwcount/errors.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace pwcount {

namespace {

std::string edge_text(Vertex a, Vertex b) {
    return std::to_string(a + 1) + " " + std::to_string(b + 1);
}

bool sorted_contains(const std::vector<Vertex> &list, Vertex v) {
    return std::binary_search(list.begin(), list.end(), v);
}

} // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges, bool directed)
    : n_(n), directed_(directed), edges_(std::move(edges)), neighbors_(n) {
    for (auto &[a, b] : edges_) {
        if (a >= n_ || b >= n_)
            throw InvalidArgument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") has an endpoint outside [0," + std::to_string(n_) + ")");
        if (a == b)
            throw InvalidArgument("self-loop at vertex " + std::to_string(a));
        if (!directed_ && a > b)
            std::swap(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw InvalidArgument("duplicate edge (" + std::to_string(dup->first) + "," +
                              std::to_string(dup->second) + ")");

    if (directed_) {
        out_.resize(n_);
        in_.resize(n_);
    }
    for (auto [a, b] : edges_) {
        neighbors_[a].push_back(b);
        neighbors_[b].push_back(a);
        if (directed_) {
            out_[a].push_back(b);
            in_[b].push_back(a);
        }
    }
    // Antiparallel directed pairs appear twice in the undirected view.
    for (auto &list : neighbors_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (auto &list : out_)
        std::sort(list.begin(), list.end());
    for (auto &list : in_)
        std::sort(list.begin(), list.end());
}

std::span<const Vertex> Graph::successors(Vertex v) const {
    return directed_ ? std::span<const Vertex>(out_[v]) : std::span<const Vertex>(neighbors_[v]);
}

std::span<const Vertex> Graph::predecessors(Vertex v) const {
    return directed_ ? std::span<const Vertex>(in_[v]) : std::span<const Vertex>(neighbors_[v]);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (directed_)
        return sorted_contains(out_[u], v);
    return sorted_contains(neighbors_[u], v);
}

bool Graph::adjacent(Vertex u, Vertex v) const { return sorted_contains(neighbors_[u], v); }

Graph Graph::induced_subgraph(std::span<const Vertex> keep) const {
    std::vector<std::size_t> index(n_, n_);
    for (std::size_t i = 0; i < keep.size(); ++i)
        index[keep[i]] = i;
    std::vector<Edge> sub;
    for (auto [a, b] : edges_)
        if (index[a] != n_ && index[b] != n_)
            sub.emplace_back(index[a], index[b]);
    return Graph(keep.size(), std::move(sub), directed_);
}

Graph Graph::undirected_view() const {
    if (!directed_)
        return *this;
    std::vector<Edge> sub;
    for (Vertex v = 0; v < n_; ++v)
        for (auto w : neighbors_[v])
            if (v < w)
                sub.emplace_back(v, w);
    return Graph(n_, std::move(sub), false);
}

Graph parse_graph(std::string_view text) {
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0;
    bool directed = false;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();

        std::istringstream in(line);
        std::string first;
        if (!(in >> first) || first == "c")
            continue;

        if (!have_header) {
            std::string graph_tag, kind;
            long long nn = -1, mm = -1;
            if (first != "p" || !(in >> graph_tag >> nn >> mm >> kind) || graph_tag != "graph" ||
                nn < 0 || mm < 0 || (kind != "u" && kind != "d"))
                throw ParseError(line_no, "malformed header, expected `p graph <n> <m> <u|d>`");
            std::string extra;
            if (in >> extra)
                throw ParseError(line_no, "malformed header, trailing token `" + extra + "`");
            n = static_cast<std::size_t>(nn);
            m = static_cast<std::size_t>(mm);
            directed = kind == "d";
            have_header = true;
            continue;
        }

        long long a = 0, b = 0;
        std::string extra;
        std::istringstream edge_in(line);
        if (!(edge_in >> a >> b) || (edge_in >> extra))
            throw ParseError(line_no, "malformed edge line `" + line + "`");
        if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n || static_cast<std::size_t>(b) > n)
            throw ParseError(line_no, "endpoint out of range in edge `" + line + "`");
        if (a == b)
            throw ParseError(line_no, "self-loop at vertex " + std::to_string(a));
        Vertex u = static_cast<Vertex>(a - 1), v = static_cast<Vertex>(b - 1);
        if (!directed && u > v)
            std::swap(u, v);
        edges.emplace_back(u, v);
        edge_lines.push_back(line_no);
    }
    if (!have_header)
        throw ParseError(line_no, "missing header `p graph <n> <m> <u|d>`");

    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return edges[x] < edges[y]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges[order[i]] == edges[order[i - 1]])
            throw ParseError(edge_lines[order[i]],
                             "duplicate edge " + edge_text(edges[order[i]].first, edges[order[i]].second));
    if (edges.size() != m)
        throw ParseError(line_no, "header declares " + std::to_string(m) + " edges but " +
                                      std::to_string(edges.size()) + " were given");
    return Graph(n, std::move(edges), directed);
}

std::string serialize_graph(const Graph &g) {
    std::string out = "p graph " + std::to_string(g.num_vertices()) + " " +
                      std::to_string(g.num_edges()) + (g.directed() ? " d\n" : " u\n");
    for (auto [a, b] : g.edges())
        out += edge_text(a, b) + "\n";
    return out;
}

std::vector<Vertex> check_dag(const Graph &g) {
    const auto n = g.num_vertices();
    std::vector<std::size_t> indegree(n, 0);
    for (auto [a, b] : g.edges())
        ++indegree[b];
    if (!g.directed() && g.num_edges() > 0)
        throw InvalidArgument("check_dag requires a directed graph");

    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < n; ++v)
        if (indegree[v] == 0)
            ready.push(v);
    std::vector<Vertex> order;
    order.reserve(n);
    while (!ready.empty()) {
        auto v = ready.top();
        ready.pop();
        order.push_back(v);
        for (auto w : g.successors(v))
            if (--indegree[w] == 0)
                ready.push(w);
    }
    if (order.size() == n)
        return order;

    // Every leftover vertex has a leftover predecessor; walking predecessors
    // must revisit a vertex.
    std::vector<std::size_t> seen_at(n, n);
    Vertex v = n;
    for (Vertex u = 0; u < n; ++u)
        if (indegree[u] > 0) {
            v = u;
            break;
        }
    std::vector<Vertex> walk;
    while (seen_at[v] == n) {
        seen_at[v] = walk.size();
        walk.push_back(v);
        for (auto p : g.predecessors(v))
            if (indegree[p] > 0) {
                v = p;
                break;
            }
    }
    std::vector<Vertex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    throw CycleFound(std::move(cycle));
}

GraphFamily parse_family(std::string_view name) {
    if (name == "path") return GraphFamily::path;
    if (name == "cycle") return GraphFamily::cycle;
    if (name == "complete") return GraphFamily::complete;
    if (name == "grid") return GraphFamily::grid;
    if (name == "chain_dag") return GraphFamily::chain_dag;
    if (name == "antichain_dag") return GraphFamily::antichain_dag;
    if (name == "edgeless") return GraphFamily::edgeless;
    throw InvalidArgument("unknown graph family `" + std::string(name) + "`");
}

std::string_view family_name(GraphFamily family) {
    switch (family) {
    case GraphFamily::path: return "path";
    case GraphFamily::cycle: return "cycle";
    case GraphFamily::complete: return "complete";
    case GraphFamily::grid: return "grid";
    case GraphFamily::chain_dag: return "chain_dag";
    case GraphFamily::antichain_dag: return "antichain_dag";
    case GraphFamily::edgeless: return "edgeless";
    }
    return "?";
}

Graph generate(GraphFamily family, std::span<const std::size_t> sizes) {
    const std::size_t wanted = family == GraphFamily::grid ? 2 : 1;
    if (sizes.size() != wanted)
        throw InvalidArgument(std::string(family_name(family)) + " takes " + std::to_string(wanted) +
                              " size parameter(s)");
    for (auto s : sizes)
        if (s < 1)
            throw InvalidArgument("graph sizes must be at least 1");

    switch (family) {
    case GraphFamily::path: return path_graph(sizes[0]);
    case GraphFamily::cycle: return cycle_graph(sizes[0]);
    case GraphFamily::complete: return complete_graph(sizes[0]);
    case GraphFamily::grid: return grid_graph(sizes[0], sizes[1]);
    case GraphFamily::chain_dag: return chain_dag(sizes[0]);
    case GraphFamily::antichain_dag: return antichain_dag(sizes[0]);
    case GraphFamily::edgeless: return edgeless_graph(sizes[0]);
    }
    throw InvalidArgument("unknown graph family");
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.emplace_back(v - 1, v);
    return Graph(n, std::move(edges), false);
}

Graph cycle_graph(std::size_t n) {
    if (n < 3)
        throw InvalidArgument("cycle requires at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges), false);
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            edges.emplace_back(a, b);
    return Graph(n, std::move(edges), false);
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
    std::vector<Edge> edges;
    auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows)
                edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, std::move(edges), false);
}

Graph chain_dag(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.emplace_back(v - 1, v);
    return Graph(n, std::move(edges), true);
}

Graph antichain_dag(std::size_t n) { return Graph(n, {}, true); }

Graph edgeless_graph(std::size_t n) { return Graph(n, {}, false); }

} // namespace pwcount
