#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pwcount {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple graph on vertices 0..n-1, directed or undirected. Immutable after
// construction. Undirected edges are stored with tail < head; the edge list is
// kept sorted.
class Graph {
public:
    Graph() = default;

    // Throws InvalidArgument on out-of-range endpoints, self-loops and
    // duplicate edges.
    Graph(std::size_t n, std::vector<Edge> edges, bool directed);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    bool directed() const noexcept { return directed_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }

    // Neighbors in the undirected view, sorted.
    std::span<const Vertex> neighbors(Vertex v) const { return neighbors_[v]; }
    // Out-/in-neighbors; for undirected graphs both equal neighbors().
    std::span<const Vertex> successors(Vertex v) const;
    std::span<const Vertex> predecessors(Vertex v) const;

    std::size_t degree(Vertex v) const { return neighbors_[v].size(); }

    // Directed: is there an edge u->v. Undirected: is {u,v} an edge.
    bool has_edge(Vertex u, Vertex v) const;
    // Adjacent in the undirected view.
    bool adjacent(Vertex u, Vertex v) const;

    // Subgraph induced by `keep`, relabelled to 0..|keep|-1 in the given order.
    Graph induced_subgraph(std::span<const Vertex> keep) const;

    // Same vertices, every edge made undirected (antiparallel pairs merge).
    Graph undirected_view() const;

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    std::size_t n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
};

// .gr text format: `p graph <n> <m> <u|d>` then m lines `<a> <b>` (1-indexed),
// `c` comment lines anywhere. Throws ParseError naming the offending line.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph &g);

// Topological order of a DAG; among available vertices the smallest id comes
// first. Throws CycleFound with one directed cycle otherwise.
std::vector<Vertex> check_dag(const Graph &g);

enum class GraphFamily { path, cycle, complete, grid, chain_dag, antichain_dag, edgeless };

GraphFamily parse_family(std::string_view name);
std::string_view family_name(GraphFamily family);

// Deterministic generators. grid takes (rows, cols); all others take one size.
Graph generate(GraphFamily family, std::span<const std::size_t> sizes);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph grid_graph(std::size_t rows, std::size_t cols);
Graph chain_dag(std::size_t n);
Graph antichain_dag(std::size_t n);
Graph edgeless_graph(std::size_t n);

} // namespace pwcount
