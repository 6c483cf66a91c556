#pragma once

#include "pwcount/graph.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwcount {

// Sequence of bags. Bags are kept sorted and duplicate-free.
struct PathDecomposition {
    std::vector<std::vector<Vertex>> bags;

    // Largest bag size minus one; 0 when there are no nonempty bags.
    int width() const;

    friend bool operator==(const PathDecomposition &, const PathDecomposition &) = default;
};

enum class Violation {
    none,
    vertex_out_of_range, // witness: the offending bag entry
    missing_vertex,      // witness: a vertex in no bag
    uncovered_edge,      // witness: an edge no bag contains
    interval_gap,        // witness: a vertex whose bags are not contiguous
};

struct ValidationReport {
    Violation violation = Violation::none;
    int width = -1;
    Vertex vertex = 0;
    Edge edge{0, 0};

    bool ok() const noexcept { return violation == Violation::none; }
    std::string describe() const;
};

ValidationReport validate(const Graph &g, const PathDecomposition &pd);

enum class EventKind : std::uint8_t { insert, remove };

struct Event {
    EventKind kind;
    Vertex vertex;

    friend bool operator==(const Event &, const Event &) = default;
};

// 2n insert/remove events; the bag after event t is the set of vertices
// inserted but not yet removed.
struct NicePathDecomposition {
    std::vector<Event> events;
    int width = 0;

    std::size_t num_vertices() const noexcept { return events.size() / 2; }
    // Bag after each event, 0..2n (index 0 is the empty bag before event 1).
    std::vector<std::vector<Vertex>> bags() const;

    friend bool operator==(const NicePathDecomposition &, const NicePathDecomposition &) = default;
};

// Throws InvalidDecomposition if pd does not validate for g.
NicePathDecomposition to_nice(const Graph &g, const PathDecomposition &pd);

// Checks the event invariants (each vertex inserted once then removed once,
// recorded width correct) and that every edge of g shares a bag. Throws
// InvalidDecomposition with the first problem found.
void validate_nice(const Graph &g, const NicePathDecomposition &npd);

// Closed 1-based event interval [first, last] during which the vertex sits in
// the bag: first is its insertion index, last is its removal index minus one.
struct Interval {
    std::size_t first;
    std::size_t last;

    friend bool operator==(const Interval &, const Interval &) = default;
};

std::vector<Interval> intervals(const NicePathDecomposition &npd);

struct SearchBudget {
    std::uint64_t max_nodes = 20'000'000;
    // Zero means no wall-clock limit.
    std::chrono::milliseconds max_time{0};
};

// Exact decision: a decomposition of width <= max_width if and only if
// pw(g) <= max_width. Searches vertex layouts of each connected component with
// bounded vertex separation. Throws BudgetExceeded when the budget runs out,
// or when a component has more than 64 vertices.
std::optional<PathDecomposition> find_decomposition(const Graph &g, int max_width,
                                                    const SearchBudget &budget = {});

// Minimum-width decomposition: tries widths upward from 0 and stops at the
// greedy width, which is optimal once every smaller width is refuted.
PathDecomposition optimal_decomposition(const Graph &g, const SearchBudget &budget = {});

// Min-boundary layout heuristic. Deterministic; width is an upper bound on pw.
PathDecomposition greedy_decomposition(const Graph &g);

// Bags of a vertex layout: bag i holds layout[i] plus every earlier vertex
// that still has a neighbor at position >= i.
PathDecomposition layout_to_decomposition(const Graph &g, const std::vector<Vertex> &layout);

// .pd text: `s pd <r> <width+1> <n>` then r lines `b <i> <v...>` (1-indexed).
PathDecomposition parse_decomposition(std::string_view text, std::size_t expected_vertices);
std::string serialize_decomposition(const PathDecomposition &pd, std::size_t num_vertices);

} // namespace pwcount
