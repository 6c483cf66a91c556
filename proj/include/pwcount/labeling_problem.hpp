#pragma once

#include "pwcount/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwcount {

using Label = std::uint32_t;

// An edge-universal labeling problem: labels 0..c-1 and a c x c predicate
// evaluated on every edge as P(label(tail), label(head)). Undirected problems
// carry a symmetric table.
class LabelingProblem {
public:
    // Throws DimensionMismatch unless table has c*c entries (row-major) and
    // AsymmetricUndirectedPredicate for an asymmetric undirected table.
    LabelingProblem(Label c, std::vector<bool> table, bool directed, std::string name);

    Label alphabet_size() const noexcept { return c_; }
    bool directed() const noexcept { return directed_; }
    const std::string &name() const noexcept { return name_; }

    bool allows(Label tail, Label head) const { return table_[tail * c_ + head] != 0; }

    // Engines refuse cyclic graphs for such problems (the downset built-in).
    bool requires_dag() const noexcept { return requires_dag_; }
    void set_requires_dag(bool value) noexcept { requires_dag_ = value; }

private:
    Label c_;
    std::vector<std::uint8_t> table_;
    bool directed_;
    bool requires_dag_ = false;
    std::string name_;
};

LabelingProblem coloring(Label c);
LabelingProblem independent_set();
LabelingProblem downset();

// Wraps a row-major table; table.size() must be c rows of c entries.
LabelingProblem custom_problem(Label c, const std::vector<std::vector<bool>> &table, bool directed,
                               std::string name);

// Custom predicate file: `c <c> <u|d>` then c lines of c bits.
LabelingProblem parse_problem(std::string_view text, std::string name = "custom");

// Every vertex assigned a label below c.
using Labeling = std::vector<Label>;

class PartialLabeling {
public:
    explicit PartialLabeling(std::size_t n = 0) : values_(n) {}

    std::size_t size() const noexcept { return values_.size(); }
    const std::optional<Label> &operator[](Vertex v) const { return values_[v]; }

    void assign(Vertex v, Label label) { values_[v] = label; }
    void unassign(Vertex v) { values_[v].reset(); }

    // A copy with v mapped to label (K ∪ {v ↦ σ}).
    PartialLabeling with(Vertex v, Label label) const {
        auto copy = *this;
        copy.assign(v, label);
        return copy;
    }

    bool extends_to(const Labeling &labeling) const;

private:
    std::vector<std::optional<Label>> values_;
};

// Throws ProblemGraphMismatch when the problem's orientation semantics differ
// from the graph's.
void require_compatible(const Graph &g, const LabelingProblem &prob);

// True iff every edge satisfies the predicate. Throws ProblemGraphMismatch on
// orientation mismatch and InvalidArgument on a wrong-length labeling or a
// label outside the alphabet.
bool check_labeling(const Graph &g, const LabelingProblem &prob, const Labeling &labeling);

} // namespace pwcount
