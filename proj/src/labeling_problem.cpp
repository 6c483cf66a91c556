#include "pwcount/labeling_problem.hpp"

#include "pwcount/errors.hpp"

#include <sstream>

namespace pwcount {

LabelingProblem::LabelingProblem(Label c, std::vector<bool> table, bool directed, std::string name)
    : c_(c), directed_(directed), name_(std::move(name)) {
    if (c == 0)
        throw InvalidArgument("alphabet size must be at least 1");
    if (table.size() != static_cast<std::size_t>(c) * c)
        throw DimensionMismatch("predicate table has " + std::to_string(table.size()) +
                                " entries, expected " + std::to_string(c) + "x" + std::to_string(c));
    table_.assign(table.begin(), table.end());
    if (!directed_)
        for (Label a = 0; a < c_; ++a)
            for (Label b = a + 1; b < c_; ++b)
                if (allows(a, b) != allows(b, a))
                    throw AsymmetricUndirectedPredicate(
                        "P(" + std::to_string(a) + "," + std::to_string(b) + ") differs from P(" +
                        std::to_string(b) + "," + std::to_string(a) + ")");
}

LabelingProblem coloring(Label c) {
    if (c < 1)
        throw InvalidArgument("coloring needs at least one color");
    std::vector<bool> table(static_cast<std::size_t>(c) * c);
    for (Label a = 0; a < c; ++a)
        for (Label b = 0; b < c; ++b)
            table[a * c + b] = a != b;
    return LabelingProblem(c, std::move(table), false, "coloring:" + std::to_string(c));
}

LabelingProblem independent_set() {
    return LabelingProblem(2, {true, true, true, false}, false, "indep");
}

LabelingProblem downset() {
    // Row = tail label, column = head label; a head in the set forces its tail in.
    LabelingProblem p(2, {true, false, true, true}, true, "downset");
    p.set_requires_dag(true);
    return p;
}

LabelingProblem custom_problem(Label c, const std::vector<std::vector<bool>> &table, bool directed,
                               std::string name) {
    std::vector<bool> flat;
    if (table.size() != c)
        throw DimensionMismatch("predicate table has " + std::to_string(table.size()) +
                                " rows, expected " + std::to_string(c));
    for (const auto &row : table) {
        if (row.size() != c)
            throw DimensionMismatch("predicate row has " + std::to_string(row.size()) +
                                    " entries, expected " + std::to_string(c));
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return LabelingProblem(c, std::move(flat), directed, std::move(name));
}

LabelingProblem parse_problem(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<Label> c;
    bool directed = false;
    std::vector<std::vector<bool>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first))
            continue;
        if (!c) {
            long long value = 0;
            std::string kind, extra;
            if (first != "c" || !(tokens >> value >> kind) || value < 1 ||
                (kind != "u" && kind != "d") || (tokens >> extra))
                throw ParseError(line_no, "malformed header, expected `c <c> <u|d>`");
            c = static_cast<Label>(value);
            directed = kind == "d";
            continue;
        }
        std::vector<bool> row;
        for (std::istringstream bits(line); bits >> first;) {
            if (first != "0" && first != "1")
                throw ParseError(line_no, "predicate entries must be 0 or 1, got `" + first + "`");
            row.push_back(first == "1");
        }
        if (row.size() != *c)
            throw ParseError(line_no, "predicate row has " + std::to_string(row.size()) +
                                          " entries, expected " + std::to_string(*c));
        rows.push_back(std::move(row));
    }
    if (!c)
        throw ParseError(line_no, "missing header `c <c> <u|d>`");
    if (rows.size() != *c)
        throw ParseError(line_no, "expected " + std::to_string(*c) + " predicate rows, got " +
                                      std::to_string(rows.size()));
    return custom_problem(*c, rows, directed, std::move(name));
}

bool PartialLabeling::extends_to(const Labeling &labeling) const {
    if (labeling.size() != values_.size())
        return false;
    for (std::size_t v = 0; v < values_.size(); ++v)
        if (values_[v] && *values_[v] != labeling[v])
            return false;
    return true;
}

void require_compatible(const Graph &g, const LabelingProblem &prob) {
    if (prob.directed() != g.directed())
        throw ProblemGraphMismatch(std::string(prob.directed() ? "directed" : "undirected") +
                                   " problem `" + prob.name() + "` on " +
                                   (g.directed() ? "a directed" : "an undirected") + " graph");
}

bool check_labeling(const Graph &g, const LabelingProblem &prob, const Labeling &labeling) {
    require_compatible(g, prob);
    if (labeling.size() != g.num_vertices())
        throw InvalidArgument("labeling has " + std::to_string(labeling.size()) + " entries for " +
                              std::to_string(g.num_vertices()) + " vertices");
    for (auto label : labeling)
        if (label >= prob.alphabet_size())
            throw InvalidArgument("label " + std::to_string(label) + " outside the alphabet");
    for (auto [tail, head] : g.edges())
        if (!prob.allows(labeling[tail], labeling[head]))
            return false;
    return true;
}

} // namespace pwcount
