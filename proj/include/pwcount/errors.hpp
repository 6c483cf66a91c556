#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwcount {

// Every domain failure raised by the library derives from Error. kind() is a
// stable machine-readable tag (the CLI emits it in structured error output).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string &message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string &kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &what)
        : Error("ParseError", "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string &what) : Error("InvalidArgument", what) {}
};

class CycleFound : public Error {
public:
    explicit CycleFound(std::vector<std::size_t> cycle, std::string kind = "CycleFound")
        : Error(std::move(kind), describe(cycle)), cycle_(std::move(cycle)) {}

    // Vertices of one directed cycle, in edge order, starting at its smallest vertex.
    const std::vector<std::size_t> &cycle() const noexcept { return cycle_; }

private:
    static std::string describe(const std::vector<std::size_t> &cycle) {
        std::string s = "directed cycle:";
        for (auto v : cycle)
            s += " " + std::to_string(v);
        return s;
    }

    std::vector<std::size_t> cycle_;
};

// Raised by the downset engines when the input digraph is cyclic.
class NotADag : public CycleFound {
public:
    explicit NotADag(std::vector<std::size_t> cycle) : CycleFound(std::move(cycle), "NotADAG") {}
};

class InvalidDecomposition : public Error {
public:
    explicit InvalidDecomposition(const std::string &what) : Error("InvalidDecomposition", what) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string &what) : Error("BudgetExceeded", what) {}
};

class ProblemGraphMismatch : public Error {
public:
    explicit ProblemGraphMismatch(const std::string &what) : Error("ProblemGraphMismatch", what) {}
};

class AsymmetricUndirectedPredicate : public Error {
public:
    explicit AsymmetricUndirectedPredicate(const std::string &what)
        : Error("AsymmetricUndirectedPredicate", what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string &what) : Error("DimensionMismatch", what) {}
};

class NoValidLabeling : public Error {
public:
    NoValidLabeling() : Error("NoValidLabeling", "the instance admits no valid labeling") {}
};

class DirectedGraph : public Error {
public:
    DirectedGraph() : Error("DirectedGraph", "clique counting requires an undirected graph") {}
};

class NotADownset : public Error {
public:
    explicit NotADownset(const std::string &what) : Error("NotADownset", what) {}
};

class MissingObjective : public Error {
public:
    MissingObjective() : Error("MissingObjective", "instance carries no objective rankings") {}
};

} // namespace pwcount
