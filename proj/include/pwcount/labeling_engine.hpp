#pragma once

#include "pwcount/errors.hpp"
#include "pwcount/graph.hpp"
#include "pwcount/labeling_problem.hpp"
#include "pwcount/path_decomposition.hpp"
#include "pwcount/random.hpp"

#include <vector>

namespace pwcount {

// Counts for every labeling of one bag. Entry `code` belongs to the labeling
// giving bag[j] the j-th base-c digit of code.
struct LayerTable {
    std::vector<Vertex> bag;
    std::vector<Count> counts;

    Count total() const;
};

// Every layer of one forward pass: layers[t] is the table after event t,
// layers[0] the one-entry table of the empty bag.
struct DPTrace {
    std::vector<Event> events;
    std::vector<LayerTable> layers;
};

// Dynamic program over a nice path decomposition. Construction validates the
// inputs once (InvalidDecomposition, ProblemGraphMismatch, NotADag when the
// problem requires a DAG); the object then answers any number of counting
// queries, reusing its table storage. The graph and decomposition must
// outlive the counter.
class LabelingCounter {
public:
    LabelingCounter(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob);
    LabelingCounter(const Graph &&, const NicePathDecomposition &, const LabelingProblem &) = delete;
    LabelingCounter(const Graph &, const NicePathDecomposition &&, const LabelingProblem &) = delete;

    const Graph &graph() const noexcept { return g_; }
    const NicePathDecomposition &decomposition() const noexcept { return npd_; }
    const LabelingProblem &problem() const noexcept { return prob_; }

    Count count();
    // Valid labelings agreeing with `fixed` on its assigned vertices.
    Count count_extensions(const PartialLabeling &fixed);
    DPTrace trace(const PartialLabeling *fixed = nullptr);

private:
    template <typename OnLayer>
    void forward(const PartialLabeling *fixed, OnLayer &&on_layer);
    void check_partial(const PartialLabeling &fixed) const;

    const Graph &g_;
    const NicePathDecomposition &npd_;
    LabelingProblem prob_;
    std::vector<std::size_t> pow_;
    std::vector<Vertex> bag_, next_bag_;
    std::vector<Count> cur_, nxt_;
};

Count count_valid_labelings(const Graph &g, const NicePathDecomposition &npd,
                            const LabelingProblem &prob);

Count count_extensions(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob,
                       const PartialLabeling &fixed);

// Sequential self-reducible sampler: vertices 0..n-1 in turn, each label
// drawn in proportion to its number of valid extensions (n*c counting passes).
// Throws NoValidLabeling when the instance has no valid labeling.
Labeling sample_labeling(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob,
                         Rng &rng);

// sample_labeling with the uniform draws made by below(bound), which returns a
// Count in [0, bound).
template <typename Below>
Labeling sample_labeling_with(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob,
                              Below &&below);

// Keeps one forward trace and samples by replaying the events backwards: at
// each removal the departing vertex gets a label in proportion to the stored
// counts. Same distribution as sample_labeling.
class TraceSampler {
public:
    TraceSampler(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob);

    const Count &total() const { return trace_.layers.back().counts.front(); }
    const DPTrace &trace() const noexcept { return trace_; }

    Labeling sample(Rng &rng) const;
    template <typename Below>
    Labeling sample_with(Below &&below) const;

private:
    std::size_t n_;
    Label c_;
    DPTrace trace_;
};

Labeling sample_labeling_fast(const Graph &g, const NicePathDecomposition &npd,
                              const LabelingProblem &prob, Rng &rng);

template <typename Below>
Labeling sample_labeling_with(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob,
                              Below &&below) {
    LabelingCounter counter(g, npd, prob);
    const Label c = prob.alphabet_size();
    PartialLabeling partial(g.num_vertices());
    std::vector<Count> extensions(c);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        Count total = 0;
        for (Label sigma = 0; sigma < c; ++sigma) {
            extensions[sigma] = counter.count_extensions(partial.with(v, sigma));
            total += extensions[sigma];
        }
        if (sgn(total) == 0)
            throw NoValidLabeling();
        partial.assign(v, static_cast<Label>(bucket_of(extensions, below(total))));
    }
    Labeling result(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        result[v] = *partial[v];
    return result;
}

template <typename Below>
Labeling TraceSampler::sample_with(Below &&below) const {
    if (sgn(total()) == 0)
        throw NoValidLabeling();
    Labeling labels(n_, 0);
    const std::size_t c = c_;
    std::vector<Count> weights(c);
    for (std::size_t t = trace_.events.size(); t > 0; --t) {
        const auto [kind, v] = trace_.events[t - 1];
        if (kind == EventKind::insert)
            continue; // v was labelled at its removal, which comes later
        // Before the removal v sat in the bag; everyone else in it is labelled.
        const LayerTable &before = trace_.layers[t - 1];
        std::size_t base = 0, place = 1, v_place = 0;
        for (auto w : before.bag) {
            if (w == v)
                v_place = place;
            else
                base += labels[w] * place;
            place *= c;
        }
        Count sum = 0;
        for (std::size_t sigma = 0; sigma < c; ++sigma) {
            weights[sigma] = before.counts[base + sigma * v_place];
            sum += weights[sigma];
        }
        labels[v] = static_cast<Label>(bucket_of(weights, below(sum)));
    }
    return labels;
}

} // namespace pwcount
