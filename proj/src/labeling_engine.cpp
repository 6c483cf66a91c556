#include "pwcount/labeling_engine.hpp"

#include "pwcount/errors.hpp"

#include <algorithm>
#include <limits>

namespace pwcount {

namespace {

// Largest table the engine will allocate (entries per layer).
constexpr std::size_t max_table_entries = std::size_t{1} << 28;

struct NeighborCheck {
    std::size_t place; // c^j for the neighbor's bag position j
    bool as_head;      // edge inserted -> neighbor: P(sigma, label)
    bool as_tail;      // edge neighbor -> inserted: P(label, sigma)
};

} // namespace

Count LayerTable::total() const {
    Count sum = 0;
    for (const auto &x : counts)
        sum += x;
    return sum;
}

LabelingCounter::LabelingCounter(const Graph &g, const NicePathDecomposition &npd,
                                 const LabelingProblem &prob)
    : g_(g), npd_(npd), prob_(prob) {
    validate_nice(g, npd);
    require_compatible(g, prob);
    if (prob.requires_dag()) {
        try {
            check_dag(g);
        } catch (const CycleFound &e) {
            throw NotADag(e.cycle());
        }
    }
    const std::size_t c = prob.alphabet_size();
    const std::size_t largest_bag = g.num_vertices() == 0 ? 0 : static_cast<std::size_t>(npd.width) + 1;
    pow_.assign(1, 1);
    for (std::size_t j = 0; j < largest_bag; ++j) {
        if (pow_.back() > max_table_entries / c)
            throw InvalidArgument("layer table of " + std::to_string(c) + "^" +
                                  std::to_string(largest_bag) + " entries is too large");
        pow_.push_back(pow_.back() * c);
    }
    cur_.resize(pow_.back());
    nxt_.resize(pow_.back());
}

void LabelingCounter::check_partial(const PartialLabeling &fixed) const {
    if (fixed.size() != g_.num_vertices())
        throw InvalidArgument("partial labeling has " + std::to_string(fixed.size()) +
                              " entries for " + std::to_string(g_.num_vertices()) + " vertices");
    for (Vertex v = 0; v < fixed.size(); ++v)
        if (fixed[v] && *fixed[v] >= prob_.alphabet_size())
            throw InvalidArgument("label " + std::to_string(*fixed[v]) + " outside the alphabet");
}

template <typename OnLayer>
void LabelingCounter::forward(const PartialLabeling *fixed, OnLayer &&on_layer) {
    const std::size_t c = prob_.alphabet_size();
    std::size_t size = 1;
    bag_.clear();
    cur_[0] = 1;
    on_layer(std::size_t{0}, bag_, std::span<const Count>(cur_.data(), size));

    std::vector<NeighborCheck> checks;
    std::vector<bool> usable(c);
    for (std::size_t t = 0; t < npd_.events.size(); ++t) {
        const auto [kind, v] = npd_.events[t];
        if (kind == EventKind::insert) {
            auto at = std::lower_bound(bag_.begin(), bag_.end(), v);
            const auto p = static_cast<std::size_t>(at - bag_.begin());
            next_bag_.assign(bag_.begin(), bag_.end());
            next_bag_.insert(next_bag_.begin() + static_cast<std::ptrdiff_t>(p), v);

            // Only edges between v and the current bag are decided here.
            checks.clear();
            for (std::size_t j = 0; j < next_bag_.size(); ++j) {
                if (j == p)
                    continue;
                const Vertex w = next_bag_[j];
                const bool head = g_.has_edge(v, w);
                const bool tail = g_.directed() && g_.has_edge(w, v);
                if (head || tail)
                    checks.push_back({pow_[j], head, tail});
            }
            std::size_t forced = c; // c: any label
            if (fixed && (*fixed)[v])
                forced = *(*fixed)[v];

            const std::size_t low = pow_[p];
            const std::size_t high = size / low;
            for (std::size_t hi = 0; hi < high; ++hi)
                for (std::size_t lo = 0; lo < low; ++lo) {
                    Count &src = cur_[lo + low * hi];
                    const bool alive = sgn(src) != 0;
                    std::size_t last = c;
                    for (std::size_t sigma = 0; sigma < c; ++sigma) {
                        bool ok = alive && (forced == c || forced == sigma);
                        const std::size_t code = lo + low * (sigma + c * hi);
                        for (std::size_t i = 0; ok && i < checks.size(); ++i) {
                            const auto label = static_cast<Label>((code / checks[i].place) % c);
                            const auto s = static_cast<Label>(sigma);
                            ok = (!checks[i].as_head || prob_.allows(s, label)) &&
                                 (!checks[i].as_tail || prob_.allows(label, s));
                        }
                        usable[sigma] = ok;
                        if (ok)
                            last = sigma;
                    }
                    for (std::size_t sigma = 0; sigma < c; ++sigma) {
                        Count &dst = nxt_[lo + low * (sigma + c * hi)];
                        if (!usable[sigma])
                            dst = 0;
                        else if (sigma == last)
                            dst.swap(src); // source table is discarded after this step
                        else
                            dst = src;
                    }
                }
            size *= c;
        } else {
            auto at = std::lower_bound(bag_.begin(), bag_.end(), v);
            const auto p = static_cast<std::size_t>(at - bag_.begin());
            next_bag_.assign(bag_.begin(), bag_.end());
            next_bag_.erase(next_bag_.begin() + static_cast<std::ptrdiff_t>(p));

            const std::size_t low = pow_[p];
            const std::size_t high = size / (low * c);
            for (std::size_t hi = 0; hi < high; ++hi)
                for (std::size_t lo = 0; lo < low; ++lo) {
                    Count &dst = nxt_[lo + low * hi];
                    dst.swap(cur_[lo + low * c * hi]);
                    for (std::size_t sigma = 1; sigma < c; ++sigma) {
                        const Count &term = cur_[lo + low * (sigma + c * hi)];
                        if (sgn(term) != 0)
                            dst += term;
                    }
                }
            size /= c;
        }
        std::swap(bag_, next_bag_);
        std::swap(cur_, nxt_);
        on_layer(t + 1, bag_, std::span<const Count>(cur_.data(), size));
    }
}

Count LabelingCounter::count() {
    forward(nullptr, [](std::size_t, const std::vector<Vertex> &, std::span<const Count>) {});
    return cur_[0];
}

Count LabelingCounter::count_extensions(const PartialLabeling &fixed) {
    check_partial(fixed);
    forward(&fixed, [](std::size_t, const std::vector<Vertex> &, std::span<const Count>) {});
    return cur_[0];
}

DPTrace LabelingCounter::trace(const PartialLabeling *fixed) {
    if (fixed)
        check_partial(*fixed);
    DPTrace result;
    result.events = npd_.events;
    result.layers.reserve(npd_.events.size() + 1);
    forward(fixed, [&](std::size_t, const std::vector<Vertex> &bag, std::span<const Count> counts) {
        result.layers.push_back({bag, std::vector<Count>(counts.begin(), counts.end())});
    });
    return result;
}

Count count_valid_labelings(const Graph &g, const NicePathDecomposition &npd,
                            const LabelingProblem &prob) {
    return LabelingCounter(g, npd, prob).count();
}

Count count_extensions(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob,
                       const PartialLabeling &fixed) {
    return LabelingCounter(g, npd, prob).count_extensions(fixed);
}

Labeling sample_labeling(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob,
                         Rng &rng) {
    return sample_labeling_with(g, npd, prob, [&](const Count &bound) { return uniform_below(rng, bound); });
}

TraceSampler::TraceSampler(const Graph &g, const NicePathDecomposition &npd, const LabelingProblem &prob)
    : n_(g.num_vertices()), c_(prob.alphabet_size()) {
    LabelingCounter counter(g, npd, prob);
    trace_ = counter.trace();
}

Labeling TraceSampler::sample(Rng &rng) const {
    return sample_with([&](const Count &bound) { return uniform_below(rng, bound); });
}

Labeling sample_labeling_fast(const Graph &g, const NicePathDecomposition &npd,
                              const LabelingProblem &prob, Rng &rng) {
    return TraceSampler(g, npd, prob).sample(rng);
}

} // namespace pwcount
