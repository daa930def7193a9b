#pragma once

#include "vrc/metric.hpp"
#include "vrc/rational.hpp"
#include "vrc/simplex.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

namespace vrc {

inline constexpr long long kDefaultSimplexBudget = 10'000'000;

/// A finite simplicial complex over the points of a metric space.
/// Simplices are stored explicitly; closure under faces is an invariant of
/// the construction functions, not re-checked on every mutation.
class SimplicialComplex {
public:
    explicit SimplicialComplex(const FiniteMetricSpace& space,
                               std::optional<int> dim_cap = std::nullopt)
        : space_(&space), dim_cap_(dim_cap) {}

    const FiniteMetricSpace& space() const { return *space_; }
    std::optional<int> dim_cap() const { return dim_cap_; }

    bool contains(const Simplex& s) const { return set_.count(s) > 0; }
    void insert(Simplex s) { set_.insert(std::move(s)); }
    void erase(const Simplex& s) { set_.erase(s); }
    size_t size() const { return set_.size(); }

    const std::unordered_set<Simplex, SimplexHash>& simplices() const { return set_; }
    /// Deterministic enumeration: by cardinality, then canonical vertex order.
    std::vector<Simplex> sorted_simplices() const;

    Rational diameter(const Simplex& s) const;

    /// Codimension-1 cofaces present in the complex. Candidates are vertices
    /// within the diameter threshold of every vertex of s when a threshold
    /// is known; membership is always checked.
    std::vector<Simplex> cofacets(const Simplex& s) const;

    /// True if every nonempty proper subset of every simplex is present.
    bool is_closed() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.set_ == b.set_;
    }

private:
    const FiniteMetricSpace* space_;
    std::optional<int> dim_cap_;
    std::unordered_set<Simplex, SimplexHash> set_;
};

/// All nonempty subsets of diameter <= t (up to dim_cap), by clique
/// expansion of the t-neighborhood graph. Throws Error(Budget) if more
/// than `budget` simplices would be materialized.
SimplicialComplex vietoris_rips(const FiniteMetricSpace& X, const Rational& t,
                                std::optional<int> dim_cap = std::nullopt,
                                long long budget = kDefaultSimplexBudget);

/// One-dimensional complex: all vertices plus the tree edges of length <= t.
SimplicialComplex subforest(const WeightedTree& tree, const FiniteMetricSpace& X,
                            const Rational& t);

long long euler_characteristic(const SimplicialComplex& K);

/// Keeps the simplices satisfying the predicate (the caller is responsible
/// for the result being subset-closed).
SimplicialComplex filtered_copy(const SimplicialComplex& K,
                                const std::function<bool(const Simplex&)>& keep);

} // namespace vrc
