#pragma once

#include "vrc/complex.hpp"
#include "vrc/filtration.hpp"
#include "vrc/gradient.hpp"
#include "vrc/invariants.hpp"
#include "vrc/metric.hpp"

#include <optional>
#include <vector>

namespace vrc {

/// The unique maximal simplex of VR_{r}(X) \ VR_{<r}(X) containing the
/// edge e = {x,y} at distance r: the span of B_r(x) & B_r(y). For a tree
/// edge this is e itself. Throws Error(Precondition) when the ball
/// intersection has diameter exceeding r (X is then not a tree metric).
Simplex max_simplex_of_edge(const FiniteMetricSpace& X, const Simplex& e);

/// Gradient {[e, Delta_e]} over the non-tree edges of a generic tree
/// metric (all positive pairwise distances distinct; checked).
DiscreteGradient generic_gradient(const FiniteMetricSpace& X, const WeightedTree& tree);

/// Order-independent gradient: per diameter level and maximal simplex
/// Delta, the intervals [U, U | L_Delta] over the distinct unions U of
/// nonempty subsets of E_Delta.
DiscreteGradient canonical_gradient(const FiniteMetricSpace& X, const WeightedTree& tree);

/// Coarsening of the canonical gradient along a total vertex order:
/// per maximal simplex, intervals [e_i, Sigma_i] with Sigma_i the union of
/// the simplices whose lexicographically maximal E_Delta-edge is e_i.
DiscreteGradient perturbed_gradient(const FiniteMetricSpace& X, const WeightedTree& tree,
                                    const VertexOrder& order);

/// All pairs (sigma, tau) with sigma the maximal facet of tau and tau the
/// minimal cofacet of sigma in the filtration order, enumerated in
/// filtration order of tau.
Matching apparent_pairs(const Filtration& F);
/// The subset with diam sigma == diam tau (same level).
Matching zero_persistence_apparent_pairs(const Filtration& F);

struct ConeStratum {
    int position = 0;      // index i in the distance-to-p order
    int vertex = 0;        // x_i
    int apex = 0;          // p or the selected z
    long long pairs = 0;
};

struct ConeGradientResult {
    DiscreteGradient gradient;
    SimplicialComplex complex;       // VR_t(X)
    VertexOrder cone_order;          // by distance to the base point, ties by index
    std::vector<ConeStratum> strata; // nonempty strata only
    int base_point = 0;
    Rational threshold;              // 4*delta + 2*nu
};

/// Discrete gradient collapsing VR_t(X) to the base point, built stratum
/// by stratum with a combinatorial apex check. Requires t >= 4*delta+2*nu
/// unless `force` is set; throws Error(NoApex) when a stratum admits no
/// apex (unreachable when the threshold condition holds).
ConeGradientResult cone_gradient(const FiniteMetricSpace& X, const Rational& t, int base_point,
                                 bool force = false,
                                 long long budget = kDefaultSimplexBudget);

struct FilteredConeResult {
    DiscreteGradient gradient; // merged over the base and all levels
    Rational threshold;        // 4*delta + 2*nu
    int base_level;            // largest level index with r_m <= threshold
    ConeGradientResult base;   // cone gradient on VR_threshold
    std::vector<std::pair<int, DiscreteGradient>> level_gradients; // (m, W_m), r_m > threshold
    SimplicialComplex full;    // VR at the top level
};

/// The filtration-compatible gradient of the collapses
/// VR_u -> VR_t -> {*} for u > t >= 4*delta+2*nu: a base cone gradient
/// below the threshold plus one zero-persistence gradient per level above.
FilteredConeResult filtered_cone_gradient(const FiniteMetricSpace& X, int base_point = 0,
                                          long long budget = kDefaultSimplexBudget);

} // namespace vrc
