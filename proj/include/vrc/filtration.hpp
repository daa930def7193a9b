#pragma once

#include "vrc/complex.hpp"
#include "vrc/simplex.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace vrc {

/// The diameter-lexicographic total order on the simplices of a complex:
/// by diameter level, then dimension, then lexicographically under the
/// vertex order (or reverse-colexicographically, matching computations
/// that enumerate simplices from the top).
class Filtration {
public:
    Filtration(const SimplicialComplex& K, VertexOrder order, LexMode mode = LexMode::Lex);

    const SimplicialComplex& complex() const { return *K_; }
    const FiniteMetricSpace& space() const { return K_->space(); }
    const VertexOrder& vertex_order() const { return order_; }
    LexMode mode() const { return mode_; }

    int size() const { return static_cast<int>(sorted_.size()); }
    const Simplex& at(int position) const { return sorted_[static_cast<size_t>(position)]; }
    int position_of(const Simplex& s) const;
    int level_at(int position) const { return level_[static_cast<size_t>(position)]; }
    const Rational& diameter_at(int position) const { return diam_[static_cast<size_t>(position)]; }
    int level_of(const Simplex& s) const { return level_at(position_of(s)); }
    const Rational& diameter_of(const Simplex& s) const { return diameter_at(position_of(s)); }

    /// Strict total order; 0 only for identical simplices.
    int compare(const Simplex& a, const Simplex& b) const;

    /// Facet of tau maximal in the filtration order.
    Simplex maximal_facet(const Simplex& tau) const;
    /// Cofacet of sigma minimal in the filtration order, if any exists.
    std::optional<Simplex> minimal_cofacet(const Simplex& sigma) const;

private:
    const SimplicialComplex* K_;
    VertexOrder order_;
    LexMode mode_;
    std::vector<Simplex> sorted_;
    std::unordered_map<Simplex, int, SimplexHash> position_;
    std::vector<int> level_;
    std::vector<Rational> diam_;
};

int diam_lex_compare(const Simplex& a, const Simplex& b, const Filtration& F);

/// Golden-test dump: one simplex per line, "v0 v1 ... vk : diameter",
/// in filtration order.
std::string dump_complex(const Filtration& F);

} // namespace vrc
