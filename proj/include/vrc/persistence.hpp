#pragma once

#include "vrc/filtration.hpp"
#include "vrc/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vrc {

struct BarInterval {
    Rational birth;
    std::optional<Rational> death; // nullopt = essential class
};

struct Barcode {
    /// Positive-length and essential intervals per degree.
    std::map<int, std::vector<BarInterval>> intervals;
    /// Intervals with birth and death at the same diameter level; these are
    /// the zero persistence pairs and are excluded from the default report.
    std::map<int, std::vector<BarInterval>> zero_length;
};

struct ReductionStats {
    long long columns = 0;
    long long apparent_skipped = 0; // columns resolved through the apparent pairs matching
    long long additions = 0;        // column additions over Z/2
    long long critical = 0;         // essential columns (reduce to zero, never claimed)
    /// Additions attributed to the degree of the pair the column computes:
    /// dim-1 for a death column, dim for a birth column.
    std::map<int, long long> additions_by_degree;
};

struct PersistenceResult {
    Barcode barcode;
    ReductionStats stats;
};

/// Standard Z/2 boundary-matrix reduction in filtration order. With the
/// shortcut enabled, a column that is the tau of an apparent pair keeps its
/// unreduced boundary (its pivot is the sigma partner), and a column that
/// is the sigma of an apparent pair is cleared; both cost zero additions.
/// Degrees above max_degree are reduced (their columns kill max_degree
/// classes) but not reported.
PersistenceResult persistent_homology(const Filtration& F, int max_degree,
                                      bool apparent_shortcut = true);

/// Betti numbers over Z/2 by Gaussian elimination on the boundary maps.
/// Independent of the reduction path above; used to confirm collapse
/// invariance. Throws Error(Budget) past `budget` simplices.
std::vector<long long> homology_oracle(const SimplicialComplex& K, long long budget = 5000);

struct H1SurjectivityResult {
    bool ok = true;
    std::optional<BarInterval> witness;
};

/// True iff no positive-length or essential degree-1 interval is born
/// strictly above 2*nu; equivalent to surjectivity of all structure maps
/// H1(VR_t) -> H1(VR_u) for 2*nu < t < u.
H1SurjectivityResult h1_surjectivity_check(const Barcode& barcode, const Rational& nu);

} // namespace vrc
