#pragma once

#include "vrc/complex.hpp"
#include "vrc/simplex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vrc {

/// A regular interval [rho, phi] = { psi : rho <= psi <= phi } in the face
/// poset, with rho a proper face of phi.
struct GradientInterval {
    Simplex rho, phi;
};

/// A facet pairing: each simplex appears in at most one pair.
struct MatchedPair {
    Simplex sigma, tau;
};

struct Matching {
    std::vector<MatchedPair> pairs;

    bool covers(const Simplex& s) const;
    size_t size() const { return pairs.size(); }
};

/// A discrete gradient as a set of regular intervals. Critical simplices
/// are implicit: everything of the host complex in no interval.
class DiscreteGradient {
public:
    DiscreteGradient() = default;

    /// Throws Error(Precondition) unless rho is a proper face of phi.
    void add(Simplex rho, Simplex phi);
    void add(GradientInterval interval) { add(std::move(interval.rho), std::move(interval.phi)); }

    static DiscreteGradient from_matching(const Matching& m);

    const std::vector<GradientInterval>& intervals() const { return intervals_; }
    size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }

    /// Total number of simplices in all intervals (assuming disjointness).
    long long covered_count() const;

private:
    std::vector<GradientInterval> intervals_;
};

/// All simplices of the interval, i.e. rho union S over subsets S of
/// phi \ rho. Guarded: throws Error(Budget) past 2^25 elements.
std::vector<Simplex> interval_simplices(const GradientInterval& interval);

struct CheckResult {
    bool pass = true;
    std::string witness;
};

struct GradientValidation {
    CheckResult disjoint;          // (a) intervals pairwise disjoint as simplex sets
    CheckResult regular;           // (b) rho a proper face of phi
    CheckResult contained;         // (c) intervals inside the host complex
    CheckResult covers_complement; // (d) union of intervals == K \ L (only if L given)
    CheckResult acyclic;           // (e) refined matching has no directed V-cycle
    CheckResult diam_compatible;   // (f) diam rho == diam phi per interval

    /// Checks (a)-(e); (f) is reported but only required for
    /// filtration-compatible gradients, which cone gradients are not
    /// below the contractibility threshold.
    bool pass() const {
        return disjoint.pass && regular.pass && contained.pass && covers_complement.pass &&
               acyclic.pass;
    }
    bool pass_with_diam() const { return pass() && diam_compatible.pass; }
};

/// Validates V as a discrete gradient on K; if L is given, additionally
/// checks that the intervals cover exactly K \ L. The vertex order drives
/// the minimal vertex refinement used for the acyclicity check.
GradientValidation validate_gradient(const SimplicialComplex& K, const DiscreteGradient& V,
                                     const SimplicialComplex* L, const VertexOrder& order);

/// Splits every interval [rho, phi] into facet pairs along the minimal
/// vertex of phi \ rho under the given order.
Matching minimal_vertex_refinement(const DiscreteGradient& V, const VertexOrder& order);

/// Acyclicity of a facet matching on K (V-path cycle detection).
CheckResult matching_acyclic(const SimplicialComplex& K, const Matching& m);

struct MergePart {
    SimplicialComplex complex;
    DiscreteGradient gradient;
    std::string label;
};

/// Union of per-subcomplex gradients. Verifies, exhaustively over the
/// simplices of the union, that every simplex has a unique minimal part
/// containing it and is critical for the gradients of all other parts;
/// throws Error(Precondition) with a witness otherwise.
DiscreteGradient merge_gradients(const std::vector<MergePart>& parts);

/// Simplices of K in no interval of V, deterministically ordered.
std::vector<Simplex> critical_cells(const DiscreteGradient& V, const SimplicialComplex& K);

struct RefinementReport {
    bool contained = true;  // every fine interval lies inside a coarse interval
    bool partitions = true; // the fine intervals exactly partition each coarse interval
    std::string witness;

    bool pass() const { return contained && partitions; }
};

/// Checks that `fine` refines `coarse`: every fine interval sits inside
/// some coarse interval, and within each coarse interval the assigned fine
/// intervals partition it exactly.
RefinementReport refinement_check(const DiscreteGradient& coarse, const DiscreteGradient& fine,
                                  const std::vector<std::string>& names);
RefinementReport refinement_check(const DiscreteGradient& coarse, const Matching& fine,
                                  const std::vector<std::string>& names);

} // namespace vrc
