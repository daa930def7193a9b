#pragma once

#include "vrc/complex.hpp"
#include "vrc/gradient.hpp"

#include <string>
#include <vector>

namespace vrc {

struct CollapseStep {
    Simplex sigma, tau; // sigma free with unique proper coface tau at removal time
};

struct CollapseCertificate {
    std::string start_id, end_id;
    std::vector<CollapseStep> steps;
};

/// Executes the collapse K \searrow L encoded by the gradient: greedily
/// removes refined pairs whose sigma currently has tau as its unique proper
/// coface, re-verifying every step against the live complex. Throws
/// Error(Stuck) if no removable pair remains before reaching L.
CollapseCertificate collapse(const SimplicialComplex& K, const DiscreteGradient& V,
                             const SimplicialComplex& L, const VertexOrder& order,
                             std::string start_id = "K", std::string end_id = "L");

/// Same, from an explicit facet matching covering K \ L.
CollapseCertificate collapse_with_matching(const SimplicialComplex& K, const Matching& m,
                                           const SimplicialComplex& L,
                                           std::string start_id = "K", std::string end_id = "L");

/// Re-applies the steps to a fresh copy of K, verifying each elementary
/// collapse; returns the final complex.
SimplicialComplex replay(const SimplicialComplex& K, const CollapseCertificate& certificate);

/// Certificate dump: one step per line, "sigma ; tau".
std::string dump_certificate(const CollapseCertificate& certificate,
                             const std::vector<std::string>& names);

} // namespace vrc
