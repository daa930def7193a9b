#include "vrc/collapse.hpp"

#include "vrc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace vrc {

namespace {

// sigma is free with unique proper coface tau iff tau is its only cofacet
bool is_free_pair(const SimplicialComplex& live, const Simplex& sigma, const Simplex& tau) {
    if (!live.contains(sigma) || !live.contains(tau)) return false;
    int cofacets = 0;
    bool tau_seen = false;
    for (int w = 0; w < live.space().size(); ++w) {
        if (sigma.contains(w)) continue;
        Simplex c = sigma.with(w);
        if (live.contains(c)) {
            if (++cofacets > 1) return false;
            tau_seen = c == tau;
        }
    }
    return cofacets == 1 && tau_seen;
}

} // namespace

CollapseCertificate collapse_with_matching(const SimplicialComplex& K, const Matching& m,
                                           const SimplicialComplex& L, std::string start_id,
                                           std::string end_id) {
    SimplicialComplex live = K;
    CollapseCertificate cert{std::move(start_id), std::move(end_id), {}};

    std::vector<const MatchedPair*> remaining;
    remaining.reserve(m.pairs.size());
    for (const auto& p : m.pairs) remaining.push_back(&p);
    // removing large tau first lets most gradients finish in one pass
    std::sort(remaining.begin(), remaining.end(), [](const MatchedPair* a, const MatchedPair* b) {
        if (a->tau.card() != b->tau.card()) return a->tau.card() > b->tau.card();
        return b->tau < a->tau;
    });

    while (!remaining.empty()) {
        bool progress = false;
        std::vector<const MatchedPair*> next;
        next.reserve(remaining.size());
        for (const MatchedPair* p : remaining) {
            if (is_free_pair(live, p->sigma, p->tau)) {
                live.erase(p->tau);
                live.erase(p->sigma);
                cert.steps.push_back({p->sigma, p->tau});
                progress = true;
            } else {
                next.push_back(p);
            }
        }
        if (!progress) {
            std::ostringstream os;
            os << "collapse stuck with " << next.size() << " pairs remaining, e.g. ({"
               << to_string(next.front()->sigma, K.space().names()) << "}, {"
               << to_string(next.front()->tau, K.space().names()) << "})";
            throw Error(ErrorKind::Stuck, os.str());
        }
        remaining = std::move(next);
    }

    if (!(live == L))
        throw Error(ErrorKind::Stuck, "collapse exhausted its pairs but did not reach L");
    return cert;
}

CollapseCertificate collapse(const SimplicialComplex& K, const DiscreteGradient& V,
                             const SimplicialComplex& L, const VertexOrder& order,
                             std::string start_id, std::string end_id) {
    return collapse_with_matching(K, minimal_vertex_refinement(V, order), L, std::move(start_id),
                                  std::move(end_id));
}

SimplicialComplex replay(const SimplicialComplex& K, const CollapseCertificate& certificate) {
    SimplicialComplex live = K;
    for (const auto& step : certificate.steps) {
        if (!is_free_pair(live, step.sigma, step.tau))
            throw Error(ErrorKind::Stuck,
                        "certificate step ({" + to_string(step.sigma, K.space().names()) + "}, {" +
                            to_string(step.tau, K.space().names()) +
                            "}) is not an elementary collapse");
        live.erase(step.tau);
        live.erase(step.sigma);
    }
    return live;
}

std::string dump_certificate(const CollapseCertificate& certificate,
                             const std::vector<std::string>& names) {
    std::ostringstream os;
    for (const auto& step : certificate.steps)
        os << to_string(step.sigma, names) << " ; " << to_string(step.tau, names) << "\n";
    return os.str();
}

} // namespace vrc
