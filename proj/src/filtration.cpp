#include "vrc/filtration.hpp"

#include "vrc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace vrc {

Filtration::Filtration(const SimplicialComplex& K, VertexOrder order, LexMode mode)
    : K_(&K), order_(std::move(order)), mode_(mode) {
    sorted_ = K.sorted_simplices();
    const FiniteMetricSpace& X = K.space();

    struct Key {
        int level;
        int dim;
        std::vector<int> ranks;
    };
    std::vector<Key> keys;
    keys.reserve(sorted_.size());
    std::vector<Rational> diams;
    diams.reserve(sorted_.size());
    for (const Simplex& s : sorted_) {
        Rational d = K.diameter(s);
        keys.push_back({X.level_of(d), s.dim(), rank_key(s, order_)});
        diams.push_back(std::move(d));
    }
    std::vector<int> idx(sorted_.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    auto lex_before = [&](const std::vector<int>& a, const std::vector<int>& b) {
        if (mode_ == LexMode::Lex) return a < b;
        return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
    };
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Key& ka = keys[static_cast<size_t>(a)];
        const Key& kb = keys[static_cast<size_t>(b)];
        if (ka.level != kb.level) return ka.level < kb.level;
        if (ka.dim != kb.dim) return ka.dim < kb.dim;
        return lex_before(ka.ranks, kb.ranks);
    });

    std::vector<Simplex> sorted;
    sorted.reserve(sorted_.size());
    level_.reserve(sorted_.size());
    diam_.reserve(sorted_.size());
    for (int i : idx) {
        sorted.push_back(std::move(sorted_[static_cast<size_t>(i)]));
        level_.push_back(keys[static_cast<size_t>(i)].level);
        diam_.push_back(std::move(diams[static_cast<size_t>(i)]));
    }
    sorted_ = std::move(sorted);
    position_.reserve(sorted_.size() * 2);
    for (size_t i = 0; i < sorted_.size(); ++i) position_[sorted_[i]] = static_cast<int>(i);
}

int Filtration::position_of(const Simplex& s) const {
    auto it = position_.find(s);
    if (it == position_.end())
        throw Error(ErrorKind::Precondition, "simplex not in filtration");
    return it->second;
}

int Filtration::compare(const Simplex& a, const Simplex& b) const {
    int pa = position_of(a);
    int pb = position_of(b);
    return pa < pb ? -1 : (pa == pb ? 0 : 1);
}

Simplex Filtration::maximal_facet(const Simplex& tau) const {
    if (tau.dim() < 1) throw Error(ErrorKind::Precondition, "vertices have no facets");
    std::vector<Simplex> facets = tau.facets();
    // facets of a simplex in the complex are in the complex; compare by position
    size_t best = 0;
    int best_pos = position_of(facets[0]);
    for (size_t i = 1; i < facets.size(); ++i) {
        int p = position_of(facets[i]);
        if (p > best_pos) {
            best_pos = p;
            best = i;
        }
    }
    return facets[best];
}

std::optional<Simplex> Filtration::minimal_cofacet(const Simplex& sigma) const {
    std::optional<Simplex> best;
    int best_pos = -1;
    for (const Simplex& c : K_->cofacets(sigma)) {
        int p = position_of(c);
        if (!best || p < best_pos) {
            best_pos = p;
            best = c;
        }
    }
    return best;
}

int diam_lex_compare(const Simplex& a, const Simplex& b, const Filtration& F) {
    return F.compare(a, b);
}

std::string dump_complex(const Filtration& F) {
    std::ostringstream os;
    const auto& names = F.space().names();
    for (int i = 0; i < F.size(); ++i)
        os << to_string(F.at(i), names) << " : " << F.diameter_at(i) << "\n";
    return os.str();
}

} // namespace vrc
