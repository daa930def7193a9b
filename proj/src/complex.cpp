#include "vrc/complex.hpp"

#include "vrc/errors.hpp"

#include <algorithm>

namespace vrc {

std::vector<Simplex> SimplicialComplex::sorted_simplices() const {
    std::vector<Simplex> out(set_.begin(), set_.end());
    std::sort(out.begin(), out.end());
    return out;
}

Rational SimplicialComplex::diameter(const Simplex& s) const {
    Rational d(0);
    const auto& v = s.vertices();
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            d = max(d, space_->dist(v[i], v[j]));
    return d;
}

std::vector<Simplex> SimplicialComplex::cofacets(const Simplex& s) const {
    std::vector<Simplex> out;
    for (int w = 0; w < space_->size(); ++w) {
        if (s.contains(w)) continue;
        Simplex c = s.with(w);
        if (contains(c)) out.push_back(std::move(c));
    }
    return out;
}

bool SimplicialComplex::is_closed() const {
    for (const Simplex& s : set_)
        for (const Simplex& f : s.facets())
            if (!contains(f)) return false;
    return true;
}

SimplicialComplex vietoris_rips(const FiniteMetricSpace& X, const Rational& t,
                                std::optional<int> dim_cap, long long budget) {
    if (t < Rational(0)) throw Error(ErrorKind::Precondition, "negative Rips threshold");
    SimplicialComplex K(X, dim_cap);
    int n = X.size();
    long long count = 0;
    auto add = [&](Simplex s) {
        if (++count > budget)
            throw Error(ErrorKind::Budget,
                        "simplex budget of " + std::to_string(budget) + " exceeded");
        K.insert(std::move(s));
    };

    // neighbors above v in canonical index order
    std::vector<std::vector<int>> up(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w)
            if (X.leq(X.dist(v, w), t)) up[static_cast<size_t>(v)].push_back(w);

    std::vector<int> current;
    std::function<void(const std::vector<int>&)> expand = [&](const std::vector<int>& candidates) {
        add(Simplex(current));
        if (dim_cap && static_cast<int>(current.size()) == *dim_cap + 1) return;
        for (size_t i = 0; i < candidates.size(); ++i) {
            int w = candidates[i];
            std::vector<int> next;
            for (size_t j = i + 1; j < candidates.size(); ++j)
                if (X.leq(X.dist(w, candidates[j]), t)) next.push_back(candidates[j]);
            current.push_back(w);
            expand(next);
            current.pop_back();
        }
    };
    for (int v = 0; v < n; ++v) {
        current.assign(1, v);
        expand(up[static_cast<size_t>(v)]);
    }
    return K;
}

SimplicialComplex subforest(const WeightedTree& tree, const FiniteMetricSpace& X,
                            const Rational& t) {
    if (t < Rational(0)) throw Error(ErrorKind::Precondition, "negative threshold");
    SimplicialComplex K(X);
    for (int v = 0; v < tree.n; ++v) K.insert(Simplex{v});
    for (const auto& e : tree.edges)
        if (X.leq(e.length, t)) K.insert(Simplex{e.u, e.v});
    return K;
}

long long euler_characteristic(const SimplicialComplex& K) {
    long long chi = 0;
    for (const Simplex& s : K.simplices()) chi += (s.dim() % 2 == 0) ? 1 : -1;
    return chi;
}

SimplicialComplex filtered_copy(const SimplicialComplex& K,
                                const std::function<bool(const Simplex&)>& keep) {
    SimplicialComplex out(K.space(), K.dim_cap());
    for (const Simplex& s : K.simplices())
        if (keep(s)) out.insert(s);
    return out;
}

} // namespace vrc
