#include "vrc/simplex.hpp"

#include "vrc/errors.hpp"

#include <algorithm>

namespace vrc {

Simplex::Simplex(std::vector<int> vertices) : v_(std::move(vertices)) {
    std::sort(v_.begin(), v_.end());
    if (v_.empty())
        throw Error(ErrorKind::Internal, "empty simplex");
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
        throw Error(ErrorKind::Internal, "repeated vertex in simplex");
}

bool Simplex::contains(int vertex) const {
    return std::binary_search(v_.begin(), v_.end(), vertex);
}

bool Simplex::is_face_of(const Simplex& other) const {
    return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

Simplex Simplex::with(int vertex) const {
    if (contains(vertex)) return *this;
    std::vector<int> w(v_);
    w.insert(std::upper_bound(w.begin(), w.end(), vertex), vertex);
    Simplex s;
    s.v_ = std::move(w);
    return s;
}

Simplex Simplex::without(int vertex) const {
    std::vector<int> w;
    w.reserve(v_.size());
    for (int x : v_)
        if (x != vertex) w.push_back(x);
    if (w.empty())
        throw Error(ErrorKind::Internal, "removing last vertex of a simplex");
    Simplex s;
    s.v_ = std::move(w);
    return s;
}

std::vector<Simplex> Simplex::facets() const {
    std::vector<Simplex> out;
    if (v_.size() < 2) return out;
    out.reserve(v_.size());
    for (int x : v_) out.push_back(without(x));
    return out;
}

VertexOrder VertexOrder::identity(int n) {
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    return from_permutation(std::move(perm));
}

VertexOrder VertexOrder::from_permutation(std::vector<int> perm) {
    VertexOrder o;
    o.perm_ = std::move(perm);
    o.rank_.assign(o.perm_.size(), -1);
    for (size_t i = 0; i < o.perm_.size(); ++i) {
        int v = o.perm_[i];
        if (v < 0 || v >= static_cast<int>(o.perm_.size()) || o.rank_[static_cast<size_t>(v)] != -1)
            throw Error(ErrorKind::Precondition, "vertex order is not a permutation");
        o.rank_[static_cast<size_t>(v)] = static_cast<int>(i);
    }
    return o;
}

VertexOrder VertexOrder::reversed() const {
    std::vector<int> perm(perm_.rbegin(), perm_.rend());
    return from_permutation(std::move(perm));
}

std::vector<int> rank_key(const Simplex& s, const VertexOrder& order) {
    std::vector<int> key;
    key.reserve(s.card());
    for (int v : s.vertices()) key.push_back(order.rank(v));
    std::sort(key.begin(), key.end());
    return key;
}

int compare_same_dim(const Simplex& a, const Simplex& b, const VertexOrder& order, LexMode mode) {
    if (a == b) return 0;
    std::vector<int> ka = rank_key(a, order);
    std::vector<int> kb = rank_key(b, order);
    if (mode == LexMode::Lex) {
        return ka < kb ? -1 : 1;
    }
    // colex compares from the largest rank down; reverse-colex flips the result
    auto colex_less = [](const std::vector<int>& x, const std::vector<int>& y) {
        return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
    };
    return colex_less(kb, ka) ? -1 : 1;
}

std::string to_string(const Simplex& s, const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < s.vertices().size(); ++i) {
        if (i) out += ' ';
        out += names[static_cast<size_t>(s.vertices()[i])];
    }
    return out;
}

} // namespace vrc
