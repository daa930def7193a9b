#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace vrc {

/// A simplex is a nonempty set of vertex indices, stored strictly increasing
/// in canonical index order. Vertex orders are applied only in comparisons.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(std::vector<int> vertices);
    Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

    int dim() const { return static_cast<int>(v_.size()) - 1; }
    size_t card() const { return v_.size(); }
    const std::vector<int>& vertices() const { return v_; }

    bool contains(int vertex) const;
    bool is_face_of(const Simplex& other) const; // subset test
    Simplex with(int vertex) const;
    Simplex without(int vertex) const;

    /// All codimension-1 faces; empty for vertices.
    std::vector<Simplex> facets() const;

    friend bool operator==(const Simplex& a, const Simplex& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Simplex& a, const Simplex& b) { return a.v_ != b.v_; }
    /// Canonical-index ordering (size, then entries); used only for
    /// deterministic container layouts, never for filtration logic.
    friend bool operator<(const Simplex& a, const Simplex& b) {
        if (a.v_.size() != b.v_.size()) return a.v_.size() < b.v_.size();
        return a.v_ < b.v_;
    }

private:
    std::vector<int> v_;
};

struct SimplexHash {
    size_t operator()(const Simplex& s) const {
        uint64_t h = 1469598103934665603ull;
        for (int x : s.vertices()) {
            h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

/// Total order on the vertices, as a permutation of 0..n-1.
/// rank(v) is the position of v; perm(i) is the vertex at position i.
class VertexOrder {
public:
    VertexOrder() = default;
    static VertexOrder identity(int n);
    /// perm[i] = vertex at position i.
    static VertexOrder from_permutation(std::vector<int> perm);

    int size() const { return static_cast<int>(perm_.size()); }
    int rank(int vertex) const { return rank_[static_cast<size_t>(vertex)]; }
    int at(int position) const { return perm_[static_cast<size_t>(position)]; }
    const std::vector<int>& permutation() const { return perm_; }

    VertexOrder reversed() const;

private:
    std::vector<int> perm_;
    std::vector<int> rank_;
};

enum class LexMode {
    Lex,      // lexicographic on rank sequences, ascending
    RevColex, // reverse colexicographic: sigma < tau iff tau <_colex sigma
};

/// Rank sequence of a simplex under the order, sorted ascending.
std::vector<int> rank_key(const Simplex& s, const VertexOrder& order);

/// Compares two simplices of equal cardinality by the given mode.
/// Returns -1, 0, or 1.
int compare_same_dim(const Simplex& a, const Simplex& b, const VertexOrder& order, LexMode mode);

std::string to_string(const Simplex& s, const std::vector<std::string>& names);

} // namespace vrc
