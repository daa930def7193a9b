#pragma once

#include "vrc/rational.hpp"
#include "vrc/simplex.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vrc {

/// Numeric comparison regime of a space. Distances are always stored as
/// exact rationals; in decimal mode two values are considered equal when
/// they differ by at most eps, and the distance levels are eps-clustered.
struct NumericMode {
    bool decimal = false;
    Rational eps = Rational(0);

    static NumericMode rational() { return {}; }
    static NumericMode with_tolerance(Rational eps) { return {true, std::move(eps)}; }
};

struct LevelSet {
    std::vector<Rational> values;      // representative per cluster, ascending, values[0] == 0
    std::vector<bool> merged;          // cluster contains >1 distinct exact value
    std::vector<std::string> warnings; // adjacent clusters closer than 2*eps
};

class FiniteMetricSpace {
public:
    FiniteMetricSpace(std::vector<std::string> names, std::vector<Rational> matrix,
                      NumericMode mode);

    int size() const { return n_; }
    const std::vector<std::string>& names() const { return names_; }
    const NumericMode& mode() const { return mode_; }

    const Rational& dist(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }

    /// Equality and order with the space's tolerance (exact in rational mode).
    bool eq(const Rational& a, const Rational& b) const;
    bool leq(const Rational& a, const Rational& b) const { return a <= b || eq(a, b); }
    bool lt(const Rational& a, const Rational& b) const { return a < b && !eq(a, b); }

    /// Distinct pairwise-distance values 0 = r_0 < ... < r_l (eps-clustered
    /// in decimal mode). Computed at construction.
    const LevelSet& levels() const { return levels_; }
    /// Index of the level cluster containing the value.
    int level_of(const Rational& value) const;
    /// Index of the largest level <= value (so VR_value == VR at that level).
    int level_floor(const Rational& value) const;

    const Rational& max_distance() const { return levels_.values.back(); }
    /// Minimum positive pairwise distance; 0 for a one-point space.
    Rational min_positive_distance() const;

    FiniteMetricSpace permuted(const std::vector<int>& perm) const;

private:
    void validate() const;
    void build_levels();

    int n_;
    std::vector<std::string> names_;
    std::vector<Rational> d_;
    NumericMode mode_;
    LevelSet levels_;
    std::vector<Rational> level_last_; // largest exact value per cluster
};

struct WeightedTree {
    struct Edge {
        int u, v;
        Rational length;
    };

    int n = 0;
    std::vector<std::string> names;
    std::vector<Edge> edges;
    std::optional<int> root;

    void validate() const; // n-1 edges, connected, positive lengths
    Rational max_edge_length() const;
    int index_of(std::string_view name) const;
};

enum class MatrixFormat { LowerTriangular, Square };

struct LoadOptions {
    NumericMode mode = NumericMode::rational();
    bool allow_pseudo = false; // collapse duplicate points instead of rejecting
};

/// Parses a distance matrix and validates the metric axioms.
/// Lower-triangular: n-1 rows, row i holding d(p_i, p_0..i-1).
/// Square: n rows of n values. Separators: commas and/or whitespace.
FiniteMetricSpace load_metric(std::string_view text, MatrixFormat format,
                              const LoadOptions& options = {});

/// Tree file: one edge per line "name_u name_v length",
/// optional first line "root name_r". '#' starts a comment.
WeightedTree parse_tree(std::string_view text);

/// Path-length metric on the tree vertices.
FiniteMetricSpace tree_metric(const WeightedTree& tree);

/// Total order extending the tree partial order rooted at `root`:
/// u before w whenever u lies on the root-to-w path; ties by distance
/// to the root, then by vertex index.
VertexOrder compatible_order(const WeightedTree& tree, int root);

/// Checks that `order` extends the tree partial order for the given root
/// (root defaults to the order-minimal vertex).
bool is_compatible_order(const WeightedTree& tree, const VertexOrder& order,
                         std::optional<int> root = std::nullopt);

/// Reconstructs the weighted tree realizing a tree metric on exactly the
/// points of X, or nullopt if X is not a tree metric in that sense.
std::optional<WeightedTree> recover_tree(const FiniteMetricSpace& X);

/// Default point names: a, b, ..., z, p26, p27, ...
std::vector<std::string> default_names(int n);

} // namespace vrc
