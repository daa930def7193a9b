#pragma once

#include "vrc/metric.hpp"

#include <cstdint>
#include <string>

namespace vrc {

/// Deterministic 64-bit generator (splitmix64), stable across platforms;
/// uniform_int uses modulo reduction, whose bias is irrelevant at the tiny
/// ranges used by the dataset generators.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next();
    int uniform_int(int lo, int hi); // inclusive bounds

private:
    uint64_t state_;
};

struct WeightRange {
    int lo = 1, hi = 10;
};

/// Uniform labeled tree from a random Pruefer sequence; integer weights
/// drawn from the range. With `generic` set, edge k gets weight 2^k, which
/// forces all pairwise path lengths to be distinct.
WeightedTree random_tree(int n, uint64_t seed, WeightRange weights = {}, bool generic = false);

/// Integer metric sampled pair by pair from the feasible interval that the
/// already-drawn triangle constraints allow, restarting when an interval
/// empties. Entries lie in [range.lo, range.hi].
FiniteMetricSpace random_metric(int n, uint64_t seed, WeightRange range = {});

struct GridSample {
    WeightedTree tree;   // original tree with every edge subdivided
    Rational density;    // the sample is density-dense in the geodesic tree
};

/// Subdivides every edge into equal pieces of length <= step; the vertex
/// set becomes a (step/2)-dense sample of the geodesic realization.
GridSample grid_sample_tree(const WeightedTree& tree, const Rational& step);

std::string format_tree_file(const WeightedTree& tree);
std::string format_lower_matrix(const FiniteMetricSpace& X);

} // namespace vrc
