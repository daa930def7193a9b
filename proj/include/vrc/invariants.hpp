#pragma once

#include "vrc/metric.hpp"
#include "vrc/rational.hpp"

#include <array>

namespace vrc {

struct HyperbolicityReport {
    Rational delta;
    std::array<int, 4> witness{0, 0, 0, 0}; // 4-tuple attaining the maximum
};

struct DefectReport {
    Rational nu;
    int x = 0, y = 0;   // witness pair
    Rational r;         // witness split parameter, in [0, d(x,y)]
};

struct NuGeodesicResult {
    bool ok = true;
    int x = 0, y = 0;
    Rational r;
};

/// Least delta such that the four-point condition holds:
/// max over 4-subsets of (largest pairing sum - second largest) / 2.
HyperbolicityReport hyperbolicity(const FiniteMetricSpace& X);

/// Exact geodesic defect. For each pair (x,y) the lower envelope of
/// g_z(r) = max(d(x,z) - r, d(y,z) - d + r) over z is maximized over
/// r in [0,d]; the maximum sits at an endpoint or a crossing of a
/// descending and an ascending line, all of which are enumerated.
DefectReport geodesic_defect(const FiniteMetricSpace& X);

/// True iff X is nu-geodesic; on failure carries a pair and split with no
/// admissible intermediate point.
NuGeodesicResult is_nu_geodesic(const FiniteMetricSpace& X, const Rational& nu);

} // namespace vrc
