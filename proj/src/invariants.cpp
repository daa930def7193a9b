#include "vrc/invariants.hpp"

#include <algorithm>

namespace vrc {

HyperbolicityReport hyperbolicity(const FiniteMetricSpace& X) {
    HyperbolicityReport report;
    report.delta = Rational(0);
    int n = X.size();
    for (int w = 0; w < n; ++w)
        for (int x = w + 1; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = y + 1; z < n; ++z) {
                    Rational s0 = X.dist(w, x) + X.dist(y, z);
                    Rational s1 = X.dist(w, y) + X.dist(x, z);
                    Rational s2 = X.dist(w, z) + X.dist(x, y);
                    Rational top = max(s0, max(s1, s2));
                    Rational mid; // second largest pairing sum
                    if (top == s0) mid = max(s1, s2);
                    else if (top == s1) mid = max(s0, s2);
                    else mid = max(s0, s1);
                    Rational delta = (top - mid) / Rational(2);
                    if (delta > report.delta) {
                        report.delta = delta;
                        report.witness = {w, x, y, z};
                    }
                }
    return report;
}

namespace {

// max(d(x,z) - r, d(y,z) - d + r) minimized over z, at a fixed split r
Rational envelope_at(const FiniteMetricSpace& X, int x, int y, const Rational& d,
                     const Rational& r) {
    Rational best;
    bool first = true;
    for (int z = 0; z < X.size(); ++z) {
        Rational g = max(X.dist(x, z) - r, X.dist(y, z) - d + r);
        if (first || g < best) {
            best = g;
            first = false;
        }
    }
    return best;
}

// candidate splits: endpoints and all crossings of a descending line
// d(x,z) - r with an ascending line d(y,z') - d + r, clipped to [0,d]
std::vector<Rational> candidate_splits(const FiniteMetricSpace& X, int x, int y,
                                       const Rational& d) {
    std::vector<Rational> rs{Rational(0), d};
    for (int z = 0; z < X.size(); ++z)
        for (int zp = 0; zp < X.size(); ++zp) {
            Rational r = (X.dist(x, z) - X.dist(y, zp) + d) / Rational(2);
            if (r < Rational(0)) r = Rational(0);
            if (r > d) r = d;
            rs.push_back(std::move(r));
        }
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

} // namespace

DefectReport geodesic_defect(const FiniteMetricSpace& X) {
    DefectReport report;
    report.nu = Rational(0);
    report.r = Rational(0);
    int n = X.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            const Rational& d = X.dist(x, y);
            for (const Rational& r : candidate_splits(X, x, y, d)) {
                Rational value = envelope_at(X, x, y, d, r);
                if (value > report.nu) {
                    report.nu = value;
                    report.x = x;
                    report.y = y;
                    report.r = r;
                }
            }
        }
    return report;
}

NuGeodesicResult is_nu_geodesic(const FiniteMetricSpace& X, const Rational& nu) {
    NuGeodesicResult res;
    int n = X.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            const Rational& d = X.dist(x, y);
            for (const Rational& r : candidate_splits(X, x, y, d)) {
                if (envelope_at(X, x, y, d, r) > nu) {
                    res.ok = false;
                    res.x = x;
                    res.y = y;
                    res.r = r;
                    return res;
                }
            }
        }
    return res;
}

} // namespace vrc
