#include "vrc/tree_gradients.hpp"

#include "vrc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vrc {

namespace {

std::unordered_set<Simplex, SimplexHash> tree_edge_set(const WeightedTree& tree) {
    std::unordered_set<Simplex, SimplexHash> out;
    for (const auto& e : tree.edges) out.insert(Simplex{e.u, e.v});
    return out;
}

void check_tree_input(const FiniteMetricSpace& X, const WeightedTree& tree) {
    if (tree.n != X.size())
        throw Error(ErrorKind::Precondition, "tree and metric space have different point counts");
    for (const auto& e : tree.edges)
        if (!X.eq(X.dist(e.u, e.v), e.length))
            throw Error(ErrorKind::Precondition,
                        "tree edge length disagrees with the metric between " +
                            X.names()[static_cast<size_t>(e.u)] + " and " +
                            X.names()[static_cast<size_t>(e.v)]);
    for (size_t c = 0; c < X.levels().merged.size(); ++c)
        if (X.levels().merged[c])
            throw Error(ErrorKind::Precondition,
                        "decimal tolerance merges distinct distance values near " +
                            X.levels().values[c].str() +
                            "; tree gradients need exact diameter levels");
}

/// Non-tree edges bucketed by level index, ascending.
std::map<int, std::vector<Simplex>> non_tree_edges_by_level(const FiniteMetricSpace& X,
                                                            const WeightedTree& tree) {
    auto tree_edges = tree_edge_set(tree);
    std::map<int, std::vector<Simplex>> buckets;
    for (int u = 0; u < X.size(); ++u)
        for (int w = u + 1; w < X.size(); ++w) {
            Simplex e{u, w};
            if (tree_edges.count(e)) continue;
            buckets[X.level_of(X.dist(u, w))].push_back(std::move(e));
        }
    return buckets;
}

/// Per maximal simplex Delta at one level: E_Delta and L_Delta.
struct MaximalSimplexRecord {
    Simplex delta;
    std::vector<Simplex> edges;    // E_Delta, in canonical order
    std::vector<int> cone_vertices; // L_Delta
};

std::vector<MaximalSimplexRecord> maximal_simplices_at_level(const FiniteMetricSpace& X,
                                                             const std::vector<Simplex>& edges) {
    std::map<Simplex, std::vector<Simplex>> groups;
    for (const Simplex& e : edges) groups[max_simplex_of_edge(X, e)].push_back(e);
    std::vector<MaximalSimplexRecord> out;
    for (auto& [delta, group] : groups) {
        MaximalSimplexRecord rec;
        rec.delta = delta;
        std::sort(group.begin(), group.end());
        rec.edges = std::move(group);
        std::unordered_set<int> covered;
        for (const Simplex& e : rec.edges)
            for (int v : e.vertices()) covered.insert(v);
        for (int v : rec.delta.vertices())
            if (!covered.count(v)) rec.cone_vertices.push_back(v);
        if (rec.cone_vertices.empty())
            throw Error(ErrorKind::Precondition,
                        "empty cone vertex set L at maximal simplex {" +
                            to_string(rec.delta, X.names()) + "}; not a tree metric");
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace

Simplex max_simplex_of_edge(const FiniteMetricSpace& X, const Simplex& e) {
    if (e.dim() != 1) throw Error(ErrorKind::Precondition, "expected an edge");
    int x = e.vertices()[0];
    int y = e.vertices()[1];
    const Rational& r = X.dist(x, y);
    std::vector<int> span;
    for (int z = 0; z < X.size(); ++z)
        if (X.leq(X.dist(x, z), r) && X.leq(X.dist(y, z), r)) span.push_back(z);
    Simplex delta(std::move(span));
    // for tree metrics the ball intersection has diameter exactly r
    for (int a : delta.vertices())
        for (int b : delta.vertices())
            if (!X.leq(X.dist(a, b), r))
                throw Error(ErrorKind::Precondition,
                            "ball intersection of {" + to_string(e, X.names()) +
                                "} has diameter above " + r.str() + "; not a tree metric");
    return delta;
}

DiscreteGradient generic_gradient(const FiniteMetricSpace& X, const WeightedTree& tree) {
    check_tree_input(X, tree);
    // genericity: all positive pairwise distances distinct
    std::map<Rational, std::pair<int, int>> seen;
    for (int u = 0; u < X.size(); ++u)
        for (int w = u + 1; w < X.size(); ++w) {
            auto [it, inserted] = seen.try_emplace(X.dist(u, w), std::make_pair(u, w));
            if (!inserted) {
                const auto& names = X.names();
                throw Error(ErrorKind::Precondition,
                            "tree metric is not generic: d(" + names[static_cast<size_t>(it->second.first)] +
                                "," + names[static_cast<size_t>(it->second.second)] + ") = d(" +
                                names[static_cast<size_t>(u)] + "," + names[static_cast<size_t>(w)] +
                                ") = " + X.dist(u, w).str());
            }
        }
    DiscreteGradient g;
    for (const auto& [level, edges] : non_tree_edges_by_level(X, tree))
        for (const Simplex& e : edges) g.add(e, max_simplex_of_edge(X, e));
    return g;
}

DiscreteGradient canonical_gradient(const FiniteMetricSpace& X, const WeightedTree& tree) {
    check_tree_input(X, tree);
    DiscreteGradient g;
    for (const auto& [level, edges] : non_tree_edges_by_level(X, tree)) {
        for (const auto& rec : maximal_simplices_at_level(X, edges)) {
            // distinct unions of nonempty subsets of E_Delta == subsets of the
            // support whose induced E_Delta-subgraph has no isolated vertex
            std::vector<int> support;
            for (const Simplex& e : rec.edges)
                for (int v : e.vertices())
                    if (std::find(support.begin(), support.end(), v) == support.end())
                        support.push_back(v);
            std::sort(support.begin(), support.end());
            if (support.size() > 22)
                throw Error(ErrorKind::Budget, "edge support too large for subset enumeration");
            size_t count = 1u << support.size();
            Simplex cone_set(rec.cone_vertices);
            for (size_t mask = 1; mask < count; ++mask) {
                std::vector<int> u_verts;
                for (size_t b = 0; b < support.size(); ++b)
                    if (mask & (1u << b)) u_verts.push_back(support[b]);
                // every vertex must be covered by an edge inside, and at
                // least one edge must lie inside
                auto inside = [&](const Simplex& e) {
                    for (int v : e.vertices())
                        if (!std::binary_search(u_verts.begin(), u_verts.end(), v)) return false;
                    return true;
                };
                bool has_edge = false;
                bool all_covered = true;
                for (int v : u_verts) {
                    bool covered = false;
                    for (const Simplex& e : rec.edges)
                        if (inside(e) && e.contains(v)) {
                            covered = true;
                            has_edge = true;
                        }
                    if (!covered) {
                        all_covered = false;
                        break;
                    }
                }
                if (!has_edge || !all_covered) continue;
                Simplex u_simplex(u_verts);
                std::vector<int> phi_verts = u_verts;
                for (int v : rec.cone_vertices) phi_verts.push_back(v);
                g.add(std::move(u_simplex), Simplex(std::move(phi_verts)));
            }
        }
    }
    return g;
}

DiscreteGradient perturbed_gradient(const FiniteMetricSpace& X, const WeightedTree& tree,
                                    const VertexOrder& order) {
    check_tree_input(X, tree);
    DiscreteGradient g;
    for (const auto& [level, edges] : non_tree_edges_by_level(X, tree)) {
        for (const auto& rec : maximal_simplices_at_level(X, edges)) {
            std::vector<Simplex> sorted_edges = rec.edges;
            std::sort(sorted_edges.begin(), sorted_edges.end(), [&](const Simplex& a, const Simplex& b) {
                return compare_same_dim(a, b, order, LexMode::Lex) < 0;
            });
            std::unordered_set<Simplex, SimplexHash> edge_set(sorted_edges.begin(),
                                                              sorted_edges.end());
            for (const Simplex& e : sorted_edges) {
                int x = e.vertices()[0];
                int y = e.vertices()[1];
                // Sigma_i: vertices whose triangle with e has e as its
                // lexicographically maximal E_Delta-edge
                std::vector<int> sigma_verts = e.vertices();
                for (int v : rec.delta.vertices()) {
                    if (e.contains(v)) continue;
                    bool ok = true;
                    for (int endpoint : {x, y}) {
                        Simplex side{endpoint, v};
                        if (edge_set.count(side) &&
                            compare_same_dim(side, e, order, LexMode::Lex) > 0)
                            ok = false;
                    }
                    if (ok) sigma_verts.push_back(v);
                }
                g.add(e, Simplex(std::move(sigma_verts)));
            }
        }
    }
    return g;
}

Matching apparent_pairs(const Filtration& F) {
    Matching m;
    for (int pos = 0; pos < F.size(); ++pos) {
        const Simplex& tau = F.at(pos);
        if (tau.dim() < 1) continue;
        Simplex sigma = F.maximal_facet(tau);
        auto min_cofacet = F.minimal_cofacet(sigma);
        if (min_cofacet && *min_cofacet == tau) m.pairs.push_back({std::move(sigma), tau});
    }
    return m;
}

Matching zero_persistence_apparent_pairs(const Filtration& F) {
    Matching m;
    for (auto& p : apparent_pairs(F).pairs)
        if (F.level_of(p.sigma) == F.level_of(p.tau)) m.pairs.push_back(std::move(p));
    return m;
}

namespace {

VertexOrder cone_order_for(const FiniteMetricSpace& X, int base_point) {
    std::vector<int> perm(static_cast<size_t>(X.size()));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        const Rational& da = X.dist(base_point, a);
        const Rational& db = X.dist(base_point, b);
        if (da != db) return da < db;
        return a < b;
    });
    return VertexOrder::from_permutation(std::move(perm));
}

int max_rank_vertex(const Simplex& s, const VertexOrder& order) {
    int best = s.vertices()[0];
    for (int v : s.vertices())
        if (order.rank(v) > order.rank(best)) best = v;
    return best;
}

// intervals (phi \ z, phi) for the stratum coned to apex z, deduplicated
DiscreteGradient cone_stratum_pairs(const std::vector<Simplex>& stratum, int apex) {
    std::unordered_set<Simplex, SimplexHash> tops;
    for (const Simplex& s : stratum) tops.insert(s.with(apex));
    std::vector<Simplex> sorted(tops.begin(), tops.end());
    std::sort(sorted.begin(), sorted.end());
    DiscreteGradient g;
    for (const Simplex& phi : sorted) g.add(phi.without(apex), phi);
    return g;
}

} // namespace

ConeGradientResult cone_gradient(const FiniteMetricSpace& X, const Rational& t, int base_point,
                                 bool force, long long budget) {
    if (base_point < 0 || base_point >= X.size())
        throw Error(ErrorKind::Precondition, "base point out of range");
    Rational delta = hyperbolicity(X).delta;
    Rational nu = geodesic_defect(X).nu;
    Rational threshold = Rational(4) * delta + Rational(2) * nu;
    if (!force && X.lt(t, threshold))
        throw Error(ErrorKind::Precondition, "threshold t = " + t.str() +
                                                 " is below 4*delta + 2*nu = " + threshold.str());

    ConeGradientResult result{DiscreteGradient{}, vietoris_rips(X, t, std::nullopt, budget),
                              cone_order_for(X, base_point), {}, base_point, threshold};
    const VertexOrder& ord = result.cone_order;

    // bucket the simplices of VR_t by maximal vertex position
    std::vector<std::vector<Simplex>> strata(static_cast<size_t>(X.size()));
    for (const Simplex& s : result.complex.sorted_simplices())
        strata[static_cast<size_t>(ord.rank(max_rank_vertex(s, ord)))].push_back(s);

    std::vector<MergePart> parts;
    {
        SimplicialComplex base(X);
        base.insert(Simplex{base_point});
        parts.push_back({std::move(base), DiscreteGradient{}, "K_0"});
    }
    for (int i = 1; i < X.size(); ++i) {
        const auto& stratum = strata[static_cast<size_t>(i)];
        if (stratum.empty()) continue;
        int x_i = ord.at(i);
        int apex = -1;
        if (X.lt(X.dist(x_i, base_point), t)) {
            apex = base_point;
        } else {
            for (int zi = 0; zi < i && apex < 0; ++zi) {
                int z = ord.at(zi);
                bool ok = true;
                for (int yi = 0; yi <= i && ok; ++yi) {
                    int y = ord.at(yi);
                    if (X.leq(X.dist(y, x_i), t) && !X.leq(X.dist(z, y), t)) ok = false;
                }
                if (ok) apex = z;
            }
            if (apex < 0) {
                std::ostringstream os;
                os << "no apex for stratum " << i << " (vertex "
                   << X.names()[static_cast<size_t>(x_i)]
                   << "): no earlier point is within t of the whole neighborhood of the vertex";
                throw Error(ErrorKind::NoApex, os.str());
            }
        }
        DiscreteGradient vi = cone_stratum_pairs(stratum, apex);
        result.strata.push_back({i, x_i, apex, static_cast<long long>(vi.size())});
        parts.push_back({filtered_copy(result.complex,
                                       [&](const Simplex& s) {
                                           return ord.rank(max_rank_vertex(s, ord)) <= i;
                                       }),
                         std::move(vi), "K_" + std::to_string(i)});
    }
    result.gradient = merge_gradients(parts);
    return result;
}

FilteredConeResult filtered_cone_gradient(const FiniteMetricSpace& X, int base_point,
                                          long long budget) {
    Rational delta = hyperbolicity(X).delta;
    Rational nu = geodesic_defect(X).nu;
    Rational threshold = Rational(4) * delta + Rational(2) * nu;

    const auto& levels = X.levels().values;
    int base_level = 0;
    for (size_t m = 0; m < levels.size(); ++m)
        if (X.leq(levels[m], threshold)) base_level = static_cast<int>(m);

    FilteredConeResult result{DiscreteGradient{},
                              threshold,
                              base_level,
                              cone_gradient(X, threshold, base_point, false, budget),
                              {},
                              vietoris_rips(X, levels.back(), std::nullopt, budget)};

    const VertexOrder ord = cone_order_for(X, base_point);
    Filtration full_filtration(result.full, VertexOrder::identity(X.size()));

    std::vector<MergePart> global_parts;
    global_parts.push_back({result.base.complex, result.base.gradient, "base"});

    for (int m = base_level + 1; m < static_cast<int>(levels.size()); ++m) {
        const Rational& r_m = levels[static_cast<size_t>(m)];
        // strata: diameter exactly r_m, bucketed by maximal vertex
        std::vector<std::vector<Simplex>> strata(static_cast<size_t>(X.size()));
        for (int pos = 0; pos < full_filtration.size(); ++pos)
            if (full_filtration.level_at(pos) == m) {
                const Simplex& s = full_filtration.at(pos);
                strata[static_cast<size_t>(ord.rank(max_rank_vertex(s, ord)))].push_back(s);
            }

        SimplicialComplex below = filtered_copy(result.full, [&](const Simplex& s) {
            return full_filtration.level_of(s) < m;
        });
        std::vector<MergePart> level_parts;
        level_parts.push_back({below, DiscreteGradient{}, "VR_prev"});

        for (int i = 1; i < X.size(); ++i) {
            const auto& stratum = strata[static_cast<size_t>(i)];
            if (stratum.empty()) continue;
            int x_i = ord.at(i);
            int apex = -1;
            if (X.lt(X.dist(x_i, base_point), r_m)) {
                apex = base_point;
            } else {
                for (int zi = 0; zi < i && apex < 0; ++zi) {
                    int z = ord.at(zi);
                    bool ok = true;
                    for (int yi = 0; yi <= i && ok; ++yi) {
                        int y = ord.at(yi);
                        if (X.leq(X.dist(y, x_i), r_m)) {
                            if (!X.leq(X.dist(z, y), r_m)) ok = false;
                            if (X.lt(X.dist(y, x_i), r_m) && !X.lt(X.dist(z, y), r_m)) ok = false;
                        }
                    }
                    if (ok) apex = z;
                }
                if (apex < 0) {
                    std::ostringstream os;
                    os << "no apex for level " << m << " (r = " << r_m << "), stratum " << i
                       << " (vertex " << X.names()[static_cast<size_t>(x_i)] << ")";
                    throw Error(ErrorKind::NoApex, os.str());
                }
            }
            level_parts.push_back({filtered_copy(result.full,
                                                 [&](const Simplex& s) {
                                                     return full_filtration.level_of(s) < m ||
                                                            (full_filtration.level_of(s) == m &&
                                                             ord.rank(max_rank_vertex(s, ord)) <= i);
                                                 }),
                                   cone_stratum_pairs(stratum, apex), "K_" + std::to_string(i)});
        }
        DiscreteGradient w_m = merge_gradients(level_parts);
        global_parts.push_back({filtered_copy(result.full,
                                              [&](const Simplex& s) {
                                                  return full_filtration.level_of(s) <= m;
                                              }),
                                w_m, "VR_" + r_m.str()});
        result.level_gradients.push_back({m, std::move(w_m)});
    }
    result.gradient = merge_gradients(global_parts);
    return result;
}

} // namespace vrc
