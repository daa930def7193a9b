#include "vrc/gradient.hpp"

#include "vrc/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace vrc {

namespace {

std::string simplex_brackets(const Simplex& s, const std::vector<std::string>& names) {
    return "{" + to_string(s, names) + "}";
}

std::vector<int> set_difference_vertices(const Simplex& phi, const Simplex& rho) {
    std::vector<int> extra;
    for (int v : phi.vertices())
        if (!rho.contains(v)) extra.push_back(v);
    return extra;
}

} // namespace

bool Matching::covers(const Simplex& s) const {
    for (const auto& p : pairs)
        if (p.sigma == s || p.tau == s) return true;
    return false;
}

void DiscreteGradient::add(Simplex rho, Simplex phi) {
    if (rho == phi)
        throw Error(ErrorKind::Precondition, "degenerate interval: rho equals phi");
    if (!rho.is_face_of(phi))
        throw Error(ErrorKind::Precondition, "interval lower bound is not a face of the upper bound");
    intervals_.push_back({std::move(rho), std::move(phi)});
}

DiscreteGradient DiscreteGradient::from_matching(const Matching& m) {
    DiscreteGradient g;
    for (const auto& p : m.pairs) {
        if (p.sigma.dim() + 1 != p.tau.dim())
            throw Error(ErrorKind::Precondition, "matched pair is not a facet pair");
        g.add(p.sigma, p.tau);
    }
    return g;
}

long long DiscreteGradient::covered_count() const {
    long long total = 0;
    for (const auto& iv : intervals_)
        total += 1ll << (iv.phi.card() - iv.rho.card());
    return total;
}

std::vector<Simplex> interval_simplices(const GradientInterval& interval) {
    std::vector<int> extra = set_difference_vertices(interval.phi, interval.rho);
    if (extra.size() > 25)
        throw Error(ErrorKind::Budget, "interval too large to enumerate");
    std::vector<Simplex> out;
    out.reserve(1u << extra.size());
    size_t count = 1u << extra.size();
    for (size_t mask = 0; mask < count; ++mask) {
        std::vector<int> verts = interval.rho.vertices();
        for (size_t b = 0; b < extra.size(); ++b)
            if (mask & (1u << b)) verts.push_back(extra[b]);
        out.push_back(Simplex(std::move(verts)));
    }
    return out;
}

Matching minimal_vertex_refinement(const DiscreteGradient& V, const VertexOrder& order) {
    Matching m;
    for (const auto& iv : V.intervals()) {
        std::vector<int> extra = set_difference_vertices(iv.phi, iv.rho);
        int v = extra[0];
        for (int w : extra)
            if (order.rank(w) < order.rank(v)) v = w;
        // pairs (psi \ v, psi | v) over psi in the interval: enumerate the
        // subsets of the remaining difference vertices
        std::vector<int> rest;
        for (int w : extra)
            if (w != v) rest.push_back(w);
        if (rest.size() > 25)
            throw Error(ErrorKind::Budget, "interval too large to refine");
        size_t count = 1u << rest.size();
        for (size_t mask = 0; mask < count; ++mask) {
            std::vector<int> verts = iv.rho.vertices();
            for (size_t b = 0; b < rest.size(); ++b)
                if (mask & (1u << b)) verts.push_back(rest[b]);
            Simplex sigma(verts);
            m.pairs.push_back({sigma, sigma.with(v)});
        }
    }
    return m;
}

CheckResult matching_acyclic(const SimplicialComplex& K, const Matching& m) {
    // digraph on simplices: sigma -> tau for matched pairs, and every
    // simplex -> each facet except its matched-down partner
    std::unordered_map<Simplex, Simplex, SimplexHash> up, down;
    for (const auto& p : m.pairs) {
        up.emplace(p.sigma, p.tau);
        down.emplace(p.tau, p.sigma);
    }
    std::vector<Simplex> nodes = K.sorted_simplices();
    std::unordered_map<Simplex, int, SimplexHash> color; // 0 new, 1 active, 2 done
    color.reserve(nodes.size() * 2);

    std::vector<Simplex> cycle_witness;
    // iterative DFS with an explicit stack of (node, next-neighbor index)
    auto neighbors = [&](const Simplex& s) {
        std::vector<Simplex> out;
        if (auto it = up.find(s); it != up.end() && K.contains(it->second))
            out.push_back(it->second);
        if (s.dim() > 0) {
            auto dit = down.find(s);
            for (Simplex& f : s.facets()) {
                if (dit != down.end() && f == dit->second) continue;
                if (K.contains(f)) out.push_back(std::move(f));
            }
        }
        return out;
    };
    for (const Simplex& start : nodes) {
        if (color[start] != 0) continue;
        std::vector<std::pair<Simplex, std::vector<Simplex>>> stack;
        color[start] = 1;
        stack.push_back({start, neighbors(start)});
        while (!stack.empty()) {
            auto& [node, todo] = stack.back();
            if (todo.empty()) {
                color[node] = 2;
                stack.pop_back();
                continue;
            }
            Simplex next = std::move(todo.back());
            todo.pop_back();
            int c = color[next];
            if (c == 1) {
                for (const auto& frame : stack) cycle_witness.push_back(frame.first);
                cycle_witness.push_back(next);
                std::ostringstream os;
                os << "directed cycle through " << cycle_witness.size() << " simplices, e.g. "
                   << simplex_brackets(next, K.space().names());
                return {false, os.str()};
            }
            if (c == 0) {
                color[next] = 1;
                stack.push_back({next, neighbors(next)});
            }
        }
    }
    return {};
}

GradientValidation validate_gradient(const SimplicialComplex& K, const DiscreteGradient& V,
                                     const SimplicialComplex* L, const VertexOrder& order) {
    GradientValidation report;
    const auto& names = K.space().names();

    std::unordered_map<Simplex, int, SimplexHash> owner;
    for (size_t i = 0; i < V.intervals().size(); ++i) {
        const auto& iv = V.intervals()[i];
        if (iv.rho == iv.phi || !iv.rho.is_face_of(iv.phi)) {
            if (report.regular.pass)
                report.regular = {false, "irregular interval at " + simplex_brackets(iv.rho, names)};
            continue;
        }
        for (const Simplex& s : interval_simplices(iv)) {
            if (!K.contains(s) && report.contained.pass)
                report.contained = {false, simplex_brackets(s, names) + " is not in the host complex"};
            auto [it, inserted] = owner.emplace(s, static_cast<int>(i));
            if (!inserted && report.disjoint.pass)
                report.disjoint = {false, simplex_brackets(s, names) + " lies in two intervals"};
        }
    }

    if (L != nullptr) {
        for (const auto& [s, idx] : owner) {
            (void)idx;
            if (L->contains(s)) {
                report.covers_complement = {false, simplex_brackets(s, names) +
                                                       " is covered but belongs to L"};
                break;
            }
        }
        if (report.covers_complement.pass)
            for (const Simplex& s : K.sorted_simplices()) {
                if (L->contains(s)) continue;
                if (!owner.count(s)) {
                    report.covers_complement = {false, simplex_brackets(s, names) +
                                                           " in K \\ L is uncovered"};
                    break;
                }
            }
    }

    report.acyclic = matching_acyclic(K, minimal_vertex_refinement(V, order));

    for (const auto& iv : V.intervals()) {
        if (K.diameter(iv.rho) != K.diameter(iv.phi)) {
            report.diam_compatible = {false, "interval [" + simplex_brackets(iv.rho, names) + ", " +
                                                 simplex_brackets(iv.phi, names) +
                                                 "] spans two diameter values"};
            break;
        }
    }
    return report;
}

DiscreteGradient merge_gradients(const std::vector<MergePart>& parts) {
    if (parts.empty()) return {};
    const auto& names = parts.front().complex.space().names();

    // coverage: which part pairs each simplex
    std::unordered_map<Simplex, int, SimplexHash> covered_by;
    for (size_t a = 0; a < parts.size(); ++a)
        for (const auto& iv : parts[a].gradient.intervals())
            for (const Simplex& s : interval_simplices(iv)) {
                auto [it, inserted] = covered_by.emplace(s, static_cast<int>(a));
                if (!inserted && it->second != static_cast<int>(a))
                    throw Error(ErrorKind::Precondition,
                                "gradient union: " + simplex_brackets(s, names) +
                                    " is paired by parts " + parts[static_cast<size_t>(it->second)].label +
                                    " and " + parts[a].label);
            }

    // pairwise inclusion of the part complexes
    size_t k = parts.size();
    std::vector<std::vector<bool>> subset(k, std::vector<bool>(k, false));
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            if (a == b) {
                subset[a][b] = true;
                continue;
            }
            bool inc = parts[a].complex.size() <= parts[b].complex.size();
            if (inc)
                for (const Simplex& s : parts[a].complex.simplices())
                    if (!parts[b].complex.contains(s)) {
                        inc = false;
                        break;
                    }
            subset[a][b] = inc;
        }

    std::unordered_set<Simplex, SimplexHash> all;
    for (const auto& part : parts)
        for (const Simplex& s : part.complex.simplices()) all.insert(s);

    for (const Simplex& s : all) {
        std::vector<size_t> holders;
        for (size_t a = 0; a < k; ++a)
            if (parts[a].complex.contains(s)) holders.push_back(a);
        size_t minimal = holders.front();
        bool unique = true;
        for (size_t h : holders)
            if (subset[h][minimal] && h != minimal) minimal = h;
        for (size_t h : holders)
            if (!subset[minimal][h]) unique = false;
        if (!unique)
            throw Error(ErrorKind::Precondition,
                        "gradient union: no unique minimal subcomplex contains " +
                            simplex_brackets(s, names));
        auto it = covered_by.find(s);
        if (it != covered_by.end() && it->second != static_cast<int>(minimal))
            throw Error(ErrorKind::Precondition,
                        "gradient union: " + simplex_brackets(s, names) +
                            " is paired by non-minimal part " +
                            parts[static_cast<size_t>(it->second)].label + " (minimal is " +
                            parts[minimal].label + ")");
    }

    DiscreteGradient merged;
    for (const auto& part : parts)
        for (const auto& iv : part.gradient.intervals()) merged.add(iv);
    return merged;
}

std::vector<Simplex> critical_cells(const DiscreteGradient& V, const SimplicialComplex& K) {
    std::unordered_set<Simplex, SimplexHash> covered;
    for (const auto& iv : V.intervals())
        for (const Simplex& s : interval_simplices(iv)) covered.insert(s);
    std::vector<Simplex> out;
    for (const Simplex& s : K.sorted_simplices())
        if (!covered.count(s)) out.push_back(s);
    return out;
}

namespace {

RefinementReport refinement_check_impl(const DiscreteGradient& coarse,
                                       const std::vector<GradientInterval>& fine,
                                       const std::vector<std::string>& names) {
    RefinementReport report;
    std::unordered_map<Simplex, int, SimplexHash> coarse_owner;
    std::vector<long long> coarse_size(coarse.size(), 0);
    for (size_t i = 0; i < coarse.intervals().size(); ++i)
        for (const Simplex& s : interval_simplices(coarse.intervals()[i])) {
            coarse_owner[s] = static_cast<int>(i);
            ++coarse_size[i];
        }

    std::vector<long long> assigned(coarse.size(), 0);
    std::unordered_set<Simplex, SimplexHash> seen;
    for (const auto& iv : fine) {
        auto lo = coarse_owner.find(iv.rho);
        auto hi = coarse_owner.find(iv.phi);
        if (lo == coarse_owner.end() || hi == coarse_owner.end() || lo->second != hi->second) {
            report.contained = false;
            report.witness = "[" + to_string(iv.rho, names) + " -> " + to_string(iv.phi, names) +
                             "] does not sit inside one coarse interval";
            return report;
        }
        for (const Simplex& s : interval_simplices(iv)) {
            auto owner_it = coarse_owner.find(s);
            if (owner_it == coarse_owner.end() || owner_it->second != lo->second) {
                report.contained = false;
                report.witness = "{" + to_string(s, names) + "} escapes its coarse interval";
                return report;
            }
            if (!seen.insert(s).second) {
                report.partitions = false;
                report.witness = "{" + to_string(s, names) + "} is covered twice by fine intervals";
                return report;
            }
            ++assigned[static_cast<size_t>(lo->second)];
        }
    }
    for (size_t i = 0; i < coarse.size(); ++i)
        if (assigned[i] != coarse_size[i]) {
            report.partitions = false;
            report.witness = "coarse interval [" + to_string(coarse.intervals()[i].rho, names) +
                             " -> " + to_string(coarse.intervals()[i].phi, names) +
                             "] is not exactly partitioned";
            return report;
        }
    return report;
}

} // namespace

RefinementReport refinement_check(const DiscreteGradient& coarse, const DiscreteGradient& fine,
                                  const std::vector<std::string>& names) {
    return refinement_check_impl(coarse, fine.intervals(), names);
}

RefinementReport refinement_check(const DiscreteGradient& coarse, const Matching& fine,
                                  const std::vector<std::string>& names) {
    std::vector<GradientInterval> intervals;
    intervals.reserve(fine.pairs.size());
    for (const auto& p : fine.pairs) intervals.push_back({p.sigma, p.tau});
    return refinement_check_impl(coarse, intervals, names);
}

} // namespace vrc
