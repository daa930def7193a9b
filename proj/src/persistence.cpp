#include "vrc/persistence.hpp"

#include "vrc/errors.hpp"
#include "vrc/tree_gradients.hpp"

#include <algorithm>

namespace vrc {

namespace {

std::vector<int> boundary_positions(const Filtration& F, const Simplex& s) {
    std::vector<int> out;
    if (s.dim() == 0) return out;
    for (const Simplex& f : s.facets()) out.push_back(F.position_of(f));
    std::sort(out.begin(), out.end());
    return out;
}

// symmetric difference of sorted position vectors (Z/2 column addition)
std::vector<int> add_columns(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

PersistenceResult persistent_homology(const Filtration& F, int max_degree,
                                      bool apparent_shortcut) {
    int n = F.size();
    PersistenceResult result;
    result.stats.columns = n;

    std::vector<int> apparent_tau_of(static_cast<size_t>(n), -1);   // sigma pos -> tau pos
    std::vector<int> apparent_sigma_of(static_cast<size_t>(n), -1); // tau pos -> sigma pos
    if (apparent_shortcut) {
        for (const auto& p : apparent_pairs(F).pairs) {
            int sp = F.position_of(p.sigma);
            int tp = F.position_of(p.tau);
            apparent_tau_of[static_cast<size_t>(sp)] = tp;
            apparent_sigma_of[static_cast<size_t>(tp)] = sp;
        }
    }

    std::vector<std::vector<int>> reduced(static_cast<size_t>(n));
    std::vector<int> pivot_owner(static_cast<size_t>(n), -1);
    std::vector<int> death_of(static_cast<size_t>(n), -1);
    std::vector<bool> is_birth(static_cast<size_t>(n), false);

    for (int j = 0; j < n; ++j) {
        int dim = F.at(j).dim();
        if (apparent_shortcut && apparent_sigma_of[static_cast<size_t>(j)] >= 0) {
            // apparent tau: the unreduced column already carries its final
            // pivot, the maximal facet sigma
            reduced[static_cast<size_t>(j)] = boundary_positions(F, F.at(j));
            int pivot = reduced[static_cast<size_t>(j)].back();
            if (pivot != apparent_sigma_of[static_cast<size_t>(j)])
                throw Error(ErrorKind::Internal, "apparent pair pivot mismatch");
            if (pivot_owner[static_cast<size_t>(pivot)] != -1)
                throw Error(ErrorKind::Internal, "apparent pair pivot already claimed");
            pivot_owner[static_cast<size_t>(pivot)] = j;
            death_of[static_cast<size_t>(pivot)] = j;
            ++result.stats.apparent_skipped;
            continue;
        }
        if (apparent_shortcut && apparent_tau_of[static_cast<size_t>(j)] >= 0) {
            // apparent sigma: a guaranteed birth column, cleared outright
            is_birth[static_cast<size_t>(j)] = true;
            ++result.stats.apparent_skipped;
            continue;
        }
        std::vector<int> col = boundary_positions(F, F.at(j));
        long long adds = 0;
        while (!col.empty()) {
            int pivot = col.back();
            int owner = pivot_owner[static_cast<size_t>(pivot)];
            if (owner == -1) break;
            col = add_columns(col, reduced[static_cast<size_t>(owner)]);
            ++adds;
        }
        result.stats.additions += adds;
        if (col.empty()) {
            is_birth[static_cast<size_t>(j)] = true;
            result.stats.additions_by_degree[dim] += adds;
        } else {
            int pivot = col.back();
            pivot_owner[static_cast<size_t>(pivot)] = j;
            death_of[static_cast<size_t>(pivot)] = j;
            result.stats.additions_by_degree[dim - 1] += adds;
        }
        reduced[static_cast<size_t>(j)] = std::move(col);
    }

    for (int b = 0; b < n; ++b) {
        if (!is_birth[static_cast<size_t>(b)]) continue;
        int degree = F.at(b).dim();
        int d = death_of[static_cast<size_t>(b)];
        if (d == -1) {
            ++result.stats.critical;
            if (degree <= max_degree)
                result.barcode.intervals[degree].push_back({F.diameter_at(b), std::nullopt});
            continue;
        }
        if (degree > max_degree) continue;
        BarInterval interval{F.diameter_at(b), F.diameter_at(d)};
        if (F.level_at(b) == F.level_at(d))
            result.barcode.zero_length[degree].push_back(std::move(interval));
        else
            result.barcode.intervals[degree].push_back(std::move(interval));
    }
    return result;
}

std::vector<long long> homology_oracle(const SimplicialComplex& K, long long budget) {
    if (static_cast<long long>(K.size()) > budget)
        throw Error(ErrorKind::Budget, "homology oracle budget of " + std::to_string(budget) +
                                           " simplices exceeded");
    std::vector<Simplex> simplices = K.sorted_simplices();
    int max_dim = 0;
    for (const Simplex& s : simplices) max_dim = std::max(max_dim, s.dim());

    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index(
        static_cast<size_t>(max_dim + 1));
    std::vector<long long> count(static_cast<size_t>(max_dim + 1), 0);
    for (const Simplex& s : simplices) {
        auto& m = index[static_cast<size_t>(s.dim())];
        m.emplace(s, static_cast<int>(m.size()));
        ++count[static_cast<size_t>(s.dim())];
    }

    // rank of each boundary map by column elimination over Z/2
    std::vector<long long> rank(static_cast<size_t>(max_dim + 2), 0);
    for (int k = 1; k <= max_dim; ++k) {
        std::unordered_map<int, std::vector<int>> pivot_col; // pivot row -> reduced column
        for (const Simplex& s : simplices) {
            if (s.dim() != k) continue;
            std::vector<int> col;
            for (const Simplex& f : s.facets())
                col.push_back(index[static_cast<size_t>(k - 1)].at(f));
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                auto it = pivot_col.find(col.back());
                if (it == pivot_col.end()) break;
                col = add_columns(col, it->second);
            }
            if (!col.empty()) {
                int pivot = col.back();
                pivot_col.emplace(pivot, std::move(col));
                ++rank[static_cast<size_t>(k)];
            }
        }
    }

    std::vector<long long> betti(static_cast<size_t>(max_dim + 1), 0);
    for (int k = 0; k <= max_dim; ++k)
        betti[static_cast<size_t>(k)] =
            count[static_cast<size_t>(k)] - rank[static_cast<size_t>(k)] -
            rank[static_cast<size_t>(k + 1)];
    while (betti.size() > 1 && betti.back() == 0) betti.pop_back();
    return betti;
}

H1SurjectivityResult h1_surjectivity_check(const Barcode& barcode, const Rational& nu) {
    H1SurjectivityResult res;
    Rational bound = Rational(2) * nu;
    auto it = barcode.intervals.find(1);
    if (it == barcode.intervals.end()) return res;
    for (const BarInterval& interval : it->second)
        if (interval.birth > bound) {
            res.ok = false;
            res.witness = interval;
            return res;
        }
    return res;
}

} // namespace vrc
