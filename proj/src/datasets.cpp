#include "vrc/datasets.hpp"

#include "vrc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace vrc {

uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw Error(ErrorKind::Precondition, "empty integer range");
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
}

WeightedTree random_tree(int n, uint64_t seed, WeightRange weights, bool generic) {
    if (n < 1) throw Error(ErrorKind::Precondition, "tree size must be positive");
    Rng rng(seed);
    WeightedTree t;
    t.n = n;
    t.names = default_names(n);
    if (n == 1) return t;

    std::vector<int> degree(static_cast<size_t>(n), 1);
    std::vector<int> pruefer;
    for (int i = 0; i < n - 2; ++i) {
        int v = rng.uniform_int(0, n - 1);
        pruefer.push_back(v);
        ++degree[static_cast<size_t>(v)];
    }
    auto weight = [&](int k) {
        if (generic) {
            Rational w(1);
            for (int i = 0; i < k; ++i) w *= Rational(2);
            return w;
        }
        return Rational(rng.uniform_int(weights.lo, weights.hi));
    };
    int edge_index = 0;
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int v : pruefer) {
        for (int leaf = 0; leaf < n; ++leaf)
            if (degree[static_cast<size_t>(leaf)] == 1 && !used[static_cast<size_t>(leaf)]) {
                t.edges.push_back({leaf, v, weight(edge_index++)});
                used[static_cast<size_t>(leaf)] = true;
                --degree[static_cast<size_t>(v)];
                break;
            }
    }
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!used[static_cast<size_t>(v)] && degree[static_cast<size_t>(v)] == 1) rest.push_back(v);
    t.edges.push_back({rest[0], rest[1], weight(edge_index++)});
    t.validate();
    return t;
}

FiniteMetricSpace random_metric(int n, uint64_t seed, WeightRange range) {
    if (n < 1) throw Error(ErrorKind::Precondition, "metric size must be positive");
    if (range.lo < 1) throw Error(ErrorKind::Precondition, "distances must be positive integers");
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::vector<int>> d(static_cast<size_t>(n),
                                        std::vector<int>(static_cast<size_t>(n), -1));
        for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
        bool failed = false;
        for (int i = 0; i < n && !failed; ++i)
            for (int j = i + 1; j < n && !failed; ++j) {
                int lo = range.lo, hi = range.hi;
                for (int k = 0; k < n; ++k) {
                    int dik = d[static_cast<size_t>(i)][static_cast<size_t>(k)];
                    int djk = d[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    if (k == i || k == j || dik < 0 || djk < 0) continue;
                    lo = std::max(lo, std::abs(dik - djk));
                    hi = std::min(hi, dik + djk);
                }
                if (lo > hi) {
                    failed = true;
                    break;
                }
                int v = rng.uniform_int(lo, hi);
                d[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                d[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        if (failed) continue;
        std::vector<Rational> matrix(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                matrix[static_cast<size_t>(i) * n + j] =
                    Rational(d[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        return FiniteMetricSpace(default_names(n), std::move(matrix), NumericMode::rational());
    }
    throw Error(ErrorKind::Internal, "random metric sampling did not converge");
}

GridSample grid_sample_tree(const WeightedTree& tree, const Rational& step) {
    if (!(step > Rational(0))) throw Error(ErrorKind::Precondition, "step must be positive");
    tree.validate();
    GridSample out;
    out.tree.n = tree.n;
    out.tree.names = tree.names;
    out.density = Rational(0);
    int next_aux = 0;
    for (const auto& e : tree.edges) {
        // pieces = ceil(length / step)
        Rational ratio = e.length / step;
        auto num = numerator(ratio.backend());
        auto den = denominator(ratio.backend());
        auto pieces_big = (num + den - 1) / den;
        long long pieces = pieces_big.convert_to<long long>();
        Rational piece_len = e.length / Rational(pieces);
        out.density = max(out.density, piece_len / Rational(2));
        int prev = e.u;
        for (long long k = 1; k < pieces; ++k) {
            int aux = static_cast<int>(out.tree.names.size());
            out.tree.names.push_back("g" + std::to_string(next_aux++));
            out.tree.edges.push_back({prev, aux, piece_len});
            prev = aux;
        }
        out.tree.edges.push_back({prev, e.v, piece_len});
    }
    out.tree.n = static_cast<int>(out.tree.names.size());
    out.tree.validate();
    return out;
}

std::string format_tree_file(const WeightedTree& tree) {
    std::ostringstream os;
    if (tree.root) os << "root " << tree.names[static_cast<size_t>(*tree.root)] << "\n";
    for (const auto& e : tree.edges)
        os << tree.names[static_cast<size_t>(e.u)] << " " << tree.names[static_cast<size_t>(e.v)]
           << " " << e.length << "\n";
    if (tree.n == 1 && !tree.root) os << "root " << tree.names[0] << "\n";
    return os.str();
}

std::string format_lower_matrix(const FiniteMetricSpace& X) {
    std::ostringstream os;
    for (int i = 1; i < X.size(); ++i) {
        for (int j = 0; j < i; ++j) {
            if (j) os << " ";
            os << X.dist(i, j);
        }
        os << "\n";
    }
    return os.str();
}

} // namespace vrc
