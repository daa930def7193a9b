#include "vrc/metric.hpp"

#include "vrc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace vrc {

namespace {

struct Token {
    std::string text;
    int line; // 1-based
    int col;
};

std::vector<std::vector<Token>> tokenize_rows(std::string_view text) {
    std::vector<std::vector<Token>> rows;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<Token> row;
        size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',') {
                ++i;
                continue;
            }
            size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                   line[i] != ',')
                ++i;
            row.push_back({std::string(line.substr(start, i - start)), line_no,
                           static_cast<int>(start) + 1});
        }
        if (!row.empty()) rows.push_back(std::move(row));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return rows;
}

Rational parse_value(const Token& t) {
    try {
        return Rational::parse(t.text);
    } catch (const Error&) {
        std::ostringstream os;
        os << "parse error at line " << t.line << ", column " << t.col << ": invalid number '"
           << t.text << "'";
        throw Error(ErrorKind::Parse, os.str());
    }
}

} // namespace

std::vector<std::string> default_names(int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i < 26)
            names.emplace_back(1, static_cast<char>('a' + i));
        else
            names.push_back("p" + std::to_string(i));
    }
    return names;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> names, std::vector<Rational> matrix,
                                     NumericMode mode)
    : n_(static_cast<int>(names.size())), names_(std::move(names)), d_(std::move(matrix)),
      mode_(std::move(mode)) {
    if (n_ < 1) throw Error(ErrorKind::Metric, "a metric space needs at least one point");
    if (d_.size() != static_cast<size_t>(n_) * static_cast<size_t>(n_))
        throw Error(ErrorKind::Internal, "distance matrix size mismatch");
    validate();
    build_levels();
}

bool FiniteMetricSpace::eq(const Rational& a, const Rational& b) const {
    if (!mode_.decimal) return a == b;
    return abs(a - b) <= mode_.eps;
}

void FiniteMetricSpace::validate() const {
    for (int i = 0; i < n_; ++i) {
        if (!dist(i, i).is_zero())
            throw Error(ErrorKind::Metric, "nonzero diagonal at point " + names_[static_cast<size_t>(i)]);
        for (int j = 0; j < n_; ++j) {
            if (dist(i, j) < Rational(0))
                throw Error(ErrorKind::Metric, "negative distance d(" + names_[static_cast<size_t>(i)] +
                                                   "," + names_[static_cast<size_t>(j)] + ")");
            if (dist(i, j) != dist(j, i))
                throw Error(ErrorKind::Metric, "asymmetric distances d(" + names_[static_cast<size_t>(i)] +
                                                   "," + names_[static_cast<size_t>(j)] + ")");
        }
    }
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (eq(dist(i, j), Rational(0)))
                throw Error(ErrorKind::Metric, "distinct points at distance zero: (" +
                                                   names_[static_cast<size_t>(i)] + "," +
                                                   names_[static_cast<size_t>(j)] + ")");
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                if (!leq(dist(i, k), dist(i, j) + dist(j, k))) {
                    std::ostringstream os;
                    os << "triangle inequality violated for (" << names_[static_cast<size_t>(i)]
                       << "," << names_[static_cast<size_t>(j)] << ","
                       << names_[static_cast<size_t>(k)] << "): d(" << names_[static_cast<size_t>(i)]
                       << "," << names_[static_cast<size_t>(k)] << ")=" << dist(i, k) << " > "
                       << dist(i, j) + dist(j, k);
                    throw Error(ErrorKind::Metric, os.str());
                }
}

void FiniteMetricSpace::build_levels() {
    std::vector<Rational> values{Rational(0)};
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) values.push_back(dist(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    LevelSet ls;
    std::vector<Rational> cluster_last;
    for (const Rational& v : values) {
        if (ls.values.empty() || v - cluster_last.back() > mode_.eps) {
            ls.values.push_back(v);
            ls.merged.push_back(false);
            cluster_last.push_back(v);
        } else {
            ls.merged.back() = true;
            cluster_last.back() = v;
        }
    }
    if (mode_.decimal) {
        Rational two_eps = mode_.eps + mode_.eps;
        for (size_t i = 0; i + 1 < ls.values.size(); ++i) {
            if (ls.values[i + 1] - cluster_last[i] <= two_eps) {
                std::ostringstream os;
                os << "distance levels " << cluster_last[i] << " and " << ls.values[i + 1]
                   << " are within 2*eps of each other";
                ls.warnings.push_back(os.str());
            }
        }
    }
    levels_ = std::move(ls);
    level_last_ = std::move(cluster_last);
}

int FiniteMetricSpace::level_of(const Rational& value) const {
    // clusters are separated by more than eps, so at most one can match
    auto it = std::upper_bound(levels_.values.begin(), levels_.values.end(), value);
    size_t idx = static_cast<size_t>(it - levels_.values.begin());
    if (idx > 0) {
        size_t c = idx - 1;
        if (value <= level_last_[c] + mode_.eps) return static_cast<int>(c);
    }
    if (idx < levels_.values.size() && levels_.values[idx] - value <= mode_.eps)
        return static_cast<int>(idx);
    throw Error(ErrorKind::Internal, "value " + value.str() + " is not a distance level");
}

int FiniteMetricSpace::level_floor(const Rational& value) const {
    if (value < Rational(0))
        throw Error(ErrorKind::Precondition, "negative threshold");
    int idx = 0;
    for (size_t c = 0; c < levels_.values.size(); ++c)
        if (leq(levels_.values[c], value)) idx = static_cast<int>(c);
    return idx;
}

Rational FiniteMetricSpace::min_positive_distance() const {
    if (levels_.values.size() < 2) return Rational(0);
    return levels_.values[1];
}

FiniteMetricSpace FiniteMetricSpace::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw Error(ErrorKind::Precondition, "permutation size mismatch");
    std::vector<std::string> names(static_cast<size_t>(n_));
    std::vector<Rational> d(static_cast<size_t>(n_) * static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        names[static_cast<size_t>(i)] = names_[static_cast<size_t>(perm[static_cast<size_t>(i)])];
        for (int j = 0; j < n_; ++j)
            d[static_cast<size_t>(i) * n_ + j] =
                dist(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
    }
    return FiniteMetricSpace(std::move(names), std::move(d), mode_);
}

namespace {

FiniteMetricSpace build_space(std::vector<std::string> names, std::vector<Rational> d,
                              const LoadOptions& options) {
    int n = static_cast<int>(names.size());
    auto eq0 = [&](const Rational& a) {
        return options.mode.decimal ? abs(a) <= options.mode.eps : a.is_zero();
    };
    // duplicate points (distance zero between distinct indices)
    std::vector<int> group(static_cast<size_t>(n));
    std::iota(group.begin(), group.end(), 0);
    bool any_dup = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (eq0(d[static_cast<size_t>(i) * n + j]) && group[static_cast<size_t>(j)] == j) {
                if (!options.allow_pseudo)
                    throw Error(ErrorKind::Metric,
                                "distinct points at distance zero: (" + names[static_cast<size_t>(i)] +
                                    "," + names[static_cast<size_t>(j)] +
                                    "); pass the pseudo-metric flag to collapse duplicates");
                group[static_cast<size_t>(j)] = group[static_cast<size_t>(i)];
                any_dup = true;
            }
    if (any_dup) {
        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (group[static_cast<size_t>(i)] == i) keep.push_back(i);
        std::vector<std::string> knames;
        std::vector<Rational> kd(keep.size() * keep.size());
        for (size_t a = 0; a < keep.size(); ++a) {
            knames.push_back(names[static_cast<size_t>(keep[a])]);
            for (size_t b = 0; b < keep.size(); ++b)
                kd[a * keep.size() + b] = d[static_cast<size_t>(keep[a]) * n + keep[b]];
        }
        return FiniteMetricSpace(std::move(knames), std::move(kd), options.mode);
    }
    return FiniteMetricSpace(std::move(names), std::move(d), options.mode);
}

} // namespace

FiniteMetricSpace load_metric(std::string_view text, MatrixFormat format,
                              const LoadOptions& options) {
    auto rows = tokenize_rows(text);
    if (format == MatrixFormat::LowerTriangular) {
        int n = static_cast<int>(rows.size()) + 1;
        std::vector<Rational> d(static_cast<size_t>(n) * static_cast<size_t>(n), Rational(0));
        for (int i = 1; i < n; ++i) {
            const auto& row = rows[static_cast<size_t>(i - 1)];
            if (static_cast<int>(row.size()) != i) {
                std::ostringstream os;
                os << "parse error at line " << (row.empty() ? i : row[0].line) << ": expected " << i
                   << " values in lower-triangular row, got " << row.size();
                throw Error(ErrorKind::Parse, os.str());
            }
            for (int j = 0; j < i; ++j) {
                Rational v = parse_value(row[static_cast<size_t>(j)]);
                d[static_cast<size_t>(i) * n + j] = v;
                d[static_cast<size_t>(j) * n + i] = v;
            }
        }
        return build_space(default_names(n), std::move(d), options);
    }

    int n = static_cast<int>(rows.size());
    if (n == 0) throw Error(ErrorKind::Parse, "empty matrix");
    std::vector<Rational> d(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (static_cast<int>(row.size()) != n) {
            std::ostringstream os;
            os << "parse error at line " << row[0].line << ": expected " << n
               << " values in square row, got " << row.size();
            throw Error(ErrorKind::Parse, os.str());
        }
        for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = parse_value(row[static_cast<size_t>(j)]);
    }
    return build_space(default_names(n), std::move(d), options);
}

int WeightedTree::index_of(std::string_view name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw Error(ErrorKind::Precondition, "unknown vertex name: " + std::string(name));
}

void WeightedTree::validate() const {
    if (n < 1) throw Error(ErrorKind::Metric, "a tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1)
        throw Error(ErrorKind::Metric, "a tree on " + std::to_string(n) + " vertices needs " +
                                           std::to_string(n - 1) + " edges, got " +
                                           std::to_string(edges.size()));
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw Error(ErrorKind::Metric, "invalid tree edge");
        if (!(e.length > Rational(0)))
            throw Error(ErrorKind::Metric, "non-positive edge length between " +
                                               names[static_cast<size_t>(e.u)] + " and " +
                                               names[static_cast<size_t>(e.v)]);
        adj[static_cast<size_t>(e.u)].push_back(e.v);
        adj[static_cast<size_t>(e.v)].push_back(e.u);
    }
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = true;
                stack.push_back(w);
            }
    }
    if (count != n) throw Error(ErrorKind::Metric, "tree is not connected");
    if (root && (*root < 0 || *root >= n))
        throw Error(ErrorKind::Metric, "tree root out of range");
}

Rational WeightedTree::max_edge_length() const {
    Rational m(0);
    for (const auto& e : edges) m = max(m, e.length);
    return m;
}

WeightedTree parse_tree(std::string_view text) {
    auto rows = tokenize_rows(text);
    WeightedTree t;
    std::map<std::string, int> index;
    auto vertex = [&](const std::string& name) {
        auto [it, inserted] = index.try_emplace(name, static_cast<int>(t.names.size()));
        if (inserted) t.names.push_back(name);
        return it->second;
    };
    std::optional<std::string> root_name;
    for (const auto& row : rows) {
        if (row.size() == 2 && row[0].text == "root") {
            root_name = row[1].text;
            continue;
        }
        if (row.size() != 3) {
            std::ostringstream os;
            os << "parse error at line " << row[0].line
               << ": expected 'name_u name_v length', got " << row.size() << " tokens";
            throw Error(ErrorKind::Parse, os.str());
        }
        int u = vertex(row[0].text);
        int v = vertex(row[1].text);
        t.edges.push_back({u, v, parse_value(row[2])});
    }
    t.n = static_cast<int>(t.names.size());
    if (t.n == 0) { // a single isolated vertex is written as just a root line
        if (root_name) {
            t.names.push_back(*root_name);
            t.n = 1;
        } else {
            throw Error(ErrorKind::Parse, "empty tree file");
        }
    }
    if (root_name) t.root = t.index_of(*root_name);
    t.validate();
    return t;
}

namespace {

// single-source path lengths in the tree
std::vector<Rational> tree_distances_from(const WeightedTree& t, int source) {
    std::vector<std::vector<std::pair<int, Rational>>> adj(static_cast<size_t>(t.n));
    for (const auto& e : t.edges) {
        adj[static_cast<size_t>(e.u)].push_back({e.v, e.length});
        adj[static_cast<size_t>(e.v)].push_back({e.u, e.length});
    }
    std::vector<Rational> dist(static_cast<size_t>(t.n), Rational(-1));
    dist[static_cast<size_t>(source)] = Rational(0);
    std::vector<int> stack{source};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [w, len] : adj[static_cast<size_t>(v)])
            if (dist[static_cast<size_t>(w)] < Rational(0)) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + len;
                stack.push_back(w);
            }
    }
    return dist;
}

} // namespace

FiniteMetricSpace tree_metric(const WeightedTree& tree) {
    tree.validate();
    int n = tree.n;
    std::vector<Rational> d(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto row = tree_distances_from(tree, i);
        for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = row[static_cast<size_t>(j)];
    }
    return FiniteMetricSpace(tree.names, std::move(d), NumericMode::rational());
}

VertexOrder compatible_order(const WeightedTree& tree, int root) {
    tree.validate();
    if (root < 0 || root >= tree.n) throw Error(ErrorKind::Precondition, "root out of range");
    auto dist = tree_distances_from(tree, root);
    std::vector<int> perm(static_cast<size_t>(tree.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (dist[static_cast<size_t>(a)] != dist[static_cast<size_t>(b)])
            return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)];
        return a < b;
    });
    return VertexOrder::from_permutation(std::move(perm));
}

bool is_compatible_order(const WeightedTree& tree, const VertexOrder& order,
                         std::optional<int> root) {
    int r = root.value_or(order.at(0));
    if (order.rank(r) != 0) return false;
    // parent relation of the rooted tree; extending it extends the partial order
    std::vector<std::vector<int>> adj(static_cast<size_t>(tree.n));
    for (const auto& e : tree.edges) {
        adj[static_cast<size_t>(e.u)].push_back(e.v);
        adj[static_cast<size_t>(e.v)].push_back(e.u);
    }
    std::vector<int> parent(static_cast<size_t>(tree.n), -1);
    std::vector<int> stack{r};
    std::vector<bool> seen(static_cast<size_t>(tree.n), false);
    seen[static_cast<size_t>(r)] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = true;
                parent[static_cast<size_t>(w)] = v;
                stack.push_back(w);
            }
    }
    for (int v = 0; v < tree.n; ++v)
        if (v != r && order.rank(parent[static_cast<size_t>(v)]) >= order.rank(v)) return false;
    return true;
}

std::optional<WeightedTree> recover_tree(const FiniteMetricSpace& X) {
    int n = X.size();
    WeightedTree t;
    t.n = n;
    t.names = X.names();
    if (n == 1) return t;
    // tree edges are exactly the pairs with no point strictly between them
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) {
            bool has_between = false;
            for (int z = 0; z < n && !has_between; ++z) {
                if (z == u || z == w) continue;
                if (X.eq(X.dist(u, z) + X.dist(z, w), X.dist(u, w))) has_between = true;
            }
            if (!has_between) t.edges.push_back({u, w, X.dist(u, w)});
        }
    if (static_cast<int>(t.edges.size()) != n - 1) return std::nullopt;
    try {
        t.validate();
    } catch (const Error&) {
        return std::nullopt;
    }
    FiniteMetricSpace realized = tree_metric(t);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!X.eq(realized.dist(i, j), X.dist(i, j))) return std::nullopt;
    return t;
}

} // namespace vrc
