#include "pipelines.hpp"

#include "vrc/errors.hpp"

#include <fstream>
#include <sstream>

namespace vrc::cli {

bool RunReport::ok() const {
    for (const auto& a : assertions)
        if (!a.pass) return false;
    return true;
}

void RunReport::check(const std::string& name, bool pass, const std::string& witness) {
    assertions.push_back({name, pass, pass ? "" : witness});
}

json RunReport::to_json() const {
    json a = json::array();
    for (const auto& item : assertions) {
        json entry{{"name", item.name}, {"pass", item.pass}};
        if (!item.witness.empty()) entry["witness"] = item.witness;
        a.push_back(entry);
    }
    return json{{"command", command},       {"input_digest", input_digest},
                {"parameters", parameters}, {"results", results},
                {"assertions", a},          {"ok", ok()},
                {"wall_ms", wall_ms}};
}

std::string RunReport::text() const {
    std::ostringstream os;
    for (const auto& [key, value] : results.items())
        os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    for (const auto& a : assertions) {
        os << (a.pass ? "PASS" : "FAIL") << " " << a.name;
        if (!a.witness.empty()) os << " (" << a.witness << ")";
        os << "\n";
    }
    return os.str();
}

std::string fnv1a_digest(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LoadedInput load_input(const std::string& path, std::string format, std::string mode,
                       const std::string& eps, bool allow_pseudo) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open input file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    if (format == "auto")
        format = path.size() > 5 && path.substr(path.size() - 5) == ".tree" ? "tree" : "lower";
    return load_input_text(buffer.str(), std::move(format), std::move(mode), eps, allow_pseudo);
}

LoadedInput load_input_text(const std::string& text, std::string format, std::string mode,
                            const std::string& eps, bool allow_pseudo) {
    if (format == "auto") {
        // a tree file's first data line has three tokens, the last numeric
        std::istringstream is(text);
        std::string line;
        format = "lower";
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::vector<std::string> tokens;
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (tokens.empty() || tokens[0][0] == '#') continue;
            if (tokens.size() == 2 && tokens[0] == "root") format = "tree";
            if (tokens.size() == 3) {
                try {
                    (void)Rational::parse(tokens[0]);
                } catch (const Error&) {
                    format = "tree";
                }
            }
            break;
        }
    }

    if (format == "tree") {
        WeightedTree tree = parse_tree(text);
        LoadedInput li{tree_metric(tree), std::move(tree), fnv1a_digest(text), "rational"};
        return li;
    }

    if (mode == "auto")
        mode = text.find('.') != std::string::npos ? "decimal" : "rational";
    LoadOptions opts;
    opts.allow_pseudo = allow_pseudo;
    std::string mode_label = "rational";
    if (mode == "decimal") {
        opts.mode = NumericMode::with_tolerance(Rational::parse(eps));
        mode_label = "decimal(" + Rational::parse(eps).str() + ")";
    } else if (mode != "rational") {
        throw Error(ErrorKind::Parse, "unknown mode: " + mode);
    }
    MatrixFormat mf;
    if (format == "lower") mf = MatrixFormat::LowerTriangular;
    else if (format == "square") mf = MatrixFormat::Square;
    else throw Error(ErrorKind::Parse, "unknown format: " + format);
    return {load_metric(text, mf, opts), std::nullopt, fnv1a_digest(text), mode_label};
}

const WeightedTree& require_tree(LoadedInput& input) {
    if (!input.tree) {
        auto recovered = recover_tree(input.space);
        if (!recovered)
            throw Error(ErrorKind::Precondition,
                        "this operation needs a tree metric, and the input is not one");
        input.tree = std::move(*recovered);
    }
    return *input.tree;
}

OrderSpec resolve_order(const std::string& name, LoadedInput& input, int root) {
    if (name == "identity")
        return {VertexOrder::identity(input.space.size()), LexMode::Lex, "identity"};
    if (name == "compatible") {
        auto order = compatible_order(require_tree(input), root);
        return {std::move(order), LexMode::Lex, "compatible(root " +
                                                     input.space.names()[static_cast<size_t>(root)] + ")"};
    }
    if (name == "reverse-compatible") {
        auto order = compatible_order(require_tree(input), root).reversed();
        return {std::move(order), LexMode::RevColex,
                "reverse-compatible(root " + input.space.names()[static_cast<size_t>(root)] + ")"};
    }
    throw Error(ErrorKind::Parse, "unknown order: " + name);
}

int resolve_point(const LoadedInput& input, const std::string& name, int fallback) {
    if (name.empty()) return fallback;
    const auto& names = input.space.names();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw Error(ErrorKind::Precondition, "unknown point name: " + name);
}

json barcode_json(const Barcode& barcode) {
    json out = json::object();
    for (const auto& [degree, bars] : barcode.intervals) {
        json list = json::array();
        for (const auto& bar : bars)
            list.push_back(json::array(
                {bar.birth.to_double(), bar.death ? json(bar.death->to_double()) : json(nullptr)}));
        out[std::to_string(degree)] = std::move(list);
    }
    return out;
}

json stats_json(const ReductionStats& stats) {
    json by_degree = json::object();
    for (const auto& [degree, adds] : stats.additions_by_degree)
        by_degree[std::to_string(degree)] = adds;
    return json{{"columns", stats.columns},
                {"apparent_skipped", stats.apparent_skipped},
                {"additions", stats.additions},
                {"critical", stats.critical},
                {"additions_by_degree", by_degree}};
}

std::string barcode_table(const Barcode& barcode) {
    std::ostringstream os;
    os << "degree  birth  death\n";
    for (const auto& [degree, bars] : barcode.intervals)
        for (const auto& bar : bars)
            os << degree << "  " << bar.birth << "  " << (bar.death ? bar.death->str() : "inf")
               << "\n";
    return os.str();
}

namespace {

SimplicialComplex level_complex(const SimplicialComplex& full, const Filtration& F, int level) {
    return filtered_copy(full, [&](const Simplex& s) { return F.level_of(s) <= level; });
}

// VR_{r_{m-1}} union T_{r_m}
SimplicialComplex level_target(const SimplicialComplex& full, const Filtration& F, int level,
                               const std::unordered_set<Simplex, SimplexHash>& tree_edges) {
    return filtered_copy(full, [&](const Simplex& s) {
        if (F.level_of(s) < level) return true;
        return F.level_of(s) == level && s.dim() == 1 && tree_edges.count(s) > 0;
    });
}

std::unordered_set<Simplex, SimplexHash> tree_edge_set(const WeightedTree& tree) {
    std::unordered_set<Simplex, SimplexHash> out;
    for (const auto& e : tree.edges) out.insert(Simplex{e.u, e.v});
    return out;
}

DiscreteGradient intervals_at_level(const DiscreteGradient& g, const Filtration& F, int level) {
    DiscreteGradient out;
    for (const auto& iv : g.intervals())
        if (F.level_of(iv.rho) == level) out.add(iv);
    return out;
}

DiscreteGradient intervals_up_to_level(const DiscreteGradient& g, const Filtration& F, int level) {
    DiscreteGradient out;
    for (const auto& iv : g.intervals())
        if (F.level_of(iv.rho) <= level) out.add(iv);
    return out;
}

// shared body of the tree-gradient pipelines: per-level collapses
// VR_{r_m} -> VR_{r_{m-1}} union T_{r_m}, homology invariance, the chain
// down to the subforest, and the critical-cell identity
void tree_gradient_pipeline(RunReport& report, LoadedInput& input, const DiscreteGradient& g,
                            const VertexOrder& order, long long budget) {
    const FiniteMetricSpace& X = input.space;
    const WeightedTree& tree = *input.tree;
    auto full = vietoris_rips(X, X.max_distance(), std::nullopt, budget);
    Filtration F(full, order);
    auto tree_edges = tree_edge_set(tree);

    auto validation = validate_gradient(full, g, nullptr, order);
    report.check("gradient-valid", validation.pass() && validation.diam_compatible.pass,
                 validation.disjoint.witness + validation.regular.witness +
                     validation.contained.witness + validation.acyclic.witness +
                     validation.diam_compatible.witness);

    std::vector<Simplex> expect;
    for (int v = 0; v < X.size(); ++v) expect.push_back(Simplex{v});
    for (const auto& e : tree.edges) expect.push_back(Simplex{e.u, e.v});
    std::sort(expect.begin(), expect.end());
    auto crit = critical_cells(g, full);
    std::sort(crit.begin(), crit.end());
    report.check("critical-cells-are-vertices-and-tree-edges", crit == expect);

    int top = static_cast<int>(X.levels().values.size()) - 1;
    long long total_steps = 0;
    for (int m = 1; m <= top; ++m) {
        auto K_m = level_complex(full, F, m);
        auto L_m = level_target(full, F, m, tree_edges);
        auto G_m = intervals_at_level(g, F, m);
        auto val = validate_gradient(K_m, G_m, &L_m, order);
        std::string tag = "level-" + X.levels().values[static_cast<size_t>(m)].str();
        report.check(tag + "-valid", val.pass(), val.covers_complement.witness);
        try {
            auto cert = collapse(K_m, G_m, L_m, order);
            total_steps += static_cast<long long>(cert.steps.size());
            report.check(tag + "-collapse", replay(K_m, cert) == L_m);
        } catch (const Error& e) {
            report.check(tag + "-collapse", false, e.what());
            continue;
        }
        report.check(tag + "-homology", homology_oracle(K_m) == homology_oracle(L_m));
        // with no tree edge at this level the target is the previous complex
        bool new_tree_edge = false;
        for (const auto& e : tree.edges)
            if (X.level_of(e.length) == m) new_tree_edge = true;
        if (!new_tree_edge)
            report.check(tag + "-reaches-previous-rips", L_m == level_complex(full, F, m - 1));
        // second arrow: VR_{r_{m-1}} collapses onto its subforest
        auto below = level_complex(full, F, m - 1);
        auto forest = subforest(tree, X, X.levels().values[static_cast<size_t>(m - 1)]);
        auto G_below = intervals_up_to_level(g, F, m - 1);
        try {
            auto cert = collapse(below, G_below, forest, order);
            report.check(tag + "-subforest-collapse", replay(below, cert) == forest);
        } catch (const Error& e) {
            report.check(tag + "-subforest-collapse", false, e.what());
        }
    }
    // full chain: the whole complex collapses onto the tree
    auto tree_complex = subforest(tree, X, X.max_distance());
    try {
        auto cert = collapse(full, g, tree_complex, order, "cl(V)", "T");
        report.check("chain-to-tree", replay(full, cert) == tree_complex);
    } catch (const Error& e) {
        report.check("chain-to-tree", false, e.what());
    }
    report.results["collapse_steps_per_level_total"] = total_steps;
}

} // namespace

void pipeline_theorem2(RunReport& report, LoadedInput& input, int root, long long budget) {
    const FiniteMetricSpace& X = input.space;
    const WeightedTree& tree = require_tree(input);
    auto order = compatible_order(tree, root);
    report.results["order"] = "compatible(root " + X.names()[static_cast<size_t>(root)] + ")";
    auto full = vietoris_rips(X, X.max_distance(), std::nullopt, budget);
    Filtration F(full, order);
    auto zp = zero_persistence_apparent_pairs(F);
    auto g = DiscreteGradient::from_matching(zp);
    report.results["zero_persistence_pairs"] = zp.pairs.size();
    tree_gradient_pipeline(report, input, g, order, budget);

    auto res = persistent_homology(F, X.size());
    bool trivial = true;
    for (const auto& [degree, bars] : res.barcode.intervals)
        if (degree >= 1 && !bars.empty()) trivial = false;
    report.check("barcode-trivial-above-degree-zero", trivial);
    report.results["reduction_stats"] = stats_json(res.stats);
}

void pipeline_canonical(RunReport& report, LoadedInput& input, int root, long long budget) {
    const WeightedTree& tree = require_tree(input);
    auto order = compatible_order(tree, root);
    auto g = canonical_gradient(input.space, tree);
    report.results["intervals"] = g.size();
    tree_gradient_pipeline(report, input, g, order, budget);
}

void pipeline_perturbed(RunReport& report, LoadedInput& input, int root, long long budget) {
    const WeightedTree& tree = require_tree(input);
    auto order = compatible_order(tree, root);
    auto g = perturbed_gradient(input.space, tree, order);
    report.results["intervals"] = g.size();
    tree_gradient_pipeline(report, input, g, order, budget);
}

void pipeline_theorem1(RunReport& report, const LoadedInput& input,
                       const std::optional<Rational>& t, int base_point, long long budget) {
    const FiniteMetricSpace& X = input.space;
    SimplicialComplex point(X);
    point.insert(Simplex{base_point});

    if (t) {
        auto res = cone_gradient(X, *t, base_point, false, budget);
        report.results["threshold"] = res.threshold.str();
        report.results["t"] = t->str();
        auto val = validate_gradient(res.complex, res.gradient, &point, res.cone_order);
        report.check("cone-gradient-valid", val.pass());
        auto cert = collapse(res.complex, res.gradient, point, res.cone_order, "VR_t", "{*}");
        report.check("cone-collapse", replay(res.complex, cert) == point);
        report.check("homology-invariant",
                     homology_oracle(res.complex) == std::vector<long long>{1});
        return;
    }

    auto res = filtered_cone_gradient(X, base_point, budget);
    report.results["threshold"] = res.threshold.str();
    report.results["base_level"] = X.levels().values[static_cast<size_t>(res.base_level)].str();
    const auto& levels = X.levels().values;
    Filtration F(res.full, res.base.cone_order);
    for (const auto& [m, W] : res.level_gradients) {
        auto K_m = level_complex(res.full, F, m);
        auto L_m = level_complex(res.full, F, m - 1);
        std::string tag = "level-" + levels[static_cast<size_t>(m)].str();
        auto val = validate_gradient(K_m, W, &L_m, res.base.cone_order);
        report.check(tag + "-valid", val.pass());
        try {
            auto cert = collapse(K_m, W, L_m, res.base.cone_order);
            report.check(tag + "-collapse", replay(K_m, cert) == L_m);
        } catch (const Error& e) {
            report.check(tag + "-collapse", false, e.what());
            continue;
        }
        report.check(tag + "-homology", homology_oracle(K_m) == homology_oracle(L_m));
    }
    auto val = validate_gradient(res.base.complex, res.base.gradient, &point, res.base.cone_order);
    report.check("base-cone-valid", val.pass());
    try {
        auto cert =
            collapse(res.base.complex, res.base.gradient, point, res.base.cone_order, "VR_t", "{*}");
        report.check("base-cone-collapse", replay(res.base.complex, cert) == point);
        report.check("base-homology", homology_oracle(res.base.complex) == std::vector<long long>{1});
    } catch (const Error& e) {
        report.check("base-cone-collapse", false, e.what());
    }
    auto merged_val = validate_gradient(res.full, res.gradient, &point, res.base.cone_order);
    report.check("merged-gradient-valid", merged_val.pass());
}

void pipeline_refinement(RunReport& report, LoadedInput& input, int root, uint64_t seed,
                         long long budget) {
    const FiniteMetricSpace& X = input.space;
    const WeightedTree& tree = require_tree(input);
    auto order = compatible_order(tree, root);
    auto full = vietoris_rips(X, X.max_distance(), std::nullopt, budget);
    Filtration F(full, order);

    auto canon = canonical_gradient(X, tree);
    auto pert = perturbed_gradient(X, tree, order);
    auto zp = zero_persistence_apparent_pairs(F);

    auto rep1 = refinement_check(pert, canon, X.names());
    report.check("canonical-refines-perturbed", rep1.pass(), rep1.witness);
    auto rep2 = refinement_check(pert, zp, X.names());
    report.check("apparent-pairs-refine-perturbed", rep2.pass(), rep2.witness);

    // generic inputs: the zero-persistence apparent pairs are exactly the
    // minimal vertex refinement of the generic gradient, for any order
    bool generic_input = true;
    try {
        auto gen = generic_gradient(X, tree);
        Rng rng(seed);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<int> perm(static_cast<size_t>(X.size()));
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = X.size() - 1; i > 0; --i)
                std::swap(perm[static_cast<size_t>(i)],
                          perm[static_cast<size_t>(rng.uniform_int(0, i))]);
            auto random_order = VertexOrder::from_permutation(perm);
            Filtration FR(full, random_order);
            auto lhs = zero_persistence_apparent_pairs(FR);
            auto rhs = minimal_vertex_refinement(gen, random_order);
            auto key = [](const Matching& m) {
                std::vector<std::pair<Simplex, Simplex>> k;
                for (const auto& p : m.pairs) k.push_back({p.sigma, p.tau});
                std::sort(k.begin(), k.end());
                return k;
            };
            report.check("generic-apparent-identity-trial-" + std::to_string(trial),
                         key(lhs) == key(rhs));
        }
    } catch (const Error&) {
        generic_input = false;
    }
    report.results["generic"] = generic_input;
}

void pipeline_apparent_collapse(RunReport& report, LoadedInput& input, const Rational& u,
                                const Rational& t, int root, long long budget) {
    const FiniteMetricSpace& X = input.space;
    int level_u = X.level_floor(u);
    int level_t = X.level_floor(t);
    auto full = vietoris_rips(X, u, std::nullopt, budget);

    OrderSpec spec{VertexOrder::identity(X.size()), LexMode::Lex, "identity"};
    if (input.tree) spec = resolve_order("compatible", input, root);
    Filtration F(full, spec.order, spec.lex_mode);
    report.results["order"] = spec.label;

    auto zp = zero_persistence_apparent_pairs(F);
    // pairs in the levels being removed
    Matching m;
    for (const auto& p : zp.pairs) {
        int level = F.level_of(p.sigma);
        if (level > level_t && level <= level_u) m.pairs.push_back(p);
    }
    // target: VR_t, plus the tree edges above t when the input is a tree
    SimplicialComplex target(X);
    std::unordered_set<Simplex, SimplexHash> tree_edges;
    if (input.tree) tree_edges = tree_edge_set(*input.tree);
    target = filtered_copy(full, [&](const Simplex& s) {
        if (F.level_of(s) <= level_t) return true;
        return s.dim() == 1 && tree_edges.count(s) > 0;
    });

    std::unordered_set<Simplex, SimplexHash> covered;
    for (const auto& p : m.pairs) {
        covered.insert(p.sigma);
        covered.insert(p.tau);
    }
    std::vector<std::string> uncovered;
    for (const Simplex& s : full.sorted_simplices())
        if (!target.contains(s) && !covered.count(s))
            uncovered.push_back("{" + to_string(s, X.names()) + "}");
    if (!uncovered.empty()) {
        std::string witness;
        for (const auto& s : uncovered) witness += (witness.empty() ? "" : ", ") + s;
        report.check("apparent-pairs-cover-complement", false, "critical: " + witness);
        report.results["critical_cells"] = uncovered;
        return;
    }
    report.check("apparent-pairs-cover-complement", true);
    try {
        auto cert = collapse_with_matching(full, m, target, "VR_u", "VR_t");
        report.check("apparent-collapse", replay(full, cert) == target);
        report.results["steps"] = cert.steps.size();
    } catch (const Error& e) {
        report.check("apparent-collapse", false, e.what());
    }
}

void pipeline_h1_surjectivity(RunReport& report, const LoadedInput& input, long long budget) {
    const FiniteMetricSpace& X = input.space;
    Rational nu = geodesic_defect(X).nu;
    auto K = vietoris_rips(X, X.max_distance(), 2, budget);
    Filtration F(K, VertexOrder::identity(X.size()));
    auto res = persistent_homology(F, 1);
    auto check = h1_surjectivity_check(res.barcode, nu);
    std::string witness;
    if (check.witness)
        witness = "degree-1 interval born at " + check.witness->birth.str() + " > 2*nu = " +
                  (Rational(2) * nu).str();
    report.results["nu"] = nu.str();
    report.results["barcode"] = barcode_json(res.barcode);
    report.check("no-degree-1-birth-above-2nu", check.ok, witness);
}

} // namespace vrc::cli
