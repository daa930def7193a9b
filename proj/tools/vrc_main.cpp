#include "pipelines.hpp"

#include "vrc/errors.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace vrc;
using namespace vrc::cli;

namespace {

struct CommonFlags {
    std::string format = "auto";
    std::string mode = "auto";
    std::string eps = "1e-9";
    uint64_t seed = 42;
    std::string json_path;
    int dim_cap = -1;
    long long budget = kDefaultSimplexBudget;
    bool pseudo = false;

    std::optional<int> cap() const {
        return dim_cap >= 0 ? std::optional<int>(dim_cap) : std::nullopt;
    }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "input format: lower | square | tree | auto");
    cmd->add_option("--mode", flags.mode, "numeric mode: rational | decimal | auto");
    cmd->add_option("--eps", flags.eps, "decimal-mode equality tolerance");
    cmd->add_option("--seed", flags.seed, "seed for all randomized steps");
    cmd->add_option("--json", flags.json_path, "write the run report as JSON to this file");
    cmd->add_option("--dim-cap", flags.dim_cap, "maximum simplex dimension to materialize");
    cmd->add_option("--budget", flags.budget, "simplex budget for complex construction");
    cmd->add_flag("--pseudo", flags.pseudo, "collapse duplicate points instead of failing");
}

int finish(RunReport& report, const CommonFlags& flags,
           std::chrono::steady_clock::time_point started, const std::string& extra_text = "") {
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               started)
                         .count();
    if (!extra_text.empty()) std::cout << extra_text;
    std::cout << report.text();
    if (!flags.json_path.empty()) {
        std::ofstream out(flags.json_path);
        out << report.to_json().dump(2) << "\n";
    }
    if (!report.ok()) {
        std::cout << "FAILED\n";
        return 1;
    }
    std::cout << "OK\n";
    return 0;
}

Rational parse_value(const std::string& text) { return Rational::parse(text); }

json gradient_dump_json(const DiscreteGradient& g, const std::vector<std::string>& names) {
    json out = json::array();
    auto sorted = g.intervals();
    std::sort(sorted.begin(), sorted.end(), [](const GradientInterval& a, const GradientInterval& b) {
        if (a.rho != b.rho) return a.rho < b.rho;
        return b.phi < a.phi;
    });
    for (const auto& iv : sorted)
        out.push_back(to_string(iv.rho, names) + " -> " + to_string(iv.phi, names));
    return out;
}

std::string gradient_dump_text(const DiscreteGradient& g, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& line : gradient_dump_json(g, names)) out += line.get<std::string>() + "\n";
    return out;
}

struct GradientBundle {
    DiscreteGradient gradient;
    SimplicialComplex complex;         // host complex for validation
    std::optional<SimplicialComplex> target; // expected collapse target, if one is implied
    VertexOrder order;
    std::string description;
};

GradientBundle build_gradient(LoadedInput& input, const std::string& kind,
                              const std::optional<Rational>& t, int root, int base,
                              const std::string& order_name, bool force,
                              const CommonFlags& flags) {
    const FiniteMetricSpace& X = input.space;
    if (kind == "generic" || kind == "canonical" || kind == "perturbed") {
        const WeightedTree& tree = require_tree(input);
        auto spec = resolve_order(order_name.empty() ? "compatible" : order_name, input, root);
        DiscreteGradient g;
        if (kind == "generic") g = generic_gradient(X, tree);
        else if (kind == "canonical") g = canonical_gradient(X, tree);
        else g = perturbed_gradient(X, tree, spec.order);
        // tree gradients live on the full complex; a dimension cap would
        // only produce spurious containment failures
        auto full = vietoris_rips(X, X.max_distance(), std::nullopt, flags.budget);
        return {std::move(g), std::move(full), std::nullopt, spec.order, kind + " gradient"};
    }
    if (kind == "apparent" || kind == "apparent-zero") {
        auto spec = input.tree || order_name == "compatible" || order_name == "reverse-compatible"
                        ? resolve_order(order_name.empty() ? "compatible" : order_name, input, root)
                        : OrderSpec{VertexOrder::identity(X.size()), LexMode::Lex, "identity"};
        auto full = vietoris_rips(X, t.value_or(X.max_distance()), flags.cap(), flags.budget);
        Filtration F(full, spec.order, spec.lex_mode);
        auto m = kind == "apparent" ? apparent_pairs(F) : zero_persistence_apparent_pairs(F);
        return {DiscreteGradient::from_matching(m), std::move(full), std::nullopt, spec.order,
                kind + " pairs under " + spec.label};
    }
    if (kind == "cone") {
        Rational delta = hyperbolicity(X).delta;
        Rational nu = geodesic_defect(X).nu;
        Rational threshold = Rational(4) * delta + Rational(2) * nu;
        auto res = cone_gradient(X, t.value_or(threshold), base, force, flags.budget);
        SimplicialComplex point(X);
        point.insert(Simplex{base});
        return {std::move(res.gradient), std::move(res.complex), std::move(point),
                std::move(res.cone_order), "cone gradient"};
    }
    if (kind == "filtered-cone") {
        auto res = filtered_cone_gradient(X, base, flags.budget);
        SimplicialComplex point(X);
        point.insert(Simplex{base});
        return {std::move(res.gradient), std::move(res.full), std::move(point),
                std::move(res.base.cone_order), "filtered cone gradient"};
    }
    throw Error(ErrorKind::Parse, "unknown gradient kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vietoris-Rips collapses, tree-metric gradients, and Z/2 persistence"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "hyperbolicity, geodesic defect, and levels");
    CommonFlags analyze_flags;
    std::string analyze_input;
    analyze->add_option("input", analyze_input, "input file")->required();
    add_common(analyze, analyze_flags);

    // vr
    auto* vr = app.add_subcommand("vr", "materialize a Vietoris-Rips complex");
    CommonFlags vr_flags;
    std::string vr_input, vr_t;
    vr->add_option("input", vr_input, "input file")->required();
    vr->add_option("-t,--threshold", vr_t, "diameter threshold (default: max distance)");
    add_common(vr, vr_flags);

    // gradient
    auto* gradient = app.add_subcommand("gradient", "construct a discrete gradient");
    CommonFlags gradient_flags;
    std::string gradient_input, gradient_kind, gradient_t, gradient_root, gradient_base,
        gradient_order;
    bool gradient_force = false;
    gradient->add_option("input", gradient_input, "input file")->required();
    gradient->add_option("--kind", gradient_kind,
                         "cone | filtered-cone | generic | canonical | perturbed | apparent | "
                         "apparent-zero")
        ->required();
    gradient->add_option("-t,--threshold", gradient_t, "threshold for cone/apparent kinds");
    gradient->add_option("--root", gradient_root, "root vertex for compatible orders");
    gradient->add_option("--base", gradient_base, "base point for cone gradients");
    gradient->add_option("--order", gradient_order,
                         "identity | compatible | reverse-compatible");
    gradient->add_flag("--force", gradient_force, "skip the 4*delta+2*nu threshold check");
    add_common(gradient, gradient_flags);

    // collapse
    auto* collapse_cmd = app.add_subcommand("collapse", "run a collapse and emit the certificate");
    CommonFlags collapse_flags;
    std::string collapse_input, collapse_kind, collapse_t, collapse_u, collapse_root,
        collapse_base, collapse_order;
    collapse_cmd->add_option("input", collapse_input, "input file")->required();
    collapse_cmd->add_option("--kind", collapse_kind, "gradient kind (as in `gradient`)")
        ->required();
    collapse_cmd->add_option("-t,--lower", collapse_t, "collapse down to this threshold");
    collapse_cmd->add_option("-u,--upper", collapse_u, "collapse starting from this threshold");
    collapse_cmd->add_option("--root", collapse_root, "root vertex for compatible orders");
    collapse_cmd->add_option("--base", collapse_base, "base point for cone gradients");
    collapse_cmd->add_option("--order", collapse_order, "identity | compatible | reverse-compatible");
    add_common(collapse_cmd, collapse_flags);

    // persistence
    auto* persistence_cmd = app.add_subcommand("persistence", "Z/2 persistence barcode and stats");
    CommonFlags persistence_flags;
    std::string persistence_input, persistence_order, persistence_root;
    int persistence_degree = 2;
    bool no_shortcut = false;
    persistence_cmd->add_option("input", persistence_input, "input file")->required();
    persistence_cmd->add_option("--order", persistence_order,
                                "identity | compatible | reverse-compatible");
    persistence_cmd->add_option("--root", persistence_root, "root vertex for compatible orders");
    persistence_cmd->add_option("--max-degree", persistence_degree, "highest degree to report");
    persistence_cmd->add_flag("--no-shortcut", no_shortcut, "disable the apparent-pairs shortcut");
    add_common(persistence_cmd, persistence_flags);

    // verify
    auto* verify = app.add_subcommand("verify", "run a theorem-verification pipeline");
    CommonFlags verify_flags;
    std::string verify_input, verify_pipeline, verify_t, verify_u, verify_root, verify_base;
    verify->add_option("input", verify_input, "input file")->required();
    verify->add_option("--pipeline,pipeline", verify_pipeline,
                       "theorem1 | theorem2 | canonical | perturbed | refinement | "
                       "apparent-collapse | h1-surjectivity")
        ->required();
    verify->add_option("-t,--lower", verify_t, "threshold t");
    verify->add_option("-u,--upper", verify_u, "threshold u");
    verify->add_option("--root", verify_root, "root vertex for compatible orders");
    verify->add_option("--base", verify_base, "base point for cone pipelines");
    add_common(verify, verify_flags);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a dataset file");
    CommonFlags gen_flags;
    std::string gen_kind, gen_out, gen_input, gen_step = "1/2";
    int gen_n = 6, gen_wlo = 1, gen_whi = 10;
    bool gen_generic = false;
    gen->add_option("--kind", gen_kind, "random-tree | random-metric | grid-sample-of-tree")
        ->required();
    gen->add_option("-n,--size", gen_n, "point count");
    gen->add_option("--out", gen_out, "output file")->required();
    gen->add_option("--input", gen_input, "base tree file (grid-sample-of-tree)");
    gen->add_option("--wlo", gen_wlo, "minimum integer weight");
    gen->add_option("--whi", gen_whi, "maximum integer weight");
    gen->add_option("--step", gen_step, "grid step (grid-sample-of-tree)");
    gen->add_flag("--generic", gen_generic, "power-of-two weights (distinct distances)");
    add_common(gen, gen_flags);

    // order
    auto* order_cmd = app.add_subcommand("order", "print a compatible vertex order");
    CommonFlags order_flags;
    std::string order_input, order_root;
    bool order_reverse = false;
    order_cmd->add_option("input", order_input, "tree input file")->required();
    order_cmd->add_option("--root", order_root, "root vertex");
    order_cmd->add_flag("--reverse", order_reverse, "print the reversed order");
    add_common(order_cmd, order_flags);

    CLI11_PARSE(app, argc, argv);
    auto started = std::chrono::steady_clock::now();

    try {
        if (app.got_subcommand(analyze)) {
            auto input = load_input(analyze_input, analyze_flags.format, analyze_flags.mode,
                                    analyze_flags.eps, analyze_flags.pseudo);
            RunReport report;
            report.command = "analyze";
            report.input_digest = input.digest;
            auto hyp = hyperbolicity(input.space);
            auto defect = geodesic_defect(input.space);
            const auto& names = input.space.names();
            report.results["mode"] = input.mode_label;
            report.results["delta"] = hyp.delta.str();
            report.results["nu"] = defect.nu.str();
            report.results["threshold"] = (Rational(4) * hyp.delta + Rational(2) * defect.nu).str();
            json levels = json::array();
            for (const auto& v : input.space.levels().values) levels.push_back(v.str());
            report.results["levels"] = levels;
            for (const auto& w : input.space.levels().warnings) report.results["warnings"].push_back(w);
            report.results["hyperbolicity_witness"] = json::array(
                {names[static_cast<size_t>(hyp.witness[0])], names[static_cast<size_t>(hyp.witness[1])],
                 names[static_cast<size_t>(hyp.witness[2])], names[static_cast<size_t>(hyp.witness[3])]});
            report.results["defect_witness"] =
                json{{"x", names[static_cast<size_t>(defect.x)]},
                     {"y", names[static_cast<size_t>(defect.y)]},
                     {"r", defect.r.str()}};
            return finish(report, analyze_flags, started);
        }

        if (app.got_subcommand(vr)) {
            auto input =
                load_input(vr_input, vr_flags.format, vr_flags.mode, vr_flags.eps, vr_flags.pseudo);
            RunReport report;
            report.command = "vr";
            report.input_digest = input.digest;
            Rational t = vr_t.empty() ? input.space.max_distance() : parse_value(vr_t);
            auto K = vietoris_rips(input.space, t, vr_flags.cap(), vr_flags.budget);
            Filtration F(K, VertexOrder::identity(input.space.size()));
            report.results["t"] = t.str();
            report.results["simplices"] = K.size();
            return finish(report, vr_flags, started, dump_complex(F));
        }

        if (app.got_subcommand(gradient)) {
            auto input = load_input(gradient_input, gradient_flags.format, gradient_flags.mode,
                                    gradient_flags.eps, gradient_flags.pseudo);
            RunReport report;
            report.command = "gradient";
            report.input_digest = input.digest;
            report.parameters["kind"] = gradient_kind;
            int root = resolve_point(input, gradient_root, input.tree && input.tree->root
                                                               ? *input.tree->root
                                                               : 0);
            int base = resolve_point(input, gradient_base, 0);
            std::optional<Rational> t;
            if (!gradient_t.empty()) t = parse_value(gradient_t);
            auto bundle = build_gradient(input, gradient_kind, t, root, base, gradient_order,
                                         gradient_force, gradient_flags);
            const auto& names = input.space.names();
            report.results["intervals"] = bundle.gradient.size();
            report.results["gradient"] = gradient_dump_json(bundle.gradient, names);
            auto crit = critical_cells(bundle.gradient, bundle.complex);
            json crit_json = json::array();
            for (const auto& s : crit) crit_json.push_back(to_string(s, names));
            report.results["critical_cells"] = crit_json;
            auto val = validate_gradient(bundle.complex, bundle.gradient,
                                         bundle.target ? &*bundle.target : nullptr, bundle.order);
            report.check("disjoint", val.disjoint.pass, val.disjoint.witness);
            report.check("regular", val.regular.pass, val.regular.witness);
            report.check("contained", val.contained.pass, val.contained.witness);
            if (bundle.target)
                report.check("covers-complement", val.covers_complement.pass,
                             val.covers_complement.witness);
            report.check("acyclic", val.acyclic.pass, val.acyclic.witness);
            report.results["diam_compatible"] = val.diam_compatible.pass;
            return finish(report, gradient_flags, started,
                          gradient_dump_text(bundle.gradient, names));
        }

        if (app.got_subcommand(collapse_cmd)) {
            auto input = load_input(collapse_input, collapse_flags.format, collapse_flags.mode,
                                    collapse_flags.eps, collapse_flags.pseudo);
            RunReport report;
            report.command = "collapse";
            report.input_digest = input.digest;
            report.parameters["kind"] = collapse_kind;
            const FiniteMetricSpace& X = input.space;
            int root = resolve_point(input, collapse_root,
                                     input.tree && input.tree->root ? *input.tree->root : 0);
            int base = resolve_point(input, collapse_base, 0);
            std::string text;

            if (collapse_kind == "cone") {
                std::optional<Rational> t;
                if (!collapse_t.empty()) t = parse_value(collapse_t);
                auto bundle = build_gradient(input, "cone", t, root, base, collapse_order, false,
                                             collapse_flags);
                auto cert = vrc::collapse(bundle.complex, bundle.gradient, *bundle.target,
                                          bundle.order, "VR_t", "{*}");
                report.check("collapse-reaches-target", replay(bundle.complex, cert) == *bundle.target);
                report.results["steps"] = cert.steps.size();
                text = dump_certificate(cert, X.names());
            } else if (collapse_kind == "filtered-cone") {
                auto res = filtered_cone_gradient(X, base, collapse_flags.budget);
                Filtration F(res.full, res.base.cone_order);
                std::string dump;
                const auto& levels = X.levels().values;
                for (auto it = res.level_gradients.rbegin(); it != res.level_gradients.rend(); ++it) {
                    auto K_m = filtered_copy(res.full, [&](const Simplex& s) {
                        return F.level_of(s) <= it->first;
                    });
                    auto L_m = filtered_copy(res.full, [&](const Simplex& s) {
                        return F.level_of(s) < it->first;
                    });
                    auto cert = vrc::collapse(K_m, it->second, L_m, res.base.cone_order);
                    dump += "# VR_" + levels[static_cast<size_t>(it->first)].str() + " -> VR_" +
                            levels[static_cast<size_t>(it->first - 1)].str() + "\n" +
                            dump_certificate(cert, X.names());
                }
                SimplicialComplex point(X);
                point.insert(Simplex{base});
                auto cert = vrc::collapse(res.base.complex, res.base.gradient, point,
                                          res.base.cone_order);
                dump += "# VR_" + res.threshold.str() + " -> {*}\n" +
                        dump_certificate(cert, X.names());
                report.check("filtered-collapse", true);
                text = dump;
            } else {
                // tree and apparent kinds: peel levels from u down to t
                auto bundle = build_gradient(input, collapse_kind, std::nullopt, root, base,
                                             collapse_order, false, collapse_flags);
                Rational u = collapse_u.empty() ? X.max_distance() : parse_value(collapse_u);
                Rational t = collapse_t.empty() ? Rational(0) : parse_value(collapse_t);
                int level_u = X.level_floor(u);
                int level_t = X.level_floor(t);
                auto full = vietoris_rips(X, u, collapse_flags.cap(), collapse_flags.budget);
                Filtration F(full, bundle.order);
                std::unordered_set<Simplex, SimplexHash> tree_edges;
                if (input.tree)
                    for (const auto& e : input.tree->edges) tree_edges.insert(Simplex{e.u, e.v});
                auto target = filtered_copy(full, [&](const Simplex& s) {
                    if (F.level_of(s) <= level_t) return true;
                    return s.dim() == 1 && tree_edges.count(s) > 0;
                });
                DiscreteGradient in_range;
                for (const auto& iv : bundle.gradient.intervals()) {
                    int level = F.level_of(iv.rho);
                    if (level > level_t && level <= level_u) in_range.add(iv);
                }
                auto cert = vrc::collapse(full, in_range, target, bundle.order, "VR_u",
                                          "VR_t + T_u");
                report.check("collapse-reaches-target", replay(full, cert) == target);
                report.results["steps"] = cert.steps.size();
                text = dump_certificate(cert, X.names());
            }
            return finish(report, collapse_flags, started, text);
        }

        if (app.got_subcommand(persistence_cmd)) {
            auto input = load_input(persistence_input, persistence_flags.format,
                                    persistence_flags.mode, persistence_flags.eps,
                                    persistence_flags.pseudo);
            RunReport report;
            report.command = "persistence";
            report.input_digest = input.digest;
            int root = resolve_point(input, persistence_root,
                                     input.tree && input.tree->root ? *input.tree->root : 0);
            OrderSpec spec =
                persistence_order.empty()
                    ? OrderSpec{VertexOrder::identity(input.space.size()), LexMode::Lex, "identity"}
                    : resolve_order(persistence_order, input, root);
            report.parameters["order"] = spec.label;
            report.parameters["max_degree"] = persistence_degree;
            auto K = vietoris_rips(input.space, input.space.max_distance(),
                                   persistence_degree + 1, persistence_flags.budget);
            Filtration F(K, spec.order, spec.lex_mode);
            auto res = persistent_homology(F, persistence_degree, !no_shortcut);
            report.results["barcode"] = barcode_json(res.barcode);
            report.results["stats"] = stats_json(res.stats);
            return finish(report, persistence_flags, started, barcode_table(res.barcode));
        }

        if (app.got_subcommand(verify)) {
            auto input = load_input(verify_input, verify_flags.format, verify_flags.mode,
                                    verify_flags.eps, verify_flags.pseudo);
            RunReport report;
            report.command = "verify";
            report.input_digest = input.digest;
            report.parameters["pipeline"] = verify_pipeline;
            int root = resolve_point(input, verify_root,
                                     input.tree && input.tree->root ? *input.tree->root : 0);
            int base = resolve_point(input, verify_base, 0);
            if (verify_pipeline == "theorem1") {
                std::optional<Rational> t;
                if (!verify_t.empty()) t = parse_value(verify_t);
                pipeline_theorem1(report, input, t, base, verify_flags.budget);
            } else if (verify_pipeline == "theorem2") {
                pipeline_theorem2(report, input, root, verify_flags.budget);
            } else if (verify_pipeline == "canonical") {
                pipeline_canonical(report, input, root, verify_flags.budget);
            } else if (verify_pipeline == "perturbed") {
                pipeline_perturbed(report, input, root, verify_flags.budget);
            } else if (verify_pipeline == "refinement") {
                pipeline_refinement(report, input, root, verify_flags.seed, verify_flags.budget);
            } else if (verify_pipeline == "apparent-collapse") {
                Rational u = verify_u.empty() ? input.space.max_distance() : parse_value(verify_u);
                Rational t = verify_t.empty() ? Rational(0) : parse_value(verify_t);
                pipeline_apparent_collapse(report, input, u, t, root, verify_flags.budget);
            } else if (verify_pipeline == "h1-surjectivity") {
                pipeline_h1_surjectivity(report, input, verify_flags.budget);
            } else {
                throw Error(ErrorKind::Parse, "unknown pipeline: " + verify_pipeline);
            }
            return finish(report, verify_flags, started);
        }

        if (app.got_subcommand(gen)) {
            RunReport report;
            report.command = "gen";
            report.parameters = json{{"kind", gen_kind}, {"n", gen_n}, {"seed", gen_flags.seed}};
            std::string payload;
            if (gen_kind == "random-tree") {
                auto t = random_tree(gen_n, gen_flags.seed, {gen_wlo, gen_whi}, gen_generic);
                payload = format_tree_file(t);
                report.results["distribution"] =
                    gen_generic ? "uniform Pruefer tree, weight 2^k on edge k"
                                : "uniform Pruefer tree, integer weights uniform on [" +
                                      std::to_string(gen_wlo) + "," + std::to_string(gen_whi) + "]";
            } else if (gen_kind == "random-metric") {
                auto X = random_metric(gen_n, gen_flags.seed, {gen_wlo, gen_whi});
                payload = format_lower_matrix(X);
                report.results["distribution"] =
                    "integer distances drawn pairwise-uniformly from the feasible triangle "
                    "interval within [" +
                    std::to_string(gen_wlo) + "," + std::to_string(gen_whi) + "], with restarts";
            } else if (gen_kind == "grid-sample-of-tree") {
                if (gen_input.empty())
                    throw Error(ErrorKind::Parse, "grid-sample-of-tree needs --input tree file");
                auto base_input = load_input(gen_input, "tree", "rational", gen_flags.eps, false);
                auto sample = grid_sample_tree(*base_input.tree, parse_value(gen_step));
                payload = format_tree_file(sample.tree);
                report.results["density"] = sample.density.str();
            } else {
                throw Error(ErrorKind::Parse, "unknown gen kind: " + gen_kind);
            }
            std::ofstream out(gen_out);
            if (!out) throw Error(ErrorKind::Parse, "cannot write: " + gen_out);
            out << payload;
            report.results["path"] = gen_out;
            report.input_digest = fnv1a_digest(payload);
            return finish(report, gen_flags, started);
        }

        if (app.got_subcommand(order_cmd)) {
            auto input = load_input(order_input, "tree", "rational", order_flags.eps,
                                    order_flags.pseudo);
            RunReport report;
            report.command = "order";
            report.input_digest = input.digest;
            int root = resolve_point(input, order_root,
                                     input.tree->root ? *input.tree->root : 0);
            auto order = compatible_order(*input.tree, root);
            if (order_reverse) order = order.reversed();
            std::string line;
            json list = json::array();
            for (int i = 0; i < order.size(); ++i) {
                const auto& name = input.space.names()[static_cast<size_t>(order.at(i))];
                line += (i ? " " : "") + name;
                list.push_back(name);
            }
            report.results["order"] = list;
            report.check("order-is-compatible",
                         is_compatible_order(*input.tree, order_reverse ? order.reversed() : order,
                                             root));
            return finish(report, order_flags, started, line + "\n");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind) {
            case ErrorKind::Parse:
            case ErrorKind::Metric:
            case ErrorKind::Precondition:
                return 2;
            case ErrorKind::Budget:
                return 3;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
