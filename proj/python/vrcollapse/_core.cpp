#include "pipelines.hpp"

#include "vrc/errors.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace vrc;
using namespace vrc::cli;

namespace {

py::object json_to_py(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

LoadedInput load(const std::string& text, const std::string& format, const std::string& mode,
                 const std::string& eps, bool pseudo) {
    return load_input_text(text, format, mode, eps, pseudo);
}

py::dict analyze(const std::string& text, const std::string& format, const std::string& mode,
                 const std::string& eps, bool pseudo) {
    auto input = load(text, format, mode, eps, pseudo);
    auto hyp = hyperbolicity(input.space);
    auto defect = geodesic_defect(input.space);
    py::dict out;
    out["mode"] = input.mode_label;
    out["delta"] = hyp.delta.to_double();
    out["nu"] = defect.nu.to_double();
    out["threshold"] = (Rational(4) * hyp.delta + Rational(2) * defect.nu).to_double();
    out["delta_exact"] = hyp.delta.str();
    out["nu_exact"] = defect.nu.str();
    py::list levels;
    for (const auto& v : input.space.levels().values) levels.append(v.to_double());
    out["levels"] = levels;
    py::list witness;
    for (int v : hyp.witness) witness.append(input.space.names()[static_cast<size_t>(v)]);
    out["hyperbolicity_witness"] = witness;
    return out;
}

std::string rips_dump(const std::string& text, const std::string& format,
                      const std::optional<std::string>& t, std::optional<int> dim_cap,
                      long long budget) {
    auto input = load(text, format, "auto", "1e-9", false);
    Rational threshold = t ? Rational::parse(*t) : input.space.max_distance();
    auto K = vietoris_rips(input.space, threshold, dim_cap, budget);
    Filtration F(K, VertexOrder::identity(input.space.size()));
    return dump_complex(F);
}

py::dict gradient_info(const std::string& text, const std::string& format,
                       const std::string& kind, const std::string& order_name,
                       const std::string& root, const std::string& base,
                       const std::optional<std::string>& t, bool force) {
    auto input = load(text, format, "auto", "1e-9", false);
    const FiniteMetricSpace& X = input.space;
    int root_idx = resolve_point(input, root, input.tree && input.tree->root ? *input.tree->root : 0);
    int base_idx = resolve_point(input, base, 0);

    DiscreteGradient g;
    SimplicialComplex host(X);
    std::optional<SimplicialComplex> target;
    VertexOrder refinement_order = VertexOrder::identity(X.size());

    if (kind == "generic" || kind == "canonical" || kind == "perturbed") {
        const WeightedTree& tree = require_tree(input);
        auto spec = resolve_order(order_name.empty() ? "compatible" : order_name, input, root_idx);
        refinement_order = spec.order;
        if (kind == "generic") g = generic_gradient(X, tree);
        else if (kind == "canonical") g = canonical_gradient(X, tree);
        else g = perturbed_gradient(X, tree, spec.order);
        host = vietoris_rips(X, X.max_distance());
    } else if (kind == "apparent" || kind == "apparent-zero") {
        auto spec = input.tree
                        ? resolve_order(order_name.empty() ? "compatible" : order_name, input, root_idx)
                        : OrderSpec{VertexOrder::identity(X.size()), LexMode::Lex, "identity"};
        refinement_order = spec.order;
        host = vietoris_rips(X, t ? Rational::parse(*t) : X.max_distance());
        Filtration F(host, spec.order, spec.lex_mode);
        g = DiscreteGradient::from_matching(kind == "apparent" ? apparent_pairs(F)
                                                               : zero_persistence_apparent_pairs(F));
    } else if (kind == "cone") {
        Rational threshold = Rational(4) * hyperbolicity(X).delta +
                             Rational(2) * geodesic_defect(X).nu;
        auto res = cone_gradient(X, t ? Rational::parse(*t) : threshold, base_idx, force);
        g = std::move(res.gradient);
        host = std::move(res.complex);
        refinement_order = std::move(res.cone_order);
        SimplicialComplex point(X);
        point.insert(Simplex{base_idx});
        target = std::move(point);
    } else if (kind == "filtered-cone") {
        auto res = filtered_cone_gradient(X, base_idx);
        g = std::move(res.gradient);
        host = std::move(res.full);
        refinement_order = std::move(res.base.cone_order);
        SimplicialComplex point(X);
        point.insert(Simplex{base_idx});
        target = std::move(point);
    } else {
        throw Error(ErrorKind::Parse, "unknown gradient kind: " + kind);
    }

    const auto& names = X.names();
    py::list intervals;
    auto sorted = g.intervals();
    std::sort(sorted.begin(), sorted.end(),
              [](const GradientInterval& a, const GradientInterval& b) {
                  if (a.rho != b.rho) return a.rho < b.rho;
                  return b.phi < a.phi;
              });
    for (const auto& iv : sorted)
        intervals.append(to_string(iv.rho, names) + " -> " + to_string(iv.phi, names));
    py::list critical;
    for (const auto& s : critical_cells(g, host)) critical.append(to_string(s, names));
    auto val = validate_gradient(host, g, target ? &*target : nullptr, refinement_order);

    py::dict out;
    out["intervals"] = intervals;
    out["critical"] = critical;
    out["valid"] = val.pass();
    out["diam_compatible"] = val.diam_compatible.pass;
    return out;
}

py::dict persistence_info(const std::string& text, const std::string& format,
                          const std::string& order_name, const std::string& root, int max_degree,
                          bool shortcut) {
    auto input = load(text, format, "auto", "1e-9", false);
    int root_idx = resolve_point(input, root, input.tree && input.tree->root ? *input.tree->root : 0);
    OrderSpec spec = order_name.empty() || order_name == "identity"
                         ? OrderSpec{VertexOrder::identity(input.space.size()), LexMode::Lex,
                                     "identity"}
                         : resolve_order(order_name, input, root_idx);
    auto K = vietoris_rips(input.space, input.space.max_distance(), max_degree + 1);
    Filtration F(K, spec.order, spec.lex_mode);
    auto res = persistent_homology(F, max_degree, shortcut);
    py::dict out;
    out["order"] = spec.label;
    out["barcode"] = json_to_py(barcode_json(res.barcode));
    out["stats"] = json_to_py(stats_json(res.stats));
    return out;
}

py::dict verify_pipeline(const std::string& text, const std::string& format,
                         const std::string& pipeline, const std::optional<std::string>& t,
                         const std::optional<std::string>& u, const std::string& root,
                         const std::string& base, uint64_t seed) {
    auto input = load(text, format, "auto", "1e-9", false);
    RunReport report;
    report.command = "verify";
    report.input_digest = input.digest;
    report.parameters["pipeline"] = pipeline;
    int root_idx = resolve_point(input, root, input.tree && input.tree->root ? *input.tree->root : 0);
    int base_idx = resolve_point(input, base, 0);
    long long budget = kDefaultSimplexBudget;
    if (pipeline == "theorem1") {
        std::optional<Rational> tv;
        if (t) tv = Rational::parse(*t);
        pipeline_theorem1(report, input, tv, base_idx, budget);
    } else if (pipeline == "theorem2") {
        pipeline_theorem2(report, input, root_idx, budget);
    } else if (pipeline == "canonical") {
        pipeline_canonical(report, input, root_idx, budget);
    } else if (pipeline == "perturbed") {
        pipeline_perturbed(report, input, root_idx, budget);
    } else if (pipeline == "refinement") {
        pipeline_refinement(report, input, root_idx, seed, budget);
    } else if (pipeline == "apparent-collapse") {
        Rational uv = u ? Rational::parse(*u) : input.space.max_distance();
        Rational tv = t ? Rational::parse(*t) : Rational(0);
        pipeline_apparent_collapse(report, input, uv, tv, root_idx, budget);
    } else if (pipeline == "h1-surjectivity") {
        pipeline_h1_surjectivity(report, input, budget);
    } else {
        throw Error(ErrorKind::Parse, "unknown pipeline: " + pipeline);
    }
    return json_to_py(report.to_json());
}

py::list order_names(const std::string& text, const std::string& root, bool reverse) {
    auto input = load(text, "tree", "rational", "1e-9", false);
    int root_idx = resolve_point(input, root, input.tree->root ? *input.tree->root : 0);
    auto order = compatible_order(*input.tree, root_idx);
    if (reverse) order = order.reversed();
    py::list out;
    for (int i = 0; i < order.size(); ++i)
        out.append(input.space.names()[static_cast<size_t>(order.at(i))]);
    return out;
}

std::string gen_random_tree(int n, uint64_t seed, int wlo, int whi, bool generic) {
    return format_tree_file(random_tree(n, seed, {wlo, whi}, generic));
}

std::string gen_random_metric(int n, uint64_t seed, int wlo, int whi) {
    return format_lower_matrix(random_metric(n, seed, {wlo, whi}));
}

py::tuple gen_grid_sample(const std::string& tree_text, const std::string& step) {
    auto tree = parse_tree(tree_text);
    auto sample = grid_sample_tree(tree, Rational::parse(step));
    return py::make_tuple(format_tree_file(sample.tree), sample.density.to_double());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Vietoris-Rips collapses, tree-metric gradients, and Z/2 persistence";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("analyze", &analyze, py::arg("text"), py::arg("format") = "auto",
          py::arg("mode") = "auto", py::arg("eps") = "1e-9", py::arg("pseudo") = false,
          "Hyperbolicity, geodesic defect, 4*delta+2*nu, and distance levels.");
    m.def("rips_dump", &rips_dump, py::arg("text"), py::arg("format") = "auto",
          py::arg("t") = std::nullopt, py::arg("dim_cap") = std::nullopt,
          py::arg("budget") = kDefaultSimplexBudget,
          "Vietoris-Rips complex dump, one simplex per line in filtration order.");
    m.def("gradient", &gradient_info, py::arg("text"), py::arg("format") = "auto",
          py::arg("kind") = "canonical", py::arg("order") = "", py::arg("root") = "",
          py::arg("base") = "", py::arg("t") = std::nullopt, py::arg("force") = false,
          "Construct a discrete gradient and validate it.");
    m.def("persistence", &persistence_info, py::arg("text"), py::arg("format") = "auto",
          py::arg("order") = "identity", py::arg("root") = "", py::arg("max_degree") = 2,
          py::arg("shortcut") = true,
          "Z/2 persistence barcode with apparent-pairs shortcut accounting.");
    m.def("verify", &verify_pipeline, py::arg("text"), py::arg("format") = "auto",
          py::arg("pipeline") = "theorem2", py::arg("t") = std::nullopt,
          py::arg("u") = std::nullopt, py::arg("root") = "", py::arg("base") = "",
          py::arg("seed") = 42, "Run a theorem-verification pipeline; returns the full report.");
    m.def("compatible_order", &order_names, py::arg("tree_text"), py::arg("root") = "",
          py::arg("reverse") = false, "Compatible vertex order of a rooted tree.");
    m.def("random_tree", &gen_random_tree, py::arg("n"), py::arg("seed"), py::arg("wlo") = 1,
          py::arg("whi") = 10, py::arg("generic") = false, "Seeded random weighted tree file.");
    m.def("random_metric", &gen_random_metric, py::arg("n"), py::arg("seed"), py::arg("wlo") = 1,
          py::arg("whi") = 10, "Seeded random integer metric, lower-triangular text.");
    m.def("grid_sample", &gen_grid_sample, py::arg("tree_text"), py::arg("step") = "1/2",
          "Subdivide tree edges into a dense sample; returns (tree_text, density).");
}
