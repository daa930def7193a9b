#pragma once

#include "vrc/collapse.hpp"
#include "vrc/complex.hpp"
#include "vrc/datasets.hpp"
#include "vrc/filtration.hpp"
#include "vrc/gradient.hpp"
#include "vrc/invariants.hpp"
#include "vrc/metric.hpp"
#include "vrc/persistence.hpp"
#include "vrc/tree_gradients.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vrc::cli {

using nlohmann::json;

struct Assertion {
    std::string name;
    bool pass = true;
    std::string witness;
};

/// One record per command invocation; deterministic given input bytes,
/// flags and seed (wall time excepted).
struct RunReport {
    std::string command;
    std::string input_digest;
    json parameters = json::object();
    json results = json::object();
    std::vector<Assertion> assertions;
    double wall_ms = 0.0;

    bool ok() const;
    void check(const std::string& name, bool pass, const std::string& witness = "");
    json to_json() const;
    std::string text() const;
};

struct LoadedInput {
    FiniteMetricSpace space;
    std::optional<WeightedTree> tree; // present for tree files, recovered on demand
    std::string digest;
    std::string mode_label; // "rational" or "decimal(eps)"
};

std::string fnv1a_digest(const std::string& bytes);

/// format: lower | square | tree | auto (tree iff the path ends in .tree)
LoadedInput load_input(const std::string& path, std::string format, std::string mode,
                       const std::string& eps, bool allow_pseudo);
/// Same on in-memory text; "auto" here treats three-token lines as a tree.
LoadedInput load_input_text(const std::string& text, std::string format, std::string mode,
                            const std::string& eps, bool allow_pseudo);

/// Requires a tree structure: from the input file or recovered from the
/// metric; throws Error(Precondition) when the metric is not a tree metric.
const WeightedTree& require_tree(LoadedInput& input);

struct OrderSpec {
    VertexOrder order;
    LexMode lex_mode = LexMode::Lex;
    std::string label;
};

/// name: identity | compatible | reverse-compatible. The compatible orders
/// use the given root (tree inputs only); reverse-compatible is the
/// reversed compatible order with reverse-colexicographic comparison.
OrderSpec resolve_order(const std::string& name, LoadedInput& input, int root);

int resolve_point(const LoadedInput& input, const std::string& name, int fallback);

json barcode_json(const Barcode& barcode);
json stats_json(const ReductionStats& stats);
std::string barcode_table(const Barcode& barcode);

// verify pipelines; each appends assertions and result fields
void pipeline_theorem1(RunReport& report, const LoadedInput& input,
                       const std::optional<Rational>& t, int base_point, long long budget);
void pipeline_theorem2(RunReport& report, LoadedInput& input, int root, long long budget);
void pipeline_canonical(RunReport& report, LoadedInput& input, int root, long long budget);
void pipeline_perturbed(RunReport& report, LoadedInput& input, int root, long long budget);
void pipeline_refinement(RunReport& report, LoadedInput& input, int root, uint64_t seed,
                         long long budget);
void pipeline_apparent_collapse(RunReport& report, LoadedInput& input, const Rational& u,
                                const Rational& t, int root, long long budget);
void pipeline_h1_surjectivity(RunReport& report, const LoadedInput& input, long long budget);

} // namespace vrc::cli
