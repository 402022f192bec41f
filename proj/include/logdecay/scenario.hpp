#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "logdecay/complex_matrix.hpp"

namespace logdecay {

inline constexpr const char* kToolVersion = "logdecay 1.0.0";

struct GridConfig {
    double t_max = 5.0;
    int points = 201;
    double first_step = 1e-4;
};

// A scenario couples one operator (inline matrix or gallery preset) with a
// start vector, a time grid, a list of named checks and tolerance overrides.
// Parsing is strict: unknown fields, unknown check or tolerance names, and
// non-positive tolerances are rejected up front so a typo cannot silently
// weaken a run.
struct ScenarioConfig {
    std::optional<ComplexMatrix> matrix;  // inline operator
    std::string gallery_name;             // nonempty when the operator is a preset
    nlohmann::json gallery_params;

    std::optional<ComplexVector> u0;       // explicit start vector
    std::optional<std::uint64_t> u0_seed;  // "random(seed)" form

    GridConfig grid;
    std::vector<std::string> checks;  // empty: the command's defaults apply
    std::map<std::string, double> tolerances;
    std::vector<int> mask;  // optional index set for the restricted defect
    std::optional<double> eta;
    std::uint64_t seed = 0;
};

ScenarioConfig parse_scenario(const nlohmann::json& j);

// Canonical echo: [re, im] pairs for all complex data, fully populated grid,
// sorted tolerance keys. parse -> echo -> parse is the identity.
nlohmann::ordered_json scenario_to_json(const ScenarioConfig& config);

// Validates the name against the known tolerance set and requires value > 0;
// used both by the parser and by --tol command-line overrides.
void apply_tolerance_override(ScenarioConfig& config, const std::string& name,
                              double value);

ComplexMatrix scenario_operator(const ScenarioConfig& config);
ComplexVector scenario_start_vector(const ScenarioConfig& config, int dim);

struct RunResult {
    int exit_code = 0;  // 0 = checks pass, 2 = a check failed (1 = error, via exceptions)
    nlohmann::ordered_json report;
    std::string csv;  // nonempty only for evolve runs
};

// Accretivity/criterion classification. Checks: accretive, criterion,
// hyponormal (defaults: accretive, criterion).
RunResult run_classify(const ScenarioConfig& config);

// Trajectory scan plus classification and CSV emission. Checks:
// strictly_decreasing, pointwise_logconvex, three_point_logconvex,
// short_time, envelope (defaults: the first three).
RunResult run_evolve(const ScenarioConfig& config);

// Counterexample search over a named operator family; every reported witness
// is re-verified against the plain criterion before emission.
RunResult run_search(const std::string& family, int budget, std::uint64_t seed, int dim);

}  // namespace logdecay
