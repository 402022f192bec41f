#include "logdecay/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "logdecay/analysis.hpp"
#include "logdecay/dynamics.hpp"
#include "logdecay/gallery.hpp"
#include "logdecay/rng.hpp"

namespace logdecay {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string>& known_tolerances() {
    static const std::set<std::string> names = {"abscissa", "criterion_gap",
                                                "envelope_bound", "gap",
                                                "hyponormal", "three_point"};
    return names;
}

const std::set<std::string>& known_checks() {
    static const std::set<std::string> names = {
        "accretive",           "criterion",     "hyponormal",
        "strictly_decreasing", "pointwise_logconvex", "three_point_logconvex",
        "short_time",          "envelope"};
    return names;
}

std::string joined(const std::set<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

cplx parse_entry(const nlohmann::json& v, const std::string& where) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx(v[0].get<double>(), v[1].get<double>());
    throw std::invalid_argument(where + ": expected a number or an [re, im] pair");
}

ComplexMatrix parse_matrix(const nlohmann::json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("operator.matrix: expected a nonempty array of rows");
    const int dim = static_cast<int>(rows.size());
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("operator.matrix: row " + std::to_string(i) +
                                        " must have exactly " + std::to_string(dim) +
                                        " entries (square matrix)");
        for (int j = 0; j < dim; ++j)
            m(i, j) = parse_entry(row[static_cast<size_t>(j)],
                                  "operator.matrix[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "]");
    }
    validate_finite(m, "operator.matrix");
    return m;
}

ComplexVector parse_vector(const nlohmann::json& arr, const std::string& where) {
    ComplexVector v;
    v.reserve(arr.size());
    for (size_t i = 0; i < arr.size(); ++i)
        v.push_back(parse_entry(arr[i], where + "[" + std::to_string(i) + "]"));
    validate_finite(v, where);
    return v;
}

std::optional<std::uint64_t> parse_random_ref(const std::string& s) {
    const std::string prefix = "random(";
    if (s.size() < prefix.size() + 2 || s.compare(0, prefix.size(), prefix) != 0 ||
        s.back() != ')')
        return std::nullopt;
    const std::string digits = s.substr(prefix.size(), s.size() - prefix.size() - 1);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
        return std::nullopt;
    return std::stoull(digits);
}

ordered_json complex_to_json(cplx z) {
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json vector_to_json(const ComplexVector& v) {
    ordered_json out = ordered_json::array();
    for (cplx z : v) out.push_back(complex_to_json(z));
    return out;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
    ordered_json out = ordered_json::array();
    for (int i = 0; i < m.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

// Plain nlohmann::json iterates objects in key order, so a structural copy
// is already canonical.
ordered_json canonical_copy(const nlohmann::json& j) {
    if (j.is_object()) {
        ordered_json out = ordered_json::object();
        for (const auto& item : j.items()) out[item.key()] = canonical_copy(item.value());
        return out;
    }
    if (j.is_array()) {
        ordered_json out = ordered_json::array();
        for (const auto& el : j) out.push_back(canonical_copy(el));
        return out;
    }
    if (j.is_number_float()) return j.get<double>();
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_string()) return j.get<std::string>();
    return nullptr;
}

void reject_unknown_fields(const nlohmann::json& j, const std::set<std::string>& known,
                           const std::string& where) {
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw std::invalid_argument(where + ": unrecognized field '" + item.key() +
                                        "'");
}

double tol_or(const ScenarioConfig& config, const char* name, double fallback) {
    const auto it = config.tolerances.find(name);
    return it == config.tolerances.end() ? fallback : it->second;
}

struct Verdict {
    std::string name;
    bool skipped = false;
    bool passed = false;
    std::optional<double> measured;
    std::optional<double> tolerance;
};

ordered_json verdicts_json(const std::vector<Verdict>& verdicts) {
    ordered_json out = ordered_json::array();
    for (const Verdict& v : verdicts) {
        ordered_json item;
        item["name"] = v.name;
        item["verdict"] = v.skipped ? "skip" : (v.passed ? "pass" : "fail");
        item["measured"] = v.measured ? ordered_json(*v.measured) : ordered_json(nullptr);
        item["tolerance"] =
            v.tolerance ? ordered_json(*v.tolerance) : ordered_json(nullptr);
        out.push_back(item);
    }
    return out;
}

int exit_code_from(const std::vector<Verdict>& verdicts) {
    for (const Verdict& v : verdicts)
        if (!v.skipped && !v.passed) return 2;
    return 0;
}

ordered_json classification_json(const ClassificationReport& rep) {
    ordered_json c;
    c["numerical_abscissa"] = rep.numerical_abscissa;
    c["spectral_abscissa"] = rep.spectral_abscissa;
    c["abscissa_equal"] = rep.abscissa_equal;
    c["abscissa_tol"] = rep.abscissa_tol;
    c["criterion_min_gap"] = rep.criterion_min_gap;
    c["criterion_witness"] = vector_to_json(rep.criterion_witness);
    c["hyponormality_defect"] = rep.hyponormality_defect;
    c["restricted_hyponormality_defect"] =
        rep.restricted_hyponormality_defect
            ? ordered_json(*rep.restricted_hyponormality_defect)
            : ordered_json(nullptr);
    c["normality_defect"] = rep.normality_defect;
    c["accretivity"] = to_string(rep.accretivity_class);
    c["note"] = rep.note;
    return c;
}

ClassifyOptions classify_options(const ScenarioConfig& config) {
    ClassifyOptions opts;
    opts.minimize.seed = config.seed;
    const auto it = config.tolerances.find("abscissa");
    if (it != config.tolerances.end()) opts.abscissa_tol = it->second;
    opts.mask = config.mask;
    return opts;
}

std::string format_number(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

}  // namespace

ScenarioConfig parse_scenario(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("scenario config must be a JSON object");
    reject_unknown_fields(
        j, {"operator", "u0", "grid", "checks", "tolerances", "mask", "eta", "seed"},
        "config");

    if (!j.contains("operator") || !j["operator"].is_object())
        throw std::invalid_argument(
            "operator: required object holding 'matrix' or 'gallery'");
    const auto& op = j["operator"];
    reject_unknown_fields(op, {"matrix", "gallery"}, "operator");
    const bool has_matrix = op.contains("matrix");
    const bool has_gallery = op.contains("gallery");
    if (has_matrix == has_gallery)
        throw std::invalid_argument(
            "operator: exactly one of 'matrix' and 'gallery' must be given");

    ScenarioConfig config;
    if (has_matrix) {
        config.matrix = parse_matrix(op["matrix"]);
    } else {
        const auto& g = op["gallery"];
        if (!g.is_object() || !g.contains("name") || !g["name"].is_string())
            throw std::invalid_argument(
                "operator.gallery: expected an object with a string 'name'");
        config.gallery_name = g["name"].get<std::string>();
        nlohmann::json params = nlohmann::json::object();
        for (const auto& item : g.items())
            if (item.key() != "name") params[item.key()] = item.value();
        config.gallery_params = params;
    }

    if (j.contains("u0")) {
        const auto& u = j["u0"];
        if (u.is_string()) {
            const auto seed = parse_random_ref(u.get<std::string>());
            if (!seed)
                throw std::invalid_argument(
                    "u0: string form must be \"random(<seed>)\" with a decimal seed");
            config.u0_seed = *seed;
        } else if (u.is_array() && !u.empty()) {
            ComplexVector v = parse_vector(u, "u0");
            if (norm(v) == 0.0) throw std::invalid_argument("u0: must be nonzero");
            config.u0 = std::move(v);
        } else {
            throw std::invalid_argument(
                "u0: expected a nonempty vector or \"random(<seed>)\"");
        }
    }

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) throw std::invalid_argument("grid: expected an object");
        reject_unknown_fields(g, {"t_max", "points", "first_step"}, "grid");
        config.grid.t_max = g.value("t_max", config.grid.t_max);
        config.grid.points = g.value("points", config.grid.points);
        config.grid.first_step = g.value("first_step", config.grid.first_step);
        if (!std::isfinite(config.grid.t_max) || config.grid.t_max < 0.0)
            throw std::invalid_argument("grid.t_max: must be finite and >= 0");
        if (config.grid.points < 1)
            throw std::invalid_argument("grid.points: must be >= 1");
        if (!std::isfinite(config.grid.first_step) || config.grid.first_step <= 0.0)
            throw std::invalid_argument("grid.first_step: must be positive");
    }

    if (j.contains("checks")) {
        if (!j["checks"].is_array())
            throw std::invalid_argument("checks: expected an array of names");
        for (const auto& el : j["checks"]) {
            if (!el.is_string())
                throw std::invalid_argument("checks: entries must be strings");
            const std::string name = el.get<std::string>();
            if (!known_checks().count(name))
                throw std::invalid_argument("checks: unknown check '" + name +
                                            "'; known: " + joined(known_checks()));
            config.checks.push_back(name);
        }
    }

    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object())
            throw std::invalid_argument("tolerances: expected an object of name -> value");
        for (const auto& item : j["tolerances"].items()) {
            if (!item.value().is_number())
                throw std::invalid_argument("tolerances." + item.key() +
                                            ": expected a number");
            apply_tolerance_override(config, item.key(), item.value().get<double>());
        }
    }

    if (j.contains("mask")) {
        if (!j["mask"].is_array() || j["mask"].empty())
            throw std::invalid_argument("mask: expected a nonempty array of indices");
        for (const auto& el : j["mask"]) {
            if (!el.is_number_integer() || el.get<std::int64_t>() < 0)
                throw std::invalid_argument("mask: indices must be integers >= 0");
            config.mask.push_back(static_cast<int>(el.get<std::int64_t>()));
        }
    }

    if (j.contains("eta")) {
        if (!j["eta"].is_number())
            throw std::invalid_argument("eta: expected a number >= 0");
        const double eta = j["eta"].get<double>();
        if (!std::isfinite(eta) || eta < 0.0)
            throw std::invalid_argument("eta: expected a number >= 0");
        config.eta = eta;
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() &&
            !(j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0))
            throw std::invalid_argument("seed: expected a nonnegative integer");
        config.seed = j["seed"].get<std::uint64_t>();
    }
    return config;
}

void apply_tolerance_override(ScenarioConfig& config, const std::string& name,
                              double value) {
    if (!known_tolerances().count(name))
        throw std::invalid_argument("unknown tolerance '" + name +
                                    "'; known: " + joined(known_tolerances()));
    if (!std::isfinite(value) || value <= 0.0)
        throw std::invalid_argument("tolerance '" + name + "' must be positive");
    config.tolerances[name] = value;
}

nlohmann::ordered_json scenario_to_json(const ScenarioConfig& config) {
    ordered_json out;
    ordered_json op;
    if (config.matrix) {
        op["matrix"] = matrix_to_json(*config.matrix);
    } else {
        ordered_json g;
        g["name"] = config.gallery_name;
        for (const auto& item : config.gallery_params.items())
            g[item.key()] = canonical_copy(item.value());
        op["gallery"] = g;
    }
    out["operator"] = op;
    if (config.u0)
        out["u0"] = vector_to_json(*config.u0);
    else if (config.u0_seed)
        out["u0"] = "random(" + std::to_string(*config.u0_seed) + ")";
    ordered_json grid;
    grid["t_max"] = config.grid.t_max;
    grid["points"] = config.grid.points;
    grid["first_step"] = config.grid.first_step;
    out["grid"] = grid;
    if (!config.checks.empty()) out["checks"] = config.checks;
    if (!config.tolerances.empty()) {
        ordered_json t;
        for (const auto& [name, value] : config.tolerances) t[name] = value;
        out["tolerances"] = t;
    }
    if (!config.mask.empty()) out["mask"] = config.mask;
    if (config.eta) out["eta"] = *config.eta;
    out["seed"] = config.seed;
    return out;
}

ComplexMatrix scenario_operator(const ScenarioConfig& config) {
    if (config.matrix) return *config.matrix;
    return gallery(config.gallery_name, config.gallery_params);
}

ComplexVector scenario_start_vector(const ScenarioConfig& config, int dim) {
    if (config.u0) {
        if (static_cast<int>(config.u0->size()) != dim)
            throw std::invalid_argument(
                "u0 has " + std::to_string(config.u0->size()) +
                " entries but the operator dimension is " + std::to_string(dim));
        return *config.u0;
    }
    return Rng(config.u0_seed.value_or(config.seed)).unit_vector(dim);
}

RunResult run_classify(const ScenarioConfig& config) {
    const ComplexMatrix a = scenario_operator(config);
    if (config.u0 && static_cast<int>(config.u0->size()) != a.dim())
        throw std::invalid_argument("u0 does not match the operator dimension");
    const ClassificationReport rep = classify(a, classify_options(config));

    const std::vector<std::string> checks =
        config.checks.empty() ? std::vector<std::string>{"accretive", "criterion"}
                              : config.checks;
    std::vector<Verdict> verdicts;
    for (const std::string& name : checks) {
        Verdict v;
        v.name = name;
        if (name == "accretive") {
            v.measured = rep.numerical_abscissa;
            v.tolerance = rep.abscissa_tol;
            v.passed = rep.numerical_abscissa >= -rep.abscissa_tol;
        } else if (name == "criterion") {
            v.measured = rep.criterion_min_gap;
            v.tolerance = tol_or(config, "criterion_gap", 1e-8);
            v.passed = rep.criterion_min_gap >= -*v.tolerance;
        } else if (name == "hyponormal") {
            v.measured = rep.hyponormality_defect;
            v.tolerance = tol_or(config, "hyponormal", 1e-8);
            v.passed = rep.hyponormality_defect >= -*v.tolerance;
        } else {
            throw std::invalid_argument(
                "check '" + name +
                "' is not available for classify; available: accretive, criterion, "
                "hyponormal");
        }
        verdicts.push_back(std::move(v));
    }

    RunResult out;
    out.report["version"] = kToolVersion;
    out.report["command"] = "classify";
    out.report["seed"] = config.seed;
    out.report["config"] = scenario_to_json(config);
    out.report["classification"] = classification_json(rep);
    out.report["checks"] = verdicts_json(verdicts);
    out.exit_code = exit_code_from(verdicts);
    out.report["exit_code"] = out.exit_code;
    return out;
}

RunResult run_evolve(const ScenarioConfig& config) {
    const ComplexMatrix a = scenario_operator(config);
    const ComplexVector u0 = scenario_start_vector(config, a.dim());
    const std::vector<double> grid =
        default_grid(config.grid.t_max, config.grid.points, config.grid.first_step);

    TrajectoryOptions topts;
    topts.gap_tol = tol_or(config, "gap", 0.0);
    topts.three_point_tol = tol_or(config, "three_point", 0.0);
    topts.operator_id = config.matrix ? "matrix" : config.gallery_name;
    const Trajectory traj = trajectory_scan(a, u0, grid, topts);
    const ClassificationReport rep = classify(a, classify_options(config));

    double max_h_prime = -std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    for (const TrajectorySample& s : traj.samples) {
        max_h_prime = std::max(max_h_prime, s.h_prime);
        min_gap = std::min(min_gap, s.logconvexity_gap);
    }

    const std::vector<std::string> checks =
        config.checks.empty()
            ? std::vector<std::string>{"strictly_decreasing", "pointwise_logconvex",
                                       "three_point_logconvex"}
            : config.checks;

    std::optional<ShortTimeCheck> stc;
    std::optional<DecayEnvelope> env;
    std::optional<double> env_eta;
    std::string env_skip_reason;
    std::vector<Verdict> verdicts;
    for (const std::string& name : checks) {
        Verdict v;
        v.name = name;
        if (name == "strictly_decreasing") {
            v.measured = max_h_prime;
            v.passed = traj.strictly_decreasing;
        } else if (name == "pointwise_logconvex") {
            v.measured = min_gap;
            v.tolerance = traj.gap_tol;
            v.passed = traj.pointwise_logconvex;
        } else if (name == "three_point_logconvex") {
            v.tolerance = traj.three_point_tol;
            v.passed = traj.three_point_logconvex;
        } else if (name == "short_time") {
            if (!stc) stc = short_time_check(a, u0);
            v.measured = std::abs(stc->h_prime_fd - stc->h_prime_closed_form);
            v.tolerance = stc->fd_tol;
            v.passed = stc->fd_consistent && stc->slope_at_most_minus_abscissa;
        } else if (name == "envelope") {
            double eta = 0.0;
            if (config.eta)
                eta = *config.eta;
            else if (rep.spectral_abscissa > 1e-12)
                eta = 0.5 * rep.spectral_abscissa;
            else {
                v.skipped = true;
                env_skip_reason =
                    "no admissible rate: smallest spectral real part is " +
                    format_number(rep.spectral_abscissa);
            }
            if (!v.skipped && eta >= rep.spectral_abscissa) {
                v.skipped = true;
                env_skip_reason = "rate " + format_number(eta) +
                                  " is not below the smallest spectral real part " +
                                  format_number(rep.spectral_abscissa);
            }
            if (!v.skipped) {
                env = decay_envelope(a, u0, eta, grid);
                env_eta = eta;
                v.measured = env->m_eta;
                const auto bound = config.tolerances.find("envelope_bound");
                if (bound != config.tolerances.end()) {
                    v.tolerance = bound->second;
                    v.passed = env->m_eta <= bound->second;
                } else {
                    v.passed = std::isfinite(env->m_eta);
                }
            }
        } else {
            throw std::invalid_argument(
                "check '" + name +
                "' is not available for evolve; available: strictly_decreasing, "
                "pointwise_logconvex, three_point_logconvex, short_time, envelope");
        }
        verdicts.push_back(std::move(v));
    }

    std::string csv = "t,h,h_prime,h_second,logconvexity_gap\n";
    for (const TrajectorySample& s : traj.samples) {
        csv += format_number(s.t) + "," + format_number(s.h) + "," +
               format_number(s.h_prime) + "," + format_number(s.h_second) + "," +
               format_number(s.logconvexity_gap) + "\n";
    }

    ordered_json tj;
    tj["operator_id"] = traj.operator_id;
    tj["u0"] = vector_to_json(u0);
    tj["points"] = traj.samples.size();
    tj["t_last"] = traj.grid.empty() ? ordered_json(nullptr) : ordered_json(traj.grid.back());
    tj["truncated"] = traj.truncated;
    tj["strictly_decreasing"] = traj.strictly_decreasing;
    tj["pointwise_logconvex"] = traj.pointwise_logconvex;
    tj["three_point_logconvex"] = traj.three_point_logconvex;
    tj["gap_tol"] = traj.gap_tol;
    tj["three_point_tol"] = traj.three_point_tol;
    if (!traj.samples.empty()) {
        tj["h_first"] = traj.samples.front().h;
        tj["h_last"] = traj.samples.back().h;
        tj["max_h_prime"] = max_h_prime;
        tj["min_logconvexity_gap"] = min_gap;
    }

    RunResult out;
    out.report["version"] = kToolVersion;
    out.report["command"] = "evolve";
    out.report["seed"] = config.seed;
    out.report["config"] = scenario_to_json(config);
    out.report["classification"] = classification_json(rep);
    out.report["trajectory"] = tj;
    if (stc) {
        ordered_json sj;
        sj["h_prime_closed_form"] = stc->h_prime_closed_form;
        sj["h_prime_fd"] = stc->h_prime_fd;
        sj["minus_numerical_abscissa"] = stc->minus_numerical_abscissa;
        sj["minus_rayleigh"] = stc->minus_rayleigh;
        sj["fd_tol"] = stc->fd_tol;
        sj["fd_consistent"] = stc->fd_consistent;
        sj["slope_at_most_minus_abscissa"] = stc->slope_at_most_minus_abscissa;
        out.report["short_time"] = sj;
    }
    if (env || !env_skip_reason.empty()) {
        ordered_json ej;
        if (env) {
            ej["eta"] = *env_eta;
            ej["m_eta"] = env->m_eta;
            ej["t_at_max"] = env->t_at_max;
            ej["max_at_right_endpoint"] = env->max_at_right_endpoint;
        } else {
            ej["skipped"] = true;
            ej["reason"] = env_skip_reason;
        }
        out.report["envelope"] = ej;
    }
    out.report["checks"] = verdicts_json(verdicts);
    out.exit_code = exit_code_from(verdicts);
    out.report["exit_code"] = out.exit_code;
    out.csv = csv;
    return out;
}

RunResult run_search(const std::string& family, int budget, std::uint64_t seed,
                     int dim) {
    if (budget < 0) throw std::invalid_argument("search budget must be >= 0");
    SearchOptions opts;
    opts.draws = budget;
    opts.dim = dim;
    opts.seed = seed;
    opts.minimize.starts = 8;
    opts.minimize.samples = 2000;
    opts.minimize.max_iters = 200;
    opts.minimize.seed = seed;
    const std::vector<SearchHit> hits = counterexample_search(family, opts);

    ordered_json list = ordered_json::array();
    for (const SearchHit& hit : hits) {
        const double gap = criterion_gap(hit.matrix, hit.witness.x);
        if (!(gap <= -opts.violation_threshold)) continue;  // paranoid re-check
        ordered_json h;
        h["matrix"] = matrix_to_json(hit.matrix);
        h["witness"] = vector_to_json(hit.witness.x);
        h["gap"] = gap;
        list.push_back(std::move(h));
    }

    RunResult out;
    out.report["version"] = kToolVersion;
    out.report["command"] = "search";
    out.report["family"] = family;
    out.report["budget"] = budget;
    out.report["dim"] = dim;
    out.report["seed"] = seed;
    out.report["violation_threshold"] = opts.violation_threshold;
    out.report["count"] = list.size();
    out.report["hits"] = list;
    out.report["exit_code"] = 0;
    out.exit_code = 0;
    return out;
}

}  // namespace logdecay
