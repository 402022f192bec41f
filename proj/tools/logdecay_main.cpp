#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logdecay/json_writer.hpp"
#include "logdecay/scenario.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return nlohmann::json::parse(text);  // parse errors carry byte positions
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("failed writing to '" + path + "'");
}

std::pair<std::string, double> parse_tol_arg(const std::string& arg) {
    const size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::runtime_error("--tol expects NAME=VALUE, got '" + arg + "'");
    const std::string name = arg.substr(0, eq);
    const std::string value = arg.substr(eq + 1);
    size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("--tol " + name + ": '" + value + "' is not a number");
    }
    if (used != value.size())
        throw std::runtime_error("--tol " + name + ": '" + value + "' is not a number");
    return {name, parsed};
}

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::vector<std::string> tols;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "scenario JSON file ('-' reads stdin)")
        ->required();
    cmd->add_option("--out", args.out_path, "write the JSON report here (default stdout)");
    args.seed_opt = cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--tol", args.tols, "override a tolerance, NAME=VALUE (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-convexity diagnostics for operator semigroup decay curves"};
    app.set_version_flag("--version", std::string(logdecay::kToolVersion));
    app.require_subcommand(1);

    CommonArgs classify_args;
    CLI::App* classify_cmd = app.add_subcommand(
        "classify", "accretivity, criterion minimum and hyponormality report");
    add_common(classify_cmd, classify_args);

    CommonArgs evolve_args;
    std::string csv_path;
    CLI::App* evolve_cmd = app.add_subcommand(
        "evolve", "propagate the scenario and scan the decay curve");
    add_common(evolve_cmd, evolve_args);
    evolve_cmd->add_option("--csv", csv_path, "write the trajectory table here");

    std::string family;
    int budget = 100;
    int dim = 4;
    std::uint64_t search_seed = 0;
    std::string search_out;
    CLI::App* search_cmd =
        app.add_subcommand("search", "sample an operator family for criterion violations");
    search_cmd->add_option("--family", family,
                           "jordan | normal_accretive | complex_symmetric")
        ->required();
    search_cmd->add_option("--budget", budget, "number of matrices to draw");
    search_cmd->add_option("--dim", dim, "dimension for families with a free dimension");
    search_cmd->add_option("--seed", search_seed, "sampling seed");
    search_cmd->add_option("--out", search_out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        logdecay::RunResult result;
        std::string out_path;
        if (search_cmd->parsed()) {
            result = logdecay::run_search(family, budget, search_seed, dim);
            out_path = search_out;
        } else {
            CommonArgs& args = classify_cmd->parsed() ? classify_args : evolve_args;
            logdecay::ScenarioConfig config =
                logdecay::parse_scenario(load_config(args.config_path));
            if (args.seed_opt->count() > 0) config.seed = args.seed;
            for (const std::string& t : args.tols) {
                const auto [name, value] = parse_tol_arg(t);
                logdecay::apply_tolerance_override(config, name, value);
            }
            result = classify_cmd->parsed() ? logdecay::run_classify(config)
                                            : logdecay::run_evolve(config);
            out_path = args.out_path;
            if (evolve_cmd->parsed() && !csv_path.empty())
                write_text(csv_path, result.csv);
        }
        write_text(out_path, logdecay::deterministic_json(result.report));
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
