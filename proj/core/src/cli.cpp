#include "kinwave/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kinwave/io.hpp"

namespace kinwave::cli {

namespace {

std::string csv_quote(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void flatten_json(const nlohmann::json& value, const std::string& path,
                  std::ostringstream& out) {
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it)
            flatten_json(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i)
            flatten_json(value[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << csv_quote(path) << ',' << csv_quote(value.dump()) << '\n';
    }
}

/// Generic CSV view of any result JSON: one key,value row per leaf.
std::string json_to_csv(const std::string& json_text) {
    std::ostringstream out;
    out << "key,value\n";
    flatten_json(nlohmann::json::parse(json_text), "", out);
    return out.str();
}

void emit(const std::string& content, const std::string& output_path, std::ostream& out) {
    if (output_path.empty())
        out << content;
    else
        io::write_file(output_path, content);
}

struct CommonOptions {
    std::string input_path;
    std::string output_path;
    std::string format = "json";
};

const io::ScenarioFile load(const std::string& path) {
    return io::parse_scenario_or_throw(io::read_file(path));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Network kinematic wave toolkit: junction fluxes, Riemann solutions, "
                 "and cell-transmission simulation"};
    app.require_subcommand(1);

    CommonOptions theta_opt, flux_opt, riemann_opt, simulate_opt;
    std::string summary_path;
    std::uint64_t seed = 42;
    std::size_t suite_instances = 1000;
    std::size_t suite_riemann = 300;
    std::size_t suite_grid = 120;
    CommonOptions validate_opt;

    auto add_common = [](CLI::App* cmd, CommonOptions& opt, bool needs_input) {
        if (needs_input)
            cmd->add_option("input", opt.input_path, "input scenario file (JSON)")
                ->required();
        cmd->add_option("--output", opt.output_path, "write the result here (default stdout)");
        cmd->add_option("--format", opt.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* theta_cmd =
        app.add_subcommand("theta", "critical demand level of a junction problem");
    add_common(theta_cmd, theta_opt, true);
    CLI::App* flux_cmd =
        app.add_subcommand("flux", "boundary fluxes of a junction problem");
    add_common(flux_cmd, flux_opt, true);
    CLI::App* riemann_cmd =
        app.add_subcommand("riemann", "full Riemann solution at a junction");
    add_common(riemann_cmd, riemann_opt, true);
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "cell-transmission run of a network scenario");
    add_common(simulate_cmd, simulate_opt, true);
    simulate_cmd->get_option("--format")->default_str("csv");
    simulate_opt.format = "csv";
    simulate_cmd->add_option("--summary", summary_path, "also write the summary JSON here");
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run the brute-force oracle suite");
    add_common(validate_cmd, validate_opt, false);
    validate_cmd->add_option("--seed", seed, "random seed for the suite");
    validate_cmd->add_option("--instances", suite_instances,
                             "random instances per junction shape");
    validate_cmd->add_option("--riemann-samples", suite_riemann,
                             "random Riemann inputs for the consistency check");
    validate_cmd->add_option("--grid", suite_grid,
                             "grid points for the stationary-state search");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (theta_cmd->parsed() || flux_cmd->parsed()) {
            const CommonOptions& opt = theta_cmd->parsed() ? theta_opt : flux_opt;
            const io::ScenarioFile file = load(opt.input_path);
            const io::JunctionProblem* problem = file.junction_problem();
            if (!problem)
                throw ValidationError("this subcommand needs a 'junction' scenario file");
            const FluxResult result =
                junction_flux(problem->junction, problem->demands, problem->supplies);
            const std::string text = theta_cmd->parsed()
                                         ? io::serialize(result.breakdown)
                                         : io::serialize(result);
            emit(opt.format == "csv" ? json_to_csv(text) : text, opt.output_path, out);
        } else if (riemann_cmd->parsed()) {
            const io::ScenarioFile file = load(riemann_opt.input_path);
            const RiemannInput* input = file.riemann_input();
            if (!input)
                throw ValidationError("the riemann subcommand needs a 'riemann' scenario file");
            const RiemannSolution solution = solve(*input);
            const std::string text = io::serialize(solution, *input);
            emit(riemann_opt.format == "csv" ? json_to_csv(text) : text,
                 riemann_opt.output_path, out);
        } else if (simulate_cmd->parsed()) {
            const io::ScenarioFile file = load(simulate_opt.input_path);
            const NetworkScenario* scenario = file.network_scenario();
            if (!scenario)
                throw ValidationError("the simulate subcommand needs a 'network' scenario file");
            const Trajectory trajectory = kinwave::run(*scenario);
            const std::string summary = io::summary_json(trajectory, *scenario);
            if (simulate_opt.format == "json") {
                emit(summary, simulate_opt.output_path, out);
            } else {
                emit(io::trajectory_csv(trajectory, *scenario), simulate_opt.output_path, out);
                if (!summary_path.empty())
                    io::write_file(summary_path, summary);
                else if (!simulate_opt.output_path.empty())
                    out << summary;
            }
            if (!summary_path.empty() && simulate_opt.format == "json")
                io::write_file(summary_path, summary);
        } else if (validate_cmd->parsed()) {
            oracle::SuiteConfig config;
            config.seed = seed;
            config.instances_per_shape = suite_instances;
            config.riemann_samples = suite_riemann;
            config.stationary_grid = suite_grid;
            const oracle::SuiteReport report = oracle::run_validation_suite(config);
            const std::string text = io::serialize(report);
            emit(validate_opt.format == "csv" ? json_to_csv(text) : text,
                 validate_opt.output_path, out);
            if (!report.all_pass()) {
                err << "validation suite failed\n";
                return 2;
            }
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace kinwave::cli
