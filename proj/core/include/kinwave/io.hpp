#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kinwave/ctm.hpp"
#include "kinwave/junction.hpp"
#include "kinwave/oracle.hpp"
#include "kinwave/riemann.hpp"

namespace kinwave::io {

/// A junction with concrete boundary data, the input of `theta` and `flux`.
struct JunctionProblem {
    JunctionSpec junction;
    std::vector<double> demands;
    std::vector<double> supplies;
};

/// Any input file: schema version, an optional seed, and one payload.
struct ScenarioFile {
    int schema = 1;
    std::optional<std::uint64_t> seed;
    std::variant<JunctionProblem, RiemannInput, NetworkScenario> payload;

    const JunctionProblem* junction_problem() const {
        return std::get_if<JunctionProblem>(&payload);
    }
    const RiemannInput* riemann_input() const { return std::get_if<RiemannInput>(&payload); }
    const NetworkScenario* network_scenario() const {
        return std::get_if<NetworkScenario>(&payload);
    }
};

struct ParseResult {
    std::optional<ScenarioFile> file;
    /// Every schema violation found, not just the first.
    std::vector<std::string> errors;
    bool ok() const { return errors.empty() && file.has_value(); }
};

/// Schema-validates before any computation; unknown fields are rejected.
ParseResult parse_scenario(const std::string& text);
/// Convenience wrapper that throws ValidationError with all messages joined.
ScenarioFile parse_scenario_or_throw(const std::string& text);

std::string serialize(const ScenarioFile& file);
std::string serialize(const FluxResult& result);
std::string serialize(const CriticalLevelBreakdown& breakdown);
std::string serialize(const RiemannSolution& solution, const RiemannInput& input);
std::string serialize(const oracle::SuiteReport& report);

/// Trajectory CSV: one row per (t, link, cell) with density and flow.
std::string trajectory_csv(const Trajectory& trajectory, const NetworkScenario& scenario);
/// Run summary: conservation residual, final junction fluxes, settling
/// diagnostics.
std::string summary_json(const Trajectory& trajectory, const NetworkScenario& scenario);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace kinwave::io
