#include "kinwave/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace kinwave::io {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

/// Collects every violation instead of stopping at the first.
struct Checker {
    std::vector<std::string>& errors;

    void fail(const std::string& path, const std::string& message) {
        errors.push_back(path + ": " + message);
    }

    bool known_keys(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        bool ok = true;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool found = false;
            for (const char* key : allowed)
                if (it.key() == key) { found = true; break; }
            if (!found) {
                fail(path, "unknown field '" + it.key() + "'");
                ok = false;
            }
        }
        return ok;
    }

    const json* field(const json& obj, const std::string& path, const char* key,
                      bool required = true) {
        if (!obj.contains(key)) {
            if (required) fail(path, "missing field '" + std::string(key) + "'");
            return nullptr;
        }
        return &obj.at(key);
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key,
                                 bool required = true) {
        const json* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_number()) {
            fail(path + "." + key, "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<std::size_t> index(const json& obj, const std::string& path,
                                     const char* key, bool required = true) {
        const json* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_number_unsigned()) {
            fail(path + "." + key, "expected a non-negative integer");
            return std::nullopt;
        }
        return v->get<std::size_t>();
    }

    std::optional<std::vector<std::size_t>> index_array(const json& obj,
                                                        const std::string& path,
                                                        const char* key) {
        const json* v = field(obj, path, key);
        if (!v) return std::nullopt;
        if (!v->is_array()) {
            fail(path + "." + key, "expected an array of link ids");
            return std::nullopt;
        }
        std::vector<std::size_t> out;
        for (const auto& x : *v) {
            if (!x.is_number_unsigned()) {
                fail(path + "." + key, "expected non-negative integer link ids");
                return std::nullopt;
            }
            out.push_back(x.get<std::size_t>());
        }
        return out;
    }

    std::optional<std::vector<double>> number_array(const json& obj, const std::string& path,
                                                    const char* key, bool required = true) {
        const json* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_array()) {
            fail(path + "." + key, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (const auto& x : *v) {
            if (!x.is_number()) {
                fail(path + "." + key, "expected an array of numbers");
                return std::nullopt;
            }
            out.push_back(x.get<double>());
        }
        return out;
    }

    std::optional<std::vector<std::vector<double>>> matrix(const json& obj,
                                                           const std::string& path,
                                                           const char* key) {
        const json* v = field(obj, path, key);
        if (!v) return std::nullopt;
        if (!v->is_array()) {
            fail(path + "." + key, "expected an array of rows");
            return std::nullopt;
        }
        std::vector<std::vector<double>> out;
        for (std::size_t r = 0; r < v->size(); ++r) {
            const auto& row = (*v)[r];
            if (!row.is_array()) {
                fail(path + "." + key + "[" + std::to_string(r) + "]", "expected a row");
                return std::nullopt;
            }
            std::vector<double> values;
            for (const auto& x : row) {
                if (!x.is_number()) {
                    fail(path + "." + key + "[" + std::to_string(r) + "]",
                         "expected numbers");
                    return std::nullopt;
                }
                values.push_back(x.get<double>());
            }
            out.push_back(std::move(values));
        }
        return out;
    }
};

std::optional<FundamentalDiagram> parse_fd(Checker& ch, const json& v,
                                           const std::string& path) {
    if (!v.is_object()) {
        ch.fail(path, "expected a fundamental diagram object");
        return std::nullopt;
    }
    const json* kind = ch.field(v, path, "kind");
    if (!kind || !kind->is_string()) {
        ch.fail(path, "missing or non-string 'kind'");
        return std::nullopt;
    }
    try {
        if (kind->get<std::string>() == "triangular") {
            ch.known_keys(v, path, {"kind", "vf", "kj", "kc"});
            auto vf = ch.number(v, path, "vf");
            auto kj = ch.number(v, path, "kj");
            auto kc = ch.number(v, path, "kc");
            if (vf && kj && kc) return FundamentalDiagram::triangular(*vf, *kj, *kc);
        } else if (kind->get<std::string>() == "greenshields") {
            ch.known_keys(v, path, {"kind", "vf", "kj"});
            auto vf = ch.number(v, path, "vf");
            auto kj = ch.number(v, path, "kj");
            if (vf && kj) return FundamentalDiagram::greenshields(*vf, *kj);
        } else {
            ch.fail(path, "unknown fundamental diagram kind '" + kind->get<std::string>() + "'");
        }
    } catch (const ValidationError& e) {
        ch.fail(path, e.what());
    }
    return std::nullopt;
}

json fd_to_json(const FundamentalDiagram& fd) {
    if (fd.kind() == FundamentalDiagram::Kind::Triangular)
        return {{"kind", "triangular"},
                {"vf", fd.free_flow_speed()},
                {"kj", fd.jam_density()},
                {"kc", fd.critical_density()}};
    return {{"kind", "greenshields"}, {"vf", fd.free_flow_speed()}, {"kj", fd.jam_density()}};
}

std::optional<BoundaryProfile> parse_profile(Checker& ch, const json& v,
                                             const std::string& path) {
    BoundaryProfile profile;
    if (v.is_number()) {
        profile = BoundaryProfile::constant(v.get<double>());
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& piece = v[i];
            const std::string ppath = path + "[" + std::to_string(i) + "]";
            if (!piece.is_object()) {
                ch.fail(ppath, "expected {start, value}");
                return std::nullopt;
            }
            ch.known_keys(piece, ppath, {"start", "value"});
            auto start = ch.number(piece, ppath, "start");
            auto value = ch.number(piece, ppath, "value");
            if (!start || !value) return std::nullopt;
            profile.pieces.push_back({*start, *value});
        }
    } else {
        ch.fail(path, "expected a number or an array of {start, value} pieces");
        return std::nullopt;
    }
    try {
        profile.validate();
    } catch (const ValidationError& e) {
        ch.fail(path, e.what());
        return std::nullopt;
    }
    return profile;
}

json profile_to_json(const BoundaryProfile& profile) {
    if (profile.pieces.size() == 1 && profile.pieces[0].start == 0.0)
        return profile.pieces[0].value;
    json out = json::array();
    for (const auto& p : profile.pieces)
        out.push_back({{"start", p.start}, {"value", p.value}});
    return out;
}

void parse_junction_problem(Checker& ch, const json& root, ParseResult& result,
                            std::optional<std::uint64_t> seed) {
    ch.known_keys(root, "$", {"schema", "type", "seed", "upstream_capacity",
                              "downstream_capacity", "turning", "demands", "supplies"});
    JunctionProblem problem;
    auto up = ch.number_array(root, "$", "upstream_capacity");
    auto down = ch.number_array(root, "$", "downstream_capacity");
    auto turning = ch.matrix(root, "$", "turning");
    auto demands = ch.number_array(root, "$", "demands");
    auto supplies = ch.number_array(root, "$", "supplies");
    if (!up || !down || !turning || !demands || !supplies) return;
    problem.junction.upstream_capacity = std::move(*up);
    problem.junction.downstream_capacity = std::move(*down);
    problem.junction.turning = std::move(*turning);
    problem.demands = std::move(*demands);
    problem.supplies = std::move(*supplies);
    try {
        problem.junction.validate();
    } catch (const ValidationError& e) {
        ch.fail("$.turning", e.what());
    }
    if (problem.demands.size() != problem.junction.upstream_count())
        ch.fail("$.demands", "expected one demand per upstream link");
    if (problem.supplies.size() != problem.junction.downstream_count())
        ch.fail("$.supplies", "expected one supply per downstream link");
    for (std::size_t a = 0; a < problem.demands.size() &&
                            a < problem.junction.upstream_count(); ++a)
        if (problem.demands[a] < 0.0 ||
            problem.demands[a] > problem.junction.upstream_capacity[a] * (1.0 + kRelTol))
            ch.fail("$.demands", "demand " + std::to_string(a) + " outside [0, capacity]");
    for (std::size_t b = 0; b < problem.supplies.size() &&
                            b < problem.junction.downstream_count(); ++b)
        if (problem.supplies[b] < 0.0 ||
            problem.supplies[b] > problem.junction.downstream_capacity[b] * (1.0 + kRelTol))
            ch.fail("$.supplies", "supply " + std::to_string(b) + " outside [0, capacity]");
    if (ch.errors.empty())
        result.file = ScenarioFile{kSchemaVersion, seed, std::move(problem)};
}

void parse_riemann(Checker& ch, const json& root, ParseResult& result,
                   std::optional<std::uint64_t> seed) {
    ch.known_keys(root, "$", {"schema", "type", "seed", "upstream", "downstream", "turning"});
    const json* up = ch.field(root, "$", "upstream");
    const json* down = ch.field(root, "$", "downstream");
    auto turning = ch.matrix(root, "$", "turning");
    if (!up || !down || !turning) return;
    if (!up->is_array() || !down->is_array()) {
        ch.fail("$", "'upstream' and 'downstream' must be arrays of links");
        return;
    }

    RiemannInput input;
    auto parse_side = [&](const json& side, const char* name, bool upstream) {
        for (std::size_t i = 0; i < side.size(); ++i) {
            const std::string path = std::string("$.") + name + "[" + std::to_string(i) + "]";
            const auto& entry = side[i];
            if (!entry.is_object()) {
                ch.fail(path, "expected {fd, density}");
                continue;
            }
            ch.known_keys(entry, path, {"fd", "density"});
            const json* fd_json = ch.field(entry, path, "fd");
            auto density = ch.number(entry, path, "density");
            if (!fd_json || !density) continue;
            auto fd = parse_fd(ch, *fd_json, path + ".fd");
            if (!fd) continue;
            if (upstream)
                input.junction.upstream_capacity.push_back(fd->capacity());
            else
                input.junction.downstream_capacity.push_back(fd->capacity());
            input.diagrams.push_back(std::move(*fd));
            input.initial_density.push_back(*density);
        }
    };
    parse_side(*up, "upstream", true);
    // keep link order: all upstream diagrams first
    parse_side(*down, "downstream", false);
    input.junction.turning = std::move(*turning);

    if (!ch.errors.empty()) return;
    try {
        input.junction.validate();
        input.validate();
    } catch (const ValidationError& e) {
        ch.fail("$", e.what());
        return;
    }
    result.file = ScenarioFile{kSchemaVersion, seed, std::move(input)};
}

void parse_network(Checker& ch, const json& root, ParseResult& result,
                   std::optional<std::uint64_t> seed) {
    ch.known_keys(root, "$", {"schema", "type", "seed", "links", "junctions", "origins",
                              "destinations", "dt", "horizon", "snapshot_stride"});
    NetworkScenario scenario;
    auto dt = ch.number(root, "$", "dt");
    auto horizon = ch.number(root, "$", "horizon");
    if (dt) scenario.dt = *dt;
    if (horizon) scenario.horizon = *horizon;
    if (root.contains("snapshot_stride")) {
        auto stride = ch.index(root, "$", "snapshot_stride");
        if (stride) scenario.snapshot_stride = *stride;
    }

    const json* links = ch.field(root, "$", "links");
    if (links && links->is_array()) {
        for (std::size_t i = 0; i < links->size(); ++i) {
            const std::string path = "$.links[" + std::to_string(i) + "]";
            const auto& entry = (*links)[i];
            if (!entry.is_object()) {
                ch.fail(path, "expected a link object");
                continue;
            }
            ch.known_keys(entry, path, {"fd", "length", "cells", "initial_density"});
            const json* fd_json = ch.field(entry, path, "fd");
            auto length = ch.number(entry, path, "length");
            auto cells = ch.index(entry, path, "cells");
            const json* init = ch.field(entry, path, "initial_density");
            if (!fd_json || !length || !cells || !init) continue;
            auto fd = parse_fd(ch, *fd_json, path + ".fd");
            if (!fd) continue;
            LinkSpec link{std::move(*fd), *length, *cells, {}};
            if (init->is_number()) {
                link.initial_density = {init->get<double>()};
            } else if (init->is_array()) {
                for (const auto& x : *init) {
                    if (!x.is_number()) {
                        ch.fail(path + ".initial_density", "expected numbers");
                        break;
                    }
                    link.initial_density.push_back(x.get<double>());
                }
            } else {
                ch.fail(path + ".initial_density", "expected a number or array");
                continue;
            }
            scenario.links.push_back(std::move(link));
        }
    } else if (links) {
        ch.fail("$.links", "expected an array");
    }

    const json* junctions = ch.field(root, "$", "junctions", false);
    if (junctions) {
        if (!junctions->is_array()) {
            ch.fail("$.junctions", "expected an array");
        } else {
            for (std::size_t i = 0; i < junctions->size(); ++i) {
                const std::string path = "$.junctions[" + std::to_string(i) + "]";
                const auto& entry = (*junctions)[i];
                if (!entry.is_object()) {
                    ch.fail(path, "expected a junction object");
                    continue;
                }
                ch.known_keys(entry, path, {"upstream", "downstream", "turning"});
                auto up = ch.index_array(entry, path, "upstream");
                auto down = ch.index_array(entry, path, "downstream");
                auto turning = ch.matrix(entry, path, "turning");
                if (!up || !down || !turning) continue;
                JunctionConnection jc;
                jc.upstream_links = std::move(*up);
                jc.downstream_links = std::move(*down);
                jc.turning = std::move(*turning);
                scenario.junctions.push_back(std::move(jc));
            }
        }
    }

    auto parse_boundaries = [&](const char* key, bool is_origin) {
        const json* list = ch.field(root, "$", key, false);
        if (!list) return;
        if (!list->is_array()) {
            ch.fail(std::string("$.") + key, "expected an array");
            return;
        }
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = std::string("$.") + key + "[" + std::to_string(i) + "]";
            const auto& entry = (*list)[i];
            if (!entry.is_object()) {
                ch.fail(path, "expected an object");
                continue;
            }
            const char* value_key = is_origin ? "demand" : "supply";
            ch.known_keys(entry, path, {"link", value_key});
            auto link = ch.index(entry, path, "link");
            const json* profile_json = ch.field(entry, path, value_key);
            if (!link || !profile_json) continue;
            auto profile = parse_profile(ch, *profile_json, path + "." + value_key);
            if (!profile) continue;
            if (is_origin)
                scenario.origins.push_back({*link, std::move(*profile)});
            else
                scenario.destinations.push_back({*link, std::move(*profile)});
        }
    };
    parse_boundaries("origins", true);
    parse_boundaries("destinations", false);

    if (!ch.errors.empty()) return;
    try {
        scenario.validate();
    } catch (const ValidationError& e) {
        ch.fail("$", e.what());
        return;
    }
    result.file = ScenarioFile{kSchemaVersion, seed, std::move(scenario)};
}

json breakdown_to_json(const CriticalLevelBreakdown& bd) {
    json out{{"theta", bd.theta},
             {"g", bd.g},
             {"max_demand_level", bd.max_demand_level},
             {"residue", bd.residue},
             {"congested_set", bd.congested_set},
             {"gamma_prefix", bd.gamma_prefix}};
    if (bd.binding_b)
        out["binding_b"] = *bd.binding_b;
    else
        out["binding_b"] = nullptr;
    return out;
}

json flux_to_json(const FluxResult& fr) {
    return {{"upstream_flux", fr.upstream_flux},
            {"downstream_flux", fr.downstream_flux},
            {"effective_supply", fr.effective_supply},
            {"effective_demand", fr.effective_demand},
            {"breakdown", breakdown_to_json(fr.breakdown)}};
}

json state_to_json(const TrafficState& u) {
    return {{"demand", u.demand}, {"supply", u.supply}, {"regime", to_string(u.regime())}};
}

json wave_to_json(const WaveDescription& w) {
    json out{{"kind", to_string(w.kind)},
             {"left_density", w.left_density},
             {"right_density", w.right_density}};
    if (w.kind == WaveKind::Shock) {
        out["speed"] = w.speed_low;
    } else if (w.kind == WaveKind::Rarefaction) {
        out["speed_low"] = w.speed_low;
        out["speed_high"] = w.speed_high;
    }
    return out;
}

}  // namespace

ParseResult parse_scenario(const std::string& text) {
    ParseResult result;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        result.errors.push_back(std::string("malformed JSON: ") + e.what());
        return result;
    }
    if (!root.is_object()) {
        result.errors.push_back("$: expected a JSON object");
        return result;
    }

    Checker ch{result.errors};
    const json* schema = ch.field(root, "$", "schema");
    if (schema && (!schema->is_number_integer() || schema->get<int>() != kSchemaVersion))
        ch.fail("$.schema", "unsupported schema version");
    std::optional<std::uint64_t> seed;
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned())
            ch.fail("$.seed", "expected a non-negative integer");
        else
            seed = root["seed"].get<std::uint64_t>();
    }
    const json* type = ch.field(root, "$", "type");
    if (!type || !type->is_string()) {
        if (type) ch.fail("$.type", "expected a string");
        return result;
    }
    const std::string kind = type->get<std::string>();
    if (kind == "junction")
        parse_junction_problem(ch, root, result, seed);
    else if (kind == "riemann")
        parse_riemann(ch, root, result, seed);
    else if (kind == "network")
        parse_network(ch, root, result, seed);
    else
        ch.fail("$.type", "unknown type '" + kind + "'");
    if (!result.errors.empty()) result.file.reset();
    return result;
}

ScenarioFile parse_scenario_or_throw(const std::string& text) {
    ParseResult result = parse_scenario(text);
    if (!result.ok()) {
        std::string joined = "invalid scenario file:";
        for (const auto& e : result.errors) joined += "\n  " + e;
        throw ValidationError(joined);
    }
    return std::move(*result.file);
}

std::string serialize(const ScenarioFile& file) {
    json out;
    out["schema"] = file.schema;
    if (file.seed) out["seed"] = *file.seed;
    if (const JunctionProblem* p = file.junction_problem()) {
        out["type"] = "junction";
        out["upstream_capacity"] = p->junction.upstream_capacity;
        out["downstream_capacity"] = p->junction.downstream_capacity;
        out["turning"] = p->junction.turning;
        out["demands"] = p->demands;
        out["supplies"] = p->supplies;
    } else if (const RiemannInput* r = file.riemann_input()) {
        out["type"] = "riemann";
        const std::size_t m = r->junction.upstream_count();
        json up = json::array(), down = json::array();
        for (std::size_t i = 0; i < r->diagrams.size(); ++i) {
            json entry{{"fd", fd_to_json(r->diagrams[i])},
                       {"density", r->initial_density[i]}};
            (i < m ? up : down).push_back(std::move(entry));
        }
        out["upstream"] = std::move(up);
        out["downstream"] = std::move(down);
        out["turning"] = r->junction.turning;
    } else if (const NetworkScenario* s = file.network_scenario()) {
        out["type"] = "network";
        json links = json::array();
        for (const auto& link : s->links) {
            json entry{{"fd", fd_to_json(link.fd)},
                       {"length", link.length},
                       {"cells", link.cell_count}};
            entry["initial_density"] = link.initial_density.size() == 1
                                           ? json(link.initial_density[0])
                                           : json(link.initial_density);
            links.push_back(std::move(entry));
        }
        out["links"] = std::move(links);
        json junctions = json::array();
        for (const auto& jc : s->junctions)
            junctions.push_back({{"upstream", jc.upstream_links},
                                 {"downstream", jc.downstream_links},
                                 {"turning", jc.turning}});
        out["junctions"] = std::move(junctions);
        json origins = json::array();
        for (const auto& o : s->origins)
            origins.push_back({{"link", o.link}, {"demand", profile_to_json(o.demand)}});
        out["origins"] = std::move(origins);
        json destinations = json::array();
        for (const auto& d : s->destinations)
            destinations.push_back({{"link", d.link}, {"supply", profile_to_json(d.supply)}});
        out["destinations"] = std::move(destinations);
        out["dt"] = s->dt;
        out["horizon"] = s->horizon;
        out["snapshot_stride"] = s->snapshot_stride;
    }
    return out.dump(2) + "\n";
}

std::string serialize(const FluxResult& result) {
    return flux_to_json(result).dump(2) + "\n";
}

std::string serialize(const CriticalLevelBreakdown& breakdown) {
    return breakdown_to_json(breakdown).dump(2) + "\n";
}

std::string serialize(const RiemannSolution& solution, const RiemannInput& input) {
    const std::size_t m = input.junction.upstream_count();
    json links = json::array();
    for (std::size_t i = 0; i < solution.links.size(); ++i) {
        const LinkSolution& link = solution.links[i];
        links.push_back({{"role", i < m ? "upstream" : "downstream"},
                         {"initial_density", input.initial_density[i]},
                         {"initial", state_to_json(link.initial)},
                         {"stationary", state_to_json(link.stationary)},
                         {"stationary_density", link.stationary_density},
                         {"interior", state_to_json(link.interior)},
                         {"interior_alternatives", link.interior_alternatives},
                         {"wave", wave_to_json(link.wave)}});
    }
    json out{{"flux", flux_to_json(solution.flux)},
             {"links", std::move(links)},
             {"consistent", solution.consistent}};
    return out.dump(2) + "\n";
}

std::string serialize(const oracle::SuiteReport& report) {
    json checks = json::array();
    for (const auto& check : report.checks)
        checks.push_back({{"name", check.name}, {"pass", check.pass},
                          {"detail", check.detail}});
    json out{{"seed", report.seed},
             {"all_pass", report.all_pass()},
             {"checks", std::move(checks)}};
    return out.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& trajectory, const NetworkScenario& scenario) {
    std::ostringstream out;
    out << "time,link,cell,density,flow\n";
    out << std::setprecision(17);
    for (const Snapshot& snap : trajectory.snapshots) {
        for (std::size_t link = 0; link < snap.density.size(); ++link) {
            const FundamentalDiagram& fd = scenario.links[link].fd;
            for (std::size_t cell = 0; cell < snap.density[link].size(); ++cell) {
                const double k = snap.density[link][cell];
                out << snap.time << ',' << link << ',' << cell << ',' << k << ','
                    << fd.flow(k) << '\n';
            }
        }
    }
    return out.str();
}

std::string summary_json(const Trajectory& trajectory, const NetworkScenario& scenario) {
    json junctions = json::array();
    for (std::size_t jid = 0; jid < trajectory.junction_flux.size(); ++jid) {
        const auto& history = trajectory.junction_flux[jid];
        json entry{{"junction", jid}};
        if (!history.empty()) {
            entry["final_upstream_flux"] = history.back().upstream_flux;
            entry["final_downstream_flux"] = history.back().downstream_flux;
            double delta = 0.0;
            if (history.size() >= 2) {
                const auto& last = history.back();
                const auto& prev = history[history.size() - 2];
                for (std::size_t a = 0; a < last.upstream_flux.size(); ++a)
                    delta = std::max(delta,
                                     std::fabs(last.upstream_flux[a] - prev.upstream_flux[a]));
                for (std::size_t b = 0; b < last.downstream_flux.size(); ++b)
                    delta = std::max(delta, std::fabs(last.downstream_flux[b] -
                                                      prev.downstream_flux[b]));
            }
            entry["flux_change_last_step"] = delta;
        }
        junctions.push_back(std::move(entry));
    }
    double inflow = 0.0, outflow = 0.0;
    for (double v : trajectory.final_state.origin_inflow) inflow += v;
    for (double v : trajectory.final_state.destination_outflow) outflow += v;
    json out{{"final_time", trajectory.final_state.time},
             {"steps", trajectory.final_state.steps},
             {"dt", scenario.dt},
             {"initial_vehicles", trajectory.initial_vehicles},
             {"total_inflow", inflow},
             {"total_outflow", outflow},
             {"conservation_residual", trajectory.conservation_residual},
             {"junctions", std::move(junctions)}};
    return out.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

}  // namespace kinwave::io
