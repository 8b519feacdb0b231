#include "kinwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kinwave::oracle {

namespace {

constexpr std::size_t kMaxExhaustiveUpstream = 20;

double gamma_of_mask(const JunctionSpec& j,
                     const std::vector<double>& mu,
                     const std::vector<double>& nu,
                     std::size_t b,
                     std::uint32_t mask) {
    double numerator = j.downstream_capacity[b] * nu[b];
    double denominator = 0.0;
    for (std::size_t a = 0; a < j.upstream_count(); ++a) {
        if (mask & (1u << a))
            denominator += j.directed_capacity(a, b);
        else
            numerator -= j.directed_capacity(a, b) * mu[a];
    }
    return numerator / denominator;
}

/// min over b of max over non-empty subsets, without argument tracking.
double min_max_enumerated(const JunctionSpec& j,
                          const std::vector<double>& mu,
                          const std::vector<double>& nu) {
    const std::uint32_t full = (1u << j.upstream_count()) - 1u;
    double result = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < j.downstream_count(); ++b) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::uint32_t mask = 1; mask <= full; ++mask)
            best = std::max(best, gamma_of_mask(j, mu, nu, b, mask));
        result = std::min(result, best);
    }
    return result;
}

double theta_enumerated(const JunctionSpec& j,
                        const std::vector<double>& mu,
                        const std::vector<double>& nu) {
    return std::min(*std::max_element(mu.begin(), mu.end()), min_max_enumerated(j, mu, nu));
}

}  // namespace

ExhaustiveLevels g_exhaustive(const JunctionSpec& j,
                              const std::vector<double>& mu,
                              const std::vector<double>& nu) {
    const std::size_t m = j.upstream_count();
    const std::size_t n = j.downstream_count();
    if (m > kMaxExhaustiveUpstream)
        throw ValidationError("exhaustive enumeration capped at " +
                              std::to_string(kMaxExhaustiveUpstream) + " upstream links");
    if (mu.size() != m || nu.size() != n)
        throw ValidationError("level vector sizes do not match the junction");

    const std::uint32_t full = (1u << m) - 1u;

    ExhaustiveLevels out;
    out.min_max = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask_of_argmin = 1;
    for (std::size_t b = 0; b < n; ++b) {
        double best = -std::numeric_limits<double>::infinity();
        std::uint32_t best_mask = 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            const double value = gamma_of_mask(j, mu, nu, b, mask);
            if (value > best) {
                best = value;
                best_mask = mask;
            }
        }
        if (best < out.min_max) {
            out.min_max = best;
            out.argmin_b = b;
            best_mask_of_argmin = best_mask;
        }
    }
    for (std::size_t a = 0; a < m; ++a)
        if (best_mask_of_argmin & (1u << a)) out.arg_subset.push_back(a);

    out.max_min = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < n; ++b)
            worst = std::min(worst, gamma_of_mask(j, mu, nu, b, mask));
        out.max_min = std::max(out.max_min, worst);
    }
    return out;
}

namespace {

/// Candidate interior levels for one free coordinate, canonical value first
/// so the first witness combination tried is the canonical interior state.
std::vector<double> interior_candidates(double canonical, std::size_t subdivisions) {
    std::vector<double> values;
    values.push_back(std::clamp(canonical, 0.0, 1.0));
    values.push_back(1.0);
    values.push_back(0.0);
    for (std::size_t i = 1; i < subdivisions; ++i)
        values.push_back(static_cast<double>(i) / static_cast<double>(subdivisions));
    return values;
}

struct FreeSlot {
    bool upstream = false;
    std::size_t index = 0;  // link index within its side
    std::vector<double> candidates;
};

}  // namespace

std::vector<StationaryCandidate> stationary_exhaustive(const RiemannInput& input,
                                                       std::size_t grid_points) {
    input.validate();
    const std::size_t m = input.junction.upstream_count();
    const std::size_t n = input.junction.downstream_count();
    if (m + n > 4)
        throw ValidationError("stationary search capped at 4 links");
    if (grid_points < 2 || grid_points > 200)
        throw ValidationError("stationary search grid must have 2..200 points");

    const JunctionSpec& junction = input.junction;
    std::vector<double> demand(m), supply(n);
    for (std::size_t a = 0; a < m; ++a)
        demand[a] = input.diagrams[a].demand(input.initial_density[a]);
    for (std::size_t b = 0; b < n; ++b)
        supply[b] = input.diagrams[m + b].supply(input.initial_density[m + b]);

    const double cells = static_cast<double>(grid_points - 1);
    std::vector<double> step(m);          // flux grid spacing per upstream link
    std::vector<double> tol_up(m);        // upstream equation slack: one cell
    for (std::size_t a = 0; a < m; ++a) {
        step[a] = demand[a] / cells;
        tol_up[a] = std::max(step[a], kAbsTol);
    }
    // Downstream slack covers exactly the grid quantization of the upstream
    // fluxes propagated through the turning matrix; anything looser admits
    // overshooting candidates several cells away from the true solution.
    std::vector<double> tol_down(n);
    for (std::size_t b = 0; b < n; ++b) {
        double propagated = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            propagated += 0.5 * step[a] * junction.turning[a][b];
        tol_down[b] = std::max(propagated, kAbsTol);
    }

    std::vector<StationaryCandidate> survivors;
    std::vector<std::size_t> cursor(m, 0);

    auto flux_at = [&](std::size_t a) {
        return demand[a] == 0.0 ? 0.0 : static_cast<double>(cursor[a]) * step[a];
    };

    while (true) {
        std::vector<double> up_flux(m);
        for (std::size_t a = 0; a < m; ++a) up_flux[a] = flux_at(a);

        std::vector<double> down_flux(n, 0.0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < n; ++b)
                down_flux[b] += up_flux[a] * junction.turning[a][b];

        bool feasible = true;
        for (std::size_t b = 0; b < n && feasible; ++b)
            if (down_flux[b] > supply[b] + tol_down[b]) feasible = false;

        if (feasible) {
            std::vector<bool> up_congested(m), down_saturated(n);
            for (std::size_t a = 0; a < m; ++a)
                up_congested[a] = up_flux[a] < demand[a] - tol_up[a];
            for (std::size_t b = 0; b < n; ++b)
                down_saturated[b] = down_flux[b] >= supply[b] - tol_down[b];

            // Necessary window for the interior critical level.
            double lo = 0.0, hi = 1.0;
            for (std::size_t a = 0; a < m; ++a) {
                const double cap = junction.upstream_capacity[a];
                if (up_congested[a]) {
                    lo = std::max(lo, (up_flux[a] - tol_up[a]) / cap);
                    hi = std::min(hi, (up_flux[a] + tol_up[a]) / cap);
                } else {
                    lo = std::max(lo, (demand[a] - tol_up[a]) / cap);
                }
            }

            if (lo <= hi) {
                // Only interior demands of uncongested upstream links and
                // interior supplies of saturated downstream links are free;
                // all other coordinates are forced to level 1.
                std::vector<FreeSlot> slots;
                for (std::size_t a = 0; a < m; ++a)
                    if (!up_congested[a])
                        slots.push_back({true, a,
                                         interior_candidates(
                                             demand[a] / junction.upstream_capacity[a], 16)});
                for (std::size_t b = 0; b < n; ++b)
                    if (down_saturated[b])
                        slots.push_back({false, b,
                                         interior_candidates(
                                             supply[b] / junction.downstream_capacity[b], 16)});

                std::vector<double> mu0(m, 1.0), nu0(n, 1.0);
                std::vector<std::size_t> pick(slots.size(), 0);
                std::size_t budget = 250000;
                bool found = false;
                double witness_theta = 0.0;
                while (budget-- > 0) {
                    for (std::size_t s = 0; s < slots.size(); ++s) {
                        const double value = slots[s].candidates[pick[s]];
                        if (slots[s].upstream)
                            mu0[slots[s].index] = value;
                        else
                            nu0[slots[s].index] = value;
                    }
                    const double theta0 = theta_enumerated(junction, mu0, nu0);
                    bool ok = theta0 >= lo - kAbsTol && theta0 <= hi + kAbsTol;
                    for (std::size_t a = 0; a < m && ok; ++a) {
                        const double rule = std::min(mu0[a] * junction.upstream_capacity[a],
                                                     theta0 * junction.upstream_capacity[a]);
                        ok = std::fabs(rule - up_flux[a]) <= tol_up[a];
                    }
                    if (ok) {
                        found = true;
                        witness_theta = theta0;
                        break;
                    }
                    // advance the odometer
                    std::size_t s = 0;
                    for (; s < slots.size(); ++s) {
                        if (++pick[s] < slots[s].candidates.size()) break;
                        pick[s] = 0;
                    }
                    if (s == slots.size()) break;
                }

                if (found) {
                    StationaryCandidate cand;
                    cand.upstream_flux = up_flux;
                    cand.downstream_flux = down_flux;
                    cand.witness_theta = witness_theta;
                    cand.states.resize(m + n);
                    cand.densities.resize(m + n);
                    for (std::size_t a = 0; a < m; ++a) {
                        cand.states[a] = up_congested[a]
                            ? TrafficState{junction.upstream_capacity[a], up_flux[a]}
                            : TrafficState{demand[a], junction.upstream_capacity[a]};
                        cand.densities[a] = input.diagrams[a].density_from_state(cand.states[a]);
                    }
                    for (std::size_t b = 0; b < n; ++b) {
                        cand.states[m + b] = down_saturated[b]
                            ? TrafficState{junction.downstream_capacity[b], supply[b]}
                            : TrafficState{std::min(down_flux[b],
                                                    junction.downstream_capacity[b]),
                                           junction.downstream_capacity[b]};
                        cand.densities[m + b] =
                            input.diagrams[m + b].density_from_state(cand.states[m + b]);
                    }
                    survivors.push_back(std::move(cand));
                }
            }
        }

        // next flux tuple
        std::size_t a = 0;
        for (; a < m; ++a) {
            if (demand[a] == 0.0) continue;  // single grid value
            if (++cursor[a] < grid_points) break;
            cursor[a] = 0;
        }
        if (a == m) break;
    }
    return survivors;
}

RandomInstance random_instance(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> cap_dist(0.5, 2.0);
    std::uniform_real_distribution<double> xi_dist(0.2, 1.0);
    std::uniform_real_distribution<double> level_dist(0.0, 1.0);

    RandomInstance out;
    out.junction.upstream_capacity.resize(m);
    out.junction.downstream_capacity.resize(n);
    out.junction.turning.assign(m, std::vector<double>(n));
    for (std::size_t a = 0; a < m; ++a) out.junction.upstream_capacity[a] = cap_dist(rng);
    for (std::size_t b = 0; b < n; ++b) out.junction.downstream_capacity[b] = cap_dist(rng);
    for (std::size_t a = 0; a < m; ++a) {
        double row_sum = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            out.junction.turning[a][b] = xi_dist(rng);
            row_sum += out.junction.turning[a][b];
        }
        for (std::size_t b = 0; b < n; ++b) out.junction.turning[a][b] /= row_sum;
    }
    out.mu.resize(m);
    out.nu.resize(n);
    for (double& x : out.mu) x = level_dist(rng);
    for (double& x : out.nu) x = level_dist(rng);
    return out;
}

RiemannInput random_riemann_input(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> vf_dist(0.5, 2.0);
    std::uniform_real_distribution<double> kj_dist(2.0, 8.0);
    std::uniform_real_distribution<double> kc_frac(0.2, 0.8);
    std::uniform_real_distribution<double> xi_dist(0.2, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RiemannInput input;
    for (std::size_t i = 0; i < m + n; ++i) {
        const double vf = vf_dist(rng);
        const double kj = kj_dist(rng);
        FundamentalDiagram fd = (rng() & 1u)
            ? FundamentalDiagram::triangular(vf, kj, kc_frac(rng) * kj)
            : FundamentalDiagram::greenshields(vf, kj);
        input.initial_density.push_back(unit(rng) * fd.jam_density());
        if (i < m)
            input.junction.upstream_capacity.push_back(fd.capacity());
        else
            input.junction.downstream_capacity.push_back(fd.capacity());
        input.diagrams.push_back(std::move(fd));
    }
    input.junction.turning.assign(m, std::vector<double>(n));
    for (std::size_t a = 0; a < m; ++a) {
        double row_sum = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            input.junction.turning[a][b] = xi_dist(rng);
            row_sum += input.junction.turning[a][b];
        }
        for (std::size_t b = 0; b < n; ++b) input.junction.turning[a][b] /= row_sum;
    }
    return input;
}

bool SuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const SuiteCheck& c) { return c.pass; });
}

namespace {

JunctionSpec single_capacity_junction(std::vector<double> up_caps,
                                      std::vector<double> down_caps,
                                      std::vector<std::vector<double>> turning) {
    JunctionSpec j;
    j.upstream_capacity = std::move(up_caps);
    j.downstream_capacity = std::move(down_caps);
    j.turning = std::move(turning);
    j.validate();
    return j;
}

RiemannInput triangular_fixture(std::vector<double> up_density,
                                std::vector<double> down_density,
                                std::vector<std::vector<double>> turning) {
    RiemannInput input;
    const std::size_t m = up_density.size();
    const std::size_t n = down_density.size();
    for (std::size_t i = 0; i < m + n; ++i)
        input.diagrams.push_back(FundamentalDiagram::triangular(1.0, 4.0, 1.0));
    input.junction.upstream_capacity.assign(m, 1.0);
    input.junction.downstream_capacity.assign(n, 1.0);
    input.junction.turning = std::move(turning);
    input.junction.validate();
    for (double k : up_density) input.initial_density.push_back(k);
    for (double k : down_density) input.initial_density.push_back(k);
    return input;
}

}  // namespace

SuiteReport run_validation_suite(const SuiteConfig& config) {
    SuiteReport report;
    report.seed = config.seed;
    std::mt19937_64 rng(config.seed);

    {  // prefix algorithm vs subset enumeration, plus congested-set structure
        double worst_gap = 0.0;
        double worst_exchange = 0.0;
        bool structure_ok = true;
        for (std::size_t m = 1; m <= 8; ++m) {
            for (std::size_t n = 1; n <= 4; ++n) {
                for (std::size_t k = 0; k < config.instances_per_shape; ++k) {
                    RandomInstance inst = random_instance(rng, m, n);
                    const auto breakdown =
                        critical_demand_level(inst.junction, inst.mu, inst.nu);
                    const auto exact = g_exhaustive(inst.junction, inst.mu, inst.nu);
                    worst_gap = std::max(worst_gap, std::fabs(breakdown.g - exact.min_max));
                    const double min_residue = *std::min_element(
                        breakdown.residue.begin(), breakdown.residue.end());
                    if (min_residue < 0.0) {
                        worst_exchange = std::max(
                            worst_exchange, std::fabs(exact.min_max - exact.max_min));
                        double inside = std::numeric_limits<double>::infinity();
                        double outside = 0.0;
                        std::vector<bool> congested(m, false);
                        for (std::size_t a : breakdown.congested_set) congested[a] = true;
                        for (std::size_t a = 0; a < m; ++a) {
                            if (congested[a])
                                inside = std::min(inside, inst.mu[a]);
                            else
                                outside = std::max(outside, inst.mu[a]);
                        }
                        if (breakdown.congested_set.empty() ||
                            !(inside > breakdown.theta) || outside > breakdown.theta)
                            structure_ok = false;
                    }
                }
            }
        }
        std::ostringstream detail;
        detail << "max |prefix - enumeration| = " << worst_gap;
        report.checks.push_back({"prefix-vs-enumeration", worst_gap <= 1e-12, detail.str()});
        std::ostringstream detail2;
        detail2 << "max |min-max - max-min| under deficit = " << worst_exchange;
        report.checks.push_back(
            {"minmax-exchange-and-separation", worst_exchange <= 1e-12 && structure_ok,
             detail2.str()});
    }

    {  // merge closed form
        double worst = 0.0;
        std::uniform_real_distribution<double> cap_dist(0.5, 2.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t k = 0; k < config.instances_per_shape; ++k) {
            const double c1 = cap_dist(rng), c2 = cap_dist(rng), c3 = cap_dist(rng);
            const JunctionSpec j = single_capacity_junction({c1, c2}, {c3}, {{1.0}, {1.0}});
            const std::vector<double> d{unit(rng) * c1, unit(rng) * c2};
            const std::vector<double> s{unit(rng) * c3};
            const FluxResult fr = junction_flux(j, d, s);
            const double q1 = std::min(d[0], std::max(s[0] - d[1], c1 / (c1 + c2) * s[0]));
            const double q2 = std::min(d[1], std::max(s[0] - d[0], c2 / (c1 + c2) * s[0]));
            worst = std::max(worst, std::fabs(fr.upstream_flux[0] - q1));
            worst = std::max(worst, std::fabs(fr.upstream_flux[1] - q2));
        }
        std::ostringstream detail;
        detail << "max deviation from the fair-merge form = " << worst;
        report.checks.push_back({"merge-closed-form", worst <= 1e-12, detail.str()});
    }

    {  // diverge closed form
        double worst = 0.0;
        std::uniform_real_distribution<double> cap_dist(0.5, 2.0);
        std::uniform_real_distribution<double> xi_dist(0.2, 1.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> n_dist(2, 4);
        for (std::size_t k = 0; k < config.instances_per_shape; ++k) {
            const std::size_t n = n_dist(rng);
            const double c1 = cap_dist(rng);
            std::vector<double> down_caps(n), xi(n), s(n);
            double row = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                down_caps[b] = cap_dist(rng);
                xi[b] = xi_dist(rng);
                row += xi[b];
            }
            for (std::size_t b = 0; b < n; ++b) xi[b] /= row;
            for (std::size_t b = 0; b < n; ++b) s[b] = unit(rng) * down_caps[b];
            const JunctionSpec j = single_capacity_junction({c1}, down_caps, {xi});
            const double d1 = unit(rng) * c1;
            const FluxResult fr = junction_flux(j, {d1}, s);
            double fifo = d1;
            for (std::size_t b = 0; b < n; ++b) fifo = std::min(fifo, s[b] / xi[b]);
            worst = std::max(worst, std::fabs(fr.upstream_flux[0] - fifo));
        }
        std::ostringstream detail;
        detail << "max deviation from the FIFO-diverge form = " << worst;
        report.checks.push_back({"diverge-closed-form", worst <= 1e-12, detail.str()});
    }

    {  // Riemann re-solve consistency and wave directions
        bool all_ok = true;
        std::uniform_int_distribution<std::size_t> mn_dist(1, 4);
        for (std::size_t k = 0; k < config.riemann_samples && all_ok; ++k) {
            const RiemannInput input =
                random_riemann_input(rng, mn_dist(rng), mn_dist(rng));
            const RiemannSolution sol = solve(input);
            if (!sol.consistent) all_ok = false;
            const std::size_t m = input.junction.upstream_count();
            for (std::size_t i = 0; i < sol.links.size() && all_ok; ++i) {
                const double f = i < m ? sol.flux.upstream_flux[i]
                                       : sol.flux.downstream_flux[i - m];
                if (std::fabs(sol.links[i].stationary.flow() - f) > 1e-10) all_ok = false;
                if (i < m && sol.links[i].wave.speed_high > 1e-12) all_ok = false;
                if (i >= m && sol.links[i].wave.speed_low < -1e-12) all_ok = false;
            }
        }
        report.checks.push_back({"riemann-consistency", all_ok,
                                 all_ok ? "re-solve reproduces all solutions"
                                        : "a re-solve or wave direction failed"});
    }

    {  // gridded stationary search against the closed-form solver
        bool all_ok = true;
        std::ostringstream detail;
        for (const auto& [name, input] : special_case_fixtures()) {
            const RiemannSolution sol = solve(input);
            const auto survivors = stationary_exhaustive(input, config.stationary_grid);
            const double cell_slack = 1.0 / static_cast<double>(config.stationary_grid - 1);
            bool ok = !survivors.empty();
            for (const auto& cand : survivors) {
                for (std::size_t a = 0; a < sol.flux.upstream_flux.size(); ++a) {
                    const double cell =
                        input.junction.upstream_capacity[a] * cell_slack;
                    if (std::fabs(cand.upstream_flux[a] - sol.flux.upstream_flux[a]) >
                        cell * (1.0 + kRelTol) + kAbsTol)
                        ok = false;
                }
            }
            if (!ok) {
                all_ok = false;
                detail << name << " diverged from the gridded search; ";
            }
        }
        report.checks.push_back({"stationary-search-fixtures", all_ok,
                                 all_ok ? "solver output is the unique gridded survivor"
                                        : detail.str()});
    }

    return report;
}

std::vector<std::pair<std::string, RiemannInput>> special_case_fixtures() {
    std::vector<std::pair<std::string, RiemannInput>> out;
    // Triangular(1, 4, 1) everywhere: D(k) = k below 1, S(k) = (4 - k)/3 above.
    out.emplace_back("linear-demand-limited",
                     triangular_fixture({0.4}, {1.3}, {{1.0}}));
    out.emplace_back("linear-supply-limited",
                     triangular_fixture({0.9}, {2.5}, {{1.0}}));
    out.emplace_back("linear-critical",
                     triangular_fixture({0.6}, {2.2}, {{1.0}}));
    out.emplace_back("merge",
                     triangular_fixture({0.6, 0.8}, {1.0}, {{1.0}, {1.0}}));
    out.emplace_back("diverge",
                     triangular_fixture({0.9}, {3.1, 2.5}, {{0.5, 0.5}}));
    out.emplace_back("cross-2x2",
                     triangular_fixture({0.5, 0.5}, {1.9, 1.9},
                                        {{0.8, 0.2}, {0.2, 0.8}}));
    return out;
}

}  // namespace kinwave::oracle
