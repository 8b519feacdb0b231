#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kinwave/junction.hpp"
#include "kinwave/riemann.hpp"

namespace kinwave::oracle {

/// Both operator orders of the critical demand level, by enumerating every
/// non-empty upstream subset for every downstream link.  Capped at m <= 20.
struct ExhaustiveLevels {
    double min_max = 0.0;  // min over b of max over subsets
    double max_min = 0.0;  // max over subsets of min over b
    std::size_t argmin_b = 0;
    std::vector<std::size_t> arg_subset;  // maximizing subset of the argmin b
};

ExhaustiveLevels g_exhaustive(const JunctionSpec& junction,
                              const std::vector<double>& mu,
                              const std::vector<double>& nu);

/// One surviving candidate of the gridded stationary-state search.
struct StationaryCandidate {
    std::vector<double> upstream_flux;
    std::vector<double> downstream_flux;
    std::vector<TrafficState> states;     // per link, upstream first
    std::vector<double> densities;        // per link
    double witness_theta = 0.0;           // interior critical level that validated it
};

/// Brute-force stationary-state search, independent of the closed-form
/// solver: upstream boundary fluxes are gridded over [0, d_a] (which sweeps
/// the feasible stationary family of each upstream link), downstream fluxes
/// follow from junction conservation, and a candidate survives only if some
/// feasible interior state combination reproduces its fluxes through the
/// local flux rule f_a = min{d0_a, theta0 C_a}.  All comparisons use one grid
/// cell of slack, so the true solution is retained and survivors cluster
/// within a cell of it.  Works in densities so the demand/supply inverses are
/// exercised independently.  Caps: m+n <= 4 and grid <= 200 points.
std::vector<StationaryCandidate> stationary_exhaustive(const RiemannInput& input,
                                                       std::size_t grid_points);

/// Seeded random instances shared by the validation suite and the test
/// harness.
struct RandomInstance {
    JunctionSpec junction;
    std::vector<double> mu;
    std::vector<double> nu;
};
RandomInstance random_instance(std::mt19937_64& rng, std::size_t m, std::size_t n);
RiemannInput random_riemann_input(std::mt19937_64& rng, std::size_t m, std::size_t n);

struct SuiteCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<SuiteCheck> checks;
    bool all_pass() const;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    std::size_t instances_per_shape = 1000;  // for the level sweeps
    std::size_t riemann_samples = 300;
    std::size_t stationary_grid = 120;
};

/// The full oracle suite: prefix algorithm vs subset enumeration, min-max =
/// max-min under supply deficit, merge/diverge closed forms, Riemann
/// re-solve consistency, and the gridded stationary search on the canonical
/// single-junction fixtures.
SuiteReport run_validation_suite(const SuiteConfig& config);

/// The canonical single-junction fixtures used throughout the tests: three
/// linear regimes, a merge, a diverge, and a 2x2 crossing, all built on
/// Triangular(1, 4, 1) links.
std::vector<std::pair<std::string, RiemannInput>> special_case_fixtures();

}  // namespace kinwave::oracle
