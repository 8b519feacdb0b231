#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kinwave/common.hpp"

namespace kinwave {

/// An m-upstream x n-downstream junction: per-link capacities and the matrix
/// of turning proportions xi[a][b].  Rows must be strictly positive and sum
/// to one (within 1e-9); validate() then renormalizes each row exactly so
/// that junction conservation holds to machine precision downstream.
/// Zero turning proportions are rejected: the average-demand-level
/// denominators C_a xi[a][b] must stay positive.
struct JunctionSpec {
    std::vector<double> upstream_capacity;
    std::vector<double> downstream_capacity;
    std::vector<std::vector<double>> turning;

    std::size_t upstream_count() const { return upstream_capacity.size(); }
    std::size_t downstream_count() const { return downstream_capacity.size(); }

    /// C_{a->b} = C_a xi[a][b].
    double directed_capacity(std::size_t a, std::size_t b) const {
        return upstream_capacity[a] * turning[a][b];
    }

    /// Throws ValidationError on any malformed field; renormalizes rows.
    void validate();
    /// Validation without the renormalization side effect.
    void check() const;
};

/// Everything the critical-demand-level computation decides, kept for
/// inspection and for the downstream state classification.
struct CriticalLevelBreakdown {
    /// theta = min{max_a mu_a, g}; the level at which congested upstream
    /// links are throttled (f_a = min{d_a, theta C_a}).
    double theta = 0.0;
    /// g = min_b max_{A1} gamma_b(A1), the min-max critical demand level.
    double g = 0.0;
    double max_demand_level = 0.0;
    /// residue[b] = C_b nu_b - sum_a C_{a->b} mu_a.  Negative residue means
    /// downstream link b cannot absorb all upstream demand directed to it.
    std::vector<double> residue;
    /// The downstream link whose Gamma_b attains g, when g decides theta;
    /// empty when theta = max_a mu_a < g (no downstream link binds).
    std::optional<std::size_t> binding_b;
    /// A* = {a : mu_a > theta}; the upstream links throttled below demand.
    std::vector<std::size_t> congested_set;
    /// gamma_prefix[b][l-1] = gamma_b over the l largest-mu upstream links
    /// (global decreasing order of mu, ties broken by ascending index).
    std::vector<std::vector<double>> gamma_prefix;
};

struct FluxResult {
    std::vector<double> upstream_flux;
    std::vector<double> downstream_flux;
    CriticalLevelBreakdown breakdown;
    /// s_plus[a] = Theta C_a with Theta = g: the effective downstream supply
    /// seen by upstream link a, so that f_a = min{d_a, s_plus[a]}.
    std::vector<double> effective_supply;
    /// d_minus[b]: effective upstream demand of downstream link b, so that
    /// f_b = min{d_minus[b], s_b}.
    std::vector<double> effective_demand;
};

/// gamma_b(A1) = (C_b nu_b - sum_{a not in A1} C_{a->b} mu_a) / sum_{a in A1} C_{a->b}
/// for a non-empty subset A1 of upstream links.  Values may exceed 1 or be
/// negative; no clamping.  Throws ValidationError on an empty subset.
double average_demand_level(const JunctionSpec& junction,
                            const std::vector<double>& mu,
                            const std::vector<double>& nu,
                            std::size_t b,
                            const std::vector<std::size_t>& subset);

struct GammaStar {
    /// Gamma_b = max over non-empty subsets of gamma_b(A1).
    double max_level = 0.0;
    /// gamma_b over prefixes of the decreasing-mu order, length m.
    std::vector<double> prefix;
};

/// Maximum average demand level of downstream link b.  With mu sorted
/// decreasingly the subset maximum collapses to:
///   residue > 0: max over singletons (which exceeds max mu),
///   residue = 0: max mu,
///   residue < 0: max over sorted prefixes (the prefix sequence rises to a
///                unique peak and then falls).
GammaStar gamma_star(const JunctionSpec& junction,
                     const std::vector<double>& mu,
                     const std::vector<double>& nu,
                     std::size_t b);

/// The critical demand level of demand levels mu and supply levels nu.
/// When min_b residue < 0 the result is cross-checked against the value of
/// gamma at the returned congested set, which the min-max/max-min exchange
/// guarantees; a mismatch throws InvariantViolation.
CriticalLevelBreakdown critical_demand_level(const JunctionSpec& junction,
                                             const std::vector<double>& mu,
                                             const std::vector<double>& nu);

/// Boundary fluxes from upstream demands and downstream supplies:
///   f_a = min{d_a, theta C_a},   f_b = sum_a f_a xi[a][b].
/// Also fills the effective supply/demand decomposition and cross-checks
/// f_b = min{d_minus[b], s_b}.  Inputs must satisfy 0 <= d_a <= C_a and
/// 0 <= s_b <= C_b (tolerance 1e-9 relative); anything else is rejected,
/// not clamped.
FluxResult junction_flux(const JunctionSpec& junction,
                         const std::vector<double>& upstream_demand,
                         const std::vector<double>& downstream_supply);

/// The proportional-split flux
///   f_a = min{d_a, min_b s_b d_a / sum_alpha d_alpha xi[alpha][b]}
/// kept solely as a comparison model: it produces valid fluxes but is not
/// invariant under re-evaluation on interior states.  A downstream link with
/// zero directed demand imposes no restriction.
FluxResult noninvariant_flux(const JunctionSpec& junction,
                             const std::vector<double>& upstream_demand,
                             const std::vector<double>& downstream_supply);

namespace detail {
/// Indices 0..m-1 sorted by mu decreasing, ties by ascending index.
std::vector<std::size_t> decreasing_order(const std::vector<double>& mu);
/// Gamma_b for every b (shared sort), plus the assembled breakdown.
struct LevelAnalysis {
    CriticalLevelBreakdown breakdown;
    std::vector<double> gamma_max;  // Gamma_b per downstream link
};
LevelAnalysis analyze_levels(const JunctionSpec& junction,
                             const std::vector<double>& mu,
                             const std::vector<double>& nu);
}  // namespace detail

}  // namespace kinwave
