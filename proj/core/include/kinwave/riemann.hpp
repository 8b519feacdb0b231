#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kinwave/fundamental_diagram.hpp"
#include "kinwave/junction.hpp"

namespace kinwave {

/// Initial data of the junction Riemann problem: one fundamental diagram and
/// one constant initial density per link, upstream links first.  The junction
/// capacities must match the diagrams' capacities.
struct RiemannInput {
    JunctionSpec junction;
    std::vector<FundamentalDiagram> diagrams;   // m upstream, then n downstream
    std::vector<double> initial_density;        // same order

    std::size_t link_count() const { return diagrams.size(); }
    bool is_upstream(std::size_t link) const { return link < junction.upstream_count(); }
    void validate() const;
};

enum class WaveKind { None, Shock, Rarefaction };

std::string to_string(WaveKind k);

/// The wave connecting two constant densities on one link.  A shock carries a
/// single Rankine-Hugoniot speed (speed_low == speed_high); a rarefaction the
/// characteristic speeds of its edges.
struct WaveDescription {
    WaveKind kind = WaveKind::None;
    double left_density = 0.0;
    double right_density = 0.0;
    double speed_low = 0.0;
    double speed_high = 0.0;
};

/// Riemann problem of the scalar conservation law on a single link with
/// left/right initial densities.  Equal densities give no wave; increasing
/// densities an entropy shock; decreasing densities a rarefaction whose edge
/// speeds are one-sided at the kink of a triangular law.
WaveDescription link_wave(const FundamentalDiagram& fd, double left_density,
                          double right_density);

struct LinkSolution {
    TrafficState initial;
    TrafficState stationary;
    double stationary_density = 0.0;
    /// Canonical interior state: equal to the stationary state on every link.
    TrafficState interior;
    /// True when the feasible interior family contains states other than the
    /// canonical one (upstream link at theta exactly, or downstream link
    /// saturated below capacity).
    bool interior_alternatives = false;
    WaveDescription wave;
};

struct RiemannSolution {
    FluxResult flux;
    std::vector<LinkSolution> links;   // upstream first, same order as input
    /// Re-solving from the stationary densities reproduces fluxes and
    /// stationary states (checked to 1e-10).
    bool consistent = false;
};

/// Full Riemann solution at the junction:
///  1. demands/supplies from the initial densities,
///  2. boundary fluxes through junction_flux,
///  3. stationary states per link (upstream: congested at (C_a, f_a) when
///     f_a < d_a, otherwise (d_a, C_a); downstream mirrored),
///  4. densities, waves and the consistency re-solve.
/// Upstream waves must not move forward nor downstream waves backward; a
/// violation beyond 1e-12 aborts with InvariantViolation.
RiemannSolution solve(const RiemannInput& input);

/// True iff solving again from the stationary densities returns the same
/// fluxes and stationary states within 1e-10.
bool check_consistency(const RiemannInput& input);

}  // namespace kinwave
