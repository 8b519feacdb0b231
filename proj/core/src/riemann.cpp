#include "kinwave/riemann.hpp"

#include <cmath>

namespace kinwave {

namespace {
constexpr double kConsistencyTol = 1e-10;
constexpr double kWaveSpeedTol = 1e-12;
}  // namespace

std::string to_string(WaveKind k) {
    switch (k) {
        case WaveKind::None: return "none";
        case WaveKind::Shock: return "shock";
        case WaveKind::Rarefaction: return "rarefaction";
    }
    return "?";
}

void RiemannInput::validate() const {
    junction.check();
    const std::size_t m = junction.upstream_count();
    const std::size_t n = junction.downstream_count();
    if (diagrams.size() != m + n)
        throw ValidationError("riemann input: expected one fundamental diagram per link");
    if (initial_density.size() != m + n)
        throw ValidationError("riemann input: expected one initial density per link");
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
        const double cap = i < m ? junction.upstream_capacity[i]
                                 : junction.downstream_capacity[i - m];
        if (!nearly_equal(diagrams[i].capacity(), cap))
            throw ValidationError("riemann input: junction capacity of link " +
                                  std::to_string(i) + " (" + std::to_string(cap) +
                                  ") does not match its fundamental diagram (" +
                                  std::to_string(diagrams[i].capacity()) + ")");
        if (initial_density[i] < 0.0 || initial_density[i] > diagrams[i].jam_density())
            throw ValidationError("riemann input: initial density of link " +
                                  std::to_string(i) + " outside [0, jam density]");
    }
}

WaveDescription link_wave(const FundamentalDiagram& fd, double left, double right) {
    WaveDescription w;
    w.left_density = left;
    w.right_density = right;
    if (nearly_equal(left, right, kRelTol, kAbsTol * std::max(1.0, fd.jam_density()))) {
        w.kind = WaveKind::None;
        return w;
    }
    if (left < right) {
        w.kind = WaveKind::Shock;
        const double speed = (fd.flow(right) - fd.flow(left)) / (right - left);
        w.speed_low = w.speed_high = speed;
        return w;
    }
    w.kind = WaveKind::Rarefaction;
    // Densities decrease from left to right; edge derivatives are taken from
    // inside the fan, which picks the congested slope at the triangular kink
    // when approached from above.
    w.speed_low = fd.characteristic_speed(left, FundamentalDiagram::Side::Below);
    w.speed_high = fd.characteristic_speed(right, FundamentalDiagram::Side::Above);
    return w;
}

namespace {

struct CoreSolution {
    FluxResult flux;
    std::vector<LinkSolution> links;
};

/// When the stationary state coincides with the initial one, its density is
/// the initial density; going through the branch inverse would only add
/// round-off (which can masquerade as a tiny wrong-direction wave near the
/// critical density).
double stationary_density(const FundamentalDiagram& fd, const TrafficState& stationary,
                          const TrafficState& initial, double initial_density) {
    if (nearly_equal(stationary.demand, initial.demand) &&
        nearly_equal(stationary.supply, initial.supply))
        return initial_density;
    return fd.density_from_state(stationary);
}

CoreSolution solve_core(const RiemannInput& in) {
    const std::size_t m = in.junction.upstream_count();
    const std::size_t n = in.junction.downstream_count();

    std::vector<double> demand(m), supply(n);
    for (std::size_t a = 0; a < m; ++a)
        demand[a] = in.diagrams[a].demand(in.initial_density[a]);
    for (std::size_t b = 0; b < n; ++b)
        supply[b] = in.diagrams[m + b].supply(in.initial_density[m + b]);

    CoreSolution out;
    out.flux = junction_flux(in.junction, demand, supply);
    out.links.resize(m + n);

    for (std::size_t a = 0; a < m; ++a) {
        LinkSolution& link = out.links[a];
        const FundamentalDiagram& fd = in.diagrams[a];
        link.initial = fd.state(in.initial_density[a]);
        const double f = out.flux.upstream_flux[a];
        if (compare_tol(f, demand[a]) < 0) {
            // Throttled below demand: stationary congested at supply f.
            link.stationary = TrafficState{fd.capacity(), f};
        } else {
            link.stationary = TrafficState{demand[a], fd.capacity()};
            // Demand meeting the effective supply exactly admits interior
            // demands above d_a as well.
            link.interior_alternatives =
                nearly_equal(demand[a], out.flux.breakdown.g * fd.capacity());
        }
        link.interior = link.stationary;
        link.stationary_density = stationary_density(fd, link.stationary, link.initial,
                                                     in.initial_density[a]);
        link.wave = link_wave(fd, in.initial_density[a], link.stationary_density);
        if (link.wave.speed_high > kWaveSpeedTol)
            throw InvariantViolation("upstream wave on link " + std::to_string(a) +
                                     " moves forward (speed " +
                                     std::to_string(link.wave.speed_high) + ")");
    }

    for (std::size_t b = 0; b < n; ++b) {
        LinkSolution& link = out.links[m + b];
        const FundamentalDiagram& fd = in.diagrams[m + b];
        link.initial = fd.state(in.initial_density[m + b]);
        const double f = out.flux.downstream_flux[b];
        if (compare_tol(f, supply[b]) < 0) {
            link.stationary = TrafficState{f, fd.capacity()};
        } else {
            link.stationary = TrafficState{fd.capacity(), supply[b]};
            // Saturated below capacity admits interior demands above s_b.
            link.interior_alternatives = compare_tol(supply[b], fd.capacity()) < 0;
        }
        link.interior = link.stationary;
        link.stationary_density = stationary_density(fd, link.stationary, link.initial,
                                                     in.initial_density[m + b]);
        link.wave = link_wave(fd, link.stationary_density, in.initial_density[m + b]);
        if (link.wave.speed_low < -kWaveSpeedTol)
            throw InvariantViolation("downstream wave on link " + std::to_string(m + b) +
                                     " moves backward (speed " +
                                     std::to_string(link.wave.speed_low) + ")");
    }
    return out;
}

bool same_solution(const CoreSolution& lhs, const CoreSolution& rhs) {
    for (std::size_t a = 0; a < lhs.flux.upstream_flux.size(); ++a)
        if (std::fabs(lhs.flux.upstream_flux[a] - rhs.flux.upstream_flux[a]) > kConsistencyTol)
            return false;
    for (std::size_t b = 0; b < lhs.flux.downstream_flux.size(); ++b)
        if (std::fabs(lhs.flux.downstream_flux[b] - rhs.flux.downstream_flux[b]) > kConsistencyTol)
            return false;
    for (std::size_t i = 0; i < lhs.links.size(); ++i) {
        if (std::fabs(lhs.links[i].stationary.demand - rhs.links[i].stationary.demand) > kConsistencyTol)
            return false;
        if (std::fabs(lhs.links[i].stationary.supply - rhs.links[i].stationary.supply) > kConsistencyTol)
            return false;
    }
    return true;
}

}  // namespace

RiemannSolution solve(const RiemannInput& in) {
    in.validate();
    CoreSolution first = solve_core(in);

    RiemannInput again = in;
    for (std::size_t i = 0; i < first.links.size(); ++i)
        again.initial_density[i] = first.links[i].stationary_density;
    CoreSolution second = solve_core(again);

    RiemannSolution out;
    out.consistent = same_solution(first, second);
    out.flux = std::move(first.flux);
    out.links = std::move(first.links);
    return out;
}

bool check_consistency(const RiemannInput& in) {
    return solve(in).consistent;
}

}  // namespace kinwave
