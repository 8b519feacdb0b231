#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kinwave/fundamental_diagram.hpp"
#include "kinwave/junction.hpp"

namespace kinwave {

/// Piecewise-constant boundary profile: value(t) is the entry with the
/// largest start time <= t.  A single entry gives a constant profile.
struct BoundaryProfile {
    struct Piece {
        double start = 0.0;
        double value = 0.0;
    };
    std::vector<Piece> pieces;

    static BoundaryProfile constant(double value) { return {{{0.0, value}}}; }
    double at(double t) const;
    void validate() const;
};

struct LinkSpec {
    FundamentalDiagram fd;
    double length = 0.0;
    std::size_t cell_count = 0;
    /// One value (uniform) or one per cell.
    std::vector<double> initial_density;

    double cell_length() const { return length / static_cast<double>(cell_count); }
};

struct JunctionConnection {
    std::vector<std::size_t> upstream_links;
    std::vector<std::size_t> downstream_links;
    std::vector<std::vector<double>> turning;
};

struct OriginSpec {
    std::size_t link = 0;
    BoundaryProfile demand;
};

struct DestinationSpec {
    std::size_t link = 0;
    BoundaryProfile supply;
};

/// A link network discretized for Godunov time stepping.  Origins are demand
/// reservoirs feeding the upstream end of a link, destinations supply
/// reservoirs draining the downstream end; every link end must attach to
/// exactly one origin, destination, or junction side.  validate() checks the
/// graph, the profiles, and the CFL condition v_max dt <= dx on every link
/// (equality forgiven within 1e-9 relative), and rejects before any stepping.
struct NetworkScenario {
    std::vector<LinkSpec> links;
    std::vector<JunctionConnection> junctions;
    std::vector<OriginSpec> origins;
    std::vector<DestinationSpec> destinations;
    double dt = 0.0;
    double horizon = 0.0;
    std::size_t snapshot_stride = 1;

    void validate() const;
};

struct SimState {
    std::vector<std::vector<double>> density;  // [link][cell]
    std::vector<double> origin_inflow;         // cumulative vehicles, per origin
    std::vector<double> destination_outflow;   // cumulative vehicles, per destination
    double time = 0.0;
    std::uint64_t steps = 0;
};

struct JunctionFluxRecord {
    double time = 0.0;
    std::vector<double> upstream_flux;
    std::vector<double> downstream_flux;
};

struct Snapshot {
    double time = 0.0;
    std::vector<std::vector<double>> density;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::vector<std::vector<JunctionFluxRecord>> junction_flux;  // [junction][step]
    SimState final_state;
    double initial_vehicles = 0.0;
    /// |vehicles(T) + outflow - inflow - vehicles(0)|.
    double conservation_residual = 0.0;
};

class Simulator {
public:
    explicit Simulator(NetworkScenario scenario);

    const NetworkScenario& scenario() const { return scenario_; }
    const SimState& state() const { return state_; }
    const std::vector<JunctionSpec>& junction_specs() const { return junction_specs_; }

    /// One Godunov step: freeze every interface flux (interior upwind
    /// min{D, S}, junction coupling through junction_flux, reservoir
    /// boundaries), then update all cells.  Returns the junction fluxes of
    /// the step.
    std::vector<JunctionFluxRecord> step();

    double total_vehicles() const;
    double conservation_residual() const;

private:
    NetworkScenario scenario_;
    std::vector<JunctionSpec> junction_specs_;
    // link end wiring resolved at construction
    struct EndAttachment {
        enum class Kind { Origin, Destination, JunctionSide } kind;
        std::size_t index = 0;      // origin/destination/junction id
        std::size_t position = 0;   // slot within the junction side
    };
    std::vector<EndAttachment> upstream_end_;    // per link: feeds cell 0
    std::vector<EndAttachment> downstream_end_;  // per link: drains last cell
    SimState state_;
    double initial_vehicles_ = 0.0;
};

/// Repeated stepping to the horizon with snapshots every `snapshot_stride`
/// steps (the initial and final states are always included).
Trajectory run(const NetworkScenario& scenario);

}  // namespace kinwave
