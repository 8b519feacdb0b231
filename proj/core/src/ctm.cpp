#include "kinwave/ctm.hpp"

#include <algorithm>
#include <cmath>

namespace kinwave {

double BoundaryProfile::at(double t) const {
    double value = 0.0;
    for (const Piece& p : pieces) {
        if (p.start > t) break;
        value = p.value;
    }
    return value;
}

void BoundaryProfile::validate() const {
    if (pieces.empty())
        throw ValidationError("boundary profile must have at least one piece");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!std::isfinite(pieces[i].value) || pieces[i].value < 0.0)
            throw ValidationError("boundary profile values must be non-negative");
        if (i > 0 && !(pieces[i].start > pieces[i - 1].start))
            throw ValidationError("boundary profile start times must be strictly increasing");
    }
}

void NetworkScenario::validate() const {
    if (links.empty()) throw ValidationError("scenario has no links");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ValidationError("horizon must be positive");
    if (snapshot_stride == 0) throw ValidationError("snapshot stride must be positive");

    for (std::size_t i = 0; i < links.size(); ++i) {
        const LinkSpec& link = links[i];
        if (!(link.length > 0.0)) throw ValidationError("link length must be positive");
        if (link.cell_count == 0) throw ValidationError("link needs at least one cell");
        if (link.initial_density.size() != 1 &&
            link.initial_density.size() != link.cell_count)
            throw ValidationError("initial density of link " + std::to_string(i) +
                                  " must be one value or one per cell");
        for (double k : link.initial_density)
            if (k < 0.0 || k > link.fd.jam_density())
                throw ValidationError("initial density of link " + std::to_string(i) +
                                      " outside [0, jam density]");
        // CFL, checked up front so a violation can never surface mid-run.
        const double dx = link.cell_length();
        if (link.fd.max_wave_speed() * dt > dx * (1.0 + kRelTol))
            throw ValidationError("CFL violated on link " + std::to_string(i) + ": v_max dt = " +
                                  std::to_string(link.fd.max_wave_speed() * dt) +
                                  " exceeds dx = " + std::to_string(dx));
    }

    // Each link end must have exactly one attachment.
    std::vector<int> head(links.size(), 0), tail(links.size(), 0);
    for (const OriginSpec& o : origins) {
        if (o.link >= links.size()) throw ValidationError("origin references unknown link");
        o.demand.validate();
        ++head[o.link];
    }
    for (const DestinationSpec& d : destinations) {
        if (d.link >= links.size()) throw ValidationError("destination references unknown link");
        d.supply.validate();
        ++tail[d.link];
    }
    for (const JunctionConnection& jc : junctions) {
        if (jc.upstream_links.empty() || jc.downstream_links.empty())
            throw ValidationError("junction needs upstream and downstream links");
        for (std::size_t l : jc.upstream_links) {
            if (l >= links.size()) throw ValidationError("junction references unknown link");
            ++tail[l];
        }
        for (std::size_t l : jc.downstream_links) {
            if (l >= links.size()) throw ValidationError("junction references unknown link");
            ++head[l];
        }
        JunctionSpec spec;
        for (std::size_t l : jc.upstream_links)
            spec.upstream_capacity.push_back(links[l].fd.capacity());
        for (std::size_t l : jc.downstream_links)
            spec.downstream_capacity.push_back(links[l].fd.capacity());
        spec.turning = jc.turning;
        spec.check();
    }
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (head[i] != 1)
            throw ValidationError("upstream end of link " + std::to_string(i) +
                                  " must attach to exactly one origin or junction");
        if (tail[i] != 1)
            throw ValidationError("downstream end of link " + std::to_string(i) +
                                  " must attach to exactly one destination or junction");
    }
}

Simulator::Simulator(NetworkScenario scenario) : scenario_(std::move(scenario)) {
    scenario_.validate();
    const std::size_t nlinks = scenario_.links.size();

    upstream_end_.resize(nlinks);
    downstream_end_.resize(nlinks);
    for (std::size_t i = 0; i < scenario_.origins.size(); ++i)
        upstream_end_[scenario_.origins[i].link] = {EndAttachment::Kind::Origin, i, 0};
    for (std::size_t i = 0; i < scenario_.destinations.size(); ++i)
        downstream_end_[scenario_.destinations[i].link] = {EndAttachment::Kind::Destination, i, 0};
    for (std::size_t jid = 0; jid < scenario_.junctions.size(); ++jid) {
        const JunctionConnection& jc = scenario_.junctions[jid];
        for (std::size_t pos = 0; pos < jc.upstream_links.size(); ++pos)
            downstream_end_[jc.upstream_links[pos]] = {EndAttachment::Kind::JunctionSide, jid, pos};
        for (std::size_t pos = 0; pos < jc.downstream_links.size(); ++pos)
            upstream_end_[jc.downstream_links[pos]] = {EndAttachment::Kind::JunctionSide, jid, pos};

        JunctionSpec spec;
        for (std::size_t l : jc.upstream_links)
            spec.upstream_capacity.push_back(scenario_.links[l].fd.capacity());
        for (std::size_t l : jc.downstream_links)
            spec.downstream_capacity.push_back(scenario_.links[l].fd.capacity());
        spec.turning = jc.turning;
        spec.validate();
        junction_specs_.push_back(std::move(spec));
    }

    state_.density.resize(nlinks);
    for (std::size_t i = 0; i < nlinks; ++i) {
        const LinkSpec& link = scenario_.links[i];
        if (link.initial_density.size() == 1)
            state_.density[i].assign(link.cell_count, link.initial_density[0]);
        else
            state_.density[i] = link.initial_density;
    }
    state_.origin_inflow.assign(scenario_.origins.size(), 0.0);
    state_.destination_outflow.assign(scenario_.destinations.size(), 0.0);
    initial_vehicles_ = total_vehicles();
}

double Simulator::total_vehicles() const {
    double total = 0.0;
    for (std::size_t i = 0; i < state_.density.size(); ++i) {
        const double dx = scenario_.links[i].cell_length();
        for (double k : state_.density[i]) total += k * dx;
    }
    return total;
}

double Simulator::conservation_residual() const {
    double in = 0.0, out = 0.0;
    for (double v : state_.origin_inflow) in += v;
    for (double v : state_.destination_outflow) out += v;
    return std::fabs(total_vehicles() + out - in - initial_vehicles_);
}

std::vector<JunctionFluxRecord> Simulator::step() {
    const double t = state_.time;
    const std::size_t nlinks = scenario_.links.size();

    // Phase 1: freeze all interface fluxes.
    std::vector<JunctionFluxRecord> junction_records(junction_specs_.size());
    for (std::size_t jid = 0; jid < junction_specs_.size(); ++jid) {
        const JunctionConnection& jc = scenario_.junctions[jid];
        std::vector<double> demands, supplies;
        demands.reserve(jc.upstream_links.size());
        supplies.reserve(jc.downstream_links.size());
        for (std::size_t l : jc.upstream_links)
            demands.push_back(scenario_.links[l].fd.demand(state_.density[l].back()));
        for (std::size_t l : jc.downstream_links)
            supplies.push_back(scenario_.links[l].fd.supply(state_.density[l].front()));
        FluxResult fr = junction_flux(junction_specs_[jid], demands, supplies);
        junction_records[jid] = {t, std::move(fr.upstream_flux), std::move(fr.downstream_flux)};
    }

    std::vector<std::vector<double>> interface_flux(nlinks);
    for (std::size_t i = 0; i < nlinks; ++i) {
        const LinkSpec& link = scenario_.links[i];
        const std::vector<double>& k = state_.density[i];
        std::vector<double>& flux = interface_flux[i];
        flux.resize(link.cell_count + 1);

        for (std::size_t c = 1; c < link.cell_count; ++c)
            flux[c] = std::min(link.fd.demand(k[c - 1]), link.fd.supply(k[c]));

        const EndAttachment& head = upstream_end_[i];
        if (head.kind == EndAttachment::Kind::Origin)
            flux[0] = std::min(scenario_.origins[head.index].demand.at(t),
                               link.fd.supply(k.front()));
        else
            flux[0] = junction_records[head.index].downstream_flux[head.position];

        const EndAttachment& tail = downstream_end_[i];
        if (tail.kind == EndAttachment::Kind::Destination)
            flux[link.cell_count] = std::min(link.fd.demand(k.back()),
                                             scenario_.destinations[tail.index].supply.at(t));
        else
            flux[link.cell_count] = junction_records[tail.index].upstream_flux[tail.position];
    }

    // Phase 2: conservative update of every cell.
    for (std::size_t i = 0; i < nlinks; ++i) {
        const LinkSpec& link = scenario_.links[i];
        const double ratio = scenario_.dt / link.cell_length();
        std::vector<double>& k = state_.density[i];
        const std::vector<double>& flux = interface_flux[i];
        for (std::size_t c = 0; c < link.cell_count; ++c) {
            double updated = k[c] + ratio * (flux[c] - flux[c + 1]);
            // Godunov under CFL keeps densities in range; only round-off may
            // leak past the bounds.
            const double jam = link.fd.jam_density();
            if (updated < 0.0 || updated > jam) {
                const double slack = kAbsTol + kRelTol * jam;
                if (updated < -slack || updated > jam + slack)
                    throw InvariantViolation("cell density left [0, jam density] on link " +
                                             std::to_string(i));
                updated = std::clamp(updated, 0.0, jam);
            }
            k[c] = updated;
        }
        const EndAttachment& head = upstream_end_[i];
        if (head.kind == EndAttachment::Kind::Origin)
            state_.origin_inflow[head.index] += flux[0] * scenario_.dt;
        const EndAttachment& tail = downstream_end_[i];
        if (tail.kind == EndAttachment::Kind::Destination)
            state_.destination_outflow[tail.index] += flux[link.cell_count] * scenario_.dt;
    }

    ++state_.steps;
    state_.time = static_cast<double>(state_.steps) * scenario_.dt;
    return junction_records;
}

Trajectory run(const NetworkScenario& scenario) {
    Simulator sim(scenario);
    const auto total_steps =
        static_cast<std::uint64_t>(std::floor(scenario.horizon / scenario.dt + 1e-9));

    Trajectory out;
    out.initial_vehicles = sim.total_vehicles();
    out.junction_flux.resize(scenario.junctions.size());
    out.snapshots.push_back({0.0, sim.state().density});

    for (std::uint64_t s = 0; s < total_steps; ++s) {
        auto records = sim.step();
        for (std::size_t jid = 0; jid < records.size(); ++jid)
            out.junction_flux[jid].push_back(std::move(records[jid]));
        if ((s + 1) % scenario.snapshot_stride == 0 || s + 1 == total_steps)
            out.snapshots.push_back({sim.state().time, sim.state().density});
    }

    out.final_state = sim.state();
    out.conservation_residual = sim.conservation_residual();
    return out;
}

}  // namespace kinwave
