#include "kinwave/fundamental_diagram.hpp"

#include <cmath>

namespace kinwave {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::SUC: return "SUC";
        case Regime::C: return "C";
        case Regime::SOC: return "SOC";
    }
    return "?";
}

FundamentalDiagram::FundamentalDiagram(Kind kind, double vf, double kj, double kc)
    : kind_(kind), vf_(vf), kj_(kj), kc_(kc) {
    if (!(vf_ > 0.0) || !std::isfinite(vf_))
        throw ValidationError("fundamental diagram: free-flow speed must be positive");
    if (!(kj_ > 0.0) || !std::isfinite(kj_))
        throw ValidationError("fundamental diagram: jam density must be positive");
    if (!(kc_ > 0.0) || !(kc_ < kj_))
        throw ValidationError("fundamental diagram: critical density must lie strictly inside (0, jam density)");
    cap_ = kind_ == Kind::Triangular ? vf_ * kc_ : vf_ * kj_ / 4.0;
}

FundamentalDiagram FundamentalDiagram::triangular(double vf, double kj, double kc) {
    return FundamentalDiagram(Kind::Triangular, vf, kj, kc);
}

FundamentalDiagram FundamentalDiagram::greenshields(double vf, double kj) {
    return FundamentalDiagram(Kind::Greenshields, vf, kj, kj / 2.0);
}

void FundamentalDiagram::check_density(double k) const {
    if (!std::isfinite(k) || k < 0.0 || k > kj_)
        throw ValidationError("density " + std::to_string(k) + " outside [0, " +
                              std::to_string(kj_) + "]");
}

double FundamentalDiagram::flow(double k) const {
    check_density(k);
    if (kind_ == Kind::Triangular)
        return k <= kc_ ? vf_ * k : cap_ * (kj_ - k) / (kj_ - kc_);
    return vf_ * k * (1.0 - k / kj_);
}

double FundamentalDiagram::demand(double k) const {
    check_density(k);
    return flow(std::min(k, kc_));
}

double FundamentalDiagram::supply(double k) const {
    check_density(k);
    return flow(std::max(k, kc_));
}

TrafficState FundamentalDiagram::state(double k) const {
    return TrafficState{demand(k), supply(k)};
}

double FundamentalDiagram::demand_inverse(double q) const {
    if (!std::isfinite(q) || q < -kAbsTol || q > cap_ * (1.0 + kRelTol) + kAbsTol)
        throw ValidationError("demand value outside [0, capacity]");
    q = std::clamp(q, 0.0, cap_);
    if (kind_ == Kind::Triangular) return q / vf_;
    // Free branch of v k (1 - k/kj) = q, the root below kj/2.
    return kj_ / 2.0 * (1.0 - std::sqrt(std::max(0.0, 1.0 - q / cap_)));
}

double FundamentalDiagram::supply_inverse(double q) const {
    if (!std::isfinite(q) || q < -kAbsTol || q > cap_ * (1.0 + kRelTol) + kAbsTol)
        throw ValidationError("supply value outside [0, capacity]");
    q = std::clamp(q, 0.0, cap_);
    if (kind_ == Kind::Triangular) return kj_ - q * (kj_ - kc_) / cap_;
    // Congested branch, the root above kj/2.
    return kj_ / 2.0 * (1.0 + std::sqrt(std::max(0.0, 1.0 - q / cap_)));
}

double FundamentalDiagram::density_from_state(const TrafficState& u) const {
    if (!std::isfinite(u.demand) || !std::isfinite(u.supply) ||
        u.demand < -kAbsTol || u.supply < -kAbsTol)
        throw ValidationError("traffic state has negative or non-finite components");
    if (!nearly_equal(std::max(u.demand, u.supply), cap_))
        throw ValidationError("inconsistent traffic state: max{d, s} = " +
                              std::to_string(std::max(u.demand, u.supply)) +
                              " does not match capacity " + std::to_string(cap_));
    switch (u.regime()) {
        case Regime::SUC: return demand_inverse(u.demand);
        case Regime::SOC: return supply_inverse(u.supply);
        case Regime::C: return kc_;
    }
    return kc_;
}

double FundamentalDiagram::characteristic_speed(double k, Side side) const {
    check_density(k);
    if (kind_ == Kind::Greenshields) return vf_ * (1.0 - 2.0 * k / kj_);
    const double congested_slope = -cap_ / (kj_ - kc_);
    if (k < kc_) return vf_;
    if (k > kc_) return congested_slope;
    return side == Side::Below ? vf_ : congested_slope;
}

double FundamentalDiagram::max_wave_speed() const {
    if (kind_ == Kind::Greenshields) return vf_;
    return std::max(vf_, cap_ / (kj_ - kc_));
}

}  // namespace kinwave
