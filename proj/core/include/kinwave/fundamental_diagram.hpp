#pragma once

#include <string>

#include "kinwave/common.hpp"

namespace kinwave {

enum class Regime { SUC, C, SOC };

std::string to_string(Regime r);

/// A traffic state in demand-supply coordinates, U = (d, s).
/// For a state belonging to a link with capacity C, max{d, s} = C and the
/// flow-rate through the state is min{d, s}.
struct TrafficState {
    double demand = 0.0;
    double supply = 0.0;

    double flow() const { return std::min(demand, supply); }

    /// SUC if d < s, C if d == s, SOC if d > s (shared tolerance).
    Regime regime() const {
        int c = compare_tol(demand, supply);
        return c < 0 ? Regime::SUC : (c == 0 ? Regime::C : Regime::SOC);
    }
    bool under_critical() const { return compare_tol(demand, supply) <= 0; }
    bool over_critical() const { return compare_tol(demand, supply) >= 0; }
};

/// Flow-density law of one link: unimodal Q(k) on [0, k_jam] with maximum
/// (capacity) at the critical density, plus the demand/supply decomposition
///   D(k) = Q(min{k, k_crit}),  S(k) = Q(max{k, k_crit})
/// and its closed-form inverses. Two families are supported:
///   Triangular    - Q piecewise linear, slopes v_free and -C/(k_jam - k_crit)
///   Greenshields  - Q(k) = v_free k (1 - k/k_jam), k_crit = k_jam/2
/// Both have d/s strictly increasing in k, so a (d, s) pair identifies the
/// density uniquely; flat-capacity (plateau) laws are not representable here.
class FundamentalDiagram {
public:
    enum class Kind { Triangular, Greenshields };

    static FundamentalDiagram triangular(double free_flow_speed, double jam_density,
                                         double critical_density);
    static FundamentalDiagram greenshields(double free_flow_speed, double jam_density);

    Kind kind() const { return kind_; }
    double free_flow_speed() const { return vf_; }
    double jam_density() const { return kj_; }
    double critical_density() const { return kc_; }
    double capacity() const { return cap_; }

    /// Q(k). Throws ValidationError for k outside [0, k_jam].
    double flow(double density) const;
    /// D(k) = Q(min{k, k_crit}), non-decreasing in k.
    double demand(double density) const;
    /// S(k) = Q(max{k, k_crit}), non-increasing in k.
    double supply(double density) const;
    /// (D(k), S(k)) in one call.
    TrafficState state(double density) const;

    /// Unique k with D(k) = U.d and S(k) = U.s.  Under-critical states invert
    /// the demand branch, over-critical ones the supply branch.  Throws
    /// ValidationError if max{d, s} differs from the capacity beyond tolerance.
    double density_from_state(const TrafficState& state) const;

    /// Inverse of the demand branch on [0, k_crit]; flow value in [0, C].
    double demand_inverse(double flow_value) const;
    /// Inverse of the supply branch on [k_crit, k_jam]; flow value in [0, C].
    double supply_inverse(double flow_value) const;

    /// One-sided characteristic speed Q'(k).  The side only matters at the
    /// kink of the triangular law: below gives the free-flow slope, above the
    /// congested slope.
    enum class Side { Below, Above };
    double characteristic_speed(double density, Side side) const;

    /// max_k |Q'(k)|, the CFL-relevant speed.
    double max_wave_speed() const;

    bool operator==(const FundamentalDiagram&) const = default;

private:
    FundamentalDiagram(Kind kind, double vf, double kj, double kc);

    void check_density(double k) const;

    Kind kind_;
    double vf_;
    double kj_;
    double kc_;
    double cap_;
};

}  // namespace kinwave
