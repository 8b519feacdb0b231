#include "kinwave/junction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kinwave {

namespace {

void check_level_vector(const std::vector<double>& v, std::size_t expected,
                        const char* name) {
    if (v.size() != expected)
        throw ValidationError(std::string(name) + ": expected " +
                              std::to_string(expected) + " entries, got " +
                              std::to_string(v.size()));
    for (double x : v) {
        if (!std::isfinite(x) || x < -kAbsTol || x > 1.0 + kRelTol)
            throw ValidationError(std::string(name) + " level " + std::to_string(x) +
                                  " outside [0, 1]");
    }
}

}  // namespace

void JunctionSpec::check() const {
    const std::size_t m = upstream_count();
    const std::size_t n = downstream_count();
    if (m == 0 || n == 0)
        throw ValidationError("junction needs at least one upstream and one downstream link");
    for (double c : upstream_capacity)
        if (!(c > 0.0) || !std::isfinite(c))
            throw ValidationError("upstream capacities must be strictly positive");
    for (double c : downstream_capacity)
        if (!(c > 0.0) || !std::isfinite(c))
            throw ValidationError("downstream capacities must be strictly positive");
    if (turning.size() != m)
        throw ValidationError("turning matrix must have one row per upstream link");
    for (std::size_t a = 0; a < m; ++a) {
        if (turning[a].size() != n)
            throw ValidationError("turning row " + std::to_string(a) +
                                  " must have one entry per downstream link");
        double row_sum = 0.0;
        for (double xi : turning[a]) {
            if (!(xi > 0.0) || !std::isfinite(xi))
                throw ValidationError("turning proportions must be strictly positive "
                                      "(row " + std::to_string(a) + ")");
            row_sum += xi;
        }
        if (std::fabs(row_sum - 1.0) > kRelTol)
            throw ValidationError("turning row " + std::to_string(a) + " sums to " +
                                  std::to_string(row_sum) + ", expected 1");
    }
}

void JunctionSpec::validate() {
    check();
    for (auto& row : turning) {
        const double row_sum = std::accumulate(row.begin(), row.end(), 0.0);
        for (double& xi : row) xi /= row_sum;
    }
}

double average_demand_level(const JunctionSpec& j,
                            const std::vector<double>& mu,
                            const std::vector<double>& nu,
                            std::size_t b,
                            const std::vector<std::size_t>& subset) {
    const std::size_t m = j.upstream_count();
    check_level_vector(mu, m, "demand");
    check_level_vector(nu, j.downstream_count(), "supply");
    if (b >= j.downstream_count())
        throw ValidationError("downstream index out of range");
    if (subset.empty())
        throw ValidationError("average demand level needs a non-empty upstream subset");

    std::vector<bool> in_subset(m, false);
    for (std::size_t a : subset) {
        if (a >= m) throw ValidationError("upstream index out of range");
        in_subset[a] = true;
    }
    double numerator = j.downstream_capacity[b] * nu[b];
    double denominator = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        if (in_subset[a])
            denominator += j.directed_capacity(a, b);
        else
            numerator -= j.directed_capacity(a, b) * mu[a];
    }
    return numerator / denominator;
}

namespace detail {

std::vector<std::size_t> decreasing_order(const std::vector<double>& mu) {
    std::vector<std::size_t> order(mu.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t lhs, std::size_t rhs) { return mu[lhs] > mu[rhs]; });
    return order;
}

namespace {

GammaStar gamma_star_ordered(const JunctionSpec& j,
                             const std::vector<double>& mu,
                             const std::vector<double>& nu,
                             std::size_t b,
                             const std::vector<std::size_t>& order) {
    const std::size_t m = j.upstream_count();
    double residue = j.downstream_capacity[b] * nu[b];
    for (std::size_t a = 0; a < m; ++a)
        residue -= j.directed_capacity(a, b) * mu[a];

    GammaStar out;
    out.prefix.resize(m);
    // gamma over the prefix {order[0..l-1]} equals
    // (residue + sum_prefix C_{a->b} mu_a) / sum_prefix C_{a->b}.
    double cap_sum = 0.0;
    double weighted_sum = 0.0;
    double prefix_max = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < m; ++l) {
        const std::size_t a = order[l];
        cap_sum += j.directed_capacity(a, b);
        weighted_sum += j.directed_capacity(a, b) * mu[a];
        out.prefix[l] = (residue + weighted_sum) / cap_sum;
        prefix_max = std::max(prefix_max, out.prefix[l]);
    }

    if (residue > 0.0) {
        // Subset maximum sits on a singleton and exceeds every mu.
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < m; ++a)
            best = std::max(best, mu[a] + residue / j.directed_capacity(a, b));
        out.max_level = best;
    } else if (residue == 0.0) {
        out.max_level = *std::max_element(mu.begin(), mu.end());
    } else {
        out.max_level = prefix_max;
    }
    return out;
}

}  // namespace

LevelAnalysis analyze_levels(const JunctionSpec& j,
                             const std::vector<double>& mu,
                             const std::vector<double>& nu) {
    const std::size_t m = j.upstream_count();
    const std::size_t n = j.downstream_count();
    check_level_vector(mu, m, "demand");
    check_level_vector(nu, n, "supply");

    const auto order = decreasing_order(mu);

    LevelAnalysis out;
    out.gamma_max.resize(n);
    out.breakdown.residue.resize(n);
    out.breakdown.gamma_prefix.resize(n);

    for (std::size_t b = 0; b < n; ++b) {
        double residue = j.downstream_capacity[b] * nu[b];
        for (std::size_t a = 0; a < m; ++a)
            residue -= j.directed_capacity(a, b) * mu[a];
        out.breakdown.residue[b] = residue;

        GammaStar gs = gamma_star_ordered(j, mu, nu, b, order);
        out.gamma_max[b] = gs.max_level;
        out.breakdown.gamma_prefix[b] = std::move(gs.prefix);
    }

    const double max_mu = *std::max_element(mu.begin(), mu.end());
    const auto min_it = std::min_element(out.gamma_max.begin(), out.gamma_max.end());
    const double g = *min_it;

    auto& bd = out.breakdown;
    bd.g = g;
    bd.max_demand_level = max_mu;
    bd.theta = std::min(max_mu, g);
    if (g <= max_mu)
        bd.binding_b = static_cast<std::size_t>(min_it - out.gamma_max.begin());
    for (std::size_t a = 0; a < m; ++a)
        if (mu[a] > bd.theta) bd.congested_set.push_back(a);

    const double min_residue = *std::min_element(bd.residue.begin(), bd.residue.end());
    if (min_residue < 0.0 && !bd.congested_set.empty()) {
        // With a supply deficit the min over b of gamma_b(A*) must reproduce
        // g: this is the min-max = max-min exchange at the unique congested
        // set.  Scale the comparison by capacity so levels near 0 still pass.
        double min_gamma = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < n; ++b)
            min_gamma = std::min(min_gamma, average_demand_level(j, mu, nu, b,
                                                                 bd.congested_set));
        if (!nearly_equal(min_gamma, g, kRelTol, kRelTol))
            throw InvariantViolation(
                "critical demand level: gamma at the congested set (" +
                std::to_string(min_gamma) + ") does not reproduce the min-max value (" +
                std::to_string(g) + ")");
    }
    return out;
}

}  // namespace detail

GammaStar gamma_star(const JunctionSpec& j,
                     const std::vector<double>& mu,
                     const std::vector<double>& nu,
                     std::size_t b) {
    check_level_vector(mu, j.upstream_count(), "demand");
    check_level_vector(nu, j.downstream_count(), "supply");
    if (b >= j.downstream_count())
        throw ValidationError("downstream index out of range");
    return detail::gamma_star_ordered(j, mu, nu, b, detail::decreasing_order(mu));
}

CriticalLevelBreakdown critical_demand_level(const JunctionSpec& j,
                                             const std::vector<double>& mu,
                                             const std::vector<double>& nu) {
    return detail::analyze_levels(j, mu, nu).breakdown;
}

namespace {

void check_flux_inputs(const JunctionSpec& j,
                       const std::vector<double>& d,
                       const std::vector<double>& s) {
    const std::size_t m = j.upstream_count();
    const std::size_t n = j.downstream_count();
    if (d.size() != m)
        throw ValidationError("expected " + std::to_string(m) + " upstream demands");
    if (s.size() != n)
        throw ValidationError("expected " + std::to_string(n) + " downstream supplies");
    for (std::size_t a = 0; a < m; ++a) {
        if (!std::isfinite(d[a]) || d[a] < -kAbsTol)
            throw ValidationError("negative upstream demand");
        if (d[a] > j.upstream_capacity[a] * (1.0 + kRelTol) + kAbsTol)
            throw ValidationError("demand " + std::to_string(d[a]) +
                                  " exceeds capacity of upstream link " + std::to_string(a));
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (!std::isfinite(s[b]) || s[b] < -kAbsTol)
            throw ValidationError("negative downstream supply");
        if (s[b] > j.downstream_capacity[b] * (1.0 + kRelTol) + kAbsTol)
            throw ValidationError("supply " + std::to_string(s[b]) +
                                  " exceeds capacity of downstream link " + std::to_string(b));
    }
}

std::vector<double> to_levels(const std::vector<double>& values,
                              const std::vector<double>& capacities) {
    std::vector<double> levels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        levels[i] = std::clamp(values[i] / capacities[i], 0.0, 1.0);
    return levels;
}

std::vector<double> distribute_downstream(const JunctionSpec& j,
                                          const std::vector<double>& up_flux) {
    std::vector<double> down(j.downstream_count(), 0.0);
    for (std::size_t a = 0; a < j.upstream_count(); ++a)
        for (std::size_t b = 0; b < j.downstream_count(); ++b)
            down[b] += up_flux[a] * j.turning[a][b];
    return down;
}

}  // namespace

FluxResult junction_flux(const JunctionSpec& j,
                         const std::vector<double>& d,
                         const std::vector<double>& s) {
    j.check();
    check_flux_inputs(j, d, s);
    const std::size_t m = j.upstream_count();
    const std::size_t n = j.downstream_count();

    auto analysis = detail::analyze_levels(j, to_levels(d, j.upstream_capacity),
                                           to_levels(s, j.downstream_capacity));
    const double theta = analysis.breakdown.theta;

    FluxResult out;
    out.breakdown = std::move(analysis.breakdown);
    out.upstream_flux.resize(m);
    for (std::size_t a = 0; a < m; ++a)
        out.upstream_flux[a] = std::min(d[a], theta * j.upstream_capacity[a]);
    out.downstream_flux = distribute_downstream(j, out.upstream_flux);

    out.effective_supply.resize(m);
    for (std::size_t a = 0; a < m; ++a)
        out.effective_supply[a] = out.breakdown.g * j.upstream_capacity[a];

    out.effective_demand.resize(n);
    for (std::size_t b = 0; b < n; ++b) {
        // Theta_{-b}: the binding level among the other downstream links;
        // with a single downstream link nothing else binds, so 1.
        double theta_minus = 1.0;
        if (n > 1) {
            theta_minus = std::numeric_limits<double>::infinity();
            for (std::size_t beta = 0; beta < n; ++beta)
                if (beta != b) theta_minus = std::min(theta_minus, analysis.gamma_max[beta]);
        }
        double effective = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            effective += std::min(d[a], theta_minus * j.upstream_capacity[a]) * j.turning[a][b];
        out.effective_demand[b] = effective;

        const double via_effective = std::min(effective, s[b]);
        if (!nearly_equal(out.downstream_flux[b], via_effective, kRelTol,
                          kAbsTol + kRelTol * j.downstream_capacity[b]))
            throw InvariantViolation(
                "junction flux: in-flux of downstream link " + std::to_string(b) + " (" +
                std::to_string(out.downstream_flux[b]) +
                ") disagrees with min{effective demand, supply} = " +
                std::to_string(via_effective));
    }
    return out;
}

FluxResult noninvariant_flux(const JunctionSpec& j,
                             const std::vector<double>& d,
                             const std::vector<double>& s) {
    j.check();
    check_flux_inputs(j, d, s);
    const std::size_t m = j.upstream_count();
    const std::size_t n = j.downstream_count();

    std::vector<double> directed_demand(n, 0.0);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < m; ++a)
            directed_demand[b] += d[a] * j.turning[a][b];

    FluxResult out;
    out.upstream_flux.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        double f = d[a];
        for (std::size_t b = 0; b < n; ++b) {
            if (directed_demand[b] <= 0.0) continue;  // no competition, no restriction
            f = std::min(f, s[b] * d[a] / directed_demand[b]);
        }
        out.upstream_flux[a] = f;
    }
    out.downstream_flux = distribute_downstream(j, out.upstream_flux);

    // The level analysis of the inputs is still well-defined and useful for
    // comparison; only the flux rule differs, so the effective-demand
    // cross-check of the invariant model is not enforced here.
    auto analysis = detail::analyze_levels(j, to_levels(d, j.upstream_capacity),
                                           to_levels(s, j.downstream_capacity));
    out.breakdown = std::move(analysis.breakdown);
    out.effective_supply.resize(m);
    for (std::size_t a = 0; a < m; ++a)
        out.effective_supply[a] = out.breakdown.g * j.upstream_capacity[a];
    out.effective_demand.resize(n);
    for (std::size_t b = 0; b < n; ++b) {
        double theta_minus = 1.0;
        if (n > 1) {
            theta_minus = std::numeric_limits<double>::infinity();
            for (std::size_t beta = 0; beta < n; ++beta)
                if (beta != b) theta_minus = std::min(theta_minus, analysis.gamma_max[beta]);
        }
        double effective = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            effective += std::min(d[a], theta_minus * j.upstream_capacity[a]) * j.turning[a][b];
        out.effective_demand[b] = effective;
    }
    return out;
}

}  // namespace kinwave
