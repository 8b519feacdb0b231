#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "kinwave/junction.hpp"
#include "kinwave/oracle.hpp"

using namespace kinwave;

namespace {

JunctionSpec make_junction(std::vector<double> up, std::vector<double> down,
                           std::vector<std::vector<double>> turning) {
    JunctionSpec j;
    j.upstream_capacity = std::move(up);
    j.downstream_capacity = std::move(down);
    j.turning = std::move(turning);
    j.validate();
    return j;
}

const JunctionSpec remark = make_junction({1, 1}, {1, 1}, {{0.8, 0.2}, {0.2, 0.8}});
const JunctionSpec merge = make_junction({1, 1}, {1}, {{1.0}, {1.0}});
const JunctionSpec diverge = make_junction({1}, {1, 1}, {{0.5, 0.5}});

}  // namespace

TEST_CASE("average demand level on the remark instance") {
    const std::vector<double> mu{0.5, 0.5}, nu{0.7, 0.7};
    CHECK(average_demand_level(remark, mu, nu, 0, {1}) ==
          doctest::Approx(1.5).epsilon(1e-13));
    CHECK(average_demand_level(remark, mu, nu, 0, {0}) ==
          doctest::Approx(0.75).epsilon(1e-13));
    CHECK(average_demand_level(remark, mu, nu, 0, {0, 1}) ==
          doctest::Approx(0.7).epsilon(1e-13));
    CHECK(average_demand_level(remark, {0, 0}, {0, 0}, 1, {0, 1}) == 0.0);
    CHECK_THROWS_AS(average_demand_level(remark, mu, nu, 0, {}), ValidationError);
    CHECK_THROWS_AS(average_demand_level(remark, mu, nu, 5, {0}), ValidationError);
}

TEST_CASE("gamma star prefix structure on a merge") {
    // Downstream capacity 2 with supply 1.0; the sorted prefixes are
    // (1.0 - 0.6)/1 and 1.0/2, peaking at the full set.
    const JunctionSpec j = make_junction({1, 1}, {2}, {{1.0}, {1.0}});
    const GammaStar gs = gamma_star(j, {0.8, 0.6}, {0.5}, 0);
    REQUIRE(gs.prefix.size() == 2);
    CHECK(gs.prefix[0] == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(gs.prefix[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(gs.max_level == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("gamma star matches the residue trichotomy") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const auto inst = oracle::random_instance(rng, 1 + trial % 6, 1 + trial % 3);
        const std::size_t m = inst.junction.upstream_count();
        const double max_mu = *std::max_element(inst.mu.begin(), inst.mu.end());
        for (std::size_t b = 0; b < inst.junction.downstream_count(); ++b) {
            double residue = inst.junction.downstream_capacity[b] * inst.nu[b];
            for (std::size_t a = 0; a < m; ++a)
                residue -= inst.junction.directed_capacity(a, b) * inst.mu[a];
            const GammaStar gs = gamma_star(inst.junction, inst.mu, inst.nu, b);
            if (residue > 1e-12) CHECK(gs.max_level > max_mu);
            if (residue < -1e-12) CHECK(gs.max_level < max_mu + 1e-12);
        }
    }
}

TEST_CASE("gamma star with zero residue returns the top demand level") {
    // nu chosen so that C_b nu_b equals the directed demand exactly.
    JunctionSpec j = make_junction({1, 2}, {2}, {{1.0}, {1.0}});
    const std::vector<double> mu{0.7, 0.4};
    const double directed = 1.0 * 0.7 + 2.0 * 0.4;
    const GammaStar gs = gamma_star(j, mu, {directed / 2.0}, 0);
    CHECK(gs.max_level == doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("critical demand level on the remark instance") {
    const auto bd = critical_demand_level(remark, {0.5, 0.5}, {0.7, 0.7});
    CHECK(bd.g == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(bd.theta == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(bd.congested_set.empty());
    CHECK_FALSE(bd.binding_b.has_value());
    REQUIRE(bd.residue.size() == 2);
    CHECK(bd.residue[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(bd.residue[1] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("critical demand level on the merge example") {
    const auto bd = critical_demand_level(merge, {0.6, 0.8}, {1.0});
    CHECK(bd.theta == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(bd.congested_set == std::vector<std::size_t>{0, 1});
    REQUIRE(bd.binding_b.has_value());
    CHECK(*bd.binding_b == 0);
    // the independent enumeration agrees
    const auto exact = oracle::g_exhaustive(merge, {0.6, 0.8}, {1.0});
    CHECK(bd.g == doctest::Approx(exact.min_max).epsilon(1e-13));
}

TEST_CASE("zero demand gives zero critical level") {
    const auto bd = critical_demand_level(remark, {0.0, 0.0}, {0.4, 0.9});
    CHECK(bd.theta == 0.0);
    CHECK(bd.congested_set.empty());
}

TEST_CASE("flux on the linear junction") {
    const JunctionSpec linear = make_junction({1}, {1}, {{1.0}});
    const FluxResult fr = junction_flux(linear, {0.8}, {0.6});
    CHECK(fr.upstream_flux[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(fr.downstream_flux[0] == doctest::Approx(0.6).epsilon(1e-14));
    // effective supply of link 1 is s_2, effective demand of link 2 is d_1
    CHECK(fr.effective_supply[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(fr.effective_demand[0] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("flux on the merge example matches the fair-merge form") {
    const FluxResult fr = junction_flux(merge, {0.6, 0.8}, {1.0});
    CHECK(fr.upstream_flux[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(fr.upstream_flux[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(fr.downstream_flux[0] == doctest::Approx(1.0).epsilon(1e-13));
    const double q1 = std::min(0.6, std::max(1.0 - 0.8, 0.5 * 1.0));
    CHECK(fr.upstream_flux[0] == doctest::Approx(q1).epsilon(1e-13));
    CHECK(fr.effective_demand[0] == doctest::Approx(0.6 + 0.8).epsilon(1e-13));
}

TEST_CASE("flux on the diverge example") {
    const FluxResult fr = junction_flux(diverge, {0.9}, {0.3, 0.5});
    CHECK(fr.upstream_flux[0] == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(fr.downstream_flux[0] == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(fr.downstream_flux[1] == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(fr.breakdown.theta == doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("zero demands give zero fluxes") {
    const FluxResult fr = junction_flux(remark, {0.0, 0.0}, {0.7, 0.7});
    for (double f : fr.upstream_flux) CHECK(f == 0.0);
    for (double f : fr.downstream_flux) CHECK(f == 0.0);
}

TEST_CASE("flux input validation") {
    CHECK_THROWS_AS(junction_flux(merge, {1.2, 0.5}, {1.0}), ValidationError);
    CHECK_THROWS_AS(junction_flux(merge, {-0.1, 0.5}, {1.0}), ValidationError);
    CHECK_THROWS_AS(junction_flux(merge, {0.5, 0.5}, {1.2}), ValidationError);
    CHECK_THROWS_AS(junction_flux(merge, {0.5}, {1.0}), ValidationError);
}

TEST_CASE("junction validation") {
    CHECK_THROWS_AS(make_junction({1}, {1, 1}, {{1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(make_junction({1}, {1, 1}, {{0.5, 0.4}}), ValidationError);
    CHECK_THROWS_AS(make_junction({0.0}, {1}, {{1.0}}), ValidationError);
    CHECK_THROWS_AS(make_junction({1}, {}, {{}}), ValidationError);
}

TEST_CASE("conservation and bounds on random instances") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> m_dist(1, 6), n_dist(1, 4);
    for (int trial = 0; trial < 1500; ++trial) {
        const auto inst = oracle::random_instance(rng, m_dist(rng), n_dist(rng));
        std::vector<double> d(inst.mu.size()), s(inst.nu.size());
        for (std::size_t a = 0; a < d.size(); ++a)
            d[a] = inst.mu[a] * inst.junction.upstream_capacity[a];
        for (std::size_t b = 0; b < s.size(); ++b)
            s[b] = inst.nu[b] * inst.junction.downstream_capacity[b];
        const FluxResult fr = junction_flux(inst.junction, d, s);

        double in = 0.0, out = 0.0;
        for (double f : fr.upstream_flux) in += f;
        for (double f : fr.downstream_flux) out += f;
        CHECK(std::fabs(in - out) <= 1e-12 * std::max(1.0, in));

        for (std::size_t a = 0; a < d.size(); ++a) {
            CHECK(fr.upstream_flux[a] >= 0.0);
            CHECK(fr.upstream_flux[a] <= d[a] + 1e-12);
        }
        for (std::size_t b = 0; b < s.size(); ++b) {
            CHECK(fr.downstream_flux[b] >= 0.0);
            CHECK(fr.downstream_flux[b] <= s[b] + 1e-12);
        }
        CHECK(fr.breakdown.theta >= 0.0);
        CHECK(fr.breakdown.theta <=
              *std::max_element(inst.mu.begin(), inst.mu.end()) + 1e-12);
        // the effective-demand decomposition reproduces every downstream flux
        for (std::size_t b = 0; b < s.size(); ++b)
            CHECK(std::fabs(fr.downstream_flux[b] -
                            std::min(fr.effective_demand[b], s[b])) <= 1e-9);
    }
}

TEST_CASE("prefix algorithm equals subset enumeration up to m = 10") {
    std::mt19937_64 rng(11);
    for (std::size_t m = 1; m <= 10; ++m) {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 60; ++trial) {
                const auto inst = oracle::random_instance(rng, m, n);
                const auto bd = critical_demand_level(inst.junction, inst.mu, inst.nu);
                const auto exact = oracle::g_exhaustive(inst.junction, inst.mu, inst.nu);
                CHECK(std::fabs(bd.g - exact.min_max) <= 1e-12);
            }
        }
    }
}

TEST_CASE("congested-set structure under supply deficit") {
    std::mt19937_64 rng(13);
    int deficit_cases = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto inst = oracle::random_instance(rng, 2 + trial % 6, 1 + trial % 4);
        const auto bd = critical_demand_level(inst.junction, inst.mu, inst.nu);
        const double min_residue =
            *std::min_element(bd.residue.begin(), bd.residue.end());
        if (min_residue >= 0.0) {
            // every upstream link passes its full demand
            CHECK(bd.theta ==
                  doctest::Approx(*std::max_element(inst.mu.begin(), inst.mu.end()))
                      .epsilon(1e-12));
            CHECK(bd.congested_set.empty());
            continue;
        }
        ++deficit_cases;
        REQUIRE(!bd.congested_set.empty());
        double inside = 1.0, outside = 0.0;
        std::vector<bool> in_set(inst.mu.size(), false);
        for (std::size_t a : bd.congested_set) in_set[a] = true;
        for (std::size_t a = 0; a < inst.mu.size(); ++a) {
            if (in_set[a])
                inside = std::min(inside, inst.mu[a]);
            else
                outside = std::max(outside, inst.mu[a]);
        }
        CHECK(inside > bd.theta);
        CHECK(outside <= bd.theta);
        const auto exact = oracle::g_exhaustive(inst.junction, inst.mu, inst.nu);
        CHECK(std::fabs(exact.min_max - exact.max_min) <= 1e-12);
        CHECK(std::fabs(bd.theta - exact.min_max) <= 1e-12);
    }
    CHECK(deficit_cases > 200);
}

TEST_CASE("removing or adding a link moves the average demand level as claimed") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> m_dist(2, 7), n_dist(1, 3);
    for (int trial = 0; trial < 1500; ++trial) {
        const std::size_t m = m_dist(rng);
        const auto inst = oracle::random_instance(rng, m, n_dist(rng));
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        std::uniform_int_distribution<std::size_t> pick_b(
            0, inst.junction.downstream_count() - 1);
        const std::size_t b = pick_b(rng);

        // random subset of size >= 2 containing alpha
        std::vector<std::size_t> subset;
        const std::size_t alpha = pick(rng);
        for (std::size_t a = 0; a < m; ++a)
            if (a == alpha || (rng() & 1u)) subset.push_back(a);
        if (subset.size() < 2) continue;

        const double with_alpha = average_demand_level(inst.junction, inst.mu, inst.nu,
                                                       b, subset);
        std::vector<std::size_t> without;
        for (std::size_t a : subset)
            if (a != alpha) without.push_back(a);
        const double dropped = average_demand_level(inst.junction, inst.mu, inst.nu,
                                                    b, without);
        const double margin = 1e-9;
        if (inst.mu[alpha] > with_alpha + margin) {
            CHECK(dropped < with_alpha);
            CHECK(inst.mu[alpha] > dropped);
        } else if (inst.mu[alpha] < with_alpha - margin) {
            CHECK(dropped > with_alpha);
            CHECK(inst.mu[alpha] < dropped);
        }
    }
}

TEST_CASE("non-invariant flux collapses to min{d, s} on a linear junction") {
    const JunctionSpec linear = make_junction({1}, {1}, {{1.0}});
    const FluxResult fr = noninvariant_flux(linear, {0.8}, {0.6});
    CHECK(fr.upstream_flux[0] == doctest::Approx(0.6).epsilon(1e-14));
    const FluxResult zeros = noninvariant_flux(linear, {0.0}, {0.6});
    CHECK(zeros.upstream_flux[0] == 0.0);
}

TEST_CASE("pinned 2x2 instance where the proportional split disagrees") {
    // Both downstream links receive half of each upstream demand; supplies
    // 0.4 each.  The proportional split hands link 1 sixty percent of the
    // room while the invariant rule throttles both congested links to the
    // same level.
    const JunctionSpec j = make_junction({1, 1}, {1, 1}, {{0.5, 0.5}, {0.5, 0.5}});
    const std::vector<double> d{0.9, 0.3}, s{0.4, 0.4};

    const auto exact = oracle::g_exhaustive(j, d, s);  // capacities are 1
    CHECK(exact.min_max == doctest::Approx(0.5).epsilon(1e-13));
    const FluxResult inv = junction_flux(j, d, s);
    CHECK(inv.upstream_flux[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(inv.upstream_flux[1] == doctest::Approx(0.3).epsilon(1e-13));

    const FluxResult prop = noninvariant_flux(j, d, s);
    CHECK(prop.upstream_flux[0] == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(prop.upstream_flux[1] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(std::fabs(prop.upstream_flux[0] - inv.upstream_flux[0]) > 0.05);

    // conservation still holds for the comparison model
    CHECK(prop.downstream_flux[0] + prop.downstream_flux[1] ==
          doctest::Approx(prop.upstream_flux[0] + prop.upstream_flux[1]).epsilon(1e-13));
}

TEST_CASE("seeded search finds proportional-split disagreements") {
    std::mt19937_64 rng(99);
    int found = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_instance(rng, 2, 2);
        std::vector<double> d(2), s(2);
        for (std::size_t a = 0; a < 2; ++a)
            d[a] = inst.mu[a] * inst.junction.upstream_capacity[a];
        for (std::size_t b = 0; b < 2; ++b)
            s[b] = inst.nu[b] * inst.junction.downstream_capacity[b];
        const FluxResult inv = junction_flux(inst.junction, d, s);
        const FluxResult prop = noninvariant_flux(inst.junction, d, s);
        double gap = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
            gap = std::max(gap, std::fabs(inv.upstream_flux[a] - prop.upstream_flux[a]));
        if (gap > 1e-6) ++found;
    }
    CHECK(found > 20);
}

TEST_CASE("tied demand levels are value-safe against enumeration") {
    // Levels drawn from a coarse lattice force exact ties and exact zero
    // residues; whatever deterministic tie-break the prefix scan uses must
    // reproduce the enumerated value.
    std::mt19937_64 rng(43);
    const double levels[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    const double caps[] = {0.5, 1.0, 2.0};
    std::uniform_int_distribution<int> level_pick(0, 4), cap_pick(0, 2);
    std::uniform_int_distribution<std::size_t> m_dist(1, 6), n_dist(1, 3);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t m = m_dist(rng), n = n_dist(rng);
        JunctionSpec j;
        for (std::size_t a = 0; a < m; ++a)
            j.upstream_capacity.push_back(caps[cap_pick(rng)]);
        for (std::size_t b = 0; b < n; ++b)
            j.downstream_capacity.push_back(caps[cap_pick(rng)]);
        j.turning.assign(m, std::vector<double>(n, 1.0 / static_cast<double>(n)));
        j.validate();
        std::vector<double> mu(m), nu(n);
        for (double& x : mu) x = levels[level_pick(rng)];
        for (double& x : nu) x = levels[level_pick(rng)];
        const auto bd = critical_demand_level(j, mu, nu);
        const auto exact = oracle::g_exhaustive(j, mu, nu);
        CHECK(std::fabs(bd.g - exact.min_max) <= 1e-12);
        CHECK(std::fabs(bd.theta -
                        std::min(*std::max_element(mu.begin(), mu.end()),
                                 exact.min_max)) <= 1e-12);
    }
}

TEST_CASE("the critical level responds continuously to small perturbations") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> m_dist(1, 6), n_dist(1, 4);
    const double eps = 1e-7;
    for (int trial = 0; trial < 500; ++trial) {
        auto inst = oracle::random_instance(rng, m_dist(rng), n_dist(rng));
        const double base = critical_demand_level(inst.junction, inst.mu, inst.nu).theta;
        std::uniform_int_distribution<std::size_t> pick_a(0, inst.mu.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_b(0, inst.nu.size() - 1);
        auto mu = inst.mu;
        const std::size_t a = pick_a(rng);
        mu[a] = std::clamp(mu[a] + eps, 0.0, 1.0);
        auto nu = inst.nu;
        const std::size_t b = pick_b(rng);
        nu[b] = std::clamp(nu[b] - eps, 0.0, 1.0);
        const double moved = critical_demand_level(inst.junction, mu, nu).theta;
        // slopes are bounded by capacity ratios over the smallest directed
        // capacity; 1e3 dominates them for this instance distribution
        CHECK(std::fabs(moved - base) <= 1e3 * eps);
    }
}

TEST_CASE("special-case closed forms over random inputs") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> cap(0.5, 2.0), unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double c1 = cap(rng), c2 = cap(rng), c3 = cap(rng);
        const JunctionSpec j = make_junction({c1, c2}, {c3}, {{1.0}, {1.0}});
        const std::vector<double> d{unit(rng) * c1, unit(rng) * c2};
        const std::vector<double> s{unit(rng) * c3};
        const FluxResult fr = junction_flux(j, d, s);
        CHECK(std::fabs(fr.upstream_flux[0] -
                        std::min(d[0], std::max(s[0] - d[1], c1 / (c1 + c2) * s[0]))) <=
              1e-12);
        CHECK(std::fabs(fr.upstream_flux[1] -
                        std::min(d[1], std::max(s[0] - d[0], c2 / (c1 + c2) * s[0]))) <=
              1e-12);
    }
    for (int trial = 0; trial < 300; ++trial) {
        const double c1 = cap(rng);
        const double split = 0.2 + 0.6 * unit(rng);
        const JunctionSpec j =
            make_junction({c1}, {cap(rng), cap(rng)}, {{split, 1.0 - split}});
        const std::vector<double> d{unit(rng) * c1};
        const std::vector<double> s{unit(rng) * j.downstream_capacity[0],
                                    unit(rng) * j.downstream_capacity[1]};
        const FluxResult fr = junction_flux(j, d, s);
        const double fifo =
            std::min(d[0], std::min(s[0] / split, s[1] / (1.0 - split)));
        CHECK(std::fabs(fr.upstream_flux[0] - fifo) <= 1e-12);
    }
}
