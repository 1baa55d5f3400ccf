#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "evolattice/evolattice.hpp"
#include "test_util.hpp"

using namespace evolattice;
using testutil::brute_force_counts;
using testutil::brute_force_neighbors;
using testutil::from_string;
using testutil::random_configuration;
using testutil::random_matrix;

TEST_CASE("payoff matrix validation and derived gains") {
    const PayoffMatrix pm(3.0, 1.0, 4.0, 2.0);
    CHECK(pm.a1() == -1.0);
    CHECK(pm.a2() == 1.0);
    CHECK(pm.a(Strategy::s1, Strategy::s2) == 1.0);
    CHECK(pm.a(Strategy::s2, Strategy::s1) == 4.0);

    CHECK_THROWS_WITH(PayoffMatrix(1.0, 0.0, 1.0, 1.0), Catch::Matchers::ContainsSubstring("a12"));
    CHECK_THROWS_WITH(PayoffMatrix(1.0, 1.0, -2.0, 1.0), Catch::Matchers::ContainsSubstring("a21"));
    CHECK_THROWS(PayoffMatrix(std::nan(""), 1.0, 1.0, 1.0));

    const PayoffMatrix sw = pm.label_swapped();
    CHECK(sw.a11() == 2.0);
    CHECK(sw.a12() == 4.0);
    CHECK(sw.a21() == 1.0);
    CHECK(sw.a22() == 3.0);
    CHECK(sw.a1() == pm.a2());
}

TEST_CASE("prisoners dilemma membership") {
    CHECK(is_prisoners_dilemma(PayoffMatrix(3, 1, 4, 2)));
    CHECK_FALSE(is_prisoners_dilemma(neutral_payoffs()));
    CHECK_FALSE(is_prisoners_dilemma(PayoffMatrix(2, 1, 2, 1)));  // ties excluded
    CHECK_FALSE(is_prisoners_dilemma(PayoffMatrix(4, 1, 3, 2)));
}

TEST_CASE("neighborhood enumeration") {
    SECTION("1d nearest neighbor") {
        const LatticeTopology top(1, 1, 5);
        CHECK(top.neighborhood_size() == 2);
        const auto nb = top.neighborhood(0);
        CHECK(std::set<std::int64_t>(nb.begin(), nb.end()) == std::set<std::int64_t>{1, 4});
    }
    SECTION("1d range two") {
        const LatticeTopology top(1, 2, 7);
        const auto nb = top.neighborhood(3);
        CHECK(std::set<std::int64_t>(nb.begin(), nb.end()) == std::set<std::int64_t>{1, 2, 4, 5});
    }
    SECTION("2d Moore neighborhood") {
        const LatticeTopology top(2, 1, 5);
        CHECK(top.neighborhood_size() == 8);
        const auto nb = top.neighborhood(0);  // (0, 0)
        std::set<std::int64_t> expect;
        for (int dx : {-1, 0, 1})
            for (int dy : {-1, 0, 1}) {
                if (dx == 0 && dy == 0) continue;
                expect.insert(top.coords_to_site({(dx + 5) % 5, (dy + 5) % 5}));
            }
        CHECK(std::set<std::int64_t>(nb.begin(), nb.end()) == expect);
    }
    SECTION("side must exceed twice the range") {
        CHECK_THROWS(LatticeTopology(1, 1, 2));
        CHECK_THROWS(LatticeTopology(2, 2, 4));
        CHECK_NOTHROW(LatticeTopology(1, 1, 3));
    }
    SECTION("matches brute force and is symmetric") {
        std::mt19937_64 gen(7);
        for (const auto& [d, M, L] : std::vector<std::array<int, 3>>{
                 {1, 1, 8}, {1, 2, 9}, {2, 1, 6}, {2, 2, 7}, {3, 1, 4}}) {
            const LatticeTopology top(d, M, L);
            for (int trial = 0; trial < 20; ++trial) {
                const auto x = static_cast<std::int64_t>(gen() % top.n_sites());
                auto got = top.neighborhood(x);
                auto want = brute_force_neighbors(top, x);
                std::sort(got.begin(), got.end());
                std::sort(want.begin(), want.end());
                REQUIRE(got == want);
                CHECK(std::find(got.begin(), got.end(), x) == got.end());
                for (auto y : got) {
                    const auto back = top.neighborhood(y);
                    CHECK(std::find(back.begin(), back.end(), x) != back.end());
                }
            }
        }
    }
}

TEST_CASE("payoff landscape") {
    const PayoffMatrix pm(3.0, 1.0, 4.0, 2.0);
    SECTION("uniform configuration pays a11 times the neighbor count") {
        const LatticeTopology top(2, 1, 5);
        const Configuration cfg(top, Strategy::s1);
        for (std::int64_t x = 0; x < top.n_sites(); ++x)
            CHECK(payoff(cfg, pm, x) == 8.0 * 3.0);
    }
    SECTION("mixed ring") {
        const LatticeTopology top(1, 1, 3);
        const Configuration cfg = from_string(top, "121");
        CHECK(payoff(cfg, pm, 1) == 2.0 * 4.0);   // strategy 2, both neighbors 1
        CHECK(payoff(cfg, pm, 0) == 3.0 + 1.0);   // one neighbor each
    }
    SECTION("strictly positive everywhere") {
        std::mt19937_64 gen(11);
        const LatticeTopology top(2, 1, 6);
        for (int trial = 0; trial < 200; ++trial) {
            const auto pm2 = random_matrix(gen, 1e-3, 2.0);
            const auto cfg = random_configuration(top, gen);
            for (std::int64_t x = 0; x < top.n_sites(); ++x)
                REQUIRE(payoff(cfg, pm2, x) > 0.0);
        }
    }
}

TEST_CASE("switch probability") {
    std::mt19937_64 gen(23);

    SECTION("is a probability and is zero in uniform neighborhoods") {
        const LatticeTopology top(2, 1, 6);
        for (int trial = 0; trial < 100; ++trial) {
            const auto pm = random_matrix(gen);
            const auto cfg = random_configuration(top, gen);
            for (std::int64_t x = 0; x < top.n_sites(); ++x) {
                const double p = switch_probability(cfg, pm, x, 1.0);
                REQUIRE(p >= 0.0);
                REQUIRE(p <= 1.0);
                const auto [n1, n2] = brute_force_counts(cfg, x);
                const int n_opp = cfg.at(x) == Strategy::s1 ? n2 : n1;
                if (n_opp == 0) REQUIRE(p == 0.0);
            }
        }
    }

    SECTION("voter limit at eps zero is the neighbor fraction, bitwise") {
        const LatticeTopology top(1, 2, 9);
        for (int trial = 0; trial < 100; ++trial) {
            const auto pm = random_matrix(gen);
            const auto cfg = random_configuration(top, gen);
            for (std::int64_t x = 0; x < top.n_sites(); ++x) {
                const auto [n1, n2] = brute_force_counts(cfg, x);
                const int n_opp = cfg.at(x) == Strategy::s1 ? n2 : n1;
                REQUIRE(switch_probability(cfg, pm, x, 0.0) == double(n_opp) / double(n1 + n2));
            }
        }
    }

    SECTION("neutral payoffs reduce to the voter rule at eps one") {
        const PayoffMatrix pm = neutral_payoffs();
        for (const auto& [d, M, L] : std::vector<std::array<int, 3>>{{1, 1, 9}, {2, 2, 6}}) {
            const LatticeTopology top(d, M, L);
            for (int trial = 0; trial < 50; ++trial) {
                const auto cfg = random_configuration(top, gen);
                for (std::int64_t x = 0; x < top.n_sites(); ++x) {
                    const auto [n1, n2] = brute_force_counts(cfg, x);
                    const int n_opp = cfg.at(x) == Strategy::s1 ? n2 : n1;
                    REQUIRE(switch_probability(cfg, pm, x, 1.0) == double(n_opp) / double(n1 + n2));
                }
            }
        }
    }

    SECTION("equal-row reduction") {
        // a11 = a12 and a21 = a22 collapse the rule to
        // a_jj N_j / (a_ii N_i + a_jj N_j).
        const LatticeTopology top(2, 1, 6);
        std::uniform_real_distribution<double> d(0.2, 4.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double alpha = d(gen), beta = d(gen);
            const PayoffMatrix pm(alpha, alpha, beta, beta);
            const auto cfg = random_configuration(top, gen);
            for (std::int64_t x = 0; x < top.n_sites(); ++x) {
                const auto [n1, n2] = brute_force_counts(cfg, x);
                const double e1 = alpha * n1, e2 = beta * n2;
                const double expect = cfg.at(x) == Strategy::s1 ? e2 / (e1 + e2) : e1 / (e1 + e2);
                REQUIRE_THAT(switch_probability(cfg, pm, x, 1.0),
                             Catch::Matchers::WithinRel(expect, 1e-12));
            }
        }
    }

    SECTION("mixture is linear in eps") {
        const LatticeTopology top(1, 1, 8);
        std::uniform_real_distribution<double> d(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto pm = random_matrix(gen);
            const auto cfg = random_configuration(top, gen);
            const auto x = static_cast<std::int64_t>(gen() % top.n_sites());
            const double eps = d(gen);
            const double v = switch_probability(cfg, pm, x, 0.0);
            const double g = switch_probability(cfg, pm, x, 1.0);
            REQUIRE_THAT(switch_probability(cfg, pm, x, eps),
                         Catch::Matchers::WithinAbs((1.0 - eps) * v + eps * g, 1e-15));
        }
    }

    SECTION("label swap leaves every rate unchanged, bitwise") {
        for (const auto& [d, M, L] : std::vector<std::array<int, 3>>{{1, 1, 10}, {2, 1, 5}}) {
            const LatticeTopology top(d, M, L);
            for (int trial = 0; trial < 50; ++trial) {
                const auto pm = random_matrix(gen);
                const auto cfg = random_configuration(top, gen);
                const auto swapped_cfg = cfg.label_swapped();
                const auto swapped_pm = pm.label_swapped();
                for (std::int64_t x = 0; x < top.n_sites(); ++x)
                    REQUIRE(switch_probability(cfg, pm, x, 1.0) ==
                            switch_probability(swapped_cfg, swapped_pm, x, 1.0));
            }
        }
    }
}

TEST_CASE("interface rates") {
    SECTION("neutral game always flips at one half") {
        const PayoffMatrix pm = neutral_payoffs();
        for (int n1 = 0; n1 <= 2; ++n1)
            for (int n2 = 0; n2 <= 2; ++n2) {
                CHECK(interface_rate(pm, Strategy::s1, n1, n2) == 0.5);
                CHECK(interface_rate(pm, Strategy::s2, n1, n2) == 0.5);
            }
    }
    SECTION("pinned values") {
        const PayoffMatrix pm(2, 1, 2, 1);
        CHECK_THAT(interface_rate(pm, Strategy::s1, 2, 1),
                   Catch::Matchers::WithinAbs(3.0 / 7.0, 1e-15));
        CHECK_THAT(interface_rate(pm, Strategy::s2, 1, 1),
                   Catch::Matchers::WithinAbs(0.5, 1e-15));
        CHECK_THAT(interface_rate(pm, Strategy::s2, 1, 2),
                   Catch::Matchers::WithinAbs(3.0 / 5.0, 1e-15));
        CHECK_THAT(interface_rate(pm, Strategy::s1, 2, 0),
                   Catch::Matchers::WithinAbs(0.5, 1e-15));
    }
    SECTION("complementary rates sum to one") {
        std::mt19937_64 gen(31);
        for (int trial = 0; trial < 500; ++trial) {
            const auto pm = random_matrix(gen);
            for (int n1 = 0; n1 <= 2; ++n1)
                for (int n2 = 0; n2 <= 2; ++n2) {
                    const double p1 = interface_rate(pm, Strategy::s1, n1, n2);
                    const double p2 = interface_rate(pm, Strategy::s2, n1, n2);
                    REQUIRE(p1 > 0.0);
                    REQUIRE(p1 < 1.0);
                    REQUIRE_THAT(p1 + p2, Catch::Matchers::WithinAbs(1.0, 1e-15));
                }
        }
    }
    SECTION("counts outside the local pattern are rejected") {
        CHECK_THROWS(interface_rate(neutral_payoffs(), Strategy::s1, 3, 0));
        CHECK_THROWS(interface_rate(neutral_payoffs(), Strategy::s2, 0, -1));
    }
}

TEST_CASE("drift table") {
    SECTION("pinned example") {
        const auto t = drift_table(PayoffMatrix(2, 1, 2, 1));
        CHECK_THAT(t.d3, Catch::Matchers::WithinAbs(1.0 / 14.0, 1e-15));
        CHECK_THAT(t.d4, Catch::Matchers::WithinAbs(6.0 / 35.0, 1e-15));
        CHECK_THAT(t.d3 + t.d4, Catch::Matchers::WithinAbs(17.0 / 70.0, 1e-15));
        CHECK_THAT(t.d2, Catch::Matchers::WithinAbs(1.5, 1e-15));
    }
    SECTION("neutral game has zero gap-3 and gap-4 drift") {
        const auto t = drift_table(neutral_payoffs());
        CHECK(t.d3 == 0.0);
        CHECK(t.d4 == 0.0);
        CHECK(t.d2 == 1.5);
    }
    SECTION("closed forms match the composed rates") {
        std::mt19937_64 gen(41);
        for (int trial = 0; trial < 10000; ++trial) {
            const auto pm = random_matrix(gen, 0.05, 8.0);
            const auto t = drift_table(pm);
            REQUIRE_THAT(t.d3, Catch::Matchers::WithinAbs(d3_closed_form(pm), 1e-12));
            REQUIRE_THAT(t.d4, Catch::Matchers::WithinAbs(d4_closed_form(pm), 1e-12));
        }
    }
    SECTION("drift ordering by diagonal comparison") {
        const auto t = drift_table(PayoffMatrix(3, 1, 4, 2));
        CHECK(t.d3 < t.d4);
        CHECK(t.d4 < t.d2);
        std::mt19937_64 gen(43);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto pm = random_matrix(gen);
            if (pm.a22() == pm.a21()) continue;
            const auto dt = drift_table(pm);
            if (pm.a22() < pm.a21()) REQUIRE(dt.d3 < dt.d4);
            else REQUIRE(dt.d4 < dt.d3);
            REQUIRE(dt.d4 < dt.d2);
            REQUIRE(dt.d3 < dt.d2);
        }
    }
    SECTION("all stored rates are probabilities") {
        std::mt19937_64 gen(47);
        for (int trial = 0; trial < 200; ++trial) {
            const auto t = drift_table(random_matrix(gen));
            for (int n1 = 0; n1 <= 2; ++n1)
                for (int n2 = 0; n2 <= 2; ++n2) {
                    REQUIRE(t.rate(Strategy::s1, n1, n2) > 0.0);
                    REQUIRE(t.rate(Strategy::s1, n1, n2) < 1.0);
                    REQUIRE(t.rate(Strategy::s2, n1, n2) > 0.0);
                    REQUIRE(t.rate(Strategy::s2, n1, n2) < 1.0);
                }
        }
    }
}

TEST_CASE("payoff extrema") {
    SECTION("pinned example, both landscapes sloped") {
        const auto e = payoff_extrema(PayoffMatrix(2, 1, 3, 1), 4);
        CHECK(e.M_plus == 2.0);
        CHECK_THAT(e.M_minus, Catch::Matchers::WithinAbs(1.75, 1e-15));
        CHECK(e.m_minus == 1.0);
        CHECK_THAT(e.m_plus, Catch::Matchers::WithinAbs(1.5, 1e-15));
    }
    SECTION("flat landscapes collapse to the off-diagonal entries") {
        const auto e = payoff_extrema(PayoffMatrix(1, 2, 3, 4), 6);
        CHECK(e.M_plus == 2.0);   // a11 <= a12: maximum at z = 0 either way
        CHECK(e.M_minus == 2.0);
        CHECK(e.m_minus == 3.0);  // a22 >= a21: minimum at z = 0 either way
        CHECK(e.m_plus == 3.0);
    }
    SECTION("neutral game is flat at the common payoff") {
        const auto e = payoff_extrema(neutral_payoffs(), 8);
        CHECK(e.M_plus == 1.0);
        CHECK(e.M_minus == 1.0);
        CHECK(e.m_minus == 1.0);
        CHECK(e.m_plus == 1.0);
    }
    SECTION("ordering invariants") {
        std::mt19937_64 gen(53);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto pm = random_matrix(gen);
            for (int N : {2, 4, 8, 24}) {
                const auto e = payoff_extrema(pm, N);
                REQUIRE(e.M_plus >= e.M_minus);
                REQUIRE(e.m_minus <= e.m_plus);
                // brute force over the z grid
                double mp = -1e300, mm = -1e300, lo = 1e300, lo2 = 1e300;
                for (int z = 0; z <= N; ++z) {
                    const double f1 = (pm.a11() - pm.a12()) * z / N + pm.a12();
                    const double f2 = (pm.a22() - pm.a21()) * z / N + pm.a21();
                    mp = std::max(mp, f1);
                    lo = std::min(lo, f2);
                    if (z <= N - 1) {
                        mm = std::max(mm, f1);
                        lo2 = std::min(lo2, f2);
                    }
                }
                REQUIRE_THAT(e.M_plus, Catch::Matchers::WithinRel(mp, 1e-12));
                REQUIRE_THAT(e.M_minus, Catch::Matchers::WithinRel(mm, 1e-12));
                REQUIRE_THAT(e.m_minus, Catch::Matchers::WithinRel(lo, 1e-12));
                REQUIRE_THAT(e.m_plus, Catch::Matchers::WithinRel(lo2, 1e-12));
            }
        }
    }
}

TEST_CASE("seed derivation is frozen") {
    CHECK(derive_replica_seed(42, 0) == 0x28efe333b266f103ULL);
    CHECK(derive_replica_seed(42, 1) == 0x47526757130f9f52ULL);
    CHECK(derive_replica_seed(42, 2) == 0x581ce1ff0e4ae394ULL);
    CHECK(derive_replica_seed(0, 0) == 0x6e789e6aa1b965f4ULL);
    CHECK(derive_replica_seed(0xDEADBEEFULL, 7) == 0x0a90415039bd5985ULL);

    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(derive_replica_seed(123, r));
    CHECK(seen.size() == 1000);
}

TEST_CASE("rng draw helpers") {
    Rng a(12345), b(12345);
    CHECK(a.next_u64() == 0x5b8d9f1be2220cbaULL);
    CHECK(b.next_u64() == 0x5b8d9f1be2220cbaULL);
    Rng c(12345);
    CHECK(c.uniform() == 0.35762972288842587);
    for (int k = 0; k < 1000; ++k) {
        const double u = c.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(c.uniform_index(7) < 7);
        REQUIRE(c.exponential(2.0) >= 0.0);
    }
}
