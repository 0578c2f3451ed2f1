#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "vvmf/eisenstein.hpp"

using namespace vvmf;

TEST_CASE("level-3 coefficient table, row for row")
{
    // m = 1/3, 2/3, 1, 4/3, ..., 4 against the closed divisor-sum formula
    const std::vector<long> row_gamma = {-2,   -6,   -18,  -26,  -48,  -54,
                                         -100, -102, -162, -144, -240, -234};
    for (size_t i = 0; i < row_gamma.size(); ++i) {
        Rat m = make_rat((long)i + 1, 3);
        CAPTURE(m.get_str());
        CHECK(q_level3(false, m) == Rat(row_gamma[i]));
    }
    CHECK(q_level3(true, Rat(1)) == Rat(-36));
    CHECK(q_level3(true, Rat(2)) == Rat(0));
    CHECK(q_level3(true, Rat(3)) == Rat(-180));
    CHECK(q_level3(true, Rat(4)) == Rat(-468));
}

TEST_CASE("level-3 sign and vanishing pattern up to m = 50")
{
    for (long t = 2; t <= 150; ++t) {  // m = t/3 >= 2/3
        Rat m = make_rat(t, 3);
        CAPTURE(t);
        CHECK(q_level3(false, m) < -2);
    }
    for (long m = 1; m <= 50; ++m) {
        CAPTURE(m);
        if (m % 3 == 2) CHECK(q_level3(true, Rat(m)) == 0);
        else CHECK(q_level3(true, Rat(m)) < -4);
    }
}

TEST_CASE("trivial discriminant form coefficients")
{
    CHECK(q_level1(14, 1) == Rat(-48));
    CHECK(q_level1(14, 2) == Rat(-48) * Rat(8193));  // sigma_13(2) = 1 + 2^13
    CHECK(q_level1(6, 1) == Rat(-1008));             // 4 * 6 * 42
    CHECK(q_level1(10, 1) == Rat(-528));             // 4 * 10 * 66/5
    CHECK_THROWS_AS(q_level1(8, 1), std::invalid_argument);
    CHECK_THROWS_AS(q_level1(14, 0), std::invalid_argument);
}

TEST_CASE("level-6 gamma = 0 coefficients")
{
    CHECK(q_level6_zero(1) == Rat(-60));  // odd form: -54 - 6
    // odd m: the four-term sum collapses to -54 sum psi(m/d) d^2 - 6 sum psi(d) d^2
    for (long m = 1; m <= 49; m += 2) {
        Int s(0);
        for (long d = 1; d <= m; ++d)
            if (m % d == 0) s += Int(d) * d * (54 * kronecker(m / d, 3) + 6 * kronecker(d, 3));
        CAPTURE(m);
        CHECK(q_level6_zero(m) == Rat(-1) * Rat(s));
    }
    for (long m = 1; m <= 50; ++m) {
        CAPTURE(m);
        CHECK(q_level6_zero(m) < -9);
        CHECK(q_level6_zero(m) < Rat(-3) * m * m);
    }
}

TEST_CASE("divisor-sum estimate on random instances")
{
    std::mt19937 rng(42);
    std::uniform_int_distribution<long> kd(2, 4), md(1, 60);
    std::uniform_int_distribution<int> ad(-1, 1);
    for (int it = 0; it < 1000; ++it) {
        long k = kd(rng), m = md(rng);
        Rat sum(0);
        for (long d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            long a = d == m ? 1 : ad(rng);
            sum += Rat(a) * Rat(int_pow(Int(d), k));
        }
        auto [lo, hi] = divisor_sum_bounds(k, m);
        CAPTURE(k, m, sum.get_str());
        CHECK(lo <= sum);
        CHECK(sum <= hi);
    }
    CHECK_THROWS_AS(divisor_sum_bounds(1, 5), std::invalid_argument);
    auto [lo, hi] = divisor_sum_bounds(2, 1);
    CHECK(lo <= 1);
    CHECK(hi >= 1);
}

TEST_CASE("quadratic growth used for search pruning")
{
    // |q(gamma,m)| >= 2 (3m)^2 (2 - zeta(2)) for the level-3 nonzero branch
    auto zhi = detail::zeta_bracket(2).second;
    for (long t = 2; t <= 60; ++t) {
        Rat m = make_rat(t, 3);
        Rat bound = Rat(-2) * t * t * (2 - zhi);
        CAPTURE(t);
        CHECK(q_level3(false, m) <= bound);
    }
}
