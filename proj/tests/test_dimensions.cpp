#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "vvmf/dimensions.hpp"

using namespace vvmf;

namespace {

const std::vector<std::string> table_symbols = {
    "II_(2,10)()",        "II_(2,18)()",        "II_(2,26)()",
    "II_(2,6)(2_II^-2)",  "II_(2,6)(2_II^-4)",  "II_(2,6)(2_II^-6)",
    "II_(2,10)(2_II^+2)", "II_(2,4)(3^+1)",     "II_(2,4)(3^-3)",
    "II_(2,4)(3^+5)",     "II_(2,8)(3^-1)",     "II_(2,6)(5^+1)",
    "II_(2,4)(2_II^+2 3^+1)", "II_(2,4)(2_II^+4 3^+1)", "II_(2,8)(7^+1)",
};

// classical dim M_k(SL2(Z)) for even k
long classical_dim_M(long k)
{
    if (k < 0 || k % 2) return 0;
    return k % 12 == 2 ? k / 12 : k / 12 + 1;
}

} // namespace

TEST_CASE("trivial discriminant form reproduces classical level-1 dimensions")
{
    GenusSymbol g = GenusSymbol::parse("II_(2,10)()");
    for (long k : {2L, 4L, 6L, 8L, 10L, 12L, 14L, 16L, 18L, 20L, 24L, 26L}) {
        auto rep = dim_report(g, k);
        CAPTURE(k);
        CHECK(rep.dim_M == classical_dim_M(k));
        if (k > 2) CHECK(rep.dim_S == std::max(0L, classical_dim_M(k) - 1));
    }
    auto r6 = dim_report(g, 6);
    CHECK(r6.dim_M == 1);
    CHECK(r6.dim_S == 0);
    CHECK(r6.d == 1);
    CHECK(r6.alpha1 == make_rat(1, 2));

    auto r14 = dim_report(GenusSymbol::parse("II_(2,26)()"), 14);
    CHECK(r14.dim_M == 1);
    CHECK(r14.dim_S == 0);
}

TEST_CASE("closed form equals the eigenvalue oracle on the 15 table rows")
{
    for (const auto& s : table_symbols) {
        GenusSymbol g = GenusSymbol::parse(s);
        long n = g.sig.bminus;
        CAPTURE(s);
        for (long k : {1 + n / 2, n / 2 - 1}) {
            if (k < 2) continue;
            CAPTURE(k);
            auto closed = dim_report(g, k);
            auto oracle = dim_oracle(g, k);
            CHECK(closed == oracle);
        }
    }
}

TEST_CASE("all 15 table rows are simple")
{
    for (const auto& s : table_symbols) {
        GenusSymbol g = GenusSymbol::parse(s);
        CAPTURE(s);
        DimensionReport rep;
        CHECK(is_simple(g, &rep));
        CHECK(rep.dim_S == 0);
    }
}

TEST_CASE("non-simple spot checks")
{
    // trivial D at n = 34: k = 18, classical S_18 is nonzero
    GenusSymbol g;
    g.sig.bminus = 34;
    CHECK_FALSE(is_simple(g));

    CHECK(dim_report(GenusSymbol::parse("II_(2,4)(3^+5)"), 3).dim_S == 0);
    CHECK(is_simple(GenusSymbol::parse("II_(2,8)(7^+1)")));
}

TEST_CASE("closed form equals oracle on randomized symbols")
{
    std::mt19937 rng(20260823);
    std::vector<long> primes{3, 5, 7, 11, 13, 17};
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<long> rankd(1, 4), nd(2, 10), kextra(0, 3);
    int done = 0;
    while (done < 50) {
        GenusSymbol g;
        if (coin(rng)) {
            std::uniform_int_distribution<long> er(1, 3);
            g.comps.push_back({2, 2 * er(rng), coin(rng) ? 1 : -1});
        }
        for (long p : primes)
            if (coin(rng) && coin(rng)) g.comps.push_back({p, rankd(rng), coin(rng) ? 1 : -1});
        std::sort(g.comps.begin(), g.comps.end(),
                  [](const auto& a, const auto& b) { return a.p < b.p; });
        if (g.order() > 1000) continue;
        // signature consistent with the Milgram congruence: n = 2 - sig mod 8
        g.sig.bminus = ((2 - milgram_sig(g)) % 8 + 8) % 8 + 8 * (nd(rng) % 3);
        if (g.sig.bminus < 2) g.sig.bminus += 8;
        long k = 2 + 2 * kextra(rng) + (coin(rng) ? 1 : 0);
        CAPTURE(g.str(), k);
        bool closed_ok = true, oracle_ok = true;
        DimensionReport closed, oracle;
        try { closed = dim_report(g, k); } catch (const std::exception&) { closed_ok = false; }
        try { oracle = dim_oracle(g, k); } catch (const std::exception&) { oracle_ok = false; }
        REQUIRE(closed_ok);
        REQUIRE(oracle_ok);
        CHECK(closed == oracle);
        ++done;
    }
}

TEST_CASE("alpha bounds from the size estimates")
{
    for (const auto& s : table_symbols) {
        GenusSymbol g = GenusSymbol::parse(s);
        long n = g.sig.bminus;
        long k = 1 + n / 2;
        auto rep = dim_report(g, k);
        Int d2(1), d3(1);
        for (const auto& c : g.comps) {
            if (c.p == 2) d2 *= int_pow(Int(2), c.rank);
            if (c.p == 3) d3 *= int_pow(Int(3), c.rank);
        }
        CAPTURE(s);
        // |alpha1 - d/4| <= sqrt(|D^2|)/4
        Rat lhs1 = rep.alpha1 - rep.d / 4;
        CHECK(lhs1 * lhs1 <= Rat(d2) / 16);
        // |alpha2 - d/3| <= (1 + sqrt(|D^3|)) / (3 sqrt(3))
        Rat lhs2 = rep.alpha2 - rep.d / 3;
        // square both sides: lhs2^2 * 27 <= (1 + sqrt(d3))^2 = 1 + d3 + 2 sqrt(d3)
        // and sqrt(d3) <= (1+d3)/2, so a sufficient certified bound:
        Rat rhs = (Rat(1) + Rat(d3) + Rat(1) + Rat(d3)) / 27;
        CHECK(lhs2 * lhs2 <= rhs);
    }
}

TEST_CASE("alpha3 and alpha4 depend only on the parity of k")
{
    for (const auto& s : {"II_(2,4)(3^+5)", "II_(2,6)(2_II^-6)", "II_(2,4)(2_II^+2 3^+1)"}) {
        GenusSymbol g = GenusSymbol::parse(s);
        auto a = dim_report(g, 3);
        auto b = dim_report(g, 5);
        auto c = dim_report(g, 7);
        CHECK(a.alpha3 == b.alpha3);
        CHECK(b.alpha3 == c.alpha3);
        CHECK(a.alpha4 == c.alpha4);
        auto e1 = dim_report(g, 4);
        auto e2 = dim_report(g, 6);
        CHECK(e1.alpha3 == e2.alpha3);
        CHECK(e1.alpha4 == e2.alpha4);
    }
}

TEST_CASE("k below 2 rejected; k = 2 has no cusp codimension")
{
    GenusSymbol g = GenusSymbol::parse("II_(2,4)(3^+1)");
    CHECK_THROWS_AS(dim_report(g, 1), std::invalid_argument);
    auto rep = dim_report(g, 2);
    CHECK_FALSE(rep.has_dim_S);
}
