#include <catch2/catch_amalgamated.hpp>

#include "vvmf/cyclotomic.hpp"

using namespace vvmf;

TEST_CASE("roots of unity satisfy basic identities")
{
    Cyc z3 = Cyc::root_of_unity(3, 1);
    CHECK(z3 + Cyc::root_of_unity(3, 2) == Cyc(Rat(-1)));
    CHECK(z3 * z3 * z3 == Cyc(Rat(1)));

    Cyc i = Cyc::i();
    CHECK(i * i == Cyc(Rat(-1)));

    // e() wraps and reduces its argument
    CHECK(Cyc::e(make_rat(7, 3)) == Cyc::root_of_unity(3, 1));
    CHECK(Cyc::e(make_rat(-1, 4)) == -i);
    CHECK(Cyc::e(Rat(5)) == Cyc(Rat(1)));
}

TEST_CASE("mixed-conductor arithmetic promotes correctly")
{
    Cyc a = Cyc::root_of_unity(8, 1);
    Cyc b = Cyc::root_of_unity(3, 1);
    Cyc p = a * b;
    CHECK(p == Cyc::root_of_unity(24, 3 + 8));
    CHECK(p.conductor() == 24);

    // zeta_12 + zeta_12^{-1} = sqrt(3)
    Cyc s = Cyc::root_of_unity(12, 1) + Cyc::root_of_unity(12, -1);
    CHECK(s * s == Cyc(Rat(3)));
}

TEST_CASE("sqrt_int squares back to its argument")
{
    for (long n : {1L, 2L, 3L, 4L, 5L, 6L, 7L, 8L, 12L, 45L, 48L, 343L, 1000L}) {
        Cyc s = Cyc::sqrt_int(n);
        CHECK(s * s == Cyc(Rat(n)));
        CHECK(std::abs(s.to_complex().real() - std::sqrt((double)n)) < 1e-9);
        CHECK(std::abs(s.to_complex().imag()) < 1e-9);
    }
}

TEST_CASE("conjugation and real part")
{
    Cyc z = Cyc::root_of_unity(5, 1);
    CHECK(z.conj() == Cyc::root_of_unity(5, 4));
    CHECK(z * z.conj() == Cyc(Rat(1)));
    CHECK((z + z.conj()).real_part() == z + z.conj());

    Cyc w = Cyc(make_rat(2, 3)) * Cyc::root_of_unity(7, 2) + Cyc(Rat(5));
    Cyc re = w.real_part();
    CHECK(re == re.conj());
    CHECK(std::abs(re.to_complex().imag()) < 1e-12);
    CHECK(std::abs(re.to_complex().real() - w.to_complex().real()) < 1e-12);
}

TEST_CASE("inverse via extended euclid")
{
    Cyc z = Cyc::root_of_unity(7, 3);
    Cyc w = Cyc(Rat(2)) + z + Cyc(make_rat(1, 3)) * (z * z);
    CHECK(w * w.inverse() == Cyc(Rat(1)));
    CHECK((w / w) == Cyc(Rat(1)));

    Cyc r(make_rat(-7, 5));
    CHECK(r.inverse() == Cyc(make_rat(-5, 7)));
}

TEST_CASE("galois action is a field automorphism")
{
    Cyc z = Cyc::root_of_unity(15, 1);
    Cyc a = Cyc(Rat(1)) + z;
    Cyc b = Cyc(Rat(2)) - z * z;
    for (long t : {2L, 4L, 7L, 11L}) {
        CHECK((a * b).galois(t) == a.galois(t) * b.galois(t));
        CHECK((a + b).galois(t) == a.galois(t) + b.galois(t));
    }
    // Galois sum of all conjugates of zeta_15 is the Moebius value mu(15)=1
    Cyc tr(Rat(0));
    for (long t = 1; t < 15; ++t)
        if (gcd_long(t, 15) == 1) tr += z.galois(t);
    CHECK(tr == Cyc(Rat(1)));
}

TEST_CASE("rationality detection")
{
    Cyc z = Cyc::root_of_unity(4, 1);
    CHECK(!z.is_rational());
    CHECK((z * z).is_rational());
    CHECK((z * z).to_rat() == Rat(-1));
    CHECK((z * z).is_integer());
    CHECK(!Cyc(make_rat(1, 2)).is_integer());
}

TEST_CASE("cyc_from_counts matches direct sums")
{
    // sum over x mod 5 of zeta_5^{x^2} is the quadratic Gauss sum = sqrt(5)
    std::vector<Int> counts(5, Int(0));
    for (long x = 0; x < 5; ++x) counts[(x * x) % 5] += 1;
    CHECK(cyc_from_counts(5, counts) == Cyc::sqrt_int(5));
}
