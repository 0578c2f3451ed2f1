#ifndef VVMF_EISENSTEIN_HPP
#define VVMF_EISENSTEIN_HPP

#include "vvmf/genus.hpp"

namespace vvmf {

/// Coefficients q(gamma, m) of the vector-valued Eisenstein series of weight
/// 1 + n/2 for the dual Weil representation, normalized to constant term 2 at
/// e_0.  Closed forms are implemented for the cases where they specialize to
/// plain divisor sums: the trivial discriminant form, the level-3 form 3^{+5},
/// and the gamma = 0 branch at level 6.

/// Trivial discriminant form, k in {6, 10, 14}: q(0,m) = -(4k/B_k) sigma_{k-1}(m).
inline Rat q_level1(long k, long m)
{
    if (m < 1) throw std::invalid_argument("q_level1: m must be >= 1");
    Rat bk;
    switch (k) {
        case 6: bk = make_rat(1, 42); break;
        case 10: bk = make_rat(5, 66); break;
        case 14: bk = make_rat(7, 6); break;
        default: throw std::invalid_argument("q_level1: k must be in {6, 10, 14}");
    }
    Int sigma(0);
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) sigma += int_pow(Int(d), k - 1);
    return Rat(-4 * k) / bk * Rat(sigma);
}

/// 3^{+5} at signature (2,4), weight 3.  chi is the Legendre symbol mod 3.
/// gamma != 0: q(gamma,m) = -2 sum_{d | 3m} chi(3m/d) d^2   (3m a positive integer)
/// gamma  = 0: q(0,m) = -18 sum_{d|m} chi(m/d) d^2 - 18 sum_{d|m} chi(d) d^2
inline Rat q_level3(bool gamma_zero, const Rat& m)
{
    if (m <= 0) throw std::invalid_argument("q_level3: m must be positive");
    if (gamma_zero) {
        if (!is_integer(m)) throw std::invalid_argument("q_level3: gamma = 0 needs integer m");
        long mm = to_long(m);
        Int s(0);
        for (long d = 1; d <= mm; ++d)
            if (mm % d == 0) s += Int(d) * d * (kronecker(mm / d, 3) + kronecker(d, 3));
        return Rat(-18) * Rat(s);
    }
    Rat m3 = 3 * m;
    if (!is_integer(m3)) throw std::invalid_argument("q_level3: 3m must be an integer");
    long mm = to_long(m3);
    Int s(0);
    for (long d = 1; d <= mm; ++d)
        if (mm % d == 0) s += Int(d) * d * kronecker(mm / d, 3);
    return Rat(-2) * Rat(s);
}

/// Level-6 lattices at signature (2,4), gamma = 0 branch.  psi is the
/// Kronecker symbol mod 3 and chi the one mod 12:
/// q(0,m) = -sum_{d|m} (36 chi(m/d) - 18 psi(m/d)(-1)^d
///                      + 4 (m/d | 2)^2 psi(d) - 2 psi(d)(-1)^d) d^2
inline Rat q_level6_zero(long m)
{
    if (m < 1) throw std::invalid_argument("q_level6_zero: m must be >= 1");
    Int s(0);
    for (long d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        long e = m / d;
        long sign_d = d % 2 ? -1 : 1;  // (-1)^d
        long k2 = kronecker(e, 2);
        long term = 36 * kronecker(e, 12) - 18 * kronecker(e, 3) * sign_d +
                    4 * k2 * k2 * kronecker(d, 3) - 2 * kronecker(d, 3) * sign_d;
        s += Int(term) * d * d;
    }
    return Rat(-1) * Rat(s);
}

namespace detail {

/// Certified rational brackets zeta_lo < zeta(k) < zeta_hi for k in {2, 3, 4}.
inline std::pair<Rat, Rat> zeta_bracket(long k)
{
    switch (k) {
        // zeta(2) = 1.6449340668..., zeta(3) = 1.2020569031..., zeta(4) = 1.0823232337...
        case 2: return {make_rat(16449, 10000), make_rat(16450, 10000)};
        case 3: return {make_rat(12020, 10000), make_rat(12021, 10000)};
        case 4: return {make_rat(10823, 10000), make_rat(10824, 10000)};
        default: throw std::invalid_argument("zeta_bracket: k must be in {2, 3, 4}");
    }
}

} // namespace detail

/// Certified enclosure of sum_{d|m} a_d d^k for a_d in {-1,0,1}, a_m = 1:
/// the sum lies in [m^k (2 - zeta(k)), m^k zeta(k)].  The zeta values enter
/// through rational brackets so both endpoints are safe.
inline std::pair<Rat, Rat> divisor_sum_bounds(long k, long m)
{
    if (k < 2) throw std::invalid_argument("divisor_sum_bounds: k must be >= 2");
    if (m < 1) throw std::invalid_argument("divisor_sum_bounds: m must be >= 1");
    auto [zlo, zhi] = detail::zeta_bracket(k);
    Rat mk = Rat(int_pow(Int(m), k));
    return {mk * (2 - zhi), mk * zhi};
}

} // namespace vvmf

#endif
