#ifndef VVMF_RATIONAL_HPP
#define VVMF_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vvmf {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int rat_floor(const Rat& x)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

/// Fractional part in [0,1).
inline Rat frac(const Rat& x)
{
    Rat f = x - Rat(rat_floor(x));
    return f;
}

/// Reduction of x modulo 1 to the representative in [0,1).
inline Rat mod1(const Rat& x) { return frac(x); }

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline long to_long(const Int& x)
{
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return x.get_si();
}

inline long to_long(const Rat& x)
{
    if (!is_integer(x)) throw std::domain_error("rational is not an integer: " + x.get_str());
    return to_long(Int(x.get_num()));
}

inline Int int_pow(const Int& b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& b, long e)
{
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? b : Rat(1) / b;
    unsigned long n = e > 0 ? e : -e;
    Rat r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

inline long gcd_long(long a, long b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

inline long lcm_long(long a, long b)
{
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

/// Modular inverse of a mod m (m > 0, gcd(a,m)=1).
inline long inv_mod(long a, long m)
{
    long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return ((t % m) + m) % m;
}

/// Kronecker symbol (a|n).
inline int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(long a, long n) { return kronecker(Int(a), Int(n)); }

} // namespace vvmf

#endif
