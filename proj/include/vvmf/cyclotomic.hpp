#ifndef VVMF_CYCLOTOMIC_HPP
#define VVMF_CYCLOTOMIC_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vvmf/rational.hpp"

namespace vvmf {

/// Cached data for Q(zeta_M): the M-th cyclotomic polynomial and the
/// canonical images of the powers zeta^k in the basis 1,zeta,...,zeta^{phi-1}.
class CycField {
  public:
    long conductor() const { return m_; }
    long degree() const { return phi_; }

    /// zeta^k reduced mod Phi_M, for 0 <= k < table size (>= max(M, 2*phi-1)).
    const std::vector<Int>& power(long k) const { return powers_[k]; }

    static const CycField& get(long m);

    const std::vector<Int>& cyclotomic_poly() const { return poly_; }

  private:
    explicit CycField(long m);

    long m_ = 1;
    long phi_ = 1;
    std::vector<Int> poly_;                 // monic, degree phi_
    std::vector<std::vector<Int>> powers_;  // each of length phi_
};

namespace detail {

// x^n - 1 divided exactly by d (both monic over Z).
inline std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den)
{
    long dn = (long)num.size() - 1;
    long dd = (long)den.size() - 1;
    std::vector<Int> q(dn - dd + 1, Int(0));
    for (long i = dn; i >= dd; --i) {
        Int c = num[i];
        if (c == 0) continue;
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

inline const std::vector<Int>& cyclotomic_polynomial(long m)
{
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::function<std::vector<Int>(long)> compute = [&](long n) -> std::vector<Int> {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        std::vector<Int> num(n + 1, Int(0));
        num[0] = -1;
        num[n] = 1;
        for (long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            num = poly_div_exact(std::move(num), compute(d));
        }
        cache[n] = num;
        return num;
    };
    compute(m);
    return cache.at(m);
}

} // namespace detail

inline CycField::CycField(long m) : m_(m)
{
    poly_ = detail::cyclotomic_polynomial(m);
    phi_ = (long)poly_.size() - 1;
    long count = std::max(m, 2 * phi_ - 1) + 1;
    powers_.resize(count);
    std::vector<Int> cur(phi_, Int(0));
    cur[0] = 1;
    powers_[0] = cur;
    for (long k = 1; k < count; ++k) {
        // multiply by x, reduce the top coefficient with the monic Phi_M
        Int top = cur[phi_ - 1];
        for (long j = phi_ - 1; j >= 1; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (long j = 0; j < phi_; ++j) cur[j] -= top * poly_[j];
        powers_[k] = cur;
    }
}

inline const CycField& CycField::get(long m)
{
    static std::map<long, std::unique_ptr<CycField>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, std::unique_ptr<CycField>(new CycField(m))).first;
    return *it->second;
}

/// Exact element of the cyclotomic field Q(zeta_M), stored in the canonical
/// power basis modulo the M-th cyclotomic polynomial.  Mixed-conductor
/// arithmetic promotes both operands to the lcm field.
class Cyc {
  public:
    Cyc() : m_(1), c_(1, Rat(0)) {}
    explicit Cyc(const Rat& r) : m_(1), c_(1, r) {}
    explicit Cyc(long n) : m_(1), c_(1, Rat(n)) {}
    Cyc(long m, std::vector<Rat> coords) : m_(m), c_(std::move(coords)) {}

    long conductor() const { return m_; }
    const std::vector<Rat>& coords() const { return c_; }

    /// e(num/den) = exp(2*pi*i*num/den) as an exact root of unity.
    static Cyc root_of_unity(long den, long num)
    {
        long g = gcd_long(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (den < 0) { den = -den; num = -num; }
        num = ((num % den) + den) % den;
        const CycField& f = CycField::get(den);
        std::vector<Rat> c(f.degree(), Rat(0));
        const auto& p = f.power(num);
        for (long j = 0; j < f.degree(); ++j) c[j] = Rat(p[j]);
        return Cyc(den, std::move(c));
    }

    /// e(x) for a rational x.
    static Cyc e(const Rat& x)
    {
        Rat f = frac(x);
        return root_of_unity(to_long(Int(f.get_den())), to_long(Int(f.get_num())));
    }

    static Cyc i() { return root_of_unity(4, 1); }

    /// Exact square root of a positive integer, assembled from Gauss sums.
    static Cyc sqrt_int(long n);

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const
    {
        for (size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }

    Rat to_rat() const
    {
        if (!is_rational()) throw std::domain_error("Cyc::to_rat: not rational");
        return c_[0];
    }

    bool is_integer() const { return is_rational() && vvmf::is_integer(c_[0]); }

    Cyc promoted(long target) const
    {
        if (target == m_) return *this;
        if (target % m_ != 0) throw std::logic_error("Cyc::promoted: conductor mismatch");
        const CycField& f = CycField::get(target);
        long stride = target / m_;
        std::vector<Rat> out(f.degree(), Rat(0));
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const auto& p = f.power((long)j * stride);
            for (long t = 0; t < f.degree(); ++t)
                if (p[t] != 0) out[t] += c_[j] * Rat(p[t]);
        }
        return Cyc(target, std::move(out));
    }

    /// Smallest-conductor representation (descends to a subfield when possible).
    /// Only used for printing/tests; arithmetic keeps the ambient conductor.
    friend Cyc operator+(const Cyc& a, const Cyc& b)
    {
        long m = lcm_long(a.m_, b.m_);
        Cyc x = a.promoted(m), y = b.promoted(m);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] += y.c_[j];
        return x;
    }

    friend Cyc operator-(const Cyc& a, const Cyc& b)
    {
        long m = lcm_long(a.m_, b.m_);
        Cyc x = a.promoted(m), y = b.promoted(m);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] -= y.c_[j];
        return x;
    }

    Cyc operator-() const
    {
        Cyc x = *this;
        for (auto& v : x.c_) v = -v;
        return x;
    }

    friend Cyc operator*(const Cyc& a, const Cyc& b)
    {
        long m = lcm_long(a.m_, b.m_);
        Cyc x = a.promoted(m), y = b.promoted(m);
        const CycField& f = CycField::get(m);
        long phi = f.degree();
        std::vector<Rat> prod(2 * phi - 1, Rat(0));
        for (long j = 0; j < phi; ++j) {
            if (x.c_[j] == 0) continue;
            for (long t = 0; t < phi; ++t) {
                if (y.c_[t] == 0) continue;
                prod[j + t] += x.c_[j] * y.c_[t];
            }
        }
        std::vector<Rat> out(phi, Rat(0));
        for (long k = 0; k < 2 * phi - 1; ++k) {
            if (prod[k] == 0) continue;
            if (k < phi) {
                out[k] += prod[k];
            } else {
                const auto& p = f.power(k);
                for (long t = 0; t < phi; ++t)
                    if (p[t] != 0) out[t] += prod[k] * Rat(p[t]);
            }
        }
        return Cyc(m, std::move(out));
    }

    friend Cyc operator*(const Rat& r, const Cyc& a)
    {
        Cyc x = a;
        for (auto& v : x.c_) v *= r;
        return x;
    }

    Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }
    Cyc& operator-=(const Cyc& o) { *this = *this - o; return *this; }
    Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }

    friend bool operator==(const Cyc& a, const Cyc& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    /// Galois action zeta -> zeta^t for gcd(t,M)=1.
    Cyc galois(long t) const
    {
        const CycField& f = CycField::get(m_);
        long phi = f.degree();
        t = ((t % m_) + m_) % m_;
        std::vector<Rat> out(phi, Rat(0));
        for (long j = 0; j < phi; ++j) {
            if (c_[j] == 0) continue;
            const auto& p = f.power((j * t) % m_);
            for (long s = 0; s < phi; ++s)
                if (p[s] != 0) out[s] += c_[j] * Rat(p[s]);
        }
        return Cyc(m_, std::move(out));
    }

    Cyc conj() const { return galois(m_ - 1); }

    Cyc real_part() const
    {
        Cyc r = *this + conj();
        for (auto& v : r.c_) v /= 2;
        return r;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    Cyc inverse() const;

    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

    std::complex<double> to_complex() const
    {
        std::complex<double> z(0.0, 0.0);
        const double two_pi = 6.283185307179586476925286766559;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            double arg = two_pi * (double)j / (double)m_;
            z += c_[j].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return z;
    }

    std::string str() const
    {
        std::string s = "(";
        for (size_t j = 0; j < c_.size(); ++j) {
            if (j) s += ",";
            s += c_[j].get_str();
        }
        s += ")_z" + std::to_string(m_);
        return s;
    }

  private:
    long m_;
    std::vector<Rat> c_;
};

inline Cyc Cyc::sqrt_int(long n)
{
    if (n <= 0) throw std::domain_error("sqrt_int: need positive");
    Cyc out(Rat(1));
    long sq = 1;
    while (n % 4 == 0) { n /= 4; sq *= 2; }
    for (long p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0 && p > 2) { n /= p * p; sq *= p; }
        if (p == 2) continue;
    }
    out = Cyc(Rat(sq)) * out;
    // n is now square-free (up to a possible single factor of 2)
    long rem = n;
    for (long p = 2; rem > 1; ++p) {
        if (rem % p != 0) continue;
        rem /= p;
        if (p == 2) {
            // sqrt(2) = zeta_8 + zeta_8^{-1}
            Cyc s = root_of_unity(8, 1) + root_of_unity(8, -1);
            out = out * s;
        } else {
            // quadratic Gauss sum: sum (x|p) zeta_p^x = sqrt(p) or i*sqrt(p)
            Cyc g(Rat(0));
            for (long x = 1; x < p; ++x) {
                int chi = kronecker(x, p);
                Cyc term = root_of_unity(p, x);
                g = chi > 0 ? g + term : g - term;
            }
            if (p % 4 == 3) g = root_of_unity(4, -1) * g;
            out = out * g;
        }
    }
    return out;
}

inline Cyc Cyc::inverse() const
{
    if (is_zero()) throw std::domain_error("Cyc::inverse: zero");
    if (is_rational()) return Cyc(m_, [&] {
        std::vector<Rat> v(c_.size(), Rat(0));
        v[0] = Rat(1) / c_[0];
        return v;
    }());
    const CycField& f = CycField::get(m_);
    long phi = f.degree();
    // extended euclid: r0 = Phi_M, r1 = this (as Q[x] polys)
    std::vector<Rat> r0(phi + 1), r1(c_.begin(), c_.end());
    for (long j = 0; j <= phi; ++j) r0[j] = Rat(f.cyclotomic_poly()[j]);
    std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};
    auto deg = [](const std::vector<Rat>& p) {
        for (long j = (long)p.size() - 1; j >= 0; --j)
            if (p[j] != 0) return j;
        return -1L;
    };
    while (true) {
        long d1 = deg(r1);
        if (d1 < 0) throw std::logic_error("Cyc::inverse: gcd not 1");
        if (d1 == 0) break;
        // r0 = q*r1 + r2
        std::vector<Rat> rem = r0;
        std::vector<Rat> q(std::max<long>(deg(r0) - d1 + 1, 1), Rat(0));
        for (long i = deg(rem); i >= d1; --i) {
            if (rem[i] == 0) continue;
            Rat c = rem[i] / r1[d1];
            q[i - d1] = c;
            for (long j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
        }
        // t2 = t0 - q*t1
        std::vector<Rat> t2(std::max(t0.size(), q.size() + t1.size()), Rat(0));
        for (size_t j = 0; j < t0.size(); ++j) t2[j] = t0[j];
        for (size_t a = 0; a < q.size(); ++a) {
            if (q[a] == 0) continue;
            for (size_t b = 0; b < t1.size(); ++b) t2[a + b] -= q[a] * t1[b];
        }
        r0 = std::move(r1); r1 = std::move(rem);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    Rat unit = r1[deg(r1)];
    std::vector<Rat> res(phi, Rat(0));
    for (size_t j = 0; j < t1.size() && j < (size_t)phi; ++j) res[j] = t1[j] / unit;
    // t1 may exceed degree phi-1; reduce
    for (size_t j = phi; j < t1.size(); ++j) {
        if (t1[j] == 0) continue;
        const auto& p = f.power((long)j);
        for (long s = 0; s < phi; ++s)
            if (p[s] != 0) res[s] += (t1[j] / unit) * Rat(p[s]);
    }
    Cyc inv(m_, std::move(res));
    return inv;
}

/// Sum of integer-weighted roots of unity: sum_k counts[k] * zeta_M^k.
inline Cyc cyc_from_counts(long m, const std::vector<Int>& counts)
{
    const CycField& f = CycField::get(m);
    long phi = f.degree();
    std::vector<Rat> out(phi, Rat(0));
    for (size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) continue;
        const auto& p = f.power((long)(k % m));
        for (long t = 0; t < phi; ++t)
            if (p[t] != 0) out[t] += Rat(counts[k]) * Rat(p[t]);
    }
    return Cyc(m, std::move(out));
}

} // namespace vvmf

#endif
