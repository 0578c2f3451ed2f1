#ifndef VVMF_QSERIES_HPP
#define VVMF_QSERIES_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvmf/cyclotomic.hpp"
#include "vvmf/rational.hpp"

namespace vvmf {

inline bool coef_is_zero(const Rat& c) { return c == 0; }
inline bool coef_is_zero(const Cyc& c) { return c.is_zero(); }
inline Rat coef_one(const Rat*) { return Rat(1); }
inline Cyc coef_one(const Cyc*) { return Cyc(Rat(1)); }

/// Sparse formal series sum c_a q^(a/den) with an explicit truncation order:
/// coefficients are guaranteed correct exactly for exponents < trunc.
/// Exponents are keyed by their numerator over the shared denominator.
template <class Coef>
class QSeries {
  public:
    QSeries() : den_(1), trunc_(0) {}
    QSeries(long den, const Rat& trunc_exp) : den_(den)
    {
        Rat t = trunc_exp * den;
        if (!is_integer(t)) throw std::invalid_argument("QSeries: truncation not in (1/den)Z");
        trunc_ = to_long(t);
    }

    long denominator() const { return den_; }
    Rat truncation() const { return make_rat(trunc_, den_); }
    long truncation_num() const { return trunc_; }
    const std::map<long, Coef>& terms() const { return c_; }

    static QSeries one(long den, const Rat& trunc_exp)
    {
        QSeries s(den, trunc_exp);
        s.add_term(Rat(0), coef_one((const Coef*)nullptr));
        return s;
    }

    void add_term(const Rat& exp, const Coef& c)
    {
        Rat e = exp * den_;
        if (!is_integer(e)) throw std::invalid_argument("QSeries: exponent not in (1/den)Z");
        long n = to_long(e);
        if (n >= trunc_) return;
        auto it = c_.find(n);
        if (it == c_.end()) {
            if (!coef_is_zero(c)) c_[n] = c;
        } else {
            it->second += c;
            if (coef_is_zero(it->second)) c_.erase(it);
        }
    }

    Coef coeff(const Rat& exp) const
    {
        Rat e = exp * den_;
        if (!is_integer(e)) return Coef{};
        long n = to_long(e);
        if (n >= trunc_) throw std::out_of_range("QSeries::coeff: beyond truncation " + exp.get_str());
        auto it = c_.find(n);
        return it == c_.end() ? Coef{} : it->second;
    }

    bool is_zero() const { return c_.empty(); }

    /// Exponent of the lowest-order term (requires a nonzero term).
    Rat order() const
    {
        if (c_.empty()) throw std::domain_error("QSeries::order: zero series");
        return make_rat(c_.begin()->first, den_);
    }

    /// Same series over a denominator multiple.
    QSeries with_denominator(long newden) const
    {
        if (newden == den_) return *this;
        if (newden % den_ != 0) throw std::invalid_argument("QSeries: denominator must refine");
        long f = newden / den_;
        QSeries out;
        out.den_ = newden;
        out.trunc_ = trunc_ * f;
        for (const auto& [n, c] : c_) out.c_[n * f] = c;
        return out;
    }

    /// Substitute q -> q^f (integer f >= 1), e.g. eta(delta*tau) from eta(tau).
    QSeries exponent_scaled(long f) const
    {
        QSeries out;
        out.den_ = den_;
        out.trunc_ = trunc_ * f;
        for (const auto& [n, c] : c_) out.c_[n * f] = c;
        return out;
    }

    /// Divide all exponents by f (for expansions in q^{1/(f*den)}).
    QSeries exponent_divided(long f) const
    {
        QSeries out;
        out.den_ = den_ * f;
        out.trunc_ = trunc_;
        out.c_ = c_;
        return out;
    }

    QSeries truncated(const Rat& new_trunc) const
    {
        QSeries out(den_, new_trunc);
        if (out.trunc_ > trunc_)
            throw std::invalid_argument("QSeries::truncated: cannot extend truncation");
        for (const auto& [n, c] : c_)
            if (n < out.trunc_) out.c_[n] = c;
        return out;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b)
    {
        long den = lcm_long(a.den_, b.den_);
        QSeries x = a.with_denominator(den), y = b.with_denominator(den);
        QSeries out;
        out.den_ = den;
        out.trunc_ = std::min(x.trunc_, y.trunc_);
        out.c_ = x.c_;
        for (const auto& [n, c] : y.c_) {
            auto it = out.c_.find(n);
            if (it == out.c_.end()) out.c_[n] = c;
            else {
                it->second += c;
                if (coef_is_zero(it->second)) out.c_.erase(it);
            }
        }
        std::erase_if(out.c_, [&](const auto& kv) { return kv.first >= out.trunc_; });
        return out;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

    QSeries operator-() const
    {
        QSeries out = *this;
        for (auto& [n, c] : out.c_) c = -c;
        return out;
    }

    friend QSeries operator*(const Coef& s, const QSeries& a)
    {
        QSeries out = a;
        out.c_.clear();
        if (!coef_is_zero(s))
            for (const auto& [n, c] : a.c_) {
                Coef p = s * c;
                if (!coef_is_zero(p)) out.c_[n] = p;
            }
        return out;
    }

    /// Truncation of a product: correct to min(ord_a + trunc_b, ord_b + trunc_a).
    friend QSeries operator*(const QSeries& a, const QSeries& b)
    {
        long den = lcm_long(a.den_, b.den_);
        QSeries x = a.with_denominator(den), y = b.with_denominator(den);
        QSeries out;
        out.den_ = den;
        if (x.c_.empty() || y.c_.empty()) {
            long oa = x.c_.empty() ? x.trunc_ : x.c_.begin()->first;
            long ob = y.c_.empty() ? y.trunc_ : y.c_.begin()->first;
            out.trunc_ = std::min(oa + y.trunc_, ob + x.trunc_);
            return out;
        }
        long oa = x.c_.begin()->first, ob = y.c_.begin()->first;
        out.trunc_ = std::min(oa + y.trunc_, ob + x.trunc_);
        for (const auto& [n, cn] : x.c_) {
            for (const auto& [m, cm] : y.c_) {
                if (n + m >= out.trunc_) break;
                Coef p = cn * cm;
                if (coef_is_zero(p)) continue;
                auto it = out.c_.find(n + m);
                if (it == out.c_.end()) out.c_[n + m] = p;
                else {
                    it->second += p;
                    if (coef_is_zero(it->second)) out.c_.erase(it);
                }
            }
        }
        return out;
    }

    /// Inverse of a series with invertible leading coefficient, via factoring
    /// out the leading monomial and a geometric series in the unit tail.
    QSeries inverse() const
    {
        if (c_.empty()) throw std::domain_error("QSeries::inverse: zero series");
        long ord = c_.begin()->first;
        Coef lead = c_.begin()->second;
        // u = (series / lead*q^ord) - 1 : supported on exponents > 0
        QSeries u;
        u.den_ = den_;
        u.trunc_ = trunc_ - ord;
        Coef ilead = inv_coef(lead);
        for (auto it = std::next(c_.begin()); it != c_.end(); ++it)
            u.c_[it->first - ord] = ilead * it->second;
        // 1/(1+u) = 1 - u + u^2 - ...
        QSeries geo;
        geo.den_ = den_;
        geo.trunc_ = u.trunc_;
        geo.c_[0] = coef_one((const Coef*)nullptr);
        if (!u.c_.empty()) {
            QSeries upow = u;
            int sign = -1;
            long ustep = u.c_.begin()->first;
            for (long total = ustep; total < u.trunc_; total += ustep) {
                geo = sign < 0 ? geo - upow : geo + upow;
                upow = upow * u;
                upow.trunc_ = u.trunc_;  // relative precision is preserved here
                sign = -sign;
                if (upow.c_.empty()) break;
            }
        }
        // shift by -ord and divide by lead
        QSeries out;
        out.den_ = den_;
        out.trunc_ = geo.trunc_ - ord;
        for (const auto& [n, c] : geo.c_) out.c_[n - ord] = ilead * c;
        return out;
    }

    QSeries pow(long e) const
    {
        if (e == 0) {
            QSeries out = one(den_, Rat(0));
            // a^0 = 1, valid wherever a is (relative precision of a)
            out.trunc_ = c_.empty() ? trunc_ : trunc_ - c_.begin()->first;
            out.den_ = den_;
            out.c_.clear();
            out.c_[0] = coef_one((const Coef*)nullptr);
            return out;
        }
        QSeries base = e > 0 ? *this : inverse();
        unsigned long n = e > 0 ? e : -e;
        QSeries r = base;
        n -= 1;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    std::string str() const;

    static QSeries parse(const std::string& text);

  private:
    static Rat inv_coef(const Rat& c) { return Rat(1) / c; }
    static Cyc inv_coef(const Cyc& c) { return c.inverse(); }

    long den_;
    long trunc_;             // numerator of truncation exponent over den_
    std::map<long, Coef> c_; // exponent numerator -> coefficient
};

namespace detail {
inline std::string coef_str(const Rat& c) { return c.get_str(); }
inline std::string coef_str(const Cyc& c) { return c.str(); }
} // namespace detail

/// Textual format "c0*q^(a0/b) + c1*q^(a1/b) + ..." (exact round trip for
/// rational coefficients).
template <class Coef>
std::string QSeries<Coef>::str() const
{
    if (c_.empty()) return "0*q^(0/" + std::to_string(den_) + ")";
    std::string out;
    for (const auto& [n, c] : c_) {
        if (!out.empty()) out += " + ";
        out += detail::coef_str(c) + "*q^(" + std::to_string(n) + "/" + std::to_string(den_) + ")";
    }
    return out;
}

template <class Coef>
QSeries<Coef> QSeries<Coef>::parse(const std::string& text)
{
    std::vector<std::pair<Rat, Rat>> terms;  // (coef, exponent)
    long den = 1;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(" + ", pos);
        std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        size_t star = term.find("*q^(");
        if (star == std::string::npos || term.back() != ')')
            throw std::invalid_argument("QSeries::parse: bad term '" + term + "'");
        Rat coef(term.substr(0, star));
        coef.canonicalize();
        std::string expo = term.substr(star + 4, term.size() - star - 5);
        size_t slash = expo.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("QSeries::parse: bad exponent");
        long a = std::stol(expo.substr(0, slash));
        long b = std::stol(expo.substr(slash + 1));
        den = lcm_long(den, b);
        terms.emplace_back(coef, make_rat(a, b));
        pos = next == std::string::npos ? text.size() : next + 3;
    }
    Rat maxexp(0);
    for (const auto& [c, e] : terms) maxexp = std::max(maxexp, e);
    QSeries out(den, maxexp + 1);
    for (const auto& [c, e] : terms)
        if (c != 0) out.add_term(e, Coef(c));
    return out;
}

/// q^{1/24} * prod (1-q^n), by the pentagonal number theorem.
inline QSeries<Rat> eta_expansion(const Rat& truncation)
{
    if (!(truncation > make_rat(1, 24)))
        throw std::invalid_argument("eta_expansion: truncation must exceed 1/24");
    long den = lcm_long(24, to_long(Int(truncation.get_den())));
    QSeries<Rat> s(den, truncation);
    for (long k = 0;; k == 0 ? k = 1 : (k > 0 ? k = -k : k = -k + 1)) {
        Rat e = make_rat(k * (3 * k - 1), 2) + make_rat(1, 24);
        if (k > 0 && e >= truncation && make_rat(-k * (-3 * k - 1), 2) >= truncation) break;
        if (e < truncation) s.add_term(e, (k % 2 == 0) ? Rat(1) : Rat(-1));
        if (k < -100000) throw std::logic_error("eta_expansion: runaway");
    }
    return s;
}

/// Eta-quotient data prod_{delta|N} eta(delta*tau)^{r_delta}.
struct EtaQuotientSpec {
    long N = 1;
    std::map<long, long> r;  // delta -> exponent

    void validate() const
    {
        long sum_r = 0;
        Rat sum_dr(0), sum_rd(0);
        for (const auto& [d, e] : r) {
            if (d <= 0 || N % d != 0)
                throw std::invalid_argument("EtaQuotientSpec: delta must divide N");
            sum_r += e;
            sum_dr += Rat(d) * Rat(e);
            sum_rd += make_rat(e, d);
        }
        if (sum_r % 2 != 0)
            throw std::invalid_argument("EtaQuotientSpec: sum of exponents must be even");
        if (!is_integer(Rat(N) * sum_dr / 24) || !is_integer(Rat(N) * sum_rd / 24))
            throw std::invalid_argument("EtaQuotientSpec: integrality hypotheses fail");
    }

    /// Weight k = sum r_delta / 2 (integer by validation).
    long weight() const
    {
        long s = 0;
        for (const auto& [d, e] : r) s += e;
        return s / 2;
    }

    /// chi(M) = e(b * character_exponent()) for M = [[a,b],[c,d]] in Gamma_1(N);
    /// the exponent is (1/24) sum delta*r_delta reduced mod 1 to [0,1).
    Rat character_exponent() const
    {
        Rat s(0);
        for (const auto& [d, e] : r) s += Rat(d) * Rat(e);
        return mod1(s / 24);
    }
};

/// Expansion of prod eta(delta*tau)^{r_delta} with exact rational coefficients.
inline QSeries<Rat> eta_quotient(const EtaQuotientSpec& spec, const Rat& truncation)
{
    spec.validate();
    // slack absorbs the leading-order shifts of the product truncation rule
    Rat slack(1);
    for (const auto& [d, e] : spec.r) slack += make_rat((e > 0 ? e : -e) * d, 12);
    QSeries<Rat> out = QSeries<Rat>::one(24, truncation + slack);
    for (const auto& [d, e] : spec.r) {
        if (e == 0) continue;
        QSeries<Rat> base = eta_expansion(truncation + slack).exponent_scaled(d);
        out = out * base.pow(e);
    }
    return out.truncated(std::min(out.truncation(), truncation));
}

/// f|_k S for f = prod eta(delta*tau)^{r_delta}: exact cyclotomic prefactor
/// (-i)^k prod delta^{-r_delta/2} and the series prod eta(tau/delta)^{r_delta}
/// in powers of q^{1/lcm(24, 24*deltas)}.
inline std::pair<Cyc, QSeries<Rat>> eta_quotient_at_zero(const EtaQuotientSpec& spec,
                                                         const Rat& truncation)
{
    spec.validate();
    long k = spec.weight();
    Cyc pref = Cyc::e(make_rat(-k, 4));
    for (const auto& [d, e] : spec.r) {
        if (e == 0 || d == 1) continue;
        Cyc sq = Cyc::sqrt_int(d);
        Cyc p = Cyc(Rat(1));
        long n = e > 0 ? e : -e;
        for (long j = 0; j < n; ++j) p = p * sq;
        if (e > 0) p = p.inverse();
        pref = pref * p;
    }
    Rat slack(1);
    for (const auto& [d, e] : spec.r) slack += make_rat(e > 0 ? e : -e, 12);
    QSeries<Rat> out = QSeries<Rat>::one(24, truncation + slack);
    for (const auto& [d, e] : spec.r) {
        if (e == 0) continue;
        QSeries<Rat> base = eta_expansion((truncation + slack) * Rat(d)).exponent_divided(d);
        out = out * base.pow(e);
    }
    return {pref, out.truncated(std::min(out.truncation(), truncation))};
}

/// Decomposition s = sum_j g_{j/N} with g_{j/N} supported on exponents = j/N mod 1.
template <class Coef>
std::map<long, QSeries<Coef>> split_by_exponent_class(const QSeries<Coef>& s, long N)
{
    long den = lcm_long(s.denominator(), N);
    QSeries<Coef> t = s.with_denominator(den);
    std::map<long, QSeries<Coef>> parts;
    for (long j = 0; j < N; ++j) parts[j] = QSeries<Coef>(den, t.truncation());
    long step = den / N;
    for (const auto& [n, c] : t.terms()) {
        long cls = ((n % den) + den) % den;
        if (cls % step != 0)
            throw std::invalid_argument("split_by_exponent_class: exponent outside (1/N)Z classes");
        parts[cls / step].add_term(make_rat(n, den), c);
    }
    return parts;
}

} // namespace vvmf

#endif
