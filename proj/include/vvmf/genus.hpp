#ifndef VVMF_GENUS_HPP
#define VVMF_GENUS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvmf/cyclotomic.hpp"
#include "vvmf/rational.hpp"

namespace vvmf {

struct GenusSignature {
    long bplus = 2;
    long bminus = 0;

    long r() const { return bplus - bminus; }  // r = b+ - b-, even here
};

/// Jordan component of a square-free-level discriminant form: p^{eps*n} for
/// odd p, or the even 2-adic block 2_II^{eps*n} (n even).
struct JordanComponent {
    long p = 2;
    long rank = 0;
    int sign = +1;

    void validate() const
    {
        if (rank < 1) throw std::invalid_argument("JordanComponent: rank must be >= 1");
        if (sign != 1 && sign != -1) throw std::invalid_argument("JordanComponent: sign");
        if (p == 2) {
            if (rank % 2 != 0)
                throw std::invalid_argument("JordanComponent: 2_II rank must be even");
        } else if (p < 3 || p % 2 == 0) {
            throw std::invalid_argument("JordanComponent: p must be 2 or an odd prime");
        }
    }
};

struct GenusSymbol {
    GenusSignature sig;
    std::vector<JordanComponent> comps;  // primes strictly ascending

    void validate() const
    {
        long last = 1;
        for (const auto& c : comps) {
            c.validate();
            if (c.p <= last)
                throw std::invalid_argument("GenusSymbol: primes must be strictly ascending");
            last = c.p;
        }
        if (sig.bminus % 2 != 0 || sig.bplus != 2)
            throw std::invalid_argument("GenusSymbol: signature must be (2,n) with n even");
    }

    long level() const
    {
        long N = 1;
        for (const auto& c : comps) N *= c.p;
        return N;
    }

    Int order() const
    {
        Int d(1);
        for (const auto& c : comps) d *= int_pow(Int(c.p), c.rank);
        return d;
    }

    std::string str() const
    {
        std::string s = "II_(2," + std::to_string(sig.bminus) + ")(";
        bool first = true;
        for (const auto& c : comps) {
            if (!first) s += " ";
            first = false;
            if (c.p == 2) s += "2_II";
            else s += std::to_string(c.p);
            s += "^";
            s += c.sign > 0 ? "+" : "-";
            s += std::to_string(c.rank);
        }
        s += ")";
        return s;
    }

    static GenusSymbol parse(const std::string& text);
};

inline GenusSymbol GenusSymbol::parse(const std::string& text)
{
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("GenusSymbol::parse: " + why + " in '" + text + "'");
    };
    if (text.rfind("II_(", 0) != 0) fail("expected prefix II_(");
    size_t close = text.find(')');
    if (close == std::string::npos) fail("missing signature close");
    std::string sigpart = text.substr(4, close - 4);
    size_t comma = sigpart.find(',');
    if (comma == std::string::npos) fail("missing signature comma");
    GenusSymbol g;
    try {
        g.sig.bplus = std::stol(sigpart.substr(0, comma));
        g.sig.bminus = std::stol(sigpart.substr(comma + 1));
    } catch (const std::exception&) {
        fail("bad signature numbers");
    }
    size_t open = text.find('(', close + 1);
    if (open == std::string::npos || text.back() != ')') fail("missing component list");
    std::string body = text.substr(open + 1, text.size() - open - 2);
    size_t pos = 0;
    while (pos < body.size()) {
        while (pos < body.size() && body[pos] == ' ') ++pos;
        if (pos >= body.size()) break;
        size_t end = body.find(' ', pos);
        std::string tok = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? body.size() : end + 1;
        JordanComponent c;
        size_t caret = tok.find('^');
        if (caret == std::string::npos || caret + 2 > tok.size()) fail("component missing ^");
        std::string base = tok.substr(0, caret);
        if (base == "2_II") c.p = 2;
        else {
            try { c.p = std::stol(base); } catch (const std::exception&) { fail("bad prime"); }
            if (c.p == 2) fail("odd-type 2-adic component not supported");
        }
        char sgn = tok[caret + 1];
        if (sgn == '+') c.sign = +1;
        else if (sgn == '-') c.sign = -1;
        else fail("component sign");
        try { c.rank = std::stol(tok.substr(caret + 2)); }
        catch (const std::exception&) { fail("bad rank"); }
        g.comps.push_back(c);
    }
    g.validate();
    return g;
}

using DElement = std::vector<long>;

/// Concrete finite quadratic module: generators g_i of given orders with
/// Q(g_i) and pairings (g_i,g_j) stored mod 1.  Covers both the Jordan-block
/// realizations of genus symbols and quotients L'/L from Gram matrices.
class FiniteQuadraticModule {
  public:
    FiniteQuadraticModule() = default;

    FiniteQuadraticModule(std::vector<long> orders, std::vector<Rat> qdiag,
                          std::vector<std::vector<Rat>> bil)
        : orders_(std::move(orders)), qdiag_(std::move(qdiag)), bil_(std::move(bil))
    {
        order_ = 1;
        for (long o : orders_) order_ *= o;
        for (auto& q : qdiag_) q = mod1(q);
        for (auto& row : bil_)
            for (auto& b : row) b = mod1(b);
        level_ = 1;
        for (size_t i = 0; i < orders_.size(); ++i) {
            level_ = lcm_long(level_, to_long(Int(mod1(qdiag_[i]).get_den())));
            for (size_t j = 0; j < orders_.size(); ++j)
                level_ = lcm_long(level_, to_long(Int(mod1(bil_[i][j]).get_den())));
        }
    }

    /// Explicit model of a genus symbol: odd p^{eps n} as diag(1,..,1,a)/p with
    /// (a|p) = eps*(2|p)^n; 2_II^{eps n} as U/V blocks with an odd number of V
    /// blocks exactly when eps = -1.
    static FiniteQuadraticModule realize(const GenusSymbol& g)
    {
        g.validate();
        std::vector<long> orders;
        std::vector<Rat> qd;
        std::vector<std::pair<size_t, size_t>> halves;  // U/V off-diagonal pairs
        for (const auto& c : g.comps) {
            if (c.p == 2) {
                long nv = c.sign == -1 ? 1 : 0;  // V count parity carries the sign
                for (long b = 0; b < c.rank / 2; ++b) {
                    bool is_v = b < nv;
                    size_t i = orders.size();
                    orders.push_back(2);
                    orders.push_back(2);
                    qd.push_back(is_v ? make_rat(1, 2) : Rat(0));
                    qd.push_back(is_v ? make_rat(1, 2) : Rat(0));
                    halves.emplace_back(i, i + 1);
                }
            } else {
                int target = c.sign * ((kronecker(2, c.p) == 1) ? 1 : (c.rank % 2 ? -1 : 1));
                // find a with (a|p) = target
                long a = 1;
                if (target == -1)
                    while (kronecker(a, c.p) != -1) ++a;
                for (long i = 0; i < c.rank; ++i) {
                    orders.push_back(c.p);
                    qd.push_back(make_rat(i + 1 == c.rank ? a : 1, c.p));
                }
            }
        }
        size_t n = orders.size();
        std::vector<std::vector<Rat>> bil(n, std::vector<Rat>(n, Rat(0)));
        for (size_t i = 0; i < n; ++i) bil[i][i] = mod1(2 * qd[i]);
        for (auto [i, j] : halves) bil[i][j] = bil[j][i] = make_rat(1, 2);
        return FiniteQuadraticModule(std::move(orders), std::move(qd), std::move(bil));
    }

    size_t ngens() const { return orders_.size(); }
    const std::vector<long>& orders() const { return orders_; }
    const Int& order() const { return order_; }
    long level() const { return level_; }

    DElement zero() const { return DElement(orders_.size(), 0); }

    bool is_zero(const DElement& a) const
    {
        for (long x : a)
            if (x != 0) return false;
        return true;
    }

    DElement reduce(const DElement& a) const
    {
        DElement r(a);
        for (size_t i = 0; i < r.size(); ++i) r[i] = ((r[i] % orders_[i]) + orders_[i]) % orders_[i];
        return r;
    }

    DElement add(const DElement& a, const DElement& b) const
    {
        DElement r(orders_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + b[i]) % orders_[i];
        return r;
    }

    DElement neg(const DElement& a) const
    {
        DElement r(orders_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = (orders_[i] - a[i]) % orders_[i];
        return r;
    }

    DElement smul(long k, const DElement& a) const
    {
        DElement r(orders_.size());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = ((k % orders_[i]) * a[i] % orders_[i] + orders_[i]) % orders_[i];
        return r;
    }

    Rat q_value(const DElement& a) const
    {
        Rat q(0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            q += qdiag_[i] * Rat(a[i]) * Rat(a[i]);
            for (size_t j = i + 1; j < a.size(); ++j)
                if (a[j] != 0) q += bil_[i][j] * Rat(a[i]) * Rat(a[j]);
        }
        return mod1(q);
    }

    Rat bilinear(const DElement& a, const DElement& b) const
    {
        Rat v(0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) v += bil_[i][j] * Rat(a[i]) * Rat(b[j]);
        }
        return mod1(v);
    }

    /// Visits every element; only valid when |D| fits in machine range.
    void for_each(const std::function<void(const DElement&)>& fn) const
    {
        DElement cur = zero();
        while (true) {
            fn(cur);
            size_t i = 0;
            for (; i < cur.size(); ++i) {
                if (++cur[i] < orders_[i]) break;
                cur[i] = 0;
            }
            if (i == cur.size()) break;
        }
    }

    std::vector<DElement> elements() const
    {
        std::vector<DElement> out;
        out.reserve(order_.fits_slong_p() ? (size_t)order_.get_si() : 0);
        for_each([&](const DElement& g) { out.push_back(g); });
        return out;
    }

    /// m-torsion subgroup D^m = {gamma : m*gamma = 0} with the restricted form.
    FiniteQuadraticModule torsion_subgroup(long m) const
    {
        std::vector<size_t> keep;
        for (size_t i = 0; i < orders_.size(); ++i) {
            long o = orders_[i] / gcd_long(orders_[i], m);
            if (o == 1) keep.push_back(i);
            else if (o != orders_[i])
                throw std::logic_error("torsion_subgroup: non-prime generator order");
        }
        std::vector<long> orders;
        std::vector<Rat> qd;
        std::vector<std::vector<Rat>> bil(keep.size(), std::vector<Rat>(keep.size(), Rat(0)));
        for (size_t a = 0; a < keep.size(); ++a) {
            orders.push_back(orders_[keep[a]]);
            qd.push_back(qdiag_[keep[a]]);
            for (size_t b = 0; b < keep.size(); ++b) bil[a][b] = bil_[keep[a]][keep[b]];
        }
        return FiniteQuadraticModule(std::move(orders), std::move(qd), std::move(bil));
    }

    /// Brute-force Gauss sum G(n) = sum_gamma e(n*Q(gamma)).
    Cyc gauss_sum_bruteforce(long n) const
    {
        long N = level_ == 0 ? 1 : level_;
        std::vector<Int> counts(N, Int(0));
        for_each([&](const DElement& g) {
            Rat e = mod1(Rat(n) * q_value(g)) * N;
            counts[to_long(e)] += 1;
        });
        return cyc_from_counts(N, counts);
    }

    /// Brute-force norm counts: j -> #{gamma : Q(gamma) = j/level}.
    std::map<long, Int> norm_counts_bruteforce() const
    {
        std::map<long, Int> out;
        long N = level_ == 0 ? 1 : level_;
        for (long j = 0; j < N; ++j) out[j] = 0;
        for_each([&](const DElement& g) { out[to_long(q_value(g) * N)] += 1; });
        return out;
    }

  private:
    std::vector<long> orders_;
    std::vector<Rat> qdiag_;
    std::vector<std::vector<Rat>> bil_;
    Int order_ = 1;
    long level_ = 1;
};

// ---------------------------------------------------------------------------
// Closed forms per Jordan component (verified against brute force in tests).
// ---------------------------------------------------------------------------

/// Gauss sum of one Jordan component, exact.
inline Cyc component_gauss_sum(const JordanComponent& c, long m)
{
    c.validate();
    if (c.p == 2) {
        if (m % 2 == 0) return Cyc(Rat(int_pow(Int(2), c.rank)));
        Int mag = int_pow(Int(2), c.rank / 2);
        return Cyc(Rat(c.sign) * Rat(mag));
    }
    long mp = ((m % c.p) + c.p) % c.p;
    if (mp == 0) return Cyc(Rat(int_pow(Int(c.p), c.rank)));
    // diag model: G = (m|p)^n (prod a|p) g_p^n with (prod a|p) = eps (2|p)^n
    int sgn = c.sign;
    if (c.rank % 2) sgn *= kronecker(2 * m, c.p);
    // g_p^n = ((-1|p) p)^{n/2} * g_p^{n mod 2}
    long half = c.rank / 2;
    Int even_part = int_pow(Int(c.p), half);
    if (kronecker(-1, c.p) == -1 && half % 2 == 1) sgn = -sgn;
    Cyc out(Rat(sgn) * Rat(even_part));
    if (c.rank % 2) {
        Cyc g(Rat(0));
        for (long x = 0; x < c.p; ++x) g += Cyc::root_of_unity(c.p, (x * x) % c.p);
        out = out * g;
    }
    return out;
}

/// G(m, D) = prod over components; exact cyclotomic value.
inline Cyc gauss_sum(const GenusSymbol& g, long m)
{
    Cyc out(Rat(1));
    for (const auto& c : g.comps) out = out * component_gauss_sum(c, m);
    return out;
}

/// Milgram signature of the discriminant form mod 8:
/// G(1,D) = sqrt(|D|) e(milgram_sig/8).
inline long milgram_sig(const GenusSymbol& g)
{
    long s = 0;
    for (const auto& c : g.comps) {
        if (c.p == 2) {
            if (c.sign == -1) s += 4;
            continue;
        }
        long t = (c.p % 4 == 3) ? 2 : 0;  // phase of g_p = sqrt(p) e(t/8)
        s += c.rank * t;
        int u = c.sign;  // eps * (2|p)^n = (prod a|p) * (m-part), m=1
        if (c.rank % 2) u *= kronecker(2, c.p);
        if (u == -1) s += 4;
    }
    return ((s % 8) + 8) % 8;
}

/// Per-component norm counts: j -> #{x : Q(x) = j/p} (j mod p, or mod 2).
inline std::vector<Int> component_norm_counts(const JordanComponent& c)
{
    c.validate();
    if (c.p == 2) {
        Int half = int_pow(Int(2), c.rank - 1);
        Int dev = c.rank >= 2 ? int_pow(Int(2), c.rank / 2 - 1) : Int(0);
        return {half + c.sign * dev, half - c.sign * dev};
    }
    long p = c.p, n = c.rank;
    // discriminant of the diagonal model
    int delta = c.sign;
    if (n % 2) delta *= kronecker(2, p);  // (prod a|p) = eps (2|p)^n
    std::vector<Int> out(p, Int(0));
    if (n % 2 == 0) {
        Int base = int_pow(Int(p), n - 1);
        Int dev = n >= 2 ? int_pow(Int(p), n / 2 - 1) : Int(0);
        int eta = delta;
        if ((n / 2) % 2 == 1 && kronecker(-1, p) == -1) eta = -eta;
        for (long j = 0; j < p; ++j) {
            long v = (j == 0) ? p - 1 : -1;
            out[j] = base + v * eta * dev;
        }
    } else {
        Int base = int_pow(Int(p), n - 1);
        Int dev = int_pow(Int(p), (n - 1) / 2);
        int eta0 = delta;
        if (((n - 1) / 2) % 2 == 1 && kronecker(-1, p) == -1) eta0 = -eta0;
        for (long j = 0; j < p; ++j) {
            if (j == 0) out[j] = base;
            else out[j] = base + eta0 * kronecker(j, p) * dev;
        }
    }
    return out;
}

/// Norm counts of the full discriminant form by CRT across components:
/// count(j) = prod_p count_p(j * (N/p)^{-1} mod p), N the level.
inline std::map<long, Int> norm_counts(const GenusSymbol& g)
{
    long N = g.level();
    std::map<long, Int> out;
    std::vector<std::pair<long, std::vector<Int>>> comp;
    for (const auto& c : g.comps) comp.emplace_back(c.p, component_norm_counts(c));
    for (long j = 0; j < N; ++j) {
        Int v(1);
        for (const auto& [p, counts] : comp) {
            long inv = inv_mod((N / p) % p, p);
            v *= counts[(j % p) * inv % p];
        }
        out[j] = v;
    }
    return out;
}

} // namespace vvmf

#endif
