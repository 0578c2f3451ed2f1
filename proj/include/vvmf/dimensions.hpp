#ifndef VVMF_DIMENSIONS_HPP
#define VVMF_DIMENSIONS_HPP

#include "vvmf/genus.hpp"
#include "vvmf/weilrep.hpp"

namespace vvmf {

/// Exact dimension data for M_{k,rho*} and S_{k,rho*} on a square-free-level
/// discriminant form at signature (2,n).
struct DimensionReport {
    long k = 0;
    int c = 1;                 // (-1)^{(2k+r)/2}
    Rat d = Rat(0);            // dim V_0 = (|D| + c|D^2|)/2
    Rat alpha1, alpha2, alpha3, alpha4;
    Int dim_M = 0;
    Int dim_S = 0;
    bool has_dim_S = true;     // false for k = 2 (codimension formula needs k > 2)

    bool operator==(const DimensionReport& o) const
    {
        return k == o.k && c == o.c && d == o.d && alpha1 == o.alpha1 && alpha2 == o.alpha2 &&
               alpha3 == o.alpha3 && alpha4 == o.alpha4 && dim_M == o.dim_M &&
               has_dim_S == o.has_dim_S && (!has_dim_S || dim_S == o.dim_S);
    }
};

/// G(m, component) / sqrt(|component|), exact in Q(zeta_24).  All the Gauss
/// sums entering the dimension formula have |m| <= 3, so the only square root
/// ever needed is sqrt(3) (from odd-rank 3-adic components at 3 | m).
inline Cyc normalized_component_gauss(const JordanComponent& c, long m)
{
    c.validate();
    if (c.p == 2) {
        if (m % 2 == 0) return Cyc(Rat(int_pow(Int(2), c.rank / 2)));
        return Cyc(Rat(c.sign));
    }
    long mp = ((m % c.p) + c.p) % c.p;
    long half = c.rank / 2;
    if (mp == 0) {
        Cyc v{Rat(int_pow(Int(c.p), half))};
        if (c.rank % 2) {
            if (c.p != 3)
                throw std::domain_error("normalized_component_gauss: sqrt(p) outside Q(zeta_24)");
            v = v * Cyc::sqrt_int(3);
        }
        return v;
    }
    int sgn = c.sign;
    if (c.rank % 2) sgn *= kronecker(2 * m, c.p);
    if (kronecker(-1, c.p) == -1 && half % 2 == 1) sgn = -sgn;
    Cyc v{Rat(sgn)};
    if (c.rank % 2 && c.p % 4 == 3) v = v * Cyc::i();  // g_p / sqrt(p) = i
    return v;
}

inline Cyc normalized_gauss(const GenusSymbol& g, long m)
{
    Cyc v(Rat(1));
    for (const auto& c : g.comps) v = v * normalized_component_gauss(c, m);
    return v;
}

namespace detail {

/// Traces tr(X^t P) for X of the given order, assembled by the caller;
/// multiplicities on V_0 then give alpha(X restricted to V_0).
inline Rat alpha_on_v0(const std::vector<Cyc>& traces_on_v0)
{
    return alpha_from_traces(traces_on_v0);
}

struct TraceProvider {
    // tr rho*(S^j) for j mod 4 and tr rho*((ST)^j) for j in {-2..3}
    std::function<Cyc(long)> trS;
    std::function<Cyc(long)> trST;
    // sum over D (resp. weighted by the diagonal of rho*(S^2)) of e(-j Q)
    std::function<Cyc(long)> trT_plain;
    std::function<Cyc(long)> trT_s2;
    long level = 1;
    Rat order_D;
    // Optional O(level) shortcut: rho*(T) is diagonal with entries e(-Q(gamma)),
    // and rho*(S^2) pairs gamma with -gamma, so the eigenvalue multiplicities on
    // V_0 are (#{Q = v} + c #{2-torsion, Q = v}) / 2 directly, no trace inversion.
    bool direct34 = false;
    Rat alpha3_direct, alpha4_direct;
};

inline DimensionReport dim_from_traces(const TraceProvider& tp, long n, long k)
{
    if (k < 2) throw std::invalid_argument("dimension formula requires k >= 2");
    DimensionReport rep;
    rep.k = k;
    long r = 2 - n;
    rep.c = ((k + 1 - n / 2) % 2 == 0) ? 1 : -1;
    Cyc lam_inv = Cyc::e(make_rat(k, 2));  // lambda_0^{-1}, V_0 where S^2 acts by e(-k/2)

    // d = tr P = (|D| + e(k/2) tr rho*(S^2)) / 2
    Cyc dtr = make_rat(1, 2) * (tp.trS(0) + lam_inv * tp.trS(2));
    if (!dtr.is_rational()) throw std::logic_error("dim: d not rational");
    rep.d = dtr.to_rat();

    // alpha_1: X = e(k/4) rho*(S), order 4
    std::vector<Cyc> t1;
    for (long m = 0; m < 4; ++m) {
        Cyc ph = Cyc::e(make_rat(m * k, 4));
        t1.push_back(make_rat(1, 2) * (ph * tp.trS(m) + ph * lam_inv * tp.trS(m + 2)));
    }
    rep.alpha1 = alpha_on_v0(t1);

    // alpha_2: X = (e(k/6) rho*(ST))^{-1}, order 6; X^m rho*(S^2) uses
    // rho*(S^2) = rho*((ST)^3)
    std::vector<Cyc> t2;
    for (long m = 0; m < 6; ++m) {
        Cyc ph = Cyc::e(make_rat(-m * k, 6));
        long j1 = -m, j2 = 3 - m;
        auto red = [](long j) { j %= 6; if (j > 3) j -= 6; if (j < -2) j += 6; return j; };
        t2.push_back(make_rat(1, 2) * (ph * tp.trST(red(j1)) + ph * lam_inv * tp.trST(red(j2))));
    }
    rep.alpha2 = alpha_on_v0(t2);

    // alpha_3: X = rho*(T) on V_0, order dividing the level;
    // alpha_4 = multiplicity of eigenvalue 1 of rho*(T) on V_0
    if (tp.direct34) {
        rep.alpha3 = tp.alpha3_direct;
        rep.alpha4 = tp.alpha4_direct;
    } else {
        long N = tp.level;
        std::vector<Cyc> t3;
        for (long j = 0; j < N; ++j)
            t3.push_back(make_rat(1, 2) * (tp.trT_plain(j) + lam_inv * tp.trT_s2(j)));
        rep.alpha3 = alpha_on_v0(t3);
        auto mult = eigenvalue_multiplicities(t3);
        rep.alpha4 = Rat(mult[0]);
    }

    Rat dm = rep.d + rep.d * Rat(k) / 12 - rep.alpha1 - rep.alpha2 - rep.alpha3;
    if (!is_integer(dm) || dm < 0)
        throw std::logic_error("dim_M not a non-negative integer: " + dm.get_str());
    rep.dim_M = Int(dm.get_num());
    if (k > 2) {
        Rat ds = dm - rep.alpha4;
        if (!is_integer(ds) || ds < 0)
            throw std::logic_error("dim_S not a non-negative integer: " + ds.get_str());
        rep.dim_S = Int(ds.get_num());
        rep.has_dim_S = true;
    } else {
        rep.has_dim_S = false;
    }
    return rep;
}

} // namespace detail

/// Closed-form dimension report from the genus symbol alone (no element
/// enumeration beyond O(level) norm counting): suitable for large sweeps.
inline DimensionReport dim_report(const GenusSymbol& g, long k)
{
    g.validate();
    long n = g.sig.bminus;
    long r8 = ((2 - n) % 8 + 8) % 8;
    Rat orderD(g.order());
    Int d2(1);
    for (const auto& c : g.comps)
        if (c.p == 2) d2 *= int_pow(Int(2), c.rank);

    auto counts = norm_counts(g);
    long N = g.level();
    // 2-torsion norm counts (denominator 2)
    std::vector<Int> counts2{Int(1), Int(0)};
    for (const auto& c : g.comps)
        if (c.p == 2) counts2 = [&] {
            auto cc = component_norm_counts(c);
            return std::vector<Int>{cc[0], cc[1]};
        }();

    detail::TraceProvider tp;
    tp.level = N;
    tp.order_D = orderD;
    tp.trS = [=](long j) -> Cyc {
        j = ((j % 4) + 4) % 4;
        switch (j) {
            case 0: return Cyc(orderD);
            case 1: return Cyc::e(make_rat(r8, 8)) * normalized_gauss(g, 2);
            case 2: return Cyc::e(make_rat(r8, 4)) * Cyc(Rat(d2));
            default: return (Cyc::e(make_rat(r8, 8)) * normalized_gauss(g, 2)).conj();
        }
    };
    tp.trST = [=](long j) -> Cyc {
        switch (j) {
            case 0: return Cyc(orderD);
            case 1: return Cyc::e(make_rat(r8, 8)) * normalized_gauss(g, 1);
            case -1: return (Cyc::e(make_rat(r8, 8)) * normalized_gauss(g, 1)).conj();
            case 2:
                return Cyc::e(make_rat(r8, 4)) * normalized_gauss(g, -1) * normalized_gauss(g, 3);
            case -2:
                return (Cyc::e(make_rat(r8, 4)) * normalized_gauss(g, -1) * normalized_gauss(g, 3))
                    .conj();
            case 3: return Cyc::e(make_rat(r8, 4)) * Cyc(Rat(d2));
            default: throw std::logic_error("trST: unsupported power");
        }
    };
    // rho*(T) is diagonal with eigenvalue e(-Q(gamma)) at e_gamma, and the
    // projector to V_0 pairs gamma with -gamma: the multiplicity of e(-v/N) is
    // (#{Q = v/N} + c #{2-torsion with Q = v/N}) / 2.
    int c0 = ((k + 1 - n / 2) % 2 == 0) ? 1 : -1;
    tp.direct34 = true;
    tp.alpha3_direct = Rat(0);
    for (const auto& [v, cnt] : counts) {
        Rat tors(0);
        if (v == 0) tors = Rat(counts2[0]);
        else if (N % 2 == 0 && v == N / 2) tors = Rat(counts2[1]);
        Rat mult = (Rat(cnt) + Rat(c0) * tors) / 2;
        if (!is_integer(mult) || mult < 0)
            throw std::logic_error("dim: T-eigenvalue multiplicity not a non-negative integer");
        if (v == 0) tp.alpha4_direct = mult;
        else tp.alpha3_direct += make_rat(N - v, N) * mult;
    }
    return detail::dim_from_traces(tp, n, k);
}

/// Eigenvalue-based oracle: identical alpha machinery, but every trace comes
/// from the explicit rho* matrices (entry sums, no component closed forms).
inline DimensionReport dim_oracle(const GenusSymbol& g, long k)
{
    g.validate();
    if (g.order() > 1000) throw std::domain_error("dim_oracle: |D| beyond oracle scale");
    long n = g.sig.bminus;
    WeilRep w(FiniteQuadraticModule::realize(g), 2 - n);
    auto diag_s2 = w.diag_dual_S2();

    detail::TraceProvider tp;
    tp.level = w.level();
    tp.order_D = Rat((long)w.dim());
    tp.trS = [&w](long j) { return w.trace_dual_S(j); };
    tp.trST = [&w](long j) { return w.trace_dual_ST(j); };
    tp.trT_plain = [&w](long j) { return w.trace_dual_T(j); };
    tp.trT_s2 = [&w, &diag_s2](long j) { return w.trace_dual_T(j, &diag_s2); };
    return detail::dim_from_traces(tp, n, k);
}

/// Simple lattice test: S_{1+n/2, rho*} = 0.
inline bool is_simple(const GenusSymbol& g, DimensionReport* out = nullptr)
{
    long n = g.sig.bminus;
    if (n < 4 || n % 2) throw std::invalid_argument("is_simple: need even n >= 4");
    DimensionReport rep = dim_report(g, 1 + n / 2);
    if (out) *out = rep;
    return rep.dim_S == 0;
}

} // namespace vvmf

#endif
