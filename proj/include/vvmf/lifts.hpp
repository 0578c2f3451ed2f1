#ifndef VVMF_LIFTS_HPP
#define VVMF_LIFTS_HPP

#include <complex>
#include <set>

#include "vvmf/qseries.hpp"
#include "vvmf/search.hpp"
#include "vvmf/weilrep.hpp"

namespace vvmf {

/// Vector-valued modular form for rho_L given by exact q-expansions of all
/// components, produced by the Gamma_1(N)-lift of an eta quotient.
struct VVForm {
    WeilRep rep;
    long k = 0;                            // weight
    long N = 1;                            // Gamma_1(N) level of the input
    long gamma_index = 0;                  // index of the lifted element
    EtaQuotientSpec spec;                  // the input eta quotient
    std::vector<QSeries<Rat>> components;  // indexed like rep.elements()
};

namespace detail {

inline QSeries<Cyc> to_cyc_series(const QSeries<Rat>& s)
{
    QSeries<Cyc> out(s.denominator(), s.truncation());
    for (const auto& [n, c] : s.terms())
        out.add_term(make_rat(n, s.denominator()), Cyc(c));
    return out;
}

/// f|T^j: the coefficient at exponent a picks up e(j a).
inline QSeries<Cyc> twist(const QSeries<Cyc>& s, long j)
{
    QSeries<Cyc> out(s.denominator(), s.truncation());
    for (const auto& [n, c] : s.terms()) {
        Rat a = make_rat(n, s.denominator());
        out.add_term(a, Cyc::e(mod1(Rat(j) * a)) * c);
    }
    return out;
}

} // namespace detail

/// Gamma_1(N)-lift of an eta quotient on e_gamma:
///   F = sum over Gamma_1(N)\SL_2(Z) of  f|_k M  rho_L(M^{-1}) e_gamma,
/// with coset representatives {I, S, ST} for N = 2 and
/// {+-I, +-S, +-ST, +-ST^{-1}} for N = 3.  The input's character must be
/// chi_gamma(M) = e(b Q(gamma)).
inline VVForm gamma1_lift(const EtaQuotientSpec& spec, long N, const GenusSymbol& g,
                          const DElement& gamma, const Rat& truncation)
{
    if (N != 2 && N != 3) throw std::invalid_argument("gamma1_lift: N must be 2 or 3");
    if (spec.N != N) throw std::invalid_argument("gamma1_lift: eta quotient level mismatch");
    spec.validate();
    Rat k2 = spec.weight();
    if (!is_integer(k2)) throw std::invalid_argument("gamma1_lift: weight must be integral");
    long k = to_long(k2);

    FiniteQuadraticModule D = FiniteQuadraticModule::realize(g);
    WeilRep w(std::move(D), g.sig.r());
    long gi = w.index_of(gamma);
    Rat qg = w.discriminant_form().q_value(gamma);
    if (mod1(spec.character_exponent()) != mod1(qg))
        throw std::invalid_argument("gamma1_lift: character does not match e(b Q(gamma))");

    QSeries<Cyc> f = detail::to_cyc_series(eta_quotient(spec, truncation));
    auto [pref, s0] = eta_quotient_at_zero(spec, truncation);
    QSeries<Cyc> fS = pref * detail::to_cyc_series(s0);

    struct Term {
        QSeries<Cyc> series;
        std::string word;  // word for rho(M^{-1})
    };
    std::vector<Term> terms = {{f, ""}, {fS, "s"}, {detail::twist(fS, 1), "ts"}};
    if (N == 3) {
        terms.push_back({detail::twist(fS, -1), "Ts"});
        Cyc msign{Rat(k % 2 ? -1 : 1)};  // f|_k(-M) = (-1)^k f|_k M
        for (size_t i = 0, n0 = terms.size(); i < n0; ++i)
            terms.push_back({msign * terms[i].series, "SS" + terms[i].word});
    }

    long den = lcm_long(f.denominator(), fS.denominator());
    std::vector<QSeries<Cyc>> acc(w.dim(), QSeries<Cyc>(den, truncation));
    for (const auto& t : terms) {
        auto v = w.apply_word(t.word, w.basis_vector(gi), false);
        for (long i = 0; i < w.dim(); ++i)
            if (!v[i].is_zero()) acc[i] = acc[i] + v[i] * t.series;
    }

    VVForm F{std::move(w), k, N, gi, spec, {}};
    F.components.reserve(acc.size());
    for (long i = 0; i < (long)acc.size(); ++i) {
        QSeries<Rat> comp(acc[i].denominator(), acc[i].truncation());
        Rat qb = F.rep.discriminant_form().q_value(F.rep.elements()[i]);
        for (const auto& [n, c] : acc[i].terms()) {
            if (!c.is_rational())
                throw std::logic_error("gamma1_lift: non-rational coefficient survived");
            Rat a = make_rat(n, acc[i].denominator());
            if (!is_integer(a - qb))
                throw std::logic_error("gamma1_lift: support violates T-equivariance");
            comp.add_term(a, c.to_rat());
        }
        F.components.push_back(std::move(comp));
    }
    return F;
}

/// The two concrete constructions.
inline DElement element_of_norm(const FiniteQuadraticModule& D, const Rat& q)
{
    for (const auto& el : D.elements())
        if (mod1(D.q_value(el)) == mod1(q)) return el;
    throw std::domain_error("element_of_norm: no element with the requested norm");
}

inline VVForm lift_level3(const Rat& truncation)
{
    GenusSymbol g = GenusSymbol::parse("II_(2,4)(3^+5)");
    EtaQuotientSpec spec{3, {{1, 1}, {3, -3}}};
    auto D = FiniteQuadraticModule::realize(g);
    return gamma1_lift(spec, 3, g, element_of_norm(D, make_rat(2, 3)), truncation);
}

inline VVForm lift_level2(const Rat& truncation)
{
    GenusSymbol g = GenusSymbol::parse("II_(2,6)(2_II^-6)");
    EtaQuotientSpec spec{2, {{1, 4}, {2, -8}}};
    auto D = FiniteQuadraticModule::realize(g);
    return gamma1_lift(spec, 2, g, element_of_norm(D, make_rat(1, 2)), truncation);
}

/// ---- principal part / constant term ------------------------------------

struct PrincipalPartEntry {
    long index;   // element index in rep.elements()
    Rat m;        // negative exponent
    Rat c;        // coefficient
};

inline std::vector<PrincipalPartEntry> principal_part(const VVForm& F)
{
    std::vector<PrincipalPartEntry> out;
    for (long i = 0; i < (long)F.components.size(); ++i)
        for (const auto& [n, c] : F.components[i].terms()) {
            if (n >= 0) break;
            out.push_back({i, make_rat(n, F.components[i].denominator()), c});
        }
    return out;
}

inline Rat constant_term(const VVForm& F)
{
    long zi = F.rep.index_of(F.rep.discriminant_form().zero());
    return F.components[zi].coeff(Rat(0));
}

/// Orbit-class view matching the search module's candidate format.
inline PrincipalPart orbit_principal_part(const VVForm& F)
{
    const auto& D = F.rep.discriminant_form();
    PrincipalPart pp;
    std::set<long> used;
    for (const auto& e : principal_part(F)) {
        if (used.count(e.index)) continue;
        long ni = F.rep.index_of(D.neg(F.rep.elements()[e.index]));
        used.insert(e.index);
        used.insert(ni);
        Rat cneg = F.components[ni].coeff(e.m);
        if (cneg != e.c) throw std::logic_error("orbit_principal_part: asymmetric principal part");
        if (!is_integer(e.c) || e.c < 0)
            throw std::logic_error("orbit_principal_part: non-integral multiplicity");
        bool gz = e.index == F.rep.index_of(D.zero());
        pp.add_term(gz, mod1(D.q_value(F.rep.elements()[e.index])), e.m, to_long(e.c));
    }
    return pp;
}

/// ---- exact closed-display check ----------------------------------------

/// Compare the assembled lift against the closed form obtained by summing the
/// cosets symbolically:
///   N = 3:  F = f e_gamma + f e_{-gamma}
///               - (3i/sqrt(243)) sum_beta [e((beta,gamma)) + e(-(beta,gamma))] g_{Q(beta)} e_beta
///   N = 2:  F = f e_gamma - (1/4) sum_beta e((beta,gamma)) g_{Q(beta)} e_beta
/// where g_j collects the exponent classes of f|S.  Checked coefficientwise
/// up to the given order.
inline bool coefficient_formula_check(const VVForm& F, const Rat& order_limit)
{
    const auto& D = F.rep.discriminant_form();
    const DElement& gamma = F.rep.elements()[F.gamma_index];
    long gneg = F.rep.index_of(D.neg(gamma));

    Rat trunc = std::min(order_limit, F.components[0].truncation());
    QSeries<Cyc> f = detail::to_cyc_series(eta_quotient(F.spec, F.components[0].truncation()));
    auto [pref, s0] = eta_quotient_at_zero(F.spec, F.components[0].truncation());
    QSeries<Cyc> fS = pref * detail::to_cyc_series(s0);
    auto classes = split_by_exponent_class(fS, F.N);

    Cyc c0 = F.N == 3 ? Rat(-3) * (Cyc::i() * Cyc::sqrt_int(243).inverse())
                      : Cyc(make_rat(-1, 4));

    for (long i = 0; i < (long)F.components.size(); ++i) {
        const DElement& beta = F.rep.elements()[i];
        Rat pairing = mod1(D.bilinear(beta, gamma));
        Cyc phase = F.N == 3 ? Cyc::e(pairing) + Cyc::e(mod1(-pairing)) : Cyc::e(pairing);
        long cls = to_long(mod1(D.q_value(beta)) * F.N);
        QSeries<Cyc> expected(f.denominator(), F.components[0].truncation());
        auto it = classes.find(cls);
        if (it != classes.end()) expected = c0 * phase * it->second;
        if (i == F.gamma_index) expected = expected + f;
        if (F.N == 3 && i == gneg && gneg != F.gamma_index) expected = expected + f;

        // coefficientwise comparison up to order_limit
        const auto& got = F.components[i];
        auto ex = expected.with_denominator(lcm_long(expected.denominator(), got.denominator()));
        auto gt = detail::to_cyc_series(got).with_denominator(ex.denominator());
        long lim = to_long(trunc * ex.denominator());
        for (long n = gt.is_zero() && ex.is_zero() ? 0 : -ex.denominator(); n < lim; ++n) {
            Cyc a = n < gt.truncation_num() ? gt.coeff(make_rat(n, gt.denominator())) : Cyc(Rat(0));
            Cyc b = n < ex.truncation_num() ? ex.coeff(make_rat(n, ex.denominator())) : Cyc(Rat(0));
            if (!(a == b)) return false;
        }
    }
    return true;
}

/// ---- advisory numeric modularity check ---------------------------------

struct ModularityReport {
    std::string status;  // "pass", "fail", or "inconclusive"
    double max_error = 0;
    double tail_bound = 0;
    bool t_support_exact = false;
};

namespace detail {

inline std::complex<double> eval_series(const QSeries<Rat>& s, std::complex<double> tau)
{
    std::complex<double> out = 0;
    const std::complex<double> I(0, 1);
    for (const auto& [n, c] : s.terms()) {
        double a = (double)n / s.denominator();
        out += c.get_d() * std::exp(2.0 * M_PI * I * a * tau);
    }
    return out;
}

/// crude certified-enough tail estimate: coefficients of the meromorphic eta
/// quotients grow at most like C e^{pi sqrt(8 m)}; C is fitted from the
/// computed terms and the remaining sum is evaluated numerically.
inline double tail_estimate(const VVForm& F, double im_tau)
{
    double C = 1.0;
    double t0 = 0;
    for (const auto& comp : F.components)
        for (const auto& [n, c] : comp.terms()) {
            double m = std::max(0.0, (double)n / comp.denominator());
            C = std::max(C, std::abs(c.get_d()) / std::exp(M_PI * std::sqrt(8 * m)));
            t0 = std::max(t0, (double)comp.truncation_num() / comp.denominator());
        }
    double tail = 0;
    for (double m = t0; m < t0 + 200; m += 0.25)
        tail += C * std::exp(M_PI * std::sqrt(8 * m) - 2 * M_PI * im_tau * m);
    return tail * (double)F.components.size();
}

} // namespace detail

inline ModularityReport verify_modularity(const VVForm& F,
                                          const std::vector<std::complex<double>>& sample_points,
                                          double tolerance)
{
    ModularityReport rep;

    // exact part: T-equivariance as support congruence
    rep.t_support_exact = true;
    for (long i = 0; i < (long)F.components.size(); ++i) {
        Rat qb = F.rep.discriminant_form().q_value(F.rep.elements()[i]);
        for (const auto& [n, c] : F.components[i].terms())
            if (!is_integer(make_rat(n, F.components[i].denominator()) - qb))
                rep.t_support_exact = false;
    }

    // numeric part: F(-1/tau) = tau^k rho(S) F(tau)
    long n = F.rep.dim();
    auto S = F.rep.rho_S(false);
    std::vector<std::vector<std::complex<double>>> Sc(n, std::vector<std::complex<double>>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) Sc[i][j] = S[i][j].to_complex();

    double max_err = 0, max_tail = 0;
    for (auto tau : sample_points) {
        std::complex<double> tau2 = -1.0 / tau;
        max_tail = std::max(max_tail, detail::tail_estimate(F, std::min(tau.imag(), tau2.imag())));
        std::vector<std::complex<double>> Ft(n), F2(n);
        for (long i = 0; i < n; ++i) {
            Ft[i] = detail::eval_series(F.components[i], tau);
            F2[i] = detail::eval_series(F.components[i], tau2);
        }
        std::complex<double> tk = std::pow(tau, (double)F.k);
        for (long i = 0; i < n; ++i) {
            std::complex<double> rhs = 0;
            for (long j = 0; j < n; ++j) rhs += Sc[i][j] * Ft[j];
            max_err = std::max(max_err, std::abs(F2[i] - tk * rhs));
        }
    }
    rep.max_error = max_err;
    rep.tail_bound = max_tail;
    if (max_tail > tolerance / 2) rep.status = "inconclusive";
    else rep.status = (max_err <= tolerance && rep.t_support_exact) ? "pass" : "fail";
    return rep;
}

} // namespace vvmf

#endif
