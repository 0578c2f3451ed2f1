#ifndef VVMF_SEARCH_HPP
#define VVMF_SEARCH_HPP

#include <optional>

#include "vvmf/dimensions.hpp"
#include "vvmf/eisenstein.hpp"

namespace vvmf {

/// Principal parts are recorded per orbit class: {gamma, -gamma} orbits with
/// the same norm Q(gamma) have identical Eisenstein coefficients, so the
/// weight of a product depends only on (class, exponent, multiplicity).  The
/// symmetry c(gamma,m) = c(-gamma,m) is built into the orbit keying.
struct PPTerm {
    bool gamma_zero = false;
    Rat q_value;   // Q(gamma) mod 1, in [0,1)
    Rat m;         // exponent, m < 0, m = Q(gamma) mod 1
    long mult = 0; // c(gamma, m) = c(-gamma, m) >= 0

    bool operator==(const PPTerm& o) const
    {
        return gamma_zero == o.gamma_zero && q_value == o.q_value && m == o.m && mult == o.mult;
    }
};

struct PrincipalPart {
    std::vector<PPTerm> terms;

    void add_term(bool gamma_zero, const Rat& q_value, const Rat& m, long mult)
    {
        if (m >= 0) throw std::invalid_argument("PrincipalPart: exponent must be negative");
        if (mult < 0) throw std::invalid_argument("PrincipalPart: multiplicity must be >= 0");
        if (gamma_zero && q_value != 0)
            throw std::invalid_argument("PrincipalPart: gamma = 0 has Q = 0");
        if (!is_integer(m - q_value))
            throw std::invalid_argument("PrincipalPart: need m = Q(gamma) mod 1");
        if (mult > 0) terms.push_back({gamma_zero, q_value, m, mult});
    }

    bool operator==(const PrincipalPart& o) const { return terms == o.terms; }
};

struct ProductCandidate {
    PrincipalPart pp;
    Rat weight;
    bool singular = false;
};

enum class EisCase { level1_k6, level1_k10, level1_k14, level3_3p5, level6_zero, none };

/// Which Eisenstein provider covers a given lattice.  Level-6 lattices only
/// have the gamma = 0 branch, so searches there are partial.
inline EisCase provider_for(const GenusSymbol& g)
{
    std::string s = g.str();
    if (s == "II_(2,10)()") return EisCase::level1_k6;
    if (s == "II_(2,18)()") return EisCase::level1_k10;
    if (s == "II_(2,26)()") return EisCase::level1_k14;
    if (s == "II_(2,4)(3^+5)") return EisCase::level3_3p5;
    if (s == "II_(2,4)(2_II^+2 3^+1)" || s == "II_(2,4)(2_II^+4 3^+1)") return EisCase::level6_zero;
    return EisCase::none;
}

/// q(gamma, m) for m > 0 in the given case; nullopt when the provider does
/// not cover this (gamma, m) branch.
inline std::optional<Rat> eis_coefficient(EisCase c, bool gamma_zero, const Rat& m)
{
    switch (c) {
        case EisCase::level1_k6: return q_level1(6, to_long(m));
        case EisCase::level1_k10: return q_level1(10, to_long(m));
        case EisCase::level1_k14: return q_level1(14, to_long(m));
        case EisCase::level3_3p5: return q_level3(gamma_zero, m);
        case EisCase::level6_zero:
            if (!gamma_zero) return std::nullopt;
            return q_level6_zero(to_long(m));
        default: return std::nullopt;
    }
}

/// Weight of the Borcherds product of a form with the given principal part:
/// -(1/4) sum_gamma sum_{m<0} c(gamma,m) q(gamma,-m), the gamma-sum running
/// over the full group.  In every covered case a nonzero orbit {gamma,-gamma}
/// has two elements (no 2-torsion appears in the provider lattices), so it
/// contributes twice.
inline Rat product_weight(const GenusSymbol& g, const PrincipalPart& pp)
{
    EisCase c = provider_for(g);
    if (c == EisCase::none) throw std::domain_error("product_weight: provider unavailable");
    Rat w(0);
    for (const auto& t : pp.terms) {
        auto q = eis_coefficient(c, t.gamma_zero, -t.m);
        if (!q) throw std::domain_error("product_weight: provider lacks this branch");
        long orbit = t.gamma_zero ? 1 : 2;
        w += make_rat(-orbit, 4) * Rat(t.mult) * *q;
    }
    return w;
}

struct ObstructionReport {
    bool available = false;  // certificate exists
    bool passed = false;
    std::string certificate;
};

/// The obstruction space is S_{1+n/2} for the dual Weil representation; on a
/// simple lattice it vanishes and every symmetric principal part is realized.
inline ObstructionReport obstruction_check(const GenusSymbol& g, const PrincipalPart&)
{
    ObstructionReport rep;
    DimensionReport dims;
    if (is_simple(g, &dims)) {
        rep.available = true;
        rep.passed = true;
        rep.certificate = "dim S_{1+n/2, rho*} = 0 (simple lattice)";
    } else {
        rep.available = false;
        rep.certificate = "cusp-form basis not implemented for non-simple lattices";
    }
    return rep;
}

struct SearchReport {
    bool provider_available = false;
    bool complete = false;   // full gamma-support searched (not just gamma = 0)
    std::string status;
    std::vector<ProductCandidate> candidates;
};

namespace detail {

struct SearchTerm {
    bool gamma_zero;
    Rat q_value;
    Rat m;
    Rat unit_weight;  // weight contribution of multiplicity 1
};

inline void search_rec(const std::vector<SearchTerm>& terms, size_t i, PrincipalPart& cur,
                       const Rat& remaining, std::vector<ProductCandidate>& out,
                       const Rat& singular)
{
    if (remaining == 0) {
        if (!cur.terms.empty()) out.push_back({cur, singular, true});
        return;
    }
    if (i == terms.size()) return;
    const auto& t = terms[i];
    // multiplicity 0 first, then as many units as still fit
    search_rec(terms, i + 1, cur, remaining, out, singular);
    Rat used(0);
    long mult = 0;
    while (used + t.unit_weight <= remaining) {
        used += t.unit_weight;
        ++mult;
        cur.terms.push_back({t.gamma_zero, t.q_value, t.m, mult});
        search_rec(terms, i + 1, cur, remaining - used, out, singular);
        cur.terms.pop_back();
    }
}

} // namespace detail

/// Enumerate all non-negative symmetric principal parts with exponents
/// >= m_floor whose product weight is exactly the singular weight n/2 - 1.
/// Terms with q(gamma,-m) = 0 do not affect the weight (or the divisor of the
/// product) and are normalized away; every other term has a strictly positive
/// weight contribution, so the enumeration terminates.  Exponents below
/// m_floor are covered by the quadratic growth of |q| (divisor-sum bounds):
/// results stabilize once m_floor <= -2.
inline SearchReport search_singular(const GenusSymbol& g, const Rat& m_floor = Rat(-4))
{
    if (m_floor >= 0) throw std::invalid_argument("search_singular: m_floor must be negative");
    SearchReport rep;
    EisCase c = provider_for(g);
    if (c == EisCase::none) {
        rep.status = "not searchable from the implemented Eisenstein providers";
        return rep;
    }
    rep.provider_available = true;
    rep.complete = c != EisCase::level6_zero;
    rep.status = rep.complete ? "ok" : "partial: gamma = 0 branch only";

    Rat singular = make_rat(g.sig.bminus, 2) - 1;

    // candidate support classes: norms Q present in D (by orbit class) and
    // exponents m = Q mod 1 in [m_floor, 0)
    std::vector<std::pair<bool, Rat>> classes{{true, Rat(0)}};  // (gamma_zero, Q)
    if (c == EisCase::level3_3p5)
        for (long j = 0; j < 3; ++j) classes.emplace_back(false, make_rat(j, 3));

    std::vector<detail::SearchTerm> terms;
    for (const auto& [gz, qv] : classes) {
        for (Rat m = qv == 0 ? Rat(-1) : qv - 1; m >= m_floor; m -= 1) {
            auto q = eis_coefficient(c, gz, -m);
            if (!q) continue;
            if (*q == 0) continue;  // normalized away (cannot affect weight)
            if (*q > 0) throw std::logic_error("search_singular: positive Eisenstein coefficient");
            Rat unit = make_rat(gz ? -1 : -2, 4) * *q;
            if (unit <= singular) terms.push_back({gz, qv, m, unit});
        }
    }

    PrincipalPart cur;
    detail::search_rec(terms, 0, cur, singular, rep.candidates, singular);
    return rep;
}

} // namespace vvmf

#endif
