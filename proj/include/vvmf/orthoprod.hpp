#ifndef VVMF_ORTHOPROD_HPP
#define VVMF_ORTHOPROD_HPP

#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "vvmf/lattice.hpp"
#include "vvmf/lifts.hpp"

namespace vvmf {

/// Cusp of L = K + II_{1,1}(N): the hyperbolic plane is spanned by the
/// primitive isotropic vectors z, zeta with <z, zeta> = N, and gamma in L'/L
/// of norm -1/N mod 1 selects the expansion.  Two choices occur:
///   cone: gamma = z/N - zeta/N (not in L_0'; Weyl vector 0, chamber = cone C)
///   weyl: gamma = x/N - xi/N for a hyperbolic pair x, xi inside K
///         (Weyl vector rho = x/N, a genuine reflection group acts)
struct CuspData {
    enum class Gamma { cone, weyl };

    long N = 1;
    HyperbolicLattice K;
    Gamma choice = Gamma::cone;
    LVec gamma_dual;  // weyl: dual coordinates of gamma in K'; cone: zeros
    LVec rho_dual;    // Weyl vector in dual coordinates (zeros in the cone case)
    LVec w0;          // default grading functional (lattice coordinates)

    /// Gram matrix of L = K + <z, zeta> in the basis (e_1..e_n, z, zeta).
    std::vector<std::vector<long>> gram_L() const
    {
        long n = K.dim();
        std::vector<std::vector<long>> g(n + 2, std::vector<long>(n + 2, 0));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) g[i][j] = K.gram()[i][j];
        g[n][n + 1] = g[n + 1][n] = N;
        return g;
    }

    LVec z() const
    {
        LVec v(K.dim() + 2, 0);
        v[K.dim()] = 1;
        return v;
    }

    LVec zeta() const
    {
        LVec v(K.dim() + 2, 0);
        v[K.dim() + 1] = 1;
        return v;
    }

    /// z' = zeta/N in L' (returned as N * z' = zeta to stay integral).
    std::pair<LVec, long> z_prime() const { return {zeta(), N}; }

    /// Projection p of an L'-vector onto K': since zeta_K = 0, this simply
    /// drops the z- and zeta-components.  Input in dual coordinates of L'
    /// (pairings against the basis of L).
    LVec project(const std::vector<Rat>& dual_L) const
    {
        LVec out(K.dim());
        for (long i = 0; i < K.dim(); ++i) {
            if (!is_integer(dual_L[i]))
                throw std::invalid_argument("CuspData::project: not in L'");
            out[i] = to_long(dual_L[i]);
        }
        return out;
    }

    /// Level of z: gcd of <z, L> must be N (z does not split II_{1,1}).
    long z_level() const
    {
        auto g = gram_L();
        long n = K.dim();
        long lev = 0;
        for (long j = 0; j < n + 2; ++j) lev = std::gcd(lev, std::abs(g[n][j]));
        return lev;
    }

    void validate() const
    {
        if (z_level() != N) throw std::logic_error("CuspData: z does not have level N");
        if (choice == Gamma::weyl) {
            if (mod1(K.q_dual(gamma_dual)) != mod1(make_rat(-1, N)))
                throw std::logic_error("CuspData: Q(gamma) != -1/N mod 1");
            if (K.q_dual(rho_dual) != 0 || !K.is_primitive_dual(rho_dual))
                throw std::logic_error("CuspData: rho not primitive isotropic");
        }
    }
};

inline CuspData cusp_level3_cone()
{
    CuspData c;
    c.N = 3;
    c.K = level3_K();
    c.choice = CuspData::Gamma::cone;
    c.gamma_dual = LVec(4, 0);
    c.rho_dual = LVec(4, 0);
    c.w0 = {0, 0, 2, 1};
    c.validate();
    return c;
}

inline CuspData cusp_level3_weyl()
{
    CuspData c;
    c.N = 3;
    c.K = level3_K();
    c.choice = CuspData::Gamma::weyl;
    c.gamma_dual = {0, 0, -1, 1};  // x/3 - xi/3
    c.rho_dual = {0, 0, 0, 1};     // x/3
    c.w0 = {0, 0, 2, 1};           // 2x + xi, off every root hyperplane
    c.validate();
    return c;
}

inline CuspData cusp_level2_cone()
{
    CuspData c;
    c.N = 2;
    c.K = level2_K();
    c.choice = CuspData::Gamma::cone;
    c.gamma_dual = LVec(6, 0);
    c.rho_dual = LVec(6, 0);
    c.w0 = {0, 0, 0, 0, 2, 1};
    c.validate();
    return c;
}

inline CuspData cusp_level2_weyl()
{
    CuspData c;
    c.N = 2;
    c.K = level2_K();
    c.choice = CuspData::Gamma::weyl;
    c.gamma_dual = {0, 0, 0, 0, -1, 1};  // x/2 - xi/2
    c.rho_dual = {0, 0, 0, 0, 0, 1};     // x/2
    c.w0 = {0, 0, 0, 0, 2, 1};
    c.validate();
    return c;
}

namespace detail {

/// Expansion of prod eta(d tau)^{r_d}; unlike eta_quotient this does not
/// impose the Gamma_1(N) integrality hypotheses (the leading exponent
/// sum d r_d / 24 must still be an integer multiple of 1/24, which it
/// trivially is).
inline QSeries<Rat> eta_monomial(const std::map<long, long>& r, const Rat& truncation)
{
    Rat slack(1);
    for (const auto& [d, e] : r) slack += make_rat(std::abs(e) * d, 12);
    QSeries<Rat> out = QSeries<Rat>::one(24, truncation + slack);
    for (const auto& [d, e] : r) {
        if (e == 0) continue;
        out = out * eta_expansion(truncation + slack).exponent_scaled(d).pow(e);
    }
    return out.truncated(std::min(out.truncation(), truncation));
}

} // namespace detail

/// Reads Borcherds exponents c(lambda + j z/N + L, q(lambda)) off the
/// vector valued form F.  The component of F at a class delta in D depends
/// only on the invariants (Q(delta) mod 1, +-(delta, gamma) mod 1, and
/// whether delta = +-gamma); the oracle locates a class in D with the same
/// invariants as the geometric coset and reads its q-expansion.
class ExponentOracle {
  public:
    ExponentOracle(const VVForm& F, const CuspData& cusp) : F_(&F), cusp_(&cusp)
    {
        if (F.N != cusp.N) throw std::invalid_argument("ExponentOracle: level mismatch");
        const auto& D = F.rep.discriminant_form();
        const DElement& gamma = F.rep.elements()[F.gamma_index];
        long gneg = F.rep.index_of(D.neg(gamma));
        for (long i = 0; i < F.rep.dim(); ++i) {
            if (i == F.gamma_index || i == gneg) continue;
            const DElement& b = F.rep.elements()[i];
            Rat Qc = mod1(D.q_value(b));
            Rat pc = canonical_pairing(D.bilinear(b, gamma));
            reps_.emplace(std::make_pair(Qc, pc), i);
        }
    }

    /// c(lambda + j z/N + L, q(lambda)) as an exact rational (an integer for
    /// the forms at hand).
    Rat coefficient(const LVec& lambda, long j) const
    {
        const CuspData& c = *cusp_;
        Rat m = c.K.q_dual(lambda);
        if (m >= F_->components[0].truncation())
            throw std::runtime_error("ExponentOracle: truncation of F insufficient");
        if (c.choice == CuspData::Gamma::weyl && j % c.N == 0) {
            LVec d1 = lambda, d2 = lambda;
            for (long i = 0; i < c.K.dim(); ++i) {
                d1[i] -= c.gamma_dual[i];
                d2[i] += c.gamma_dual[i];
            }
            if (c.K.in_lattice(d1) || c.K.in_lattice(d2))
                return F_->components[F_->gamma_index].coeff(m);
        }
        Rat pairing = c.choice == CuspData::Gamma::cone
                          ? make_rat(-j, c.N)
                          : c.K.pair_dual(lambda, c.gamma_dual);
        auto key = std::make_pair(mod1(m), canonical_pairing(pairing));
        auto it = reps_.find(key);
        if (it == reps_.end())
            throw std::logic_error("ExponentOracle: no class with the required invariants");
        return F_->components[it->second].coeff(m);
    }

  private:
    static Rat canonical_pairing(const Rat& p)
    {
        Rat a = mod1(p), b = mod1(-p);
        return a < b ? a : b;
    }

    const VVForm* F_;
    const CuspData* cusp_;
    std::map<std::pair<Rat, Rat>, long> reps_;
};

/// Formal expansion graded by the functional w0: only vectors lambda with
/// 0 < <lambda, w0> <= H are stored (plus the constant term).
struct ProductExpansion {
    LVec w0;
    long H = 0;
    Rat constant;
    std::map<LVec, Rat> coeffs;
};

namespace detail {

using GRing = std::map<LVec, Cyc>;

inline long height_of(const LVec& a, const LVec& w0)
{
    long h = 0;
    for (size_t i = 0; i < a.size(); ++i) h += a[i] * w0[i];
    return h;
}

/// Multiply the truncated group-ring element cur by (1 - e(j/N) E_lambda)^c.
inline void mul_factor(GRing& cur, const LVec& lambda, long j, long N, long c, const LVec& w0,
                       long H)
{
    long hl = height_of(lambda, w0);
    if (hl <= 0) throw std::logic_error("mul_factor: non-positive height factor");
    long tmax = H / hl;
    // binomial series (1 - w E)^c = sum_t binom(c, t) (-w)^t E^t
    std::vector<Cyc> b(tmax + 1);
    Rat bc(1);
    for (long t = 0; t <= tmax; ++t) {
        Cyc w = Cyc::root_of_unity(N, (j * t) % N);
        b[t] = ((t % 2 == 0) ? Cyc(bc) : Cyc(-bc)) * w;
        bc = bc * Rat(c - t) / Rat(t + 1);
    }
    GRing out;
    for (const auto& [v, cv] : cur) {
        long hv = height_of(v, w0);
        for (long t = 0; t * hl + hv <= H; ++t) {
            if (b[t].is_zero()) continue;
            LVec nv = v;
            for (size_t i = 0; i < nv.size(); ++i) nv[i] += t * lambda[i];
            auto it = out.find(nv);
            if (it == out.end()) out.emplace(std::move(nv), cv * b[t]);
            else it->second += cv * b[t];
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    cur = std::move(out);
}

/// Common core: expand e((rho,Z)) prod_{lambda in slab} prod_j
/// (1 - e(j/N) E_lambda)^{c(lambda + j z/N, q(lambda))} up to height H.
inline ProductExpansion expand_product(const VVForm& F, const CuspData& cusp, const LVec& w0,
                                       long H)
{
    const HyperbolicLattice& K = cusp.K;
    ExponentOracle oracle(F, cusp);
    auto slab = enumerate_slab(K, w0, H, -make_rat(1, cusp.N));
    GRing cur;
    cur[cusp.rho_dual] = Cyc(Rat(1));
    for (const auto& lam : slab) {
        for (long j = 0; j < cusp.N; ++j) {
            Rat c = oracle.coefficient(lam, j);
            if (c == 0) continue;
            if (!is_integer(c))
                throw std::logic_error("expand_product: non-integral exponent");
            mul_factor(cur, lam, j, cusp.N, to_long(c), w0, H);
        }
    }
    ProductExpansion out;
    out.w0 = w0;
    out.H = H;
    out.constant = Rat(0);
    for (const auto& [v, cv] : cur) {
        if (!cv.is_rational())
            throw std::logic_error("expand_product: irrational coefficient survived");
        Rat r = cv.to_rat();
        if (r == 0) continue;
        if (height_of(v, w0) == 0) out.constant = r;
        else out.coeffs[v] = r;
    }
    return out;
}

} // namespace detail

/// Expansion at the cusp with gamma = z/N - zeta/N: the Weyl vector is 0 and
/// the product runs over the full positive cone.  The singular-weight theorem
/// predicts support on isotropic rays only, with eta(t)^3/eta(3t)
/// (resp. eta(t)^8/eta(2t)^4) coefficients along each ray.
inline ProductExpansion product_expansion_cone_case(const VVForm& F, const CuspData& cusp,
                                                    const LVec& w0, long H)
{
    if (cusp.choice != CuspData::Gamma::cone)
        throw std::invalid_argument("product_expansion_cone_case: cusp is not the cone case");
    return detail::expand_product(F, cusp, w0, H);
}

/// Expected on-ray series for the cone case: eta^3/eta(3 tau) at level 3,
/// eta^8/eta(2 tau)^4 at level 2.
inline QSeries<Rat> cone_ray_series(long N, const Rat& truncation)
{
    if (N == 3) return detail::eta_monomial({{1, 3}, {3, -1}}, truncation);
    if (N == 2) return detail::eta_monomial({{1, 8}, {2, -4}}, truncation);
    throw std::invalid_argument("cone_ray_series: N must be 2 or 3");
}

/// Summand of the Weyl-chamber expansion: eta(9t)^3/eta(3t) at level 3,
/// eta(4t)^8/eta(2t)^4 at level 2 (as series in q = e((w rho, Z))).
inline QSeries<Rat> weyl_ray_series(long N, const Rat& truncation)
{
    if (N == 3) return detail::eta_monomial({{9, 3}, {3, -1}}, truncation);
    if (N == 2) return detail::eta_monomial({{4, 8}, {2, -4}}, truncation);
    throw std::invalid_argument("weyl_ray_series: N must be 2 or 3");
}

/// Root system and rho-orbit data for the Weyl-chamber expansion.
struct WeylGroupData {
    std::vector<LVec> roots;    // positive-height roots within the search window
    std::map<LVec, int> orbit;  // w(rho) -> det(w)
    bool certified = false;     // BFS closed under all generators inside the window
    bool dets_consistent = true;
};

namespace detail {

inline LVec reflect(const HyperbolicLattice& K, const LVec& alpha, const LVec& v)
{
    Rat f = K.pair_dual(alpha, v) / K.q_dual(alpha);
    if (!is_integer(f)) throw std::logic_error("reflect: reflection does not preserve K'");
    long fl = to_long(f);
    LVec w = v;
    for (size_t i = 0; i < w.size(); ++i) w[i] -= fl * alpha[i];
    return w;
}

} // namespace detail

/// Roots of F at the weyl cusp: alpha in K' with q(alpha) = -1/N and
/// alpha + K = gamma + K, of height in [1, bound] w.r.t. w0 (each root comes
/// in a +-pair; the positive-height representatives generate all reflections).
inline std::vector<LVec> weyl_roots(const CuspData& cusp, const LVec& w0, long bound)
{
    if (cusp.choice != CuspData::Gamma::weyl)
        throw std::invalid_argument("weyl_roots: cusp is not the weyl case");
    const HyperbolicLattice& K = cusp.K;
    std::vector<LVec> out;
    for (const auto& a : enumerate_slab(K, w0, bound, -make_rat(1, cusp.N))) {
        if (K.q_dual(a) != -make_rat(1, cusp.N)) continue;
        // sigma_a = sigma_{-a}: keep the positive-height representative when
        // either sign lies in the coset gamma + K
        LVec d = a, s = a;
        for (long i = 0; i < K.dim(); ++i) {
            d[i] -= cusp.gamma_dual[i];
            s[i] += cusp.gamma_dual[i];
        }
        if (K.in_lattice(d) || K.in_lattice(s)) out.push_back(a);
    }
    return out;
}

/// Checks that w0 lies on no root hyperplane: the height-0 slice with
/// q >= -1/N is a compact ball, and no root may appear in it.
inline void check_w0_generic(const CuspData& cusp, const LVec& w0)
{
    const HyperbolicLattice& K = cusp.K;
    for (const auto& a : enumerate_slab(K, w0, 0, -make_rat(1, cusp.N), true)) {
        if (K.q_dual(a) != -make_rat(1, cusp.N)) continue;
        LVec d = a;
        for (long i = 0; i < K.dim(); ++i) d[i] -= cusp.gamma_dual[i];
        LVec s = a;
        for (long i = 0; i < K.dim(); ++i) s[i] += cusp.gamma_dual[i];
        if (K.in_lattice(d) || K.in_lattice(s))
            throw std::invalid_argument("w0 lies on a root hyperplane");
    }
}

/// BFS orbit of rho under the reflections in the given roots, keeping images
/// of height <= window.  certified means the orbit is closed under every
/// generator within the window (no image of an in-window element escapes
/// tracking except through heights > window).
inline WeylGroupData weyl_orbit(const CuspData& cusp, const std::vector<LVec>& roots,
                                const LVec& w0, long window, long cap = 100000)
{
    WeylGroupData out;
    out.roots = roots;
    const HyperbolicLattice& K = cusp.K;
    std::deque<LVec> queue;
    out.orbit[cusp.rho_dual] = 1;
    queue.push_back(cusp.rho_dual);
    long steps = 0;
    while (!queue.empty()) {
        if (++steps > cap) return out;  // certified stays false
        LVec v = queue.front();
        queue.pop_front();
        int dv = out.orbit.at(v);
        for (const auto& alpha : roots) {
            LVec w = detail::reflect(K, alpha, v);
            long h = detail::height_of(w, w0);
            if (h <= 0 || h > window) continue;
            auto it = out.orbit.find(w);
            if (it == out.orbit.end()) {
                out.orbit[w] = -dv;
                queue.push_back(std::move(w));
            } else if (it->second != -dv) {
                out.dets_consistent = false;
            }
        }
    }
    out.certified = true;
    return out;
}

/// Both sides of the Weyl-chamber identity, truncated to heights <= H.
struct WeylExpansion {
    WeylGroupData group;
    std::map<LVec, Rat> product_side;
    std::map<LVec, Rat> sum_side;
    bool match = false;
    long H = 0;
};

/// Product side: e((rho,Z)) prod over the chamber of w0; sum side:
/// sum_w det(w) eta(N^2 (w rho, Z))^{2N+2-2} / ... (the weyl_ray_series in
/// e((w rho, Z))).  The comparison is certified only if the orbit BFS closed.
inline WeylExpansion weyl_group_expansion(const VVForm& F, const CuspData& cusp, const LVec& w0,
                                          long H, long root_bound = 0, long margin = 0)
{
    if (cusp.choice != CuspData::Gamma::weyl)
        throw std::invalid_argument("weyl_group_expansion: cusp is not the weyl case");
    check_w0_generic(cusp, w0);
    if (root_bound == 0) root_bound = 2 * H;
    if (margin == 0) margin = H;

    WeylExpansion out;
    out.H = H;
    auto roots = weyl_roots(cusp, w0, root_bound);
    out.group = weyl_orbit(cusp, roots, w0, H + margin);

    ProductExpansion prod = detail::expand_product(F, cusp, w0, H);
    if (prod.constant != 0)
        throw std::logic_error("weyl_group_expansion: unexpected constant term");
    out.product_side = prod.coeffs;

    QSeries<Rat> ray = weyl_ray_series(cusp.N, Rat(H + 1));
    for (const auto& [v, det] : out.group.orbit) {
        long hv = detail::height_of(v, w0);
        for (const auto& [nnum, c] : ray.terms()) {
            if (nnum % ray.denominator() != 0) continue;
            long n = nnum / ray.denominator();
            if (n < 1 || n * hv > H) continue;
            LVec nv(v.size());
            for (size_t i = 0; i < v.size(); ++i) nv[i] = n * v[i];
            Rat add = Rat(det) * c;
            auto it = out.sum_side.find(nv);
            if (it == out.sum_side.end()) out.sum_side[nv] = add;
            else {
                it->second += add;
                if (it->second == 0) out.sum_side.erase(it);
            }
        }
    }
    out.match = out.group.certified && out.group.dets_consistent &&
                out.product_side == out.sum_side;
    return out;
}

/// Single-chamber ray identity: the factors of the product along the ray of
/// rho collapse to weyl_ray_series.  Returns the exponents c(m rho + j z/N, 0)
/// for m = 1..M, the ray product (with the e((rho,Z)) prefactor), and the eta
/// side, which must agree.
struct RayIdentity {
    std::vector<std::vector<Rat>> exponents;  // [m-1][j]
    QSeries<Rat> ray_product;
    QSeries<Rat> eta_side;
    bool match = false;
};

inline RayIdentity ray_identity(const VVForm& F, const CuspData& cusp, long M)
{
    if (cusp.choice != CuspData::Gamma::weyl)
        throw std::invalid_argument("ray_identity: cusp is not the weyl case");
    ExponentOracle oracle(F, cusp);
    RayIdentity out;
    QSeries<Cyc> prod = QSeries<Cyc>::one(1, Rat(M + 1));
    for (long m = 1; m <= M; ++m) {
        LVec mr = cusp.rho_dual;
        for (auto& x : mr) x *= m;
        std::vector<Rat> exps;
        for (long j = 0; j < cusp.N; ++j) {
            Rat c = oracle.coefficient(mr, j);
            exps.push_back(c);
            if (!is_integer(c)) throw std::logic_error("ray_identity: non-integral exponent");
            QSeries<Cyc> base(1, Rat(M + 1));
            base.add_term(Rat(0), Cyc(Rat(1)));
            base.add_term(Rat(m), -Cyc::root_of_unity(cusp.N, j % cusp.N));
            prod = prod * base.pow(to_long(c));
            prod = prod.truncated(Rat(M + 1));
        }
        out.exponents.push_back(std::move(exps));
    }
    // prefactor e((rho, Z)) -> q^1
    QSeries<Cyc> pre(1, Rat(M + 2));
    pre.add_term(Rat(1), Cyc(Rat(1)));
    prod = pre * prod;
    QSeries<Rat> rp(prod.denominator(), prod.truncation());
    for (const auto& [n, c] : prod.terms()) {
        if (!c.is_rational()) throw std::logic_error("ray_identity: irrational coefficient");
        rp.add_term(make_rat(n, prod.denominator()), c.to_rat());
    }
    out.ray_product = rp;
    QSeries<Rat> eta = weyl_ray_series(cusp.N, rp.truncation());
    out.eta_side = eta;
    out.match = true;
    for (long n = 0; n < to_long(rp.truncation()); ++n)
        if (rp.coeff(Rat(n)) != eta.coeff(Rat(n))) out.match = false;
    return out;
}

/// Validates a proposed Weyl vector: isotropic, primitive in K', in the
/// closure of the chamber of w0 (non-negative pairing against w0 and the same
/// side as w0 of every supplied root hyperplane), and pairing -1/N mod 1
/// against gamma.
inline bool weyl_vector_consistency(const CuspData& cusp, const LVec& rho, const LVec& w0,
                                    const std::vector<LVec>& roots)
{
    const HyperbolicLattice& K = cusp.K;
    if (K.q_dual(rho) != 0) return false;
    if (!K.is_primitive_dual(rho)) return false;
    if (detail::height_of(rho, w0) < 0) return false;
    for (const auto& alpha : roots) {
        Rat pr = K.pair_dual(alpha, rho);
        long pw = detail::height_of(alpha, w0);
        if (pr * Rat(pw) < 0) return false;
    }
    if (mod1(K.pair_dual(rho, cusp.gamma_dual)) != mod1(make_rat(-1, cusp.N))) return false;
    return true;
}

/// det of a reflection (as a matrix on K' in dual coordinates).
inline Rat reflection_det(const HyperbolicLattice& K, const LVec& alpha)
{
    long n = K.dim();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i) {
        LVec u(n, 0);
        u[i] = 1;
        LVec img = detail::reflect(K, alpha, u);
        for (long r = 0; r < n; ++r) m[r][i] = Rat(img[r]);
    }
    return detail::rat_det(m);
}

} // namespace vvmf

#endif
