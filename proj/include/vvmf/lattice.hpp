#ifndef VVMF_LATTICE_HPP
#define VVMF_LATTICE_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvmf/rational.hpp"

namespace vvmf {

/// Integer vector of dual coordinates: lambda in K' is stored by its pairings
/// a_i = <lambda, e_i> against the fixed lattice basis e_1, ..., e_n.  With
/// this convention K' is exactly Z^n and K itself is the image of the Gram
/// matrix.
using LVec = std::vector<long>;

namespace detail {

inline std::vector<std::vector<Rat>> rat_inverse(const std::vector<std::vector<long>>& g)
{
    long n = static_cast<long>(g.size());
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) a[i][j] = Rat(g[i][j]);
        a[i][n + i] = Rat(1);
    }
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("lattice: Gram matrix is singular");
        std::swap(a[col], a[piv]);
        Rat d = a[col][col];
        for (long j = 0; j < 2 * n; ++j) a[col][j] /= d;
        for (long r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (long j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

inline Rat rat_det(std::vector<std::vector<Rat>> a)
{
    long n = static_cast<long>(a.size());
    Rat det(1);
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(a[col], a[piv]);
            det = -det;
        }
        det *= a[col][col];
        for (long r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (long j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

/// Signature of a rational symmetric matrix by congruence diagonalization:
/// returns {positive, negative} inertia counts (throws on degeneracy).
inline std::pair<long, long> signature_of(std::vector<std::vector<Rat>> a)
{
    long n = static_cast<long>(a.size());
    long pos = 0, neg = 0;
    for (long col = 0; col < n; ++col) {
        if (a[col][col] == 0) {
            long piv = -1;
            for (long r = col + 1; r < n; ++r)
                if (a[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw std::invalid_argument("lattice: degenerate form");
            // row/column addition keeps the matrix symmetric and makes the
            // pivot nonzero: a[col][col] += 2 a[piv][col]
            for (long j = 0; j < n; ++j) a[col][j] += a[piv][j];
            for (long r = 0; r < n; ++r) a[r][col] += a[r][piv];
        }
        Rat d = a[col][col];
        if (d > 0) ++pos;
        else ++neg;
        for (long r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / d;
            for (long j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            for (long j = col; j < n; ++j) a[j][r] = a[r][j];
        }
    }
    return {pos, neg};
}

} // namespace detail

/// Even lattice of signature (1, n-1) given by its Gram matrix.  Dual vectors
/// are handled in dual coordinates (see LVec above), so membership and
/// pairings are exact rational arithmetic throughout.
class HyperbolicLattice {
  public:
    static HyperbolicLattice make(std::string name, std::vector<std::vector<long>> gram)
    {
        HyperbolicLattice K;
        K.name_ = std::move(name);
        K.gram_ = std::move(gram);
        long n = static_cast<long>(K.gram_.size());
        for (long i = 0; i < n; ++i) {
            if (static_cast<long>(K.gram_[i].size()) != n)
                throw std::invalid_argument("lattice: Gram matrix not square");
            if (K.gram_[i][i] % 2 != 0) throw std::invalid_argument("lattice: not even");
            for (long j = 0; j < n; ++j)
                if (K.gram_[i][j] != K.gram_[j][i])
                    throw std::invalid_argument("lattice: Gram matrix not symmetric");
        }
        K.inv_ = detail::rat_inverse(K.gram_);
        std::vector<std::vector<Rat>> rg(n, std::vector<Rat>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) rg[i][j] = Rat(K.gram_[i][j]);
        auto [pos, neg] = detail::signature_of(rg);
        if (pos != 1) throw std::invalid_argument("lattice: signature is not (1, n-1)");
        (void)neg;
        return K;
    }

    const std::string& name() const { return name_; }
    long dim() const { return static_cast<long>(gram_.size()); }
    const std::vector<std::vector<long>>& gram() const { return gram_; }

    /// <a, b> for a, b in K' (dual coordinates).
    Rat pair_dual(const LVec& a, const LVec& b) const
    {
        Rat s(0);
        for (long i = 0; i < dim(); ++i) {
            if (a[i] == 0) continue;
            Rat row(0);
            for (long j = 0; j < dim(); ++j)
                if (b[j] != 0) row += inv_[i][j] * Rat(b[j]);
            s += Rat(a[i]) * row;
        }
        return s;
    }

    /// q(a) = <a, a>/2 for a in K'.
    Rat q_dual(const LVec& a) const { return pair_dual(a, a) / 2; }

    /// <a, v> for a in K' (dual coords) and v in K (lattice coords): integral.
    long pair_with_lattice(const LVec& a, const LVec& v) const
    {
        long s = 0;
        for (long i = 0; i < dim(); ++i) s += a[i] * v[i];
        return s;
    }

    /// Dual coordinates of the lattice vector with coordinates v: G v.
    LVec dual_coords(const LVec& v) const
    {
        LVec a(dim(), 0);
        for (long i = 0; i < dim(); ++i)
            for (long j = 0; j < dim(); ++j) a[i] += gram_[i][j] * v[j];
        return a;
    }

    /// Is the dual vector a actually in K (i.e. G^{-1} a integral)?
    bool in_lattice(const LVec& a) const
    {
        for (long i = 0; i < dim(); ++i) {
            Rat s(0);
            for (long j = 0; j < dim(); ++j)
                if (a[j] != 0) s += inv_[i][j] * Rat(a[j]);
            if (!is_integer(s)) return false;
        }
        return true;
    }

    bool is_primitive_dual(const LVec& a) const
    {
        long g = 0;
        for (long x : a) g = std::gcd(g, std::abs(x));
        return g == 1;
    }

    /// q(v) for v in K (lattice coordinates).
    Rat q_lattice(const LVec& v) const
    {
        long s = 0;
        for (long i = 0; i < dim(); ++i)
            for (long j = 0; j < dim(); ++j) s += v[i] * gram_[i][j] * v[j];
        return make_rat(s, 2);
    }

  private:
    std::string name_;
    std::vector<std::vector<long>> gram_;
    std::vector<std::vector<Rat>> inv_;
};

/// K = A_2(-1) + II_{1,1}(3), signature (1,3); basis order: A_2(-1) then the
/// hyperbolic pair x, xi with <x, xi> = 3.
inline HyperbolicLattice level3_K()
{
    return HyperbolicLattice::make("A2(-1)+II_{1,1}(3)", {{-2, 1, 0, 0},
                                                          {1, -2, 0, 0},
                                                          {0, 0, 0, 3},
                                                          {0, 0, 3, 0}});
}

/// K = D_4(-1) + II_{1,1}(2), signature (1,5); basis order: D_4(-1) then the
/// hyperbolic pair x, xi with <x, xi> = 2.
inline HyperbolicLattice level2_K()
{
    return HyperbolicLattice::make("D4(-1)+II_{1,1}(2)", {{-2, 1, 0, 0, 0, 0},
                                                          {1, -2, 1, 1, 0, 0},
                                                          {0, 1, -2, 0, 0, 0},
                                                          {0, 1, 0, -2, 0, 0},
                                                          {0, 0, 0, 0, 0, 2},
                                                          {0, 0, 0, 0, 2, 0}});
}

/// All lambda in K' with q(lambda) >= q_min and height <= H for the grading
/// functional w0 (an interior point of the positive cone, lattice coords).
/// Heights are the integers <lambda, w0>; with include_height0 the boundary
/// slice height = 0 (a compact ball since q is negative definite there) is
/// included, otherwise heights start at 1.
///
/// Completeness: writing lambda = (h/<w0,w0>) w0 + lambda_perp, the component
/// lambda_perp lives in the negative definite space w0^perp and satisfies
/// -q(lambda_perp) <= h^2/(2<w0,w0>) - q_min =: R_h.  Cauchy-Schwarz in that
/// definite space bounds each dual coordinate a_i into an explicit box around
/// h <e_i, w0>/<w0,w0>, which is what is enumerated.  `pad` widens every box
/// by that many units (used to cross-check completeness).
inline std::vector<LVec> enumerate_slab(const HyperbolicLattice& K, const LVec& w0, long H,
                                        const Rat& q_min, bool include_height0 = false,
                                        long pad = 0)
{
    long n = K.dim();
    if (static_cast<long>(w0.size()) != n)
        throw std::invalid_argument("enumerate_slab: w0 dimension mismatch");
    Rat nw = K.q_lattice(w0) * 2;  // <w0, w0>
    if (nw <= 0) throw std::invalid_argument("enumerate_slab: w0 not of positive norm");
    if (q_min > 0) throw std::invalid_argument("enumerate_slab: q_min must be <= 0");

    LVec w0d = K.dual_coords(w0);
    // s_i = -q(e_i - (<e_i,w0>/<w0,w0>) w0) >= 0
    std::vector<Rat> s(n);
    for (long i = 0; i < n; ++i)
        s[i] = -(make_rat(K.gram()[i][i], 2) - Rat(w0d[i]) * Rat(w0d[i]) / (2 * nw));

    // all-integer norm test: a^T adj(G) a  vs  q_min * 2 det(G), where
    // adj(G) = det(G) G^{-1} is integral
    std::vector<std::vector<Rat>> rg(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) rg[i][j] = Rat(K.gram()[i][j]);
    Rat det = detail::rat_det(rg);
    std::vector<std::vector<long>> adj(n, std::vector<long>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            LVec u(n, 0);
            u[j] = 1;
            Rat e = det * K.pair_dual(u, [&] {
                LVec v(n, 0);
                v[i] = 1;
                return v;
            }());
            if (!is_integer(e)) throw std::logic_error("enumerate_slab: adjugate not integral");
            adj[i][j] = to_long(e);
        }
    Rat tq = q_min * 2 * det;
    if (!is_integer(tq)) throw std::invalid_argument("enumerate_slab: q_min denominator");
    long qthresh = to_long(tq);
    bool det_pos = det > 0;
    auto q_ok = [&](const LVec& a) {
        long qa = 0;
        for (long i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            long row = 0;
            for (long j = 0; j < n; ++j) row += adj[i][j] * a[j];
            qa += a[i] * row;
        }
        return det_pos ? qa >= qthresh : qa <= qthresh;
    };

    std::vector<LVec> out;
    LVec a(n, 0);
    for (long h = include_height0 ? 0 : 1; h <= H; ++h) {
        Rat Rh = Rat(h) * Rat(h) / (2 * nw) - q_min;
        if (Rh < 0) continue;
        std::vector<long> lo(n), hi(n);
        for (long i = 0; i < n; ++i) {
            // |a_i - h <e_i,w0>/<w0,w0>| <= 2 sqrt(R_h s_i)
            Rat center = Rat(h) * Rat(w0d[i]) / nw;
            Rat b2 = 4 * Rh * s[i];
            Int num = b2.get_num(), den = b2.get_den();
            Int bound_sq = num / den + 1;
            long b = to_long(Int(sqrt(bound_sq))) + 1 + pad;
            Rat cf = center;
            long cl = to_long(Int(cf.get_num() / cf.get_den()));
            lo[i] = cl - b - 2;
            hi[i] = cl + b + 2;
        }
        // depth-first over the box; the last coordinate is solved from the
        // height equation when possible
        long pivot = -1;
        for (long i = n - 1; i >= 0; --i)
            if (w0[i] != 0) {
                pivot = i;
                break;
            }
        std::vector<long> order;
        for (long i = 0; i < n; ++i)
            if (i != pivot) order.push_back(i);
        auto rec = [&](auto&& self, long pos, long hsum) -> void {
            if (pos == static_cast<long>(order.size())) {
                long rem = h - hsum;
                if (rem % w0[pivot] != 0) return;
                long ap = rem / w0[pivot];
                if (ap < lo[pivot] || ap > hi[pivot]) return;
                a[pivot] = ap;
                if (q_ok(a)) out.push_back(a);
                return;
            }
            long i = order[pos];
            for (long v = lo[i]; v <= hi[i]; ++v) {
                a[i] = v;
                self(self, pos + 1, hsum + v * w0[i]);
            }
        };
        if (pivot < 0) throw std::invalid_argument("enumerate_slab: w0 is zero");
        rec(rec, 0, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace vvmf

#endif
