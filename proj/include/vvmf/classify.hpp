#ifndef VVMF_CLASSIFY_HPP
#define VVMF_CLASSIFY_HPP

#include <algorithm>
#include <map>
#include <set>

#include "vvmf/dimensions.hpp"

namespace vvmf {

/// Search frontiers for the classification sweep.  In each signature regime
/// either the level N or the discriminant-form order |D| is bounded:
///   n >= 8 : |D| < 45
///   n  = 6 : N < 33  or |D| < 137
///   n  = 4 : N < 101 or |D| < 3277
/// The sweep scans n = 4, 6, ..., n_max and records how far beyond the last
/// hit the bounded-|D| regimes stayed empty.
struct SearchFrontier {
    long d_high = 45;
    long n6_level = 33;
    long n6_d = 137;
    long n4_level = 101;
    long n4_d = 3277;
    long n_max = 34;

    long d_bound(long n) const { return n == 4 ? n4_d : n == 6 ? n6_d : d_high; }
    long level_bound(long n) const { return n == 4 ? n4_level : n == 6 ? n6_level : 0; }

    /// True iff the symbol lies inside the frontier for its own signature.
    bool admits(const GenusSymbol& g) const
    {
        long n = g.sig.bminus;
        if (n < 4 || n % 2 || n > n_max) return false;
        if (g.order() < d_bound(n)) return true;
        long lb = level_bound(n);
        return lb > 0 && g.level() < lb;
    }
};

namespace detail {

inline std::vector<long> primes_below(long bound)
{
    std::vector<long> out;
    if (bound <= 2) return out;
    std::vector<bool> composite(bound, false);
    for (long i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (long j = 2 * i; j < bound; j += i) composite[j] = true;
    }
    return out;
}

/// All Jordan-component lists (square-free level: at most one component per
/// prime) with product of component orders < d_bound and p-ranks <= rmax.
inline void enum_by_order(const std::vector<long>& ps, size_t i, Int prod, long d_bound,
                          long rmax, std::vector<JordanComponent>& cur,
                          const std::function<void(const std::vector<JordanComponent>&)>& emit)
{
    emit(cur);
    for (size_t j = i; j < ps.size(); ++j) {
        long p = ps[j];
        long step = p == 2 ? 2 : 1;
        Int pk = prod;
        for (long r = step; r <= rmax; r += step) {
            pk *= int_pow(Int(p), step);
            if (pk >= d_bound) break;
            for (int sgn : {1, -1}) {
                cur.push_back({p, r, sgn});
                enum_by_order(ps, j + 1, pk, d_bound, rmax, cur, emit);
                cur.pop_back();
            }
        }
    }
}

/// All rank/sign assignments for a fixed set of primes (every prime present).
inline void enum_ranks(const std::vector<long>& ps, size_t i, long rmax,
                       std::vector<JordanComponent>& cur,
                       const std::function<void(const std::vector<JordanComponent>&)>& emit)
{
    if (i == ps.size()) {
        emit(cur);
        return;
    }
    long p = ps[i];
    long step = p == 2 ? 2 : 1;
    for (long r = step; r <= rmax; r += step)
        for (int sgn : {1, -1}) {
            cur.push_back({p, r, sgn});
            enum_ranks(ps, i + 1, rmax, cur, emit);
            cur.pop_back();
        }
}

/// Non-empty square-free level values < bound, as prime sets.
inline void enum_levels(const std::vector<long>& ps, size_t i, long prod, long bound,
                        std::vector<long>& cur,
                        const std::function<void(const std::vector<long>&)>& emit)
{
    if (!cur.empty()) emit(cur);
    for (size_t j = i; j < ps.size(); ++j) {
        if (prod > (bound - 1) / ps[j]) break;
        cur.push_back(ps[j]);
        enum_levels(ps, j + 1, prod * ps[j], bound, cur, emit);
        cur.pop_back();
    }
}

/// Realizability of a symbol by an even lattice of signature (2,n) beyond the
/// Milgram congruence.  When the p-rank equals the lattice rank n+2, the
/// p-adic completion is p times a unimodular Z_p-lattice whose determinant
/// class is forced by the global determinant (-1)^n |D|; the component sign
/// must match it.  Components of smaller p-rank leave a free unimodular part
/// and impose no condition.
inline bool full_rank_condition(const GenusSymbol& g)
{
    long rank = g.sig.bminus + 2;
    Int dtot = g.order();
    for (const auto& c : g.comps) {
        if (c.rank != rank) continue;
        Int m = dtot / int_pow(Int(c.p), c.rank);  // prime-to-p part of |D|
        if (c.p != 2) {
            if (kronecker(m, Int(c.p)) != c.sign) return false;
        } else {
            // unimodular even Z_2-lattices are sums of U (det -1) and V
            // (det 3); the V-count parity is the component sign, so the det
            // class mod squares (units mod 8) is determined
            long b0 = c.sign == -1 ? 1 : 0;
            long rhs = ((c.rank / 2 + b0) % 2 ? -1 : 1) * (b0 ? 3 : 1);
            rhs = ((rhs % 8) + 8) % 8;
            long lhs = to_long(Int(m % 8));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

} // namespace detail

/// All square-free-level genus symbols of signature (2,n) inside the frontier:
/// p-ranks <= n+2, Milgram signature congruence, sorted by symbol string.
inline std::vector<GenusSymbol> enumerate_candidates(const SearchFrontier& f, long n)
{
    if (n < 4 || n % 2) throw std::invalid_argument("enumerate_candidates: need even n >= 4");
    long rmax = n + 2;
    long target = ((2 - n) % 8 + 8) % 8;
    std::set<std::string> seen;
    std::vector<GenusSymbol> out;
    auto emit = [&](const std::vector<JordanComponent>& comps) {
        GenusSymbol g;
        g.sig.bminus = n;
        g.comps = comps;
        if (milgram_sig(g) != target) return;
        if (!detail::full_rank_condition(g)) return;
        if (seen.insert(g.str()).second) out.push_back(g);
    };

    std::vector<JordanComponent> cur;
    long db = f.d_bound(n);
    auto ps = detail::primes_below(db);
    detail::enum_by_order(ps, 0, Int(1), db, rmax, cur, emit);

    long lb = f.level_bound(n);
    if (lb > 0) {
        auto lps = detail::primes_below(lb);
        std::vector<long> lev;
        detail::enum_levels(lps, 0, 1, lb, lev, [&](const std::vector<long>& primes) {
            detail::enum_ranks(primes, 0, rmax, cur, emit);
        });
    }

    std::sort(out.begin(), out.end(),
              [](const GenusSymbol& a, const GenusSymbol& b) { return a.str() < b.str(); });
    return out;
}

struct ClassifyHit {
    GenusSymbol genus;
    DimensionReport report;
};

struct ClassifyResult {
    std::vector<ClassifyHit> hits;       // in scan order (n ascending, symbol ascending)
    long examined = 0;
    long n_max = 0;
    long last_hit_n = 0;
    bool certificate_ok = false;         // no simple symbol with last_hit_n < n <= n_max
    std::map<long, long> hits_per_level; // level -> count
};

/// Filter the candidate stream through the cusp-form criterion dim S_{1+n/2} = 0.
inline ClassifyResult classify_simple(const SearchFrontier& f)
{
    ClassifyResult res;
    res.n_max = f.n_max;
    for (long n = 4; n <= f.n_max; n += 2) {
        for (const auto& g : enumerate_candidates(f, n)) {
            ++res.examined;
            DimensionReport rep;
            if (is_simple(g, &rep)) {
                res.hits.push_back({g, rep});
                res.last_hit_n = n;
                ++res.hits_per_level[g.level()];
            }
        }
    }
    res.certificate_ok = res.last_hit_n < f.n_max;
    return res;
}

} // namespace vvmf

#endif
