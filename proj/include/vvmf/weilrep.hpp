#ifndef VVMF_WEILREP_HPP
#define VVMF_WEILREP_HPP

#include <string>
#include <vector>

#include "vvmf/cyclotomic.hpp"
#include "vvmf/genus.hpp"
#include "vvmf/rational.hpp"

namespace vvmf {

/// Weil representation rho_L of SL2(Z) on C[D] for a discriminant form D of a
/// lattice with even signature r mod 8:
///   rho(T) e_g = e(Q(g)) e_g,
///   rho(S) e_g = e(-r/8)/sqrt(|D|) * sum_b e(-(b,g)) e_b.
/// The dual rho* is the entrywise complex conjugate.  Dense matrices serve as
/// the test oracle; the trace accessors below avoid building any product of
/// dense matrices and power the dimension oracle at |D| up to ~10^3.
class WeilRep {
  public:
    using Mat = std::vector<std::vector<Cyc>>;

    WeilRep(FiniteQuadraticModule D, long r) : D_(std::move(D)), r_(((r % 8) + 8) % 8)
    {
        if (!D_.order().fits_slong_p())
            throw std::invalid_argument("WeilRep: |D| too large for explicit model");
        n_ = D_.order().get_si();
        elements_ = D_.elements();
        N_ = D_.level();
        // integer tables: qn[i] = N*Q(g_i) mod N; gen_pair[k][j] = N*(gen_k, g_j)
        qn_.resize(n_);
        for (long i = 0; i < n_; ++i) qn_[i] = to_long(D_.q_value(elements_[i]) * N_);
        size_t g = D_.ngens();
        gen_pair_.assign(g, std::vector<long>(n_));
        for (size_t k = 0; k < g; ++k) {
            DElement gen = D_.zero();
            gen[k] = 1;
            for (long j = 0; j < n_; ++j)
                gen_pair_[k][j] = to_long(D_.bilinear(gen, elements_[j]) * N_);
        }
    }

    const FiniteQuadraticModule& discriminant_form() const { return D_; }
    long signature() const { return r_; }
    long dim() const { return n_; }
    long level() const { return N_; }
    const std::vector<DElement>& elements() const { return elements_; }

    long index_of(const DElement& a) const
    {
        DElement x = D_.reduce(a);
        long idx = 0, stride = 1;
        for (size_t i = 0; i < x.size(); ++i) {
            idx += x[i] * stride;
            stride *= D_.orders()[i];
        }
        return idx;
    }

    /// N*(g_i, g_j) mod N via the per-generator pairing table.
    long pairing_num(long i, long j) const
    {
        long v = 0;
        const DElement& a = elements_[i];
        for (size_t k = 0; k < a.size(); ++k)
            if (a[k] != 0) v += a[k] * gen_pair_[k][j];
        return ((v % N_) + N_) % N_;
    }

    Cyc prefactor_S(bool dual) const
    {
        Cyc c = Cyc::e(make_rat(dual ? r_ : -r_, 8)) * Cyc::sqrt_int(n_).inverse();
        return c;
    }

    Mat rho_T(bool dual = false) const
    {
        Mat m(n_, std::vector<Cyc>(n_, Cyc(Rat(0))));
        for (long i = 0; i < n_; ++i)
            m[i][i] = Cyc::root_of_unity(N_, dual ? -qn_[i] : qn_[i]);
        return m;
    }

    Mat rho_S(bool dual = false) const
    {
        Cyc c = prefactor_S(dual);
        Mat m(n_, std::vector<Cyc>(n_, Cyc(Rat(0))));
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j)
                m[i][j] = c * Cyc::root_of_unity(N_, dual ? pairing_num(i, j) : -pairing_num(i, j));
        return m;
    }

    /// Word product over {S, T, s, t}: lowercase denotes the inverse; the
    /// string is read left to right as a matrix product.
    Mat rho_word(const std::string& word, bool dual = false) const
    {
        Mat m = identity(n_);
        for (char ch : word) {
            switch (ch) {
                case 'S': m = mat_mul(m, rho_S(dual)); break;
                case 's': m = mat_mul(m, conj_transpose(rho_S(dual))); break;
                case 'T': m = mat_mul(m, rho_T(dual)); break;
                case 't': m = mat_mul(m, conj_transpose(rho_T(dual))); break;
                case ' ': break;
                default: throw std::invalid_argument("rho_word: bad letter");
            }
        }
        return m;
    }

    std::vector<Cyc> basis_vector(long i) const
    {
        std::vector<Cyc> v(n_, Cyc(Rat(0)));
        v[i] = Cyc(Rat(1));
        return v;
    }

    /// Apply rho(word) to a vector without forming any dense matrix: the
    /// rightmost letter acts first.  Each S costs O(|D|^2), each T O(|D|).
    std::vector<Cyc> apply_word(const std::string& word, std::vector<Cyc> v,
                                bool dual = false) const
    {
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            char ch = *it;
            if (ch == ' ') continue;
            std::vector<Cyc> w(n_, Cyc(Rat(0)));
            switch (ch) {
                case 'T':
                    for (long i = 0; i < n_; ++i)
                        w[i] = Cyc::root_of_unity(N_, dual ? -qn_[i] : qn_[i]) * v[i];
                    break;
                case 't':
                    for (long i = 0; i < n_; ++i)
                        w[i] = Cyc::root_of_unity(N_, dual ? qn_[i] : -qn_[i]) * v[i];
                    break;
                case 'S':
                case 's': {
                    // rho(S)^{-1} = rho(S)^dagger is the entrywise conjugate
                    // of the symmetric matrix rho(S)
                    bool conj = ch == 's';
                    Cyc pref = prefactor_S(dual);
                    if (conj) pref = pref.conj();
                    long sgn = (dual ? 1 : -1) * (conj ? -1 : 1);
                    for (long i = 0; i < n_; ++i) {
                        Cyc acc{Rat(0)};
                        for (long j = 0; j < n_; ++j) {
                            if (v[j].is_zero()) continue;
                            acc += Cyc::root_of_unity(N_, sgn * pairing_num(i, j)) * v[j];
                        }
                        w[i] = pref * acc;
                    }
                    break;
                }
                default: throw std::invalid_argument("apply_word: bad letter");
            }
            v = std::move(w);
        }
        return v;
    }

    /// Gamma_1(N) fast path: for M = [[a,b],[c,d]] with c = 0, a = d = 1 mod N,
    /// rho(M) = diag(e(b Q(gamma))).
    std::vector<Cyc> rho_gamma1_diag(long a, long b, long c, long d, bool dual = false) const
    {
        if (((c % N_) + N_) % N_ != 0 || ((a - 1) % N_) != 0 || ((d - 1) % N_) != 0 ||
            a * d - b * c != 1)
            throw std::invalid_argument("rho_gamma1_diag: matrix not in Gamma_1(level)");
        std::vector<Cyc> diag(n_);
        for (long i = 0; i < n_; ++i)
            diag[i] = Cyc::root_of_unity(N_, (dual ? -b : b) * qn_[i]);
        return diag;
    }

    // ----- exact traces used by the dimension oracle (no dense products) ----

    /// tr rho*(S)^m; m=2 via the O(|D|^2) double sum, m=3 via unitarity.
    Cyc trace_dual_S(long m) const
    {
        m = ((m % 4) + 4) % 4;
        if (m == 0) return Cyc(Rat(n_));
        if (m == 3) return trace_dual_S(1).conj();
        std::vector<Int> counts(N_, Int(0));
        if (m == 1) {
            for (long i = 0; i < n_; ++i) counts[(2 * qn_[i]) % N_] += 1;
        } else {
            for (long i = 0; i < n_; ++i)
                for (long j = 0; j < n_; ++j) counts[(2 * pairing_num(i, j)) % N_] += 1;
        }
        Cyc pref = prefactor_S(true);
        return (m == 1 ? pref : pref * pref) * cyc_from_counts(N_, counts);
    }

    /// tr (rho*(S) rho*(T))^m for m in [-2, 3]; m = -1, -2 via unitarity,
    /// m = 3 equals tr rho*(S^2) by the braid relation (itself verified
    /// matrixwise in the test suite).
    Cyc trace_dual_ST(long m) const
    {
        if (m == 0) return Cyc(Rat(n_));
        if (m < 0) return trace_dual_ST(-m).conj();
        if (m == 3) return trace_dual_S(2);
        std::vector<Int> counts(N_, Int(0));
        if (m == 1) {
            // entry (b,g) = pref * e((b,g) - Q(g)); diagonal: e(2Q - Q) = e(Q)
            for (long i = 0; i < n_; ++i) counts[qn_[i] % N_] += 1;
        } else if (m == 2) {
            for (long i = 0; i < n_; ++i)
                for (long j = 0; j < n_; ++j)
                    counts[(2 * pairing_num(i, j) + (N_ - qn_[i]) + (N_ - qn_[j])) % N_] += 1;
        } else {
            throw std::invalid_argument("trace_dual_ST: m out of supported range");
        }
        Cyc pref = prefactor_S(true);
        Cyc p = pref;
        for (long t = 1; t < m; ++t) p = p * pref;
        return p * cyc_from_counts(N_, counts);
    }

    /// Diagonal of rho*(S)^2 from the O(|D|^2) double sum.
    std::vector<Cyc> diag_dual_S2() const
    {
        Cyc pref = prefactor_S(true);
        Cyc pref2 = pref * pref;
        std::vector<Cyc> diag(n_);
        for (long i = 0; i < n_; ++i) {
            std::vector<Int> counts(N_, Int(0));
            for (long j = 0; j < n_; ++j) counts[(2 * pairing_num(i, j)) % N_] += 1;
            diag[i] = pref2 * cyc_from_counts(N_, counts);
        }
        return diag;
    }

    /// tr rho*(T)^j restricted via a diagonal weight vector (or none).
    Cyc trace_dual_T(long j, const std::vector<Cyc>* weight = nullptr) const
    {
        Cyc t(Rat(0));
        for (long i = 0; i < n_; ++i) {
            Cyc term = Cyc::root_of_unity(N_, -j * qn_[i]);
            if (weight) term = term * (*weight)[i];
            t += term;
        }
        return t;
    }

    // ----- dense-matrix helpers (test oracle scale) -------------------------

    static Mat identity(long n)
    {
        Mat m(n, std::vector<Cyc>(n, Cyc(Rat(0))));
        for (long i = 0; i < n; ++i) m[i][i] = Cyc(Rat(1));
        return m;
    }

    static Mat mat_mul(const Mat& a, const Mat& b)
    {
        long n = (long)a.size();
        Mat out(n, std::vector<Cyc>(n, Cyc(Rat(0))));
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                if (a[i][k].is_zero()) continue;
                for (long j = 0; j < n; ++j) {
                    if (b[k][j].is_zero()) continue;
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        return out;
    }

    static Mat scale(const Cyc& c, const Mat& a)
    {
        Mat out = a;
        for (auto& row : out)
            for (auto& x : row) x = c * x;
        return out;
    }

    static Mat conj_transpose(const Mat& a)
    {
        long n = (long)a.size();
        Mat out(n, std::vector<Cyc>(n, Cyc(Rat(0))));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) out[i][j] = a[j][i].conj();
        return out;
    }

    static bool mat_eq(const Mat& a, const Mat& b)
    {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < a.size(); ++j)
                if (a[i][j] != b[i][j]) return false;
        return true;
    }

    static Cyc mat_trace(const Mat& a)
    {
        Cyc t(Rat(0));
        for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
        return t;
    }

  private:
    FiniteQuadraticModule D_;
    long r_;
    long n_ = 1;
    long N_ = 1;
    std::vector<DElement> elements_;
    std::vector<long> qn_;
    std::vector<std::vector<long>> gen_pair_;
};

/// Eigenvalue multiplicities of a finite-order unitary matrix X from the
/// traces of its powers: m_j = (1/ord) sum_t tr(X^t) e(-jt/ord).  Every m_j
/// must come out a non-negative rational integer, or the input was invalid.
inline std::vector<Int> eigenvalue_multiplicities(const std::vector<Cyc>& power_traces)
{
    long ord = (long)power_traces.size();
    std::vector<Int> mult(ord);
    for (long j = 0; j < ord; ++j) {
        Cyc m(Rat(0));
        for (long t = 0; t < ord; ++t)
            m += Cyc::root_of_unity(ord, -j * t) * power_traces[t];
        Cyc scaled = make_rat(1, ord) * m;
        if (!scaled.is_integer())
            throw std::logic_error("eigenvalue_multiplicities: non-integer multiplicity");
        Int v(scaled.to_rat().get_num());
        if (v < 0) throw std::logic_error("eigenvalue_multiplicities: negative multiplicity");
        mult[j] = v;
    }
    return mult;
}

/// alpha(X) = sum of beta_j over eigenvalues e(beta_j), 0 <= beta_j < 1.
inline Rat alpha_from_traces(const std::vector<Cyc>& power_traces)
{
    auto mult = eigenvalue_multiplicities(power_traces);
    long ord = (long)power_traces.size();
    Rat alpha(0);
    for (long j = 0; j < ord; ++j) alpha += make_rat(j, ord) * Rat(mult[j]);
    return alpha;
}

/// Dense-matrix alpha invariant: finds the order by repeated multiplication.
inline Rat alpha_invariant(const WeilRep::Mat& X, long max_order = 1000)
{
    long n = (long)X.size();
    std::vector<Cyc> traces{Cyc(Rat(n))};
    WeilRep::Mat p = X;
    for (long ordtry = 1; ordtry <= max_order; ++ordtry) {
        if (WeilRep::mat_eq(p, WeilRep::identity(n)))
            return alpha_from_traces(traces);
        traces.push_back(WeilRep::mat_trace(p));
        p = WeilRep::mat_mul(p, X);
    }
    throw std::domain_error("alpha_invariant: matrix not of finite order within bound");
}

} // namespace vvmf

#endif
