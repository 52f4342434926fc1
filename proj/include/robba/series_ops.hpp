#pragma once

#include "robba/series.hpp"

namespace robba {

// ---------------------------------------------------------------------------
// Operators on the T-side ring (Laurent series over Q_p).
// ---------------------------------------------------------------------------

/// t = log(1+T) = sum (-1)^{n-1} T^n / n, to length `len`.
QSeries t_series(long p, long len);

/// (1+T)^b = sum C(b,n) T^n for b in Z_p, truncated at `len` coefficients.
/// Binomials follow the falling-factorial recurrence; the precision of b
/// caps the precision of every coefficient.
QSeries one_plus_T_pow(long p, const PAdic& b, long len);

/// (1+T)^j for an integer exponent: exact polynomial for j >= 0 (optionally
/// truncated to len), binomial series for j < 0 (len required).
QSeries one_plus_T_int_pow(long p, long j, long len = -1);

/// Conversion between the monomial window and the Mahler/binomial basis
/// f = sum_j b_j (1+T)^j on [0, W); requires lo >= 0.
std::vector<PAdic> to_binomial(const QSeries& f);
QSeries from_binomial(long p, const std::vector<PAdic>& b, long trunc,
                      long tail_bound = DEFAULT_TAIL_BOUND,
                      long tail_val = NO_TAIL_VAL);

/// phi(f) = f((1+T)^p - 1).  Ring map; preserves the truncation order and
/// exactness on polynomials.  Principal parts are handled through
/// phi(T^{-k} h) = T^{-k} q^{-k} phi(h) with q = ((1+T)^p - 1)/T; since
/// q(0) = p, the inverse has denominators and a truncation order must be
/// available (out_trunc, or the input's).
QSeries apply_phi(const QSeries& f, long out_trunc = -1);

/// sigma_a(f) = f((1+T)^a - 1) for a p-adic unit a.  Computed in the
/// binomial basis: sigma_a((1+T)^j) = (1+T)^{aj}.  For an exact polynomial
/// input and a small nonnegative integer exponent the result is exact.
QSeries apply_sigma(const QSeries& f, const PAdic& a, long out_trunc = -1);

/// psi: the left inverse of phi, from the unique decomposition
/// f = sum_{i<p} (1+T)^i phi(f_i).  Solved degree-by-degree against the
/// unitriangular family (1+T)^i phi(T)^j (top degree pj+i, unit diagonal),
/// so no precision is lost beyond the input's own.  Truncation drops from
/// M to ceil(M/p).  psi_component returns f_i.
QSeries psi(const QSeries& f);
QSeries psi_component(const QSeries& f, long i);

/// Second, independent route: in the binomial basis psi is the subsequence
/// map b_j -> b_{pj} (the measure-side pushforward by x -> x/p restricted
/// to pZ_p).  Used as the cross-validation oracle and in hot loops.
QSeries psi_binomial(const QSeries& f);

/// nabla = (1+T) log(1+T) d/dT = t d/dt.  Defined for both variable tags.
/// On the T side an exact input needs an explicit truncation order.
template <class C>
Series<C> nabla(const Series<C>& f, long out_trunc = -1);

/// Multiplication by t (variable T: multiply by the t series; variable t:
/// shift).
template <class C>
Series<C> mul_t(const Series<C>& f, long out_trunc = -1);

/// Division by t.  With require_integral every coefficient in degrees < 1
/// (var t) resp. the whole principal part and constant term (var T) must
/// vanish at tracked precision (DivisibilityError otherwise, carrying the
/// residual valuation); without it the quotient may acquire principal part,
/// as in div_by_t(1) = (t/T)^{-1} T^{-1}.
template <class C>
Series<C> div_by_t(const Series<C>& f, bool require_integral = true,
                long out_trunc = -1);

enum class ResidueForm { dT_over_1pT, dt };

/// res_0(f dT/(1+T)) (variable T) or res_0(f dt) = a_{-1} (variable t).
template <class C>
C residue(const Series<C>& f, ResidueForm form);

/// Expansion of f(T) at T = e^t - 1 over Q_p (level-0 localization);
/// explicit and lossy: the result is a t-series of length t_len.
QSeries to_t_expansion(const QSeries& f, long t_len);

}  // namespace robba
