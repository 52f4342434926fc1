#pragma once

#include "robba/padic.hpp"

#include <vector>

namespace robba {

/// An element of L_n = Q_p(zeta_{p^n}), stored as a residue modulo the
/// p^n-th cyclotomic polynomial Phi_{p^n}(X) = 1 + X^{p^{n-1}} + ... +
/// X^{(p-1)p^{n-1}}, with dense coefficients of length phi(p^n) and
/// per-coefficient precision.  The class of X is zeta_{p^n}.  Level-0
/// elements coincide with scalars.  Values are immutable.
///
/// Residual valuations for elements of L_n are reported coefficient-wise
/// (min over coordinates of the Q_p-valuation), not in the fractional
/// valuation of the ramified extension; all floors in reports use the same
/// convention.
class Cyclo {
  public:
    Cyclo() = default;

    static long phi_pn(long p, long n);

    /// Ring dimension phi(p^n) grows fast; levels beyond the cap are
    /// rejected at construction.  Default 4, configurable.
    static long level_cap();
    static void set_level_cap(long cap);

    static Cyclo from_scalar(const PAdic& c, long level = 0);
    static Cyclo from_coeffs(long p, long level, std::vector<PAdic> coeffs);

    /// The generator zeta_{p^n} (exact coefficients).
    static Cyclo zeta(long p, long level);

    /// zeta^e for any integer exponent (reduced mod p^level).
    static Cyclo zeta_pow(long p, long level, long e);

    long prime() const { return p_; }
    long level() const { return n_; }
    long dim() const { return static_cast<long>(c_.size()); }
    const std::vector<PAdic>& coeffs() const { return c_; }

    bool is_zero_at_prec() const;
    bool is_exact_zero() const;

    /// Scalar coordinate; requires the element to lie in L_0 at precision.
    PAdic scalar() const;

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator*(const PAdic& s) const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    /// Galois action sigma_a (zeta -> zeta^a); requires gcd(a, p) = 1.
    Cyclo galois(long a) const;

    /// Embedding L_n -> L_m (zeta_{p^n} = zeta_{p^m}^{p^{m-n}}).
    Cyclo embed_to(long m) const;

    /// Inverse of the embedding; throws if the element visibly does not lie
    /// in L_m at tracked precision.
    Cyclo descend_to(long m) const;

    /// Field trace Tr_{L_n/L_m} (sum over Galois conjugates), m <= level.
    Cyclo trace_to(long m) const;

    /// Tate normalized trace T_m = p^{m-n} Tr_{L_n/L_m}.  For m >= 1 this is
    /// the Gamma-equivariant projector (identity on L_m); at m = 0 the same
    /// p-power normalization is kept, so T_0 restricted to L_0 multiplies by
    /// (p-1)/p -- the price of matching T_0(zeta_p) = -1/p.
    Cyclo tate_trace_to(long m) const;

    Cyclo inv() const;

    /// Multiply by p^k.
    Cyclo shift(long k) const;

    /// Truncate every coefficient to absolute precision <= N.
    Cyclo truncated(long N) const;

    /// Lowest coefficient-wise absolute precision.
    long min_abs_prec() const;

    bool matches(const Cyclo& o) const;

    std::string str() const;

  private:
    long p_ = 2;
    long n_ = 0;
    std::vector<PAdic> c_;
};

/// min over coordinates of residual_valuation (PREC_INF if all exact zero).
long residual_valuation(const Cyclo& x);

/// Solve A y = b over Q_p by Gaussian elimination with max-|.| pivoting;
/// A is dim x dim in row-major order.  Precision follows from the scalar ops.
std::vector<PAdic> solve_linear(std::vector<PAdic> A, std::vector<PAdic> b,
                                long dim);

}  // namespace robba
