#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace robba {

/// Base class for all arithmetic errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Not enough tracked precision to carry out the operation.
struct PrecisionError : Error {
    long deficit;
    explicit PrecisionError(const std::string& what, long deficit_ = 0)
        : Error(what), deficit(deficit_) {}
};

/// Argument outside the domain of convergence / definition.
struct DomainError : Error {
    using Error::Error;
};

/// Exact division requested but the divisor does not divide at precision.
struct DivisibilityError : Error {
    long residue_valuation;
    explicit DivisibilityError(const std::string& what, long rv)
        : Error(what), residue_valuation(rv) {}
};

/// Principal-part bound (tail bound B) would be exceeded.
struct BoundError : Error {
    using Error::Error;
};

struct SupportError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    long achieved_valuation;
    explicit ConvergenceError(const std::string& what, long achieved)
        : Error(what), achieved_valuation(achieved) {}
};

/// Sentinel for "infinite" precision / valuation (exact zero).
inline constexpr long PREC_INF = std::numeric_limits<long>::max() / 4;

/// Relative precision is saturated at this many digits.  Values produced
/// from exact integers/rationals are stored with REL_CAP digits, which for
/// desk-scale runs (<= 64 tracked digits) never becomes the binding
/// constraint; reported precision is therefore always a lower bound for the
/// true precision.
inline constexpr long REL_CAP = 512;

/// A p-adic number with tracked precision.
///
/// Convention (fixed repo-wide): a nonzero value is stored as
///     x = p^v * (u + O(p^r)),   0 < u < p^r,  p does not divide u,
/// i.e. x is known modulo p^(v+r); v may be negative.  abs_prec() = v + r.
/// An inexact zero "O(p^N)" is a value only known to lie in p^N Z_p.
/// An exact zero has infinite precision.  All operations compute the exact
/// worst-case precision of their result and never report more than is
/// derivable from the inputs.
class PAdic {
  public:
    PAdic() : p_(2), kind_(Kind::ExactZero), v_(0), r_(0) {}

    static PAdic exact_zero(long p) { return PAdic(p); }

    /// The inexact zero O(p^N).  At saturated precision (N >= REL_CAP, the
    /// regime of values built from exact integers/rationals) this collapses
    /// to the exact zero, so that cancellations of exact data stay exact.
    static PAdic zero_mod(long p, long abs_prec) {
        if (abs_prec >= REL_CAP) return exact_zero(p);
        PAdic x(p);
        x.kind_ = Kind::Zero;
        x.v_ = abs_prec;
        return x;
    }

    /// n viewed in Z_p, known modulo p^abs_prec.
    static PAdic from_integer(long p, const mpz_class& n, long abs_prec = REL_CAP);
    static PAdic from_integer(long p, long n, long abs_prec = REL_CAP) {
        return from_integer(p, mpz_class(n), abs_prec);
    }

    /// num/den in Q_p, known modulo p^abs_prec (den nonzero).
    static PAdic from_ratio(long p, const mpz_class& num, const mpz_class& den,
                            long abs_prec = REL_CAP);
    static PAdic from_ratio(long p, long num, long den, long abs_prec = REL_CAP) {
        return from_ratio(p, mpz_class(num), mpz_class(den), abs_prec);
    }

    /// p^v * (u + O(p^r)) with u already a unit; u is reduced mod p^r here.
    static PAdic from_unit(long p, long v, mpz_class u, long r);

    long prime() const { return p_; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    /// True for the exact zero and for inexact zeros O(p^N).
    bool is_zero_at_prec() const { return kind_ != Kind::Unit; }

    /// Valuation; PREC_INF for the exact zero.  For an inexact zero O(p^N)
    /// only the lower bound N is known and is what is returned.
    long valuation() const {
        switch (kind_) {
            case Kind::ExactZero: return PREC_INF;
            default: return v_;
        }
    }

    /// The value is known modulo p^abs_prec().
    long abs_prec() const {
        switch (kind_) {
            case Kind::ExactZero: return PREC_INF;
            case Kind::Zero: return v_;
            default: return v_ + r_;
        }
    }

    long rel_prec() const { return kind_ == Kind::Unit ? r_ : 0; }

    /// Unit part (only meaningful for Kind::Unit values).
    const mpz_class& unit() const { return u_; }

    /// Representative of x in Z (requires valuation >= 0); reduced
    /// modulo p^abs_prec, in [0, p^abs_prec).
    mpz_class lift() const;

    /// Representative modulo p^k (requires valuation >= 0 and abs_prec >= k).
    mpz_class lift_mod(long k) const;

    PAdic operator-() const;
    PAdic operator+(const PAdic& o) const;
    PAdic operator-(const PAdic& o) const { return *this + (-o); }
    PAdic operator*(const PAdic& o) const;
    PAdic operator/(const PAdic& o) const { return *this * o.inv(); }
    PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
    PAdic& operator-=(const PAdic& o) { return *this = *this - o; }
    PAdic& operator*=(const PAdic& o) { return *this = *this * o; }

    /// Multiplicative inverse; throws DomainError on (in)exact zeros.
    PAdic inv() const;

    /// Multiply by p^k (exact shift).
    PAdic shift(long k) const;

    /// Integer power (n >= 0, or n < 0 for units).
    PAdic pow(long n) const;

    /// Truncate to absolute precision <= N (never gains precision).
    PAdic truncate(long N) const;

    /// True if this and o agree modulo p^min(abs_prec, o.abs_prec).
    bool matches(const PAdic& o) const;

    std::string str() const;

  private:
    explicit PAdic(long p) : p_(p), kind_(Kind::ExactZero), v_(0), r_(0) {}

    enum class Kind : std::uint8_t { ExactZero, Zero, Unit };

    void normalize();

    long p_;
    Kind kind_;
    long v_;  // valuation (Unit) or abs prec bound (Zero)
    long r_;  // relative precision (Unit only)
    mpz_class u_;
};

/// p^k as an mpz.
mpz_class pow_p(long p, long k);

/// v_p(n) for a nonzero integer.
long int_valuation(long p, const mpz_class& n);

/// Valuation of a difference that is expected to vanish: the valuation if
/// the value is nonzero at precision, otherwise its absolute precision
/// (PREC_INF for an exact zero).  A residual passes a check at floor F iff
/// residual_valuation >= F.
long residual_valuation(const PAdic& x);

/// Iwasawa logarithm on units and log on 1 + pZ_p; log(ab) = log a + log b.
/// For a unit argument the Teichmueller part is projected away first.
PAdic plog(const PAdic& a);

/// Exponential, convergent for v_p(x) >= 1 (p odd) resp. >= 2 (p = 2).
PAdic pexp(const PAdic& x);

/// Teichmueller representative of a unit.
PAdic teichmuller(const PAdic& x);

/// One-unit part <x> = x / teichmuller(x) of a unit x.
PAdic one_unit_part(const PAdic& x);

}  // namespace robba
