#pragma once

#include "robba/cyclo.hpp"
#include "robba/padic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <string>
#include <vector>

namespace robba {

enum class Var : char { T = 'T', t = 't' };

inline constexpr long DEFAULT_TAIL_BOUND = 8;

/// Sentinel: no lower bound is known for the valuations of the unknown
/// tail coefficients of a truncated series.
inline constexpr long NO_TAIL_VAL = std::numeric_limits<long>::min() / 4;

namespace detail {

template <class C>
struct coef {};

template <>
struct coef<PAdic> {
    static PAdic zero(long p) { return PAdic::exact_zero(p); }
    static PAdic one(long p) { return PAdic::from_integer(p, 1); }
};

template <>
struct coef<Cyclo> {
    static Cyclo zero(long p) { return Cyclo::from_scalar(PAdic::exact_zero(p)); }
    static Cyclo one(long p) { return Cyclo::from_scalar(PAdic::from_integer(p, 1)); }
};

inline long cap_add(long m, long d) {
    return m >= PREC_INF / 2 ? PREC_INF : m + d;
}

}  // namespace detail

/// Truncated Laurent series over PAdic or Cyclo coefficients.
///
/// The window [lo, lo+len) holds the tracked coefficients; degrees between
/// the window and trunc are known to vanish exactly; degrees >= trunc are
/// unknown (the series is known modulo var^trunc).  trunc == PREC_INF marks
/// an exact Laurent polynomial.  The principal part is always finite and
/// fully tracked; any operation that would push it below -tail_bound throws
/// BoundError instead of silently truncating.
///
/// tail_val is a witness that every unknown tail coefficient has valuation
/// >= tail_val (NO_TAIL_VAL when nothing is known, PREC_INF when the tail
/// is exactly zero).  Operators that mix tail into window -- psi above all
/// -- need this witness to report sound precision.
template <class C>
class Series {
  public:
    Series() = default;

    static Series zero(long p, Var v, long trunc = PREC_INF,
                       long tail_bound = DEFAULT_TAIL_BOUND) {
        Series f;
        f.p_ = p;
        f.var_ = v;
        f.lo_ = 0;
        f.trunc_ = trunc;
        f.tail_ = tail_bound;
        return f;
    }

    static Series monomial(long p, Var v, const C& c, long deg,
                           long trunc = PREC_INF,
                           long tail_bound = DEFAULT_TAIL_BOUND) {
        Series f = zero(p, v, trunc, tail_bound);
        if (deg < trunc) {
            f.lo_ = deg;
            f.c_.push_back(c);
        }
        f.normalize();
        return f;
    }

    static Series constant(long p, Var v, const C& c,
                           long trunc = PREC_INF,
                           long tail_bound = DEFAULT_TAIL_BOUND) {
        return monomial(p, v, c, 0, trunc, tail_bound);
    }

    static Series from_coeffs(long p, Var v, long lo, std::vector<C> cs,
                              long trunc = PREC_INF,
                              long tail_bound = DEFAULT_TAIL_BOUND,
                              long tail_val = NO_TAIL_VAL) {
        Series f;
        f.p_ = p;
        f.var_ = v;
        f.lo_ = lo;
        f.c_ = std::move(cs);
        f.trunc_ = trunc;
        f.tail_ = tail_bound;
        f.tailv_ = trunc >= PREC_INF / 2 ? PREC_INF : tail_val;
        if (f.lo_ + static_cast<long>(f.c_.size()) > f.trunc_)
            f.c_.resize(static_cast<size_t>(std::max<long>(0, f.trunc_ - f.lo_)));
        f.normalize();
        return f;
    }

    long prime() const { return p_; }
    Var var() const { return var_; }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(c_.size()); }
    long trunc() const { return trunc_; }
    bool exact() const { return trunc_ >= PREC_INF / 2; }
    long tail_bound() const { return tail_; }

    /// Lower bound for the valuation of every unknown tail coefficient.
    long tail_val() const { return exact() ? PREC_INF : tailv_; }

    Series with_tail_val(long v) const {
        Series f = *this;
        f.tailv_ = std::min(f.tail_val(), v);
        return f;
    }

    /// Lower bound for the valuation of every coefficient (window and tail).
    long min_val() const {
        long v = tail_val();
        for (const auto& a : c_) v = std::min(v, val_lower(a));
        return v;
    }

    /// Valuation lower bound for all coefficients at degrees >= d.
    long val_bound_from(long d) const {
        long v = tail_val();
        for (long k = std::max(d, lo_); k < hi(); ++k)
            v = std::min(v, val_lower(c_[static_cast<size_t>(k - lo_)]));
        return v;
    }

    /// Coefficient at degree k.  Throws if k >= trunc (unknown).
    C coeff(long k) const {
        if (k >= trunc_)
            throw Error("Series::coeff: degree beyond truncation order");
        if (k < lo_ || k >= hi()) return detail::coef<C>::zero(p_);
        return c_[static_cast<size_t>(k - lo_)];
    }

    bool is_zero_at_prec() const {
        return std::all_of(c_.begin(), c_.end(),
                           [](const C& a) { return a.is_zero_at_prec(); });
    }

    Series operator-() const {
        Series f = *this;
        for (auto& a : f.c_) a = -a;
        return f;
    }

    Series operator+(const Series& o) const {
        check_compat(o);
        Series f;
        f.p_ = p_;
        f.var_ = var_;
        f.tail_ = std::min(tail_, o.tail_);
        f.trunc_ = std::min(trunc_, o.trunc_);
        f.lo_ = std::min(lo_, o.lo_);
        long top = std::min(std::max(hi(), o.hi()), f.trunc_);
        if (top < f.lo_) top = f.lo_;
        f.c_.assign(static_cast<size_t>(top - f.lo_), detail::coef<C>::zero(p_));
        for (long k = f.lo_; k < top; ++k) {
            C s = detail::coef<C>::zero(p_);
            if (k >= lo_ && k < hi()) s += c_[static_cast<size_t>(k - lo_)];
            if (k >= o.lo_ && k < o.hi()) s += o.c_[static_cast<size_t>(k - o.lo_)];
            f.c_[static_cast<size_t>(k - f.lo_)] = s;
        }
        f.tailv_ = std::min(val_bound_from(f.trunc_), o.val_bound_from(f.trunc_));
        f.normalize();
        return f;
    }

    Series operator-(const Series& o) const { return *this + (-o); }

    Series operator*(const Series& o) const {
        check_compat(o);
        Series f;
        f.p_ = p_;
        f.var_ = var_;
        f.tail_ = std::min(tail_, o.tail_);
        f.trunc_ = std::min(detail::cap_add(trunc_, o.lo_),
                            detail::cap_add(o.trunc_, lo_));
        f.lo_ = lo_ + o.lo_;
        f.check_bound();
        long top = std::min(detail::cap_add(hi() - 1 + o.hi() - 1, 1), f.trunc_);
        if (c_.empty() || o.c_.empty()) top = f.lo_;
        if (top < f.lo_) top = f.lo_;
        f.c_.assign(static_cast<size_t>(top - f.lo_), detail::coef<C>::zero(p_));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_exact_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                long deg = lo_ + static_cast<long>(i) + o.lo_ + static_cast<long>(j);
                if (deg >= top) break;
                if (o.c_[j].is_exact_zero()) continue;
                f.c_[static_cast<size_t>(deg - f.lo_)] += c_[i] * o.c_[j];
            }
        }
        long mv1 = min_val(), mv2 = o.min_val();
        if (mv1 >= PREC_INF / 2 || mv2 >= PREC_INF / 2)
            f.tailv_ = PREC_INF;  // one factor is exactly zero
        else if (mv1 <= NO_TAIL_VAL / 2 || mv2 <= NO_TAIL_VAL / 2)
            f.tailv_ = NO_TAIL_VAL;
        else
            f.tailv_ = mv1 + mv2;
        f.normalize();
        return f;
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const C& s) const {
        Series f = *this;
        for (auto& a : f.c_) a = a * s;
        long vs = val_lower(s);
        if (vs >= PREC_INF / 2)
            f.tailv_ = PREC_INF;
        else if (f.tail_val() > NO_TAIL_VAL / 2 && f.tail_val() < PREC_INF / 2)
            f.tailv_ = f.tail_val() + vs;
        f.normalize();
        return f;
    }

    /// Multiply by var^k.
    Series shifted(long k) const {
        Series f = *this;
        f.lo_ += k;
        f.trunc_ = detail::cap_add(f.trunc_, k);
        f.check_bound();
        return f;
    }

    /// Restrict knowledge to degrees < m.
    Series truncated(long m) const {
        Series f = *this;
        if (m >= f.trunc_) return f;
        f.tailv_ = val_bound_from(m);
        f.trunc_ = m;
        if (f.hi() > m)
            f.c_.resize(static_cast<size_t>(std::max<long>(0, m - f.lo_)));
        f.normalize();
        return f;
    }

    /// d/dvar.
    Series derivative() const {
        Series f;
        f.p_ = p_;
        f.var_ = var_;
        f.tail_ = tail_;
        f.tailv_ = tailv_;  // multiplying by the degree never lowers valuation
        f.trunc_ = exact() ? PREC_INF : trunc_ - 1;
        f.lo_ = lo_ - 1;
        f.check_bound();
        f.c_.assign(c_.size(), detail::coef<C>::zero(p_));
        for (size_t i = 0; i < c_.size(); ++i) {
            long k = lo_ + static_cast<long>(i);
            if (k != 0) f.c_[i] = c_[i] * coef_int(k);
        }
        f.normalize();
        return f;
    }

    /// min over coefficients of absolute precision (the precision floor).
    long min_abs_prec() const {
        long m = PREC_INF;
        for (const auto& a : c_) m = std::min(m, abs_prec_of(a));
        return m;
    }

    bool matches(const Series& o) const {
        Series d = *this - o;
        return d.is_zero_at_prec();
    }

    std::string str() const;

    void set_tail_bound(long b) {
        tail_ = b;
        check_bound();
    }

  private:
    C coef_int(long k) const;
    static long abs_prec_of(const PAdic& a) { return a.abs_prec(); }
    static long abs_prec_of(const Cyclo& a) { return a.min_abs_prec(); }

    /// Lower bound for the valuation of a coefficient's true value.
    static long val_lower(const PAdic& a) {
        if (a.is_exact_zero()) return PREC_INF;
        if (a.is_zero_at_prec()) return a.abs_prec();
        return a.valuation();
    }
    static long val_lower(const Cyclo& a) {
        long v = PREC_INF;
        for (const auto& c : a.coeffs()) v = std::min(v, val_lower(c));
        return v;
    }

    void check_compat(const Series& o) const {
        if (p_ != o.p_) throw Error("Series: mixed primes");
        if (var_ != o.var_) throw Error("Series: mixed variables");
    }

    void check_bound() const {
        if (lo_ < -tail_)
            throw BoundError("Series: principal part would exceed tail bound " +
                             std::to_string(tail_));
    }

    void normalize() {
        while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
        size_t drop = 0;
        while (drop < c_.size() && c_[drop].is_exact_zero()) ++drop;
        if (drop) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(drop));
            lo_ += static_cast<long>(drop);
        }
        if (c_.empty()) lo_ = 0;
        check_bound();
    }

    long p_ = 2;
    Var var_ = Var::T;
    long lo_ = 0;
    long trunc_ = PREC_INF;
    long tail_ = DEFAULT_TAIL_BOUND;
    long tailv_ = PREC_INF;
    std::vector<C> c_;
};

template <>
inline PAdic Series<PAdic>::coef_int(long k) const {
    return PAdic::from_integer(p_, k);
}
template <>
inline Cyclo Series<Cyclo>::coef_int(long k) const {
    return Cyclo::from_scalar(PAdic::from_integer(p_, k));
}

template <class C>
std::string Series<C>::str() const {
    std::ostringstream os;
    bool first = true;
    for (long k = lo_; k < hi(); ++k) {
        const C& a = c_[static_cast<size_t>(k - lo_)];
        if (a.is_exact_zero()) continue;
        if (!first) os << " + ";
        os << "(" << a.str() << ")*" << static_cast<char>(var_) << "^" << k;
        first = false;
    }
    if (first) os << "0";
    if (!exact())
        os << " + O(" << static_cast<char>(var_) << "^" << trunc_ << ")";
    return os.str();
}

using QSeries = Series<PAdic>;   // over Q_p
using LnSeries = Series<Cyclo>;  // over L_n

template <class C>
long residual_valuation(const Series<C>& f) {
    long v = PREC_INF;
    for (long k = f.lo(); k < f.hi(); ++k)
        v = std::min(v, residual_valuation(f.coeff(k)));
    return v;
}

/// Multiplicative inverse of a series whose lowest tracked coefficient is a
/// unit of the coefficient ring: f = c*var^lo*(1+...)  ->  f^{-1}.
/// The result is truncated to out_trunc coefficients past its leading term.
template <class C>
Series<C> invert_unit(const Series<C>& f, long out_len) {
    long p = f.prime();
    if (f.hi() <= f.lo()) throw DomainError("invert_unit: zero series");
    long n0 = f.lo();
    C c0 = f.coeff(n0);
    if (c0.is_zero_at_prec())
        throw DomainError("invert_unit: leading coefficient vanishes at precision");
    long avail = f.exact() ? out_len : std::min<long>(out_len, f.trunc() - n0);
    if (avail <= 0) throw PrecisionError("invert_unit: nothing derivable", 1);
    C c0i = c0.inv();
    std::vector<C> g(static_cast<size_t>(avail), detail::coef<C>::zero(p));
    g[0] = c0i;
    for (long k = 1; k < avail; ++k) {
        C s = detail::coef<C>::zero(p);
        for (long j = 1; j <= k; ++j) {
            long deg = n0 + j;
            C fj = deg < f.trunc() ? f.coeff(deg) : detail::coef<C>::zero(p);
            if (fj.is_exact_zero() || g[static_cast<size_t>(k - j)].is_exact_zero())
                continue;
            s += fj * g[static_cast<size_t>(k - j)];
        }
        g[static_cast<size_t>(k)] = -(c0i * s);
    }
    return Series<C>::from_coeffs(p, f.var(), -n0, std::move(g), -n0 + avail,
                                  f.tail_bound());
}

}  // namespace robba
