#pragma once

#include "robba/padic.hpp"

namespace robba {

/// A locally analytic character delta of Q_p^x, given by delta(p), an
/// integer power m and an analytic weight s on 1 + pZ_p:
///     delta(u) = u^m <u>^s          for units u,
/// where <u> is the one-unit part.  Requires p odd (the <.>-decomposition
/// underlies the unit action).  weight(delta) = m + s is the derivative of
/// delta at 1.
class Character {
  public:
    Character(long p, PAdic at_p, long power, PAdic s)
        : p_(p), at_p_(std::move(at_p)), m_(power), s_(std::move(s)) {
        if (p_ == 2)
            throw DomainError("Character: p = 2 is not supported here");
        if (at_p_.is_zero_at_prec())
            throw DomainError("Character: delta(p) must be nonzero");
    }

    static Character trivial(long p, long prec = REL_CAP) {
        return Character(p, PAdic::from_integer(p, 1, prec), 0,
                         PAdic::exact_zero(p));
    }

    /// The cyclotomic character x -> x |x|_p: chi(p) = 1, chi(u) = u.
    static Character cyclotomic(long p, long prec = REL_CAP) {
        return Character(p, PAdic::from_integer(p, 1, prec), 1,
                         PAdic::exact_zero(p));
    }

    /// x -> x^k as a character.
    static Character power_of_x(long p, long k, long prec = REL_CAP) {
        return Character(p, PAdic::from_integer(p, 1, prec).shift(k), k,
                         PAdic::exact_zero(p));
    }

    long prime() const { return p_; }
    const PAdic& at_p() const { return at_p_; }
    long power() const { return m_; }
    const PAdic& extra_weight() const { return s_; }

    /// m + s, the Hodge-Tate-side weight (weight of chi is 1).
    PAdic weight() const {
        return PAdic::from_integer(p_, m_) +
               (s_.is_exact_zero() ? PAdic::exact_zero(p_) : s_);
    }

    PAdic eval_unit(const PAdic& u) const;
    PAdic eval(const PAdic& x) const;

    Character operator*(const Character& o) const {
        return Character(p_, at_p_ * o.at_p_, m_ + o.m_, s_ + o.s_);
    }
    Character inv() const {
        return Character(p_, at_p_.inv(), -m_, -s_);
    }

    std::string str() const;

  private:
    long p_;
    PAdic at_p_;
    long m_;
    PAdic s_;
};

}  // namespace robba
