#include "robba/character.hpp"

#include <sstream>

namespace robba {

PAdic Character::eval_unit(const PAdic& u) const {
    if (u.is_zero_at_prec() || u.valuation() != 0)
        throw DomainError("Character: argument must be a unit");
    PAdic om = teichmuller(u);
    PAdic one_part = u / om;  // <u> in 1 + pZ_p
    PAdic head = om.pow(m_);
    PAdic expo = (PAdic::from_integer(p_, m_) + s_) * plog(one_part);
    return head * pexp(expo);
}

PAdic Character::eval(const PAdic& x) const {
    if (x.is_zero_at_prec())
        throw DomainError("Character: argument must be nonzero");
    long v = x.valuation();
    PAdic u = x.shift(-v);
    PAdic head = at_p_.pow(v);
    return head * eval_unit(u);
}

std::string Character::str() const {
    std::ostringstream os;
    os << "delta(p)=" << at_p_.str() << " | x^" << m_ << "<x>^" << s_.str();
    return os.str();
}

}  // namespace robba
