#include "robba/padic.hpp"

#include <algorithm>
#include <sstream>

namespace robba {

mpz_class pow_p(long p, long k) {
    if (k < 0) throw Error("pow_p: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k));
    return r;
}

long int_valuation(long p, const mpz_class& n) {
    if (n == 0) throw Error("int_valuation: zero");
    mpz_class q, rest = n;
    long v = 0;
    while (true) {
        mpz_class rem;
        mpz_tdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), rest.get_mpz_t(),
                       static_cast<unsigned long>(p));
        if (rem != 0) break;
        rest = q;
        ++v;
    }
    return v;
}

void PAdic::normalize() {
    if (kind_ == Kind::Unit) {
        if (r_ > REL_CAP) {
            // saturate relative precision
            r_ = REL_CAP;
            u_ %= pow_p(p_, r_);
        }
        if (r_ <= 0) {
            // no known digits left: all we know is x is O(p^(v+r))
            kind_ = Kind::Zero;
            v_ = v_ + r_;
            u_ = 0;
            r_ = 0;
        }
    }
    if (kind_ == Kind::Unit) {
        mpz_class m = pow_p(p_, r_);
        u_ %= m;
        if (u_ < 0) u_ += m;
        if (u_ == 0) {
            // the representative vanished: value is O(p^(v+r))
            kind_ = Kind::Zero;
            v_ = v_ + r_;
            r_ = 0;
        } else {
            long shift = int_valuation(p_, u_);
            if (shift > 0) {
                // representative not a unit: renormalize
                u_ /= pow_p(p_, shift);
                v_ += shift;
                r_ -= shift;
                if (r_ <= 0) {
                    kind_ = Kind::Zero;
                    v_ = v_ + r_;
                    u_ = 0;
                    r_ = 0;
                }
            }
        }
    }
    if (kind_ == Kind::Zero && v_ >= REL_CAP) kind_ = Kind::ExactZero;
}

PAdic PAdic::from_integer(long p, const mpz_class& n, long abs_prec) {
    if (p < 2) throw Error("PAdic: prime must be >= 2");
    if (n == 0)
        return abs_prec >= REL_CAP ? exact_zero(p) : zero_mod(p, abs_prec);
    PAdic x(p);
    x.kind_ = Kind::Unit;
    x.v_ = 0;
    x.r_ = abs_prec;
    x.u_ = n;
    x.normalize();
    return x;
}

PAdic PAdic::from_ratio(long p, const mpz_class& num, const mpz_class& den,
                        long abs_prec) {
    if (den == 0) throw DomainError("PAdic: zero denominator");
    if (num == 0) return zero_mod(p, abs_prec);
    long vn = int_valuation(p, num);
    long vd = int_valuation(p, den);
    mpz_class n = num / pow_p(p, vn);
    mpz_class d = den / pow_p(p, vd);
    long v = vn - vd;
    long r = std::min(abs_prec - v, REL_CAP);
    if (r <= 0) return zero_mod(p, abs_prec);
    mpz_class m = pow_p(p, r);
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("PAdic: denominator not invertible");
    PAdic x(p);
    x.kind_ = Kind::Unit;
    x.v_ = v;
    x.r_ = r;
    x.u_ = (n * dinv) % m;
    x.normalize();
    return x;
}

PAdic PAdic::from_unit(long p, long v, mpz_class u, long r) {
    PAdic x(p);
    x.kind_ = Kind::Unit;
    x.v_ = v;
    x.r_ = r;
    x.u_ = std::move(u);
    x.normalize();
    return x;
}

mpz_class PAdic::lift() const {
    switch (kind_) {
        case Kind::ExactZero:
        case Kind::Zero: return 0;
        default: break;
    }
    if (v_ < 0) throw DomainError("PAdic::lift: negative valuation");
    return u_ * pow_p(p_, v_);
}

mpz_class PAdic::lift_mod(long k) const {
    if (abs_prec() < k)
        throw PrecisionError("PAdic::lift_mod: insufficient precision",
                             k - abs_prec());
    mpz_class m = pow_p(p_, k);
    mpz_class l = lift() % m;
    if (l < 0) l += m;
    return l;
}

PAdic PAdic::operator-() const {
    if (kind_ != Kind::Unit) return *this;
    PAdic x = *this;
    x.u_ = pow_p(p_, r_) - u_;
    x.normalize();
    return x;
}

PAdic PAdic::operator+(const PAdic& o) const {
    if (p_ != o.p_) throw Error("PAdic: mixed primes");
    if (kind_ == Kind::ExactZero) return o;
    if (o.kind_ == Kind::ExactZero) return *this;
    long N = std::min(abs_prec(), o.abs_prec());
    if (kind_ != Kind::Unit && o.kind_ != Kind::Unit) return zero_mod(p_, N);
    // at least one unit: compute sum of representatives at the common scale
    long vmin = std::min(valuation(), o.valuation());
    long r = N - vmin;
    if (r <= 0) return zero_mod(p_, N);
    mpz_class m = pow_p(p_, r);
    mpz_class s = 0;
    if (kind_ == Kind::Unit) s += u_ * pow_p(p_, v_ - vmin);
    if (o.kind_ == Kind::Unit) s += o.u_ * pow_p(p_, o.v_ - vmin);
    s %= m;
    if (s < 0) s += m;
    if (s == 0) return zero_mod(p_, N);
    PAdic x(p_);
    x.kind_ = Kind::Unit;
    x.v_ = vmin;
    x.r_ = r;
    x.u_ = s;
    x.normalize();
    return x;
}

PAdic PAdic::operator*(const PAdic& o) const {
    if (p_ != o.p_) throw Error("PAdic: mixed primes");
    if (kind_ == Kind::ExactZero || o.kind_ == Kind::ExactZero)
        return exact_zero(p_);
    if (kind_ != Kind::Unit || o.kind_ != Kind::Unit) {
        // O(p^N) * (p^v(u+O(p^r)))  is  O(p^(N+v));  O(p^N)*O(p^M) = O(p^(N+M))
        return zero_mod(p_, valuation() + o.valuation());
    }
    PAdic x(p_);
    x.kind_ = Kind::Unit;
    x.v_ = v_ + o.v_;
    x.r_ = std::min(r_, o.r_);
    x.u_ = (u_ * o.u_) % pow_p(p_, x.r_);
    x.normalize();
    return x;
}

PAdic PAdic::inv() const {
    if (kind_ != Kind::Unit)
        throw DomainError("PAdic::inv: zero (at precision) is not invertible");
    PAdic x(p_);
    x.kind_ = Kind::Unit;
    x.v_ = -v_;
    x.r_ = r_;
    mpz_class m = pow_p(p_, r_);
    if (mpz_invert(x.u_.get_mpz_t(), u_.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("PAdic::inv: unit not invertible (internal)");
    return x;
}

PAdic PAdic::shift(long k) const {
    switch (kind_) {
        case Kind::ExactZero: return *this;
        case Kind::Zero: return zero_mod(p_, v_ + k);
        default: break;
    }
    PAdic x = *this;
    x.v_ += k;
    return x;
}

PAdic PAdic::pow(long n) const {
    if (n == 0) return from_integer(p_, 1);
    if (n < 0) return inv().pow(-n);
    PAdic acc = from_integer(p_, 1);
    PAdic base = *this;
    long e = n;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

PAdic PAdic::truncate(long N) const {
    if (abs_prec() <= N) return *this;
    if (kind_ != Kind::Unit) return zero_mod(p_, N);
    PAdic x = *this;
    x.r_ = N - v_;
    if (x.r_ <= 0) return zero_mod(p_, N);
    x.u_ %= pow_p(p_, x.r_);
    x.normalize();
    return x;
}

bool PAdic::matches(const PAdic& o) const {
    return residual_valuation(*this - o) >= std::min(abs_prec(), o.abs_prec());
}

std::string PAdic::str() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::ExactZero: os << "0"; break;
        case Kind::Zero: os << "O(" << p_ << "^" << v_ << ")"; break;
        default:
            os << p_ << "^" << v_ << " * " << u_.get_str() << " + O(" << p_
               << "^" << (v_ + r_) << ")";
    }
    return os.str();
}

long residual_valuation(const PAdic& x) {
    if (x.is_exact_zero()) return PREC_INF;
    if (x.is_zero_at_prec()) return x.abs_prec();
    return x.valuation();
}

PAdic plog(const PAdic& a) {
    long p = a.prime();
    if (a.is_zero_at_prec()) throw DomainError("plog: zero argument");
    if (a.valuation() != 0) throw DomainError("plog: argument must be a unit");
    PAdic one = PAdic::from_integer(p, 1, a.abs_prec());
    PAdic x = a - one;
    if (residual_valuation(x) < 1) {
        // Iwasawa branch: kill the Teichmueller part first
        PAdic au = one_unit_part(a);
        x = au - PAdic::from_integer(p, 1, au.abs_prec());
    }
    if (x.is_zero_at_prec()) return PAdic::zero_mod(p, x.abs_prec());
    long v = x.valuation();
    if (v < 1) throw DomainError("plog: argument not congruent 1 mod p");
    long N = x.abs_prec();
    PAdic sum = PAdic::zero_mod(p, N + 64);
    PAdic xn = x;  // x^n
    long n = 1;
    while (true) {
        PAdic term = xn / PAdic::from_integer(p, n);
        if (n % 2 == 0) term = -term;
        sum += term;
        ++n;
        // remaining terms have valuation >= n*v - log_p(n); stop when safely
        // below the target precision
        long lg = 0;
        for (long q = n; q >= p; q /= p) ++lg;
        if (n * v - lg > N + 1) break;
        xn *= x;
    }
    return sum.truncate(N);
}

PAdic pexp(const PAdic& x) {
    long p = x.prime();
    long vmin = p == 2 ? 2 : 1;
    if (x.is_exact_zero()) return PAdic::from_integer(p, 1);
    long v = residual_valuation(x);
    if (v < vmin) throw DomainError("pexp: argument outside convergence domain");
    long N = x.abs_prec();
    PAdic sum = PAdic::from_integer(p, 1, N + 64);
    if (x.is_zero_at_prec()) return sum.truncate(N);
    PAdic term = PAdic::from_integer(p, 1, N + 64);
    long n = 0;
    while (true) {
        ++n;
        term = term * x / PAdic::from_integer(p, n);
        sum += term;
        // remaining terms have valuation >= m(v - 1/(p-1)) + 1/(p-1), m > n
        if ((n + 1) * (v * (p - 1) - 1) > (N + 1) * (p - 1)) break;
    }
    return sum.truncate(N);
}

PAdic teichmuller(const PAdic& x) {
    if (x.is_zero_at_prec() || x.valuation() != 0)
        throw DomainError("teichmuller: argument must be a unit");
    long p = x.prime();
    long N = x.rel_prec();
    PAdic y = x;
    for (long i = 0; i <= N; ++i) {
        PAdic yp = y.pow(p);
        if (residual_valuation(yp - y) >= N) return yp;
        y = yp;
    }
    return y;
}

PAdic one_unit_part(const PAdic& x) { return x / teichmuller(x); }

}  // namespace robba
