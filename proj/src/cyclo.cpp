#include "robba/cyclo.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

namespace robba {

namespace {

long pow_long(long p, long n) {
    long r = 1;
    while (n-- > 0) r *= p;
    return r;
}

}  // namespace

long Cyclo::phi_pn(long p, long n) {
    return n == 0 ? 1 : (p - 1) * pow_long(p, n - 1);
}

namespace {
std::atomic<long> g_level_cap{4};
}

long Cyclo::level_cap() { return g_level_cap.load(); }
void Cyclo::set_level_cap(long cap) { g_level_cap.store(cap); }

Cyclo Cyclo::from_scalar(const PAdic& c, long level) {
    Cyclo x;
    x.p_ = c.prime();
    x.n_ = level;
    x.c_.assign(phi_pn(x.p_, level), PAdic::exact_zero(x.p_));
    x.c_[0] = c;
    return x;
}

Cyclo Cyclo::from_coeffs(long p, long level, std::vector<PAdic> coeffs) {
    if (level > level_cap())
        throw Error("Cyclo: level " + std::to_string(level) +
                    " exceeds the cap " + std::to_string(level_cap()) +
                    " (see set_level_cap)");
    if (static_cast<long>(coeffs.size()) != phi_pn(p, level))
        throw Error("Cyclo: coefficient vector has wrong length");
    Cyclo x;
    x.p_ = p;
    x.n_ = level;
    x.c_ = std::move(coeffs);
    return x;
}

Cyclo Cyclo::zeta(long p, long level) { return zeta_pow(p, level, 1); }

Cyclo Cyclo::zeta_pow(long p, long level, long e) {
    if (level > level_cap())
        throw Error("Cyclo: level " + std::to_string(level) +
                    " exceeds the cap " + std::to_string(level_cap()) +
                    " (see set_level_cap)");
    long pn = pow_long(p, level);
    e %= pn;
    if (e < 0) e += pn;
    long D = phi_pn(p, level);
    std::vector<PAdic> c(D, PAdic::exact_zero(p));
    PAdic one = PAdic::from_integer(p, 1);
    if (e < D) {
        c[e] = one;
    } else {
        // X^e = -sum_{i<p-1} X^{r + i p^{n-1}},  e = (p-1)p^{n-1} + r
        long q = pow_long(p, level - 1);
        long r = e - (p - 1) * q;
        for (long i = 0; i + 1 < p; ++i) c[r + i * q] = -one;
    }
    Cyclo x;
    x.p_ = p;
    x.n_ = level;
    x.c_ = std::move(c);
    return x;
}

bool Cyclo::is_zero_at_prec() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const PAdic& a) { return a.is_zero_at_prec(); });
}

bool Cyclo::is_exact_zero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const PAdic& a) { return a.is_exact_zero(); });
}

PAdic Cyclo::scalar() const {
    if (n_ == 0) return c_[0];
    return descend_to(0).scalar();
}

Cyclo Cyclo::operator-() const {
    Cyclo x = *this;
    for (auto& a : x.c_) a = -a;
    return x;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    if (p_ != o.p_) throw Error("Cyclo: mixed primes");
    if (n_ != o.n_) {
        long m = std::max(n_, o.n_);
        return embed_to(m) + o.embed_to(m);
    }
    Cyclo x = *this;
    for (long i = 0; i < dim(); ++i) x.c_[i] += o.c_[i];
    return x;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    if (p_ != o.p_) throw Error("Cyclo: mixed primes");
    if (n_ != o.n_) {
        long m = std::max(n_, o.n_);
        return embed_to(m) * o.embed_to(m);
    }
    long D = dim();
    long pn = pow_long(p_, n_);
    long q = n_ == 0 ? 1 : pow_long(p_, n_ - 1);
    // convolve into exponent space [0, 2D-2], then reduce
    std::vector<PAdic> conv(2 * D - 1, PAdic::exact_zero(p_));
    for (long i = 0; i < D; ++i) {
        if (c_[i].is_exact_zero()) continue;
        for (long j = 0; j < D; ++j) {
            if (o.c_[j].is_exact_zero()) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    std::vector<PAdic> out(D, PAdic::exact_zero(p_));
    for (long e = 0; e < 2 * D - 1; ++e) {
        if (conv[e].is_exact_zero()) continue;
        long ee = e % pn;
        if (ee < D) {
            out[ee] += conv[e];
        } else {
            long r = ee - (p_ - 1) * q;
            for (long i = 0; i + 1 < p_; ++i) out[r + i * q] -= conv[e];
        }
    }
    Cyclo x;
    x.p_ = p_;
    x.n_ = n_;
    x.c_ = std::move(out);
    return x;
}

Cyclo Cyclo::operator*(const PAdic& s) const {
    Cyclo x = *this;
    for (auto& a : x.c_) a = a * s;
    return x;
}

Cyclo Cyclo::galois(long a) const {
    long pn = pow_long(p_, n_);
    a %= pn;
    if (a < 0) a += pn;
    if (n_ > 0 && a % p_ == 0)
        throw DomainError("Cyclo::galois: a is divisible by p");
    long D = dim();
    long q = n_ == 0 ? 1 : pow_long(p_, n_ - 1);
    std::vector<PAdic> out(D, PAdic::exact_zero(p_));
    for (long e = 0; e < D; ++e) {
        if (c_[e].is_exact_zero()) continue;
        long ee = (e * a) % pn;
        if (ee < D) {
            out[ee] += c_[e];
        } else {
            long r = ee - (p_ - 1) * q;
            for (long i = 0; i + 1 < p_; ++i) out[r + i * q] -= c_[e];
        }
    }
    Cyclo x;
    x.p_ = p_;
    x.n_ = n_;
    x.c_ = std::move(out);
    return x;
}

Cyclo Cyclo::embed_to(long m) const {
    if (m == n_) return *this;
    if (m < n_) return descend_to(m);
    if (m > level_cap())
        throw Error("Cyclo: level " + std::to_string(m) +
                    " exceeds the cap " + std::to_string(level_cap()) +
                    " (see set_level_cap)");
    long step = pow_long(p_, m - n_);
    long D = dim();
    std::vector<PAdic> out(phi_pn(p_, m), PAdic::exact_zero(p_));
    for (long e = 0; e < D; ++e) out[e * step] = c_[e];
    Cyclo x;
    x.p_ = p_;
    x.n_ = m;
    x.c_ = std::move(out);
    return x;
}

Cyclo Cyclo::descend_to(long m) const {
    if (m > n_) return embed_to(m);
    if (m == n_) return *this;
    long step = pow_long(p_, n_ - m);
    long Dm = phi_pn(p_, m);
    std::vector<PAdic> out(Dm, PAdic::exact_zero(p_));
    for (long e = 0; e < dim(); ++e) {
        if (e % step == 0 && e / step < Dm) {
            out[e / step] = c_[e];
        } else if (!c_[e].is_zero_at_prec()) {
            throw DomainError("Cyclo::descend_to: element is not in L_" +
                              std::to_string(m) + " at precision");
        }
    }
    Cyclo x;
    x.p_ = p_;
    x.n_ = m;
    x.c_ = std::move(out);
    return x;
}

Cyclo Cyclo::trace_to(long m) const {
    if (m > n_) throw Error("Cyclo::trace_to: target above level");
    if (m == n_) return *this;
    long pn = pow_long(p_, n_);
    Cyclo acc = Cyclo::from_scalar(PAdic::exact_zero(p_), n_);
    if (m >= 1) {
        long pm = pow_long(p_, m);
        for (long a = 1; a < pn; a += pm) acc += galois(a);
    } else {
        for (long a = 1; a < pn; ++a)
            if (a % p_ != 0) acc += galois(a);
    }
    return acc.descend_to(m);
}

Cyclo Cyclo::tate_trace_to(long m) const {
    Cyclo tr = trace_to(m);
    long j = n_ - m;
    // dividing by p^j: an inexact zero O(p^N) with N < j leaves nothing
    for (const auto& a : tr.coeffs()) {
        if (!a.is_exact_zero() && a.is_zero_at_prec() && a.abs_prec() < j)
            throw PrecisionError("tate_trace: insufficient precision to divide by p^" +
                                     std::to_string(j),
                                 j - a.abs_prec());
    }
    return tr.shift(-j);
}

Cyclo Cyclo::inv() const {
    long D = dim();
    if (D == 1) {
        Cyclo x = *this;
        x.c_[0] = c_[0].inv();
        return x;
    }
    // multiplication-by-x matrix, column j = x * zeta^j
    std::vector<PAdic> A(D * D, PAdic::exact_zero(p_));
    Cyclo pow = Cyclo::from_scalar(PAdic::from_integer(p_, 1), n_);
    for (long j = 0; j < D; ++j) {
        Cyclo col = *this * pow;
        for (long i = 0; i < D; ++i) A[i * D + j] = col.c_[i];
        if (j + 1 < D) pow = pow * Cyclo::zeta(p_, n_);
    }
    std::vector<PAdic> b(D, PAdic::exact_zero(p_));
    b[0] = PAdic::from_integer(p_, 1);
    std::vector<PAdic> y = solve_linear(std::move(A), std::move(b), D);
    Cyclo x;
    x.p_ = p_;
    x.n_ = n_;
    x.c_ = std::move(y);
    return x;
}

Cyclo Cyclo::shift(long k) const {
    Cyclo x = *this;
    for (auto& a : x.c_) a = a.shift(k);
    return x;
}

Cyclo Cyclo::truncated(long N) const {
    Cyclo x = *this;
    for (auto& a : x.c_) a = a.truncate(N);
    return x;
}

long Cyclo::min_abs_prec() const {
    long m = PREC_INF;
    for (const auto& a : c_) m = std::min(m, a.abs_prec());
    return m;
}

bool Cyclo::matches(const Cyclo& o) const {
    Cyclo d = *this - o;
    for (long i = 0; i < d.dim(); ++i) {
        if (!d.c_[i].is_zero_at_prec()) return false;
    }
    return true;
}

std::string Cyclo::str() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < dim(); ++i) {
        if (i) os << ", ";
        os << c_[i].str();
    }
    os << "]@" << n_;
    return os.str();
}

long residual_valuation(const Cyclo& x) {
    long v = PREC_INF;
    for (const auto& a : x.coeffs()) v = std::min(v, residual_valuation(a));
    return v;
}

std::vector<PAdic> solve_linear(std::vector<PAdic> A, std::vector<PAdic> b,
                                long dim) {
    if (dim == 0) return {};
    long p = b[0].prime();
    std::vector<long> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    for (long k = 0; k < dim; ++k) {
        // pivot: row with max |.| (min valuation) in column k
        long best = -1;
        long bestv = PREC_INF;
        for (long i = k; i < dim; ++i) {
            const PAdic& a = A[i * dim + k];
            if (a.is_zero_at_prec()) continue;
            if (a.valuation() < bestv) {
                bestv = a.valuation();
                best = i;
            }
        }
        if (best < 0)
            throw PrecisionError("solve_linear: matrix singular at precision",
                                 0);
        if (best != k) {
            for (long j = 0; j < dim; ++j)
                std::swap(A[k * dim + j], A[best * dim + j]);
            std::swap(b[k], b[best]);
        }
        PAdic piv_inv = A[k * dim + k].inv();
        for (long i = k + 1; i < dim; ++i) {
            const PAdic& a = A[i * dim + k];
            if (a.is_exact_zero()) continue;
            PAdic f = a * piv_inv;
            A[i * dim + k] = PAdic::exact_zero(p);
            for (long j = k + 1; j < dim; ++j)
                A[i * dim + j] -= f * A[k * dim + j];
            b[i] -= f * b[k];
        }
    }
    std::vector<PAdic> y(dim, PAdic::exact_zero(p));
    for (long k = dim - 1; k >= 0; --k) {
        PAdic s = b[k];
        for (long j = k + 1; j < dim; ++j) s -= A[k * dim + j] * y[j];
        y[k] = s * A[k * dim + k].inv();
    }
    return y;
}

}  // namespace robba
