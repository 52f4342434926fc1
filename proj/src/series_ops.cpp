#include "robba/series_ops.hpp"

#include <algorithm>

namespace robba {

namespace {

PAdic mul_mpz(const PAdic& a, const mpz_class& z) {
    if (z == 0) return PAdic::exact_zero(a.prime());
    return a * PAdic::from_integer(a.prime(), z);
}

long resolve_trunc(const QSeries& f, long out_trunc, const char* who) {
    if (out_trunc >= 0) return f.exact() ? out_trunc : std::min(out_trunc, f.trunc());
    if (!f.exact()) return f.trunc();
    throw DomainError(std::string(who) +
                      ": exact input needs an explicit truncation order");
}

}  // namespace

QSeries t_series(long p, long len) {
    std::vector<PAdic> c;
    c.reserve(static_cast<size_t>(std::max<long>(0, len - 1)));
    for (long n = 1; n < len; ++n)
        c.push_back(PAdic::from_ratio(p, n % 2 ? 1 : -1, n));
    return QSeries::from_coeffs(p, Var::T, 1, std::move(c), len);
}

QSeries one_plus_T_pow(long p, const PAdic& b, long len) {
    std::vector<PAdic> c;
    c.reserve(static_cast<size_t>(len));
    PAdic cur = PAdic::from_integer(p, 1);
    c.push_back(cur);
    for (long n = 1; n < len; ++n) {
        cur = cur * (b - PAdic::from_integer(p, n - 1)) / PAdic::from_integer(p, n);
        c.push_back(cur);
    }
    // for b in Z_p all binomial coefficients C(b, n) are p-integral
    long tv = (b.is_zero_at_prec() || b.valuation() >= 0) ? 0 : NO_TAIL_VAL;
    return QSeries::from_coeffs(p, Var::T, 0, std::move(c), len,
                                DEFAULT_TAIL_BOUND, tv);
}

QSeries one_plus_T_int_pow(long p, long j, long len) {
    if (j >= 0) {
        long w = len < 0 ? j + 1 : std::min(j + 1, len);
        std::vector<PAdic> c;
        c.reserve(static_cast<size_t>(w));
        mpz_class bin = 1;
        for (long n = 0; n < w; ++n) {
            c.push_back(PAdic::from_integer(p, bin));
            bin = bin * (j - n) / (n + 1);
        }
        return QSeries::from_coeffs(p, Var::T, 0, std::move(c),
                                    len < 0 ? PREC_INF : len,
                                    DEFAULT_TAIL_BOUND, 0);
    }
    if (len < 0)
        throw DomainError("one_plus_T_int_pow: negative exponent needs truncation");
    return one_plus_T_pow(p, PAdic::from_integer(p, j), len);
}

std::vector<PAdic> to_binomial(const QSeries& f) {
    if (f.lo() < 0) throw DomainError("to_binomial: principal part present");
    long p = f.prime();
    long W = f.exact() ? f.hi() : f.trunc();
    std::vector<PAdic> b(static_cast<size_t>(std::max<long>(0, W)),
                         PAdic::exact_zero(p));
    // T^k = sum_j (-1)^{k-j} C(k,j) (1+T)^j
    for (long k = 0; k < W; ++k) {
        PAdic ak = f.coeff(k);
        if (ak.is_exact_zero()) continue;
        mpz_class bin = 1;  // C(k,0)
        for (long j = 0; j <= k; ++j) {
            PAdic term = mul_mpz(ak, bin);
            b[static_cast<size_t>(j)] += (k - j) % 2 ? -term : term;
            bin = bin * (k - j) / (j + 1);
        }
    }
    return b;
}

QSeries from_binomial(long p, const std::vector<PAdic>& b, long trunc,
                      long tail_bound, long tail_val) {
    long W = static_cast<long>(b.size());
    long top = trunc >= PREC_INF / 2 ? W : std::min(W, trunc);
    std::vector<PAdic> a(static_cast<size_t>(std::max<long>(0, top)),
                         PAdic::exact_zero(p));
    for (long j = 0; j < W; ++j) {
        if (b[static_cast<size_t>(j)].is_exact_zero()) continue;
        mpz_class bin = 1;  // C(j,0)
        for (long k = 0; k <= j && k < top; ++k) {
            a[static_cast<size_t>(k)] += mul_mpz(b[static_cast<size_t>(j)], bin);
            bin = bin * (j - k) / (k + 1);
        }
    }
    return QSeries::from_coeffs(p, Var::T, 0, std::move(a), trunc, tail_bound,
                                tail_val);
}

namespace {

/// Horner composition f(g) for g with positive T-order, on the window of f
/// shifted to lo >= 0; preserves exactness of polynomials.
QSeries compose_positive(const QSeries& f, const QSeries& g) {
    long p = f.prime();
    QSeries acc = QSeries::zero(p, Var::T);
    for (long k = f.hi() - 1; k >= 0; --k) {
        acc = acc * g;
        if (k >= f.lo()) acc += QSeries::constant(p, Var::T, f.coeff(k));
    }
    return acc;
}

}  // namespace

QSeries apply_phi(const QSeries& f, long out_trunc) {
    if (f.var() != Var::T) throw DomainError("apply_phi: T-variable only");
    long p = f.prime();
    // g = (1+T)^p - 1, exact
    QSeries g = one_plus_T_int_pow(p, p) -
                QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
    long k = std::max<long>(0, -f.lo());
    QSeries h = f.shifted(k);
    QSeries comp = compose_positive(h, g);
    if (!h.exact())
        comp = comp.truncated(h.trunc()).with_tail_val(h.tail_val());
    if (k == 0) {
        if (out_trunc >= 0) comp = comp.truncated(out_trunc);
        return comp;
    }
    long R = resolve_trunc(f, out_trunc, "apply_phi");
    // phi(T^-k h) = T^-k q^-k phi(h),  q = ((1+T)^p - 1)/T with q(0) = p
    QSeries q = g.shifted(-1);
    QSeries qk = QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
    for (long i = 0; i < k; ++i) qk = qk * q;
    QSeries qinv = invert_unit(qk.truncated(R + k + 1), R + k + 1);
    QSeries out = comp.truncated(R + k) * qinv;
    return out.shifted(-k).truncated(R);
}

QSeries apply_sigma(const QSeries& f, const PAdic& a, long out_trunc) {
    if (f.var() != Var::T) throw DomainError("apply_sigma: T-variable only");
    long p = f.prime();
    if (a.is_zero_at_prec() || a.valuation() != 0)
        throw DomainError("apply_sigma: a must be a p-adic unit");
    // exact path for small nonnegative integer exponents on exact input
    bool small_int = a.rel_prec() >= REL_CAP && a.valuation() == 0 &&
                     a.lift() < 4096;
    if (f.exact() && out_trunc < 0) {
        if (!small_int)
            throw DomainError(
                "apply_sigma: exact input with non-integer exponent needs a "
                "truncation order");
        long av = static_cast<long>(a.lift().get_si());
        QSeries g = one_plus_T_int_pow(p, av) -
                    QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
        long k = std::max<long>(0, -f.lo());
        if (k == 0) return compose_positive(f, g);
        // sigma_a(T^-k h) = T^-k u^-k sigma_a(h), u = ((1+T)^a - 1)/T: needs
        // a truncation order even for integer a, so fall through
        throw DomainError(
            "apply_sigma: exact Laurent input needs a truncation order");
    }
    long R = resolve_trunc(f, out_trunc, "apply_sigma");
    long k = std::max<long>(0, -f.lo());
    QSeries h = f.shifted(k).truncated(f.exact() ? PREC_INF : R + k);
    // binomial route on h
    std::vector<PAdic> b = to_binomial(h.exact() ? h : h.truncated(R + k));
    QSeries acc = QSeries::zero(p, Var::T, R + k);
    for (long j = 0; j < static_cast<long>(b.size()); ++j) {
        if (b[static_cast<size_t>(j)].is_exact_zero()) continue;
        QSeries pw = one_plus_T_pow(p, a * PAdic::from_integer(p, j), R + k);
        acc += pw.scaled(b[static_cast<size_t>(j)]);
    }
    if (k == 0) return acc.truncated(R).with_tail_val(h.tail_val());
    QSeries ua = one_plus_T_pow(p, a, R + k + 2) -
                 QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
    QSeries u = ua.shifted(-1);  // constant term a, a unit
    QSeries uk = QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
    for (long i = 0; i < k; ++i) uk = uk * u;
    QSeries uinv = invert_unit(uk, R + k + 1);
    return (acc * uinv).shifted(-k).truncated(R);
}

namespace {

/// Core decomposition solver on a window with lo >= 0: returns all p
/// components f_i of f = sum_i (1+T)^i phi(f_i).
///
/// Precision of the result: the unknown tail O(T^M) of the input leaks into
/// every output degree.  Writing phi(psi(T^m)) = p^{-1} sum_{zeta^p=1}
/// (zeta(1+T)-1)^m, the T^s-coefficient has valuation >= (m-s)/(p-1) - 1,
/// and back-substituting through the unit-diagonal triangular system gives
///     v_p([T^d] psi(T^m)) >= (m - pd)/(p-1) - 1.
/// Hence with a tail-valuation witness tau the output coefficient at degree
/// d is only known modulo p^(tau + floor((M-pd)/(p-1)) - 1), and without a
/// witness nothing at all is derivable.
std::vector<QSeries> psi_solve(const QSeries& f) {
    long p = f.prime();
    if (!f.exact() && f.tail_val() <= NO_TAIL_VAL / 2)
        throw PrecisionError(
            "psi: truncated input carries no tail-valuation witness", 0);
    long top = (f.exact() ? f.hi() : f.trunc()) - 1;
    if (top < 0) {
        std::vector<QSeries> out;
        for (long i = 0; i < p; ++i)
            out.push_back(QSeries::zero(p, Var::T, f.exact() ? PREC_INF : 0));
        return out;
    }
    long jmax = top / p;
    // phi(T)^j table
    QSeries phiT = one_plus_T_int_pow(p, p) -
                   QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
    std::vector<std::vector<PAdic>> phipow(static_cast<size_t>(jmax) + 1);
    {
        QSeries cur = QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
        for (long j = 0; j <= jmax; ++j) {
            std::vector<PAdic> row;
            for (long d = 0; d < cur.hi(); ++d) row.push_back(cur.coeff(d));
            phipow[static_cast<size_t>(j)] = std::move(row);
            if (j < jmax) cur = cur * phiT;
        }
    }
    // (1+T)^i rows
    std::vector<std::vector<mpz_class>> onepT(static_cast<size_t>(p));
    for (long i = 0; i < p; ++i) {
        std::vector<mpz_class> row(static_cast<size_t>(i) + 1);
        mpz_class bin = 1;
        for (long s = 0; s <= i; ++s) {
            row[static_cast<size_t>(s)] = bin;
            bin = bin * (i - s) / (s + 1);
        }
        onepT[static_cast<size_t>(i)] = std::move(row);
    }
    std::vector<PAdic> cur(static_cast<size_t>(top) + 1, PAdic::exact_zero(p));
    for (long d = std::max<long>(0, f.lo()); d <= top; ++d)
        cur[static_cast<size_t>(d)] = f.coeff(d);
    std::vector<std::vector<PAdic>> comp(static_cast<size_t>(p));
    for (long i = 0; i < p; ++i)
        comp[static_cast<size_t>(i)].assign(static_cast<size_t>(jmax) + 1,
                                            PAdic::exact_zero(p));
    for (long k = top; k >= 0; --k) {
        long i = k % p;
        long j = k / p;
        PAdic c = cur[static_cast<size_t>(k)];
        comp[static_cast<size_t>(i)][static_cast<size_t>(j)] = c;
        if (c.is_exact_zero()) continue;
        // subtract c * (1+T)^i phi(T)^j  (support [j, pj+i])
        const auto& pj = phipow[static_cast<size_t>(j)];
        const auto& oi = onepT[static_cast<size_t>(i)];
        for (long s = 0; s < static_cast<long>(oi.size()); ++s) {
            for (long d = 0; d < static_cast<long>(pj.size()); ++d) {
                long deg = s + d;
                if (deg > k) break;
                if (pj[static_cast<size_t>(d)].is_exact_zero()) continue;
                cur[static_cast<size_t>(deg)] -=
                    mul_mpz(c * pj[static_cast<size_t>(d)],
                            oi[static_cast<size_t>(s)]);
            }
        }
    }
    std::vector<QSeries> out;
    out.reserve(static_cast<size_t>(p));
    long tau = f.tail_val();
    long mv = f.min_val();
    for (long i = 0; i < p; ++i) {
        auto& ci = comp[static_cast<size_t>(i)];
        long tr = PREC_INF;
        if (!f.exact()) {
            long M = f.trunc();
            tr = std::max<long>(0, (M - i + p - 1) / p);
            // cap each coefficient by the tail-leak bound
            for (long d = 0; d < static_cast<long>(ci.size()); ++d) {
                long cap = tau;
                if (M - p * d >= 0)
                    cap += (M - p * d) / (p - 1) - 1;
                else
                    cap += -((p * d - M + p - 2) / (p - 1)) - 1;
                ci[static_cast<size_t>(d)] =
                    ci[static_cast<size_t>(d)].truncate(cap);
            }
        }
        out.push_back(QSeries::from_coeffs(p, Var::T, 0, std::move(ci), tr,
                                           f.tail_bound(),
                                           f.exact() ? PREC_INF : mv));
    }
    return out;
}

}  // namespace

QSeries psi_component(const QSeries& f, long i) {
    if (f.var() != Var::T) throw DomainError("psi: T-variable only");
    long p = f.prime();
    long k = std::max<long>(0, -f.lo());
    QSeries g = f;
    if (k > 0) {
        // psi(T^-k h) = T^-k psi(phi(T^k) h)
        QSeries phiTk = apply_phi(
            QSeries::monomial(p, Var::T, PAdic::from_integer(p, 1), k));
        g = phiTk * f;
    }
    QSeries fi = psi_solve(g)[static_cast<size_t>(i)];
    return k > 0 ? fi.shifted(-k) : fi;
}

QSeries psi(const QSeries& f) { return psi_component(f, 0); }

QSeries psi_binomial(const QSeries& f) {
    if (f.var() != Var::T) throw DomainError("psi_binomial: T-variable only");
    long p = f.prime();
    long k = std::max<long>(0, -f.lo());
    QSeries g = f;
    if (k > 0) {
        QSeries phiTk = apply_phi(
            QSeries::monomial(p, Var::T, PAdic::from_integer(p, 1), k));
        g = phiTk * f;
    }
    if (!g.exact() && g.tail_val() <= NO_TAIL_VAL / 2)
        throw PrecisionError(
            "psi_binomial: truncated input carries no tail-valuation witness",
            0);
    std::vector<PAdic> b = to_binomial(g);
    std::vector<PAdic> sub;
    for (long j = 0; p * j < static_cast<long>(b.size()); ++j)
        sub.push_back(b[static_cast<size_t>(p * j)]);
    long tr = g.exact() ? PREC_INF : std::max<long>(0, (g.trunc() + p - 1) / p);
    QSeries fi = from_binomial(p, sub, tr, f.tail_bound(),
                               g.exact() ? PREC_INF : g.min_val());
    if (!g.exact()) {
        // same tail-leak caps as the solver route (see psi_solve)
        long M = g.trunc();
        long tau = g.tail_val();
        std::vector<PAdic> cs;
        for (long d = fi.lo(); d < fi.hi(); ++d) {
            long cap = tau;
            if (M - p * d >= 0)
                cap += (M - p * d) / (p - 1) - 1;
            else
                cap += -((p * d - M + p - 2) / (p - 1)) - 1;
            cs.push_back(fi.coeff(d).truncate(cap));
        }
        fi = QSeries::from_coeffs(p, Var::T, fi.lo(), std::move(cs), fi.trunc(),
                                  fi.tail_bound(), fi.tail_val());
    }
    return k > 0 ? fi.shifted(-k) : fi;
}

template <class C>
Series<C> nabla(const Series<C>& f, long out_trunc) {
    if (f.var() == Var::t) {
        // t d/dt multiplies the coefficient of t^k by k
        return f.derivative().shifted(1);
    }
    if constexpr (std::is_same_v<C, PAdic>) {
        long R = resolve_trunc(f, out_trunc, "nabla");
        QSeries df = f.derivative();
        QSeries ts = t_series(f.prime(), R - std::min<long>(0, df.lo()) + 2);
        QSeries onepT = one_plus_T_int_pow(f.prime(), 1);
        return (onepT * ts * df).truncated(R);
    } else {
        throw DomainError("nabla: T-variable series over L_n not supported");
    }
}

template <class C>
Series<C> mul_t(const Series<C>& f, long out_trunc) {
    if (f.var() == Var::t) return f.shifted(1);
    if constexpr (std::is_same_v<C, PAdic>) {
        long R = resolve_trunc(f, out_trunc, "mul_t");
        QSeries ts = t_series(f.prime(), R - std::min<long>(0, f.lo()) + 2);
        return (f * ts).truncated(detail::cap_add(R, 1));
    } else {
        throw DomainError("mul_t: T-variable series over L_n not supported");
    }
}

template <class C>
Series<C> div_by_t(const Series<C>& f, bool require_integral, long out_trunc) {
    long p = f.prime();
    if (require_integral) {
        // Divisibility by t is only a condition inside the power-series
        // ring (t = T * unit formally): a genuinely Laurent input divides
        // within the tail bound.  For inputs without tracked principal
        // part the constant term must vanish at precision.
        bool laurent = false;
        for (long k = f.lo(); k < 0 && k < f.trunc(); ++k)
            if (!f.coeff(k).is_zero_at_prec()) laurent = true;
        if (!laurent && f.lo() <= 0 && 0 < f.trunc()) {
            const C c0 = f.coeff(0);
            if (!c0.is_zero_at_prec())
                throw DivisibilityError(
                    "div_t: input not divisible by t at precision",
                    residual_valuation(c0));
        }
    }
    if (f.var() == Var::t) return f.shifted(-1);
    if constexpr (std::is_same_v<C, PAdic>) {
        long R = resolve_trunc(f, out_trunc, "div_t");
        QSeries overT = f.shifted(-1);
        QSeries w = t_series(p, R + 3).shifted(-1);  // t/T, unit
        QSeries winv = invert_unit(w, R + 2);
        return (overT * winv).truncated(R);
    } else {
        throw DomainError("div_t: T-variable series over L_n not supported");
    }
}

template <class C>
C residue(const Series<C>& f, ResidueForm form) {
    long p = f.prime();
    if (form == ResidueForm::dt) {
        if (f.var() != Var::t)
            throw DomainError("residue dt: t-variable expected");
        if (f.trunc() <= -1)
            throw PrecisionError("residue: principal part not derivable", 1);
        return f.lo() <= -1 ? f.coeff(-1) : detail::coef<C>::zero(p);
    }
    if (f.var() != Var::T)
        throw DomainError("residue dT/(1+T): T-variable expected");
    if (f.trunc() <= -1)
        throw PrecisionError("residue: principal part not derivable", 1);
    // [T^-1] of f/(1+T) = sum_{k<=-1} (-1)^{k+1} f_k
    C s = detail::coef<C>::zero(p);
    for (long k = f.lo(); k <= -1; ++k) {
        C c = f.coeff(k);
        if (c.is_exact_zero()) continue;
        s += (k % 2 == 0) ? -c : c;
    }
    return s;
}

QSeries to_t_expansion(const QSeries& f, long t_len) {
    if (f.var() != Var::T) throw DomainError("to_t_expansion: T-variable only");
    long p = f.prime();
    long k = std::max<long>(0, -f.lo());
    QSeries h = f.shifted(k);
    std::vector<PAdic> b = to_binomial(h);
    // sum_j b_j e^{jt}: coefficient of t^d is sum_j b_j j^d / d!
    std::vector<PAdic> out(static_cast<size_t>(t_len), PAdic::exact_zero(p));
    std::vector<PAdic> jpow(b.size(), PAdic::from_integer(p, 1));
    PAdic dfact = PAdic::from_integer(p, 1);
    for (long d = 0; d < t_len; ++d) {
        if (d > 0) {
            dfact = dfact * PAdic::from_integer(p, d);
            for (size_t j = 0; j < b.size(); ++j)
                jpow[j] = jpow[j] * PAdic::from_integer(p, static_cast<long>(j));
        }
        PAdic s = PAdic::exact_zero(p);
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_exact_zero()) continue;
            s += b[j] * jpow[j];
        }
        out[static_cast<size_t>(d)] = s / dfact;
    }
    QSeries pos = QSeries::from_coeffs(p, Var::t, 0, std::move(out), t_len,
                                       f.tail_bound());
    if (k == 0) return pos;
    // (e^t - 1)^{-k} = t^{-k} q^{-k},  q = (e^t - 1)/t with q(0) = 1
    std::vector<PAdic> qc;
    PAdic fact = PAdic::from_integer(p, 1);
    for (long d = 0; d < t_len + k + 1; ++d) {
        fact = fact * PAdic::from_integer(p, d + 1);
        qc.push_back(PAdic::from_integer(p, 1) / fact);
    }
    QSeries q = QSeries::from_coeffs(p, Var::t, 0, std::move(qc), t_len + k + 1);
    QSeries qk = QSeries::constant(p, Var::t, PAdic::from_integer(p, 1));
    for (long i = 0; i < k; ++i) qk = qk * q;
    QSeries qinv = invert_unit(qk, t_len + k);
    return (pos * qinv).shifted(-k).truncated(t_len);
}

template Series<PAdic> nabla(const Series<PAdic>&, long);
template Series<Cyclo> nabla(const Series<Cyclo>&, long);
template Series<PAdic> mul_t(const Series<PAdic>&, long);
template Series<Cyclo> mul_t(const Series<Cyclo>&, long);
template Series<PAdic> div_by_t(const Series<PAdic>&, bool, long);
template Series<Cyclo> div_by_t(const Series<Cyclo>&, bool, long);
template PAdic residue(const Series<PAdic>&, ResidueForm);
template Cyclo residue(const Series<Cyclo>&, ResidueForm);

}  // namespace robba
