#include "robba/dif.hpp"

#include <sstream>

namespace robba {

namespace {

long pow_long(long p, long n) {
    long r = 1;
    while (n-- > 0) r *= p;
    return r;
}

long factorial_valuation(long p, long d) {
    long v = 0;
    for (long q = p; q <= d; q *= p) v += d / q;
    return v;
}

/// accumulate c * zeta^e into the coefficient vector of a level-n element
void add_zeta_pow(std::vector<PAdic>& acc, long p, long n, long e,
                  const PAdic& c) {
    long pn = pow_long(p, n);
    e %= pn;
    if (e < 0) e += pn;
    long D = Cyclo::phi_pn(p, n);
    if (e < D) {
        acc[static_cast<size_t>(e)] += c;
    } else {
        long q = pow_long(p, n - 1);
        long r = e - (p - 1) * q;
        for (long i = 0; i + 1 < p; ++i) acc[static_cast<size_t>(r + i * q)] -= c;
    }
}

}  // namespace

LnSeries localize(const QSeries& f, long level, long t_len) {
    if (f.var() != Var::T) throw DomainError("localize: T-variable input");
    if (level < 1) throw DomainError("localize: level must be >= 1");
    long p = f.prime();
    long n = level;
    long D = Cyclo::phi_pn(p, n);
    long kneg = std::max<long>(0, -f.lo());
    QSeries h = f.shifted(kneg);
    std::vector<PAdic> b = to_binomial(h);
    // positive part: sum_j b_j zeta^j e^{jt/p^n}; t^d-coefficient is
    // (d! p^{nd})^{-1} sum_j b_j j^d zeta^j
    std::vector<Cyclo> out;
    out.reserve(static_cast<size_t>(t_len));
    std::vector<PAdic> jpow(b.size());
    for (size_t j = 0; j < b.size(); ++j) jpow[j] = b[j];
    PAdic dfact = PAdic::from_integer(p, 1);
    for (long d = 0; d < t_len; ++d) {
        if (d > 0) {
            dfact = dfact * PAdic::from_integer(p, d);
            for (size_t j = 0; j < b.size(); ++j) {
                if (!jpow[j].is_exact_zero())
                    jpow[j] =
                        jpow[j] * PAdic::from_integer(p, static_cast<long>(j));
            }
        }
        std::vector<PAdic> acc(static_cast<size_t>(D), PAdic::exact_zero(p));
        for (size_t j = 0; j < b.size(); ++j) {
            if (jpow[j].is_exact_zero()) continue;
            add_zeta_pow(acc, p, n, static_cast<long>(j), jpow[j]);
        }
        PAdic scale = (dfact * PAdic::from_integer(p, 1).shift(n * d)).inv();
        for (auto& c : acc) c = c * scale;
        out.push_back(Cyclo::from_coeffs(p, n, std::move(acc)));
    }
    LnSeries pos = LnSeries::from_coeffs(p, Var::t, 0, std::move(out), t_len);
    LnSeries res = pos;
    if (kneg > 0) {
        // E^{-kneg} with E = zeta e^{t/p^n} - 1 (unit constant zeta - 1)
        std::vector<Cyclo> Ec;
        PAdic fct = PAdic::from_integer(p, 1);
        for (long d = 0; d < t_len + kneg + 1; ++d) {
            if (d > 0) fct = fct * PAdic::from_integer(p, d);
            Cyclo zc = Cyclo::zeta(p, n) *
                       (fct * PAdic::from_integer(p, 1).shift(n * d)).inv();
            if (d == 0)
                zc = zc - Cyclo::from_scalar(PAdic::from_integer(p, 1), n);
            Ec.push_back(zc);
        }
        LnSeries E = LnSeries::from_coeffs(p, Var::t, 0, std::move(Ec),
                                           t_len + kneg + 1);
        LnSeries Ek = LnSeries::constant(p, Var::t,
                                         Cyclo::from_scalar(
                                             PAdic::from_integer(p, 1), n));
        for (long i = 0; i < kneg; ++i) Ek = (Ek * E).truncated(t_len + kneg + 1);
        LnSeries Einv = invert_unit(Ek, t_len + 1);
        res = (pos * Einv).truncated(t_len);
    }
    if (!f.exact()) {
        // unknown T-tail leaks into every t-degree
        long M = f.trunc();
        long tau = f.tail_val();
        if (tau <= NO_TAIL_VAL / 2)
            throw PrecisionError(
                "localize: truncated input carries no tail-valuation witness",
                0);
        long den = pow_long(p, n - 1) * (p - 1);
        std::vector<Cyclo> capped;
        for (long d = 0; d < t_len; ++d) {
            long cap = tau + std::max<long>(0, M - d) / den - d * n -
                       factorial_valuation(p, d);
            capped.push_back(res.coeff(d).truncated(cap));
        }
        res = LnSeries::from_coeffs(p, Var::t, 0, std::move(capped), t_len);
    }
    return res;
}

Cyclo evaluate_at_zeta(const QSeries& f, long level) {
    long p = f.prime();
    long n = level;
    Cyclo z = Cyclo::zeta(p, n) - Cyclo::from_scalar(PAdic::from_integer(p, 1), n);
    Cyclo acc = Cyclo::from_scalar(PAdic::exact_zero(p), n);
    long kneg = std::max<long>(0, -f.lo());
    QSeries h = f.shifted(kneg);
    for (long m = h.hi() - 1; m >= 0; --m) {
        acc = acc * z;
        if (m >= h.lo()) acc += Cyclo::from_scalar(h.coeff(m), n);
    }
    if (!h.exact()) {
        long den = pow_long(p, n - 1) * (p - 1);
        long cap = h.tail_val() <= NO_TAIL_VAL / 2
                       ? NO_TAIL_VAL
                       : h.tail_val() + h.trunc() / den;
        if (cap <= NO_TAIL_VAL / 2)
            throw PrecisionError("evaluate_at_zeta: no tail witness", 0);
        acc = acc.truncated(cap);
    }
    if (kneg > 0) {
        Cyclo zi = z.inv();
        for (long i = 0; i < kneg; ++i) acc = acc * zi;
    }
    return acc;
}

LnSeries dif_sigma(const LnSeries& f, const PAdic& a) {
    if (f.var() != Var::t) throw DomainError("dif_sigma: t-variable only");
    long p = f.prime();
    // Galois exponent, reduced at the highest coefficient level present
    long lvl = 0;
    for (long d = f.lo(); d < f.hi(); ++d)
        lvl = std::max(lvl, f.coeff(d).level());
    long aint = lvl > 0 ? static_cast<long>(a.lift_mod(lvl).get_si()) : 1;
    std::vector<Cyclo> cs;
    for (long d = f.lo(); d < f.hi(); ++d) {
        Cyclo c = f.coeff(d);
        if (c.level() > 0) c = c.galois(aint);
        cs.push_back(c * a.pow(d));
    }
    return LnSeries::from_coeffs(p, Var::t, f.lo(), std::move(cs), f.trunc(),
                                 f.tail_bound(), f.tail_val());
}

LnSeries tate_down(const LnSeries& f, long target_level) {
    std::vector<Cyclo> cs;
    for (long d = f.lo(); d < f.hi(); ++d)
        cs.push_back(f.coeff(d).tate_trace_to(target_level));
    return LnSeries::from_coeffs(f.prime(), Var::t, f.lo(), std::move(cs),
                                 f.trunc(), f.tail_bound(), f.tail_val());
}

TraceCompatReport trace_compat(const QSeries& z, long n, long t_len) {
    LnSeries lhs = localize(psi(z), n, t_len);
    LnSeries rhs = tate_down(localize(z, n + 1, t_len), n);
    LnSeries diff = lhs - rhs;
    TraceCompatReport rep{};
    rep.residual_valuation = residual_valuation(diff);
    long floor = PREC_INF;
    for (long d = diff.lo(); d < diff.hi(); ++d)
        floor = std::min(floor, diff.coeff(d).min_abs_prec());
    rep.floor = floor;
    return rep;
}

std::string DifLattice::manifest_json() const {
    std::ostringstream os;
    os << "{\"level\":" << level << ",\"structure\":\""
       << (eps ? "nonDeRham" : "deRham") << "\",\"k\":" << k << "}";
    return os.str();
}

DifElem dif_sigma(const DifLattice& L, const DifElem& z, const PAdic& a) {
    LnSeries A = dif_sigma(z.A, a);
    LnSeries B = dif_sigma(z.B, a);
    if (L.eps) {
        // sigma_a(e2) = e2 + log(a) e1
        PAdic la = plog(a);
        A = A + B.scaled(Cyclo::from_scalar(la));
    }
    return {A, B};
}

DifElem dif_nabla(const DifLattice& L, const DifElem& z) {
    LnSeries A = nabla(z.A);
    LnSeries B = nabla(z.B);
    if (L.eps) A = A + z.B;  // nabla(e2) = e1
    return {A, B};
}

bool divisible_by_t_pow(const LnSeries& f, long m) {
    for (long d = f.lo(); d < std::min(m, f.trunc()); ++d) {
        if (!f.coeff(d).is_zero_at_prec()) return false;
    }
    return true;
}

bool in_lattice(const DifLattice& L, const DifElem& z) {
    return divisible_by_t_pow(z.A, 0) && divisible_by_t_pow(z.B, L.k);
}

LnSeries nabla_2k_series(const LnSeries& f, long k) {
    long p = f.prime();
    LnSeries acc = f;
    for (long j = 0; j < 2 * k; ++j) {
        acc = nabla(acc) -
              acc.scaled(Cyclo::from_scalar(PAdic::from_integer(p, j)));
    }
    return acc;
}

DifElem nabla_2k(const DifLattice& L, const DifElem& z, long k) {
    long p = L.p;
    DifElem acc = z;
    for (long j = 0; j < 2 * k; ++j) {
        DifElem n = dif_nabla(L, acc);
        acc = {n.A - acc.A.scaled(Cyclo::from_scalar(PAdic::from_integer(p, j))),
               n.B - acc.B.scaled(Cyclo::from_scalar(PAdic::from_integer(p, j)))};
    }
    return acc;
}

bool xn_membership(const DifLattice& L, const DifElem& z) {
    if (!in_lattice(L, z))
        throw DomainError("xn_membership: element is not in the lattice");
    DifElem w = nabla_2k(L, z, L.k);
    // in t^{2k} N_dif: both coordinates in t^{2k} L_n[[t]]
    return divisible_by_t_pow(w.A, 2 * L.k) && divisible_by_t_pow(w.B, 2 * L.k);
}

bool xn_closed_form(const DifLattice& L, const DifElem& z) {
    if (L.eps == 0) return true;
    return divisible_by_t_pow(z.B, 2 * L.k);
}

namespace {

/// log of an upper-triangular 2x2 (or 1x1) matrix I + N over L_n.
std::vector<Cyclo> mat_log(const std::vector<Cyclo>& G, long rank, long p,
                           long level) {
    long d = rank;
    std::vector<Cyclo> I(static_cast<size_t>(d * d),
                         Cyclo::from_scalar(PAdic::exact_zero(p), level));
    for (long i = 0; i < d; ++i)
        I[static_cast<size_t>(i * d + i)] =
            Cyclo::from_scalar(PAdic::from_integer(p, 1), level);
    std::vector<Cyclo> N(G);
    for (long i = 0; i < d * d; ++i) N[static_cast<size_t>(i)] =
        G[static_cast<size_t>(i)] - I[static_cast<size_t>(i)];
    auto mat_mul = [&](const std::vector<Cyclo>& X,
                       const std::vector<Cyclo>& Y) {
        std::vector<Cyclo> Z(static_cast<size_t>(d * d),
                             Cyclo::from_scalar(PAdic::exact_zero(p), level));
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) {
                Cyclo s = Cyclo::from_scalar(PAdic::exact_zero(p), level);
                for (long l = 0; l < d; ++l)
                    s += X[static_cast<size_t>(i * d + l)] *
                         Y[static_cast<size_t>(l * d + j)];
                Z[static_cast<size_t>(i * d + j)] = s;
            }
        return Z;
    };
    std::vector<Cyclo> acc(static_cast<size_t>(d * d),
                           Cyclo::from_scalar(PAdic::exact_zero(p), level));
    std::vector<Cyclo> Npow = N;
    for (long kterm = 1; kterm <= 256; ++kterm) {
        PAdic inv_k = PAdic::from_ratio(p, kterm % 2 ? 1 : -1, kterm);
        bool nonzero = false;
        for (long i = 0; i < d * d; ++i) {
            Cyclo t = Npow[static_cast<size_t>(i)] * inv_k;
            if (!t.is_zero_at_prec()) nonzero = true;
            acc[static_cast<size_t>(i)] += t;
        }
        if (!nonzero) break;
        Npow = mat_mul(Npow, N);
    }
    return acc;
}

}  // namespace

SenResult sen_operator(const PhiGammaModule& M, long n, long prec) {
    long p = M.prime();
    long rank = M.rank();
    // gamma = 1 + p^n acts L_n-linearly; its matrix on the localized
    // quotient.  Working precision bounds the log-series depth.
    PAdic gamma = PAdic::from_integer(p, 1 + pow_long(p, n), prec);
    std::vector<Cyclo> G(static_cast<size_t>(rank * rank),
                         Cyclo::from_scalar(PAdic::exact_zero(p), n));
    G[0] = Cyclo::from_scalar(M.delta(0).eval_unit(gamma), n);
    if (rank == 2) {
        G[3] = Cyclo::from_scalar(M.delta(1).eval_unit(gamma), n);
        if (M.has_extension())
            G[1] = evaluate_at_zeta(M.sigma_cocycle(gamma), n);
    }
    std::vector<Cyclo> nab = mat_log(G, rank, p, n);
    PAdic lg_inv = plog(gamma).inv();
    for (auto& e : nab) e = e * lg_inv;
    SenResult res;
    res.rank = rank;
    res.matrix = nab;
    // characteristic polynomial (upper triangular in our frames)
    if (rank == 1) {
        res.charpoly = {-nab[0], Cyclo::from_scalar(PAdic::from_integer(p, 1), n)};
    } else {
        Cyclo tr = nab[0] + nab[3];
        Cyclo det = nab[0] * nab[3] - nab[1] * nab[2];
        res.charpoly = {det, -tr,
                        Cyclo::from_scalar(PAdic::from_integer(p, 1), n)};
    }
    return res;
}

}  // namespace robba
