#include "robba/measure.hpp"

#include <algorithm>
#include <sstream>

namespace robba {

namespace {

long pow_long(long p, long n) {
    long r = 1;
    while (n-- > 0) r *= p;
    return r;
}

long val_lower_of(const PAdic& a) {
    if (a.is_exact_zero()) return PREC_INF;
    if (a.is_zero_at_prec()) return a.abs_prec();
    return a.valuation();
}

}  // namespace

Measure::Measure(long p, std::vector<PAdic> mahler, long bound)
    : p_(p), mahler_(std::move(mahler)), bound_(bound) {
    for (const auto& c : mahler_) {
        if (val_lower_of(c) < bound_)
            throw Error("Measure: boundedness witness violated by c_n");
    }
}

Measure Measure::diracs(long p,
                        std::vector<std::pair<PAdic, PAdic>> mass_points,
                        long len) {
    long bound = PREC_INF;
    std::vector<PAdic> c(static_cast<size_t>(len), PAdic::exact_zero(p));
    for (const auto& [mass, point] : mass_points) {
        if (!point.is_zero_at_prec() && point.valuation() < 0)
            throw SupportError("Measure::diracs: point outside Z_p");
        bound = std::min(bound, val_lower_of(mass));
        // C(point, n) column
        PAdic cur = PAdic::from_integer(p, 1);
        for (long n = 0; n < len; ++n) {
            c[static_cast<size_t>(n)] += mass * cur;
            cur = cur * (point - PAdic::from_integer(p, n)) /
                  PAdic::from_integer(p, n + 1);
        }
    }
    if (bound >= PREC_INF / 2) bound = 0;
    Measure mu(p, std::move(c), std::min<long>(bound, 0));
    mu.diracs_ = std::move(mass_points);
    return mu;
}

Measure Measure::dirac(long p, const PAdic& point, long len) {
    return diracs(p, {{PAdic::from_integer(p, 1), point}}, len);
}

Measure Measure::operator+(const Measure& o) const {
    if (p_ != o.p_) throw Error("Measure: mixed primes");
    long len = std::min(trunc(), o.trunc());
    std::vector<PAdic> c;
    c.reserve(static_cast<size_t>(len));
    for (long n = 0; n < len; ++n)
        c.push_back(mahler_[static_cast<size_t>(n)] +
                    o.mahler_[static_cast<size_t>(n)]);
    Measure out(p_, std::move(c), std::min(bound_, o.bound_));
    if (diracs_ && o.diracs_) {
        auto d = *diracs_;
        d.insert(d.end(), o.diracs_->begin(), o.diracs_->end());
        out.diracs_ = std::move(d);
    }
    return out;
}

Measure Measure::operator-() const {
    std::vector<PAdic> c;
    c.reserve(mahler_.size());
    for (const auto& a : mahler_) c.push_back(-a);
    Measure out(p_, std::move(c), bound_);
    if (diracs_) {
        auto d = *diracs_;
        for (auto& mp : d) mp.first = -mp.first;
        out.diracs_ = std::move(d);
    }
    return out;
}

Measure Measure::scaled(const PAdic& s) const {
    std::vector<PAdic> c;
    c.reserve(mahler_.size());
    for (const auto& a : mahler_) c.push_back(a * s);
    long b = bound_;
    long vs = val_lower_of(s);
    b = vs >= PREC_INF / 2 ? PREC_INF / 4 : bound_ + vs;
    Measure out(p_, std::move(c), b);
    if (diracs_) {
        auto d = *diracs_;
        for (auto& mp : d) mp.first = mp.first * s;
        out.diracs_ = std::move(d);
    }
    return out;
}

bool Measure::matches(const Measure& o) const {
    long len = std::min(trunc(), o.trunc());
    for (long n = 0; n < len; ++n) {
        if (!(mahler_[static_cast<size_t>(n)] -
              o.mahler_[static_cast<size_t>(n)])
                 .is_zero_at_prec())
            return false;
    }
    return true;
}

std::string Measure::str() const {
    std::ostringstream os;
    os << "mahler: ";
    for (size_t i = 0; i < mahler_.size(); ++i) {
        if (i) os << ",";
        os << mahler_[i].str();
    }
    return os.str();
}

QSeries amice(const Measure& mu) {
    return QSeries::from_coeffs(mu.prime(), Var::T, 0, mu.mahler(),
                                mu.trunc(), DEFAULT_TAIL_BOUND, mu.bound());
}

Measure inverse_amice(const QSeries& f) {
    if (f.lo() < 0)
        throw DomainError("inverse_amice: series with principal part is not "
                          "the transform of a measure");
    if (!f.exact() && f.tail_val() <= NO_TAIL_VAL / 2)
        throw PrecisionError(
            "inverse_amice: truncated series without a boundedness witness",
            0);
    long len = f.exact() ? f.hi() : f.trunc();
    std::vector<PAdic> c;
    c.reserve(static_cast<size_t>(len));
    long tau = f.tail_val();
    for (long n = 0; n < len; ++n) {
        PAdic cn = f.coeff(n);
        if (!f.exact()) cn = cn.truncate(tau);  // tail shifts every moment
        c.push_back(cn);
    }
    long bound = std::min<long>(0, f.min_val());
    return Measure(f.prime(), std::move(c), bound);
}

Measure pushforward_affine(const Measure& mu, const PAdic& a, const PAdic& b) {
    long p = mu.prime();
    if (!a.is_zero_at_prec() && a.valuation() < 0)
        throw SupportError("pushforward_affine: a|x|+b leaves Z_p");
    if (!b.is_zero_at_prec() && b.valuation() < 0)
        throw SupportError("pushforward_affine: image leaves Z_p");
    long M = mu.trunc();
    if (mu.dirac_data()) {
        auto d = *mu.dirac_data();
        for (auto& mp : d) mp.second = a * mp.second + b;
        return Measure::diracs(p, std::move(d), M);
    }
    std::vector<PAdic> out;
    out.reserve(static_cast<size_t>(M));
    // row n: finite differences of x -> C(ax+b, n), a polynomial of degree n
    for (long n = 0; n < M; ++n) {
        // g(i) = C(a i + b, n) for i = 0..n
        std::vector<PAdic> g;
        g.reserve(static_cast<size_t>(n) + 1);
        for (long i = 0; i <= n; ++i) {
            PAdic x = a * PAdic::from_integer(p, i) + b;
            PAdic cur = PAdic::from_integer(p, 1);
            for (long t = 0; t < n; ++t)
                cur = cur * (x - PAdic::from_integer(p, t)) /
                      PAdic::from_integer(p, t + 1);
            g.push_back(cur);
        }
        // finite-difference pyramid: after step m, g[0] = Delta^m g(0)
        PAdic acc = PAdic::exact_zero(p);
        for (long m = 0; m <= n; ++m) {
            if (m < M) acc += g[0] * mu.mahler()[static_cast<size_t>(m)];
            for (long i = 0; i + 1 < static_cast<long>(g.size()); ++i)
                g[static_cast<size_t>(i)] =
                    g[static_cast<size_t>(i + 1)] - g[static_cast<size_t>(i)];
            g.pop_back();
        }
        out.push_back(acc);
    }
    return Measure(p, std::move(out), mu.bound());
}

Measure psi_measure(const Measure& mu) {
    long p = mu.prime();
    long M = mu.trunc();
    if (mu.dirac_data()) {
        // delta_b restricted to pZ_p, pushed through x -> x/p
        std::vector<std::pair<PAdic, PAdic>> d;
        for (const auto& [mass, b] : *mu.dirac_data()) {
            if (b.is_zero_at_prec() || b.valuation() >= 1)
                d.emplace_back(mass, b.shift(-1));
        }
        return Measure::diracs(p, std::move(d), std::max<long>(1, (M + p - 1) / p));
    }
    // s_i = sum_{m >= i} (-1)^{m-i} C(m,i) c_m  for p | i (partial pyramid),
    // then d_k = sum_{p|i} s_i C(i/p, k); this is
    // d_k = sum_m Delta^m[1_{pZp}(x) C(x/p,k)](0) c_m rearranged.
    long K = (M + p - 1) / p;
    std::vector<PAdic> d(static_cast<size_t>(K), PAdic::exact_zero(p));
    for (long i = 0; i < M; i += p) {
        // s_i
        PAdic s = PAdic::exact_zero(p);
        mpz_class bin = 1;  // C(i,i)
        for (long m = i; m < M; ++m) {
            PAdic term = mu.mahler()[static_cast<size_t>(m)] *
                         PAdic::from_integer(p, bin);
            s += (m - i) % 2 ? -term : term;
            bin = bin * (m + 1) / (m + 1 - i);
        }
        // distribute: d_k += s_i * C(i/p, k)
        PAdic cur = PAdic::from_integer(p, 1);
        long y = i / p;
        for (long k = 0; k < K; ++k) {
            d[static_cast<size_t>(k)] += s * cur;
            cur = cur * PAdic::from_integer(p, y - k) /
                  PAdic::from_integer(p, k + 1);
        }
    }
    // tail-leak caps: same law as the series-side psi
    long bmin = mu.bound();
    for (long k = 0; k < K; ++k) {
        long cap = mu.bound();
        if (M - p * k >= 0)
            cap += (M - p * k) / (p - 1) - 1;
        else
            cap += -((p * k - M + p - 2) / (p - 1)) - 1;
        d[static_cast<size_t>(k)] = d[static_cast<size_t>(k)].truncate(cap);
        bmin = std::min(bmin, val_lower_of(d[static_cast<size_t>(k)]));
    }
    return Measure(p, std::move(d), bmin);
}

bool supported_in_units(const Measure& mu) {
    Measure r = psi_measure(mu);
    for (const auto& c : r.mahler())
        if (!c.is_zero_at_prec()) return false;
    return true;
}

std::string ConvergenceReport::to_json() const {
    std::ostringstream os;
    auto put = [&os](long v) {
        if (v >= PREC_INF / 2)
            os << "null";  // exact agreement at tracked precision
        else
            os << v;
    };
    os << "{\"distances\":[";
    for (size_t i = 0; i < distances.size(); ++i) {
        if (i) os << ",";
        os << "{\"n\":" << distances[i].first << ",\"distance_valuation\":";
        put(distances[i].second);
        os << "}";
    }
    os << "],\"achieved\":";
    put(achieved);
    os << "}";
    return os.str();
}

Measure wD_integral(const Measure& mu, const Character& delta_D,
                    long n_budget, ConvergenceReport* report) {
    long p = mu.prime();
    long M = mu.trunc();
    if (!supported_in_units(mu))
        throw SupportError("wD_integral: measure is not supported in Z_p^x");
    if (mu.dirac_data()) {
        // exact: delta_b -> delta_D(b) delta_{1/b}
        std::vector<std::pair<PAdic, PAdic>> out;
        for (const auto& [mass, b] : *mu.dirac_data()) {
            if (b.is_zero_at_prec() || b.valuation() != 0)
                throw SupportError("wD_integral: Dirac point is not a unit");
            out.emplace_back(mass * delta_D.eval_unit(b), b.inv());
        }
        if (report) {
            report->distances.clear();
            report->achieved = PREC_INF;
        }
        return Measure::diracs(p, std::move(out), M);
    }
    // Riemann sums over classes mod p^n; masses by Fourier inversion:
    //   mu(i + p^n Z_p) = p^{-n} sum_{j mod p^n} zeta^{-ji} A_mu(zeta^j - 1)
    std::vector<QSeries> sums;
    for (long n = 1; n <= n_budget; ++n) {
        long pn = pow_long(p, n);
        // evaluate A_mu at zeta^j - 1 by Horner over L_n
        std::vector<Cyclo> G;
        G.reserve(static_cast<size_t>(pn));
        for (long j = 0; j < pn; ++j) {
            Cyclo x = Cyclo::zeta_pow(p, n, j) -
                      Cyclo::from_scalar(PAdic::from_integer(p, 1), n);
            Cyclo acc = Cyclo::from_scalar(PAdic::exact_zero(p), n);
            for (long m = M - 1; m >= 0; --m) {
                acc = acc * x;
                acc += Cyclo::from_scalar(mu.mahler()[static_cast<size_t>(m)],
                                          n);
            }
            G.push_back(std::move(acc));
        }
        long mass_cap = mu.bound() - n;
        {
            // evaluation truncation: |tail| <= p^bound |zeta-1|^M
            long num = M;  // M * r_n = M / (p^(n-1)(p-1))
            long den = pow_long(p, n - 1) * (p - 1);
            mass_cap += num / den;
        }
        QSeries S = QSeries::zero(p, Var::T, M);
        for (long i = 1; i < pn; ++i) {
            if (i % p == 0) continue;
            Cyclo msum = Cyclo::from_scalar(PAdic::exact_zero(p), n);
            for (long j = 0; j < pn; ++j)
                msum += G[static_cast<size_t>(j)] *
                        Cyclo::zeta_pow(p, n, -(j * i));
            PAdic mass;
            try {
                // true mass only modulo the evaluation-tail error
                mass = msum.truncated(mass_cap + n).descend_to(0).scalar().shift(
                    -n);
            } catch (const DomainError&) {
                throw ConvergenceError(
                    "wD_integral: mass recovery failed at level " +
                        std::to_string(n),
                    mass_cap);
            }
            PAdic invi = PAdic::from_ratio(p, 1, i);
            S += one_plus_T_pow(p, invi, M).scaled(
                mass * delta_D.eval_unit(PAdic::from_integer(p, i)));
        }
        sums.push_back(S);
    }
    ConvergenceReport rep;
    long achieved = PREC_INF;
    for (size_t i = 0; i + 1 < sums.size(); ++i) {
        long d = residual_valuation(sums[i] - sums[i + 1]);
        rep.distances.emplace_back(static_cast<long>(i) + 1, d);
        achieved = std::min(achieved, d);
    }
    rep.achieved =
        achieved >= PREC_INF / 2 ? sums.back().min_abs_prec() : achieved;
    if (report) *report = rep;
    // final answer at the achieved modulus
    QSeries fin = sums.back();
    std::vector<PAdic> c;
    long bmin = 0;
    for (long k = 0; k < fin.trunc(); ++k) {
        c.push_back(fin.coeff(k).truncate(rep.achieved));
        bmin = std::min(bmin, val_lower_of(c.back()));
    }
    return Measure(p, std::move(c), bmin);
}

std::vector<QSeries> wD_riemann(const QSeries& z, const Character& delta_D,
                                long n_max, ConvergenceReport* report,
                                long out_trunc) {
    long p = z.prime();
    QSeries pz = psi(z);
    if (!pz.is_zero_at_prec())
        throw DomainError("wD_riemann: psi(z) != 0 at precision");
    long R = out_trunc > 0 ? out_trunc : (z.exact() ? 48 : z.trunc());
    std::vector<QSeries> sums;
    if (z.exact() && z.lo() >= 0) {
        // Exact path: in the binomial basis z = sum_j b_j (1+T)^j the chain
        // phi^n psi^n((1+T)^{-i} z) keeps exactly the j = i mod p^n part,
        // and the remaining sigma/(1+T)-steps act on exponents:
        //   S_n = sum_i delta_D(i) sum_{j = i (p^n)} b_j (1+T)^{(2i-j)/i^2}.
        // No truncation enters before the final materialization at R.
        std::vector<PAdic> b = to_binomial(z);
        for (long n = 1; n <= n_max; ++n) {
            long pn = pow_long(p, n);
            QSeries S = QSeries::zero(p, Var::T, R);
            for (long j = 0; j < static_cast<long>(b.size()); ++j) {
                const PAdic& bj = b[static_cast<size_t>(j)];
                if (bj.is_exact_zero()) continue;
                long i = j % pn;
                if (i % p == 0) continue;  // psi(z) = 0 kills these anyway
                PAdic expo = PAdic::from_ratio(p, 2 * i - j, i * i);
                S += one_plus_T_pow(p, expo, R).scaled(
                    bj * delta_D.eval_unit(PAdic::from_integer(p, i)));
            }
            sums.push_back(S);
        }
    } else {
        for (long n = 1; n <= n_max; ++n) {
            long pn = pow_long(p, n);
            QSeries S = QSeries::zero(p, Var::T, R);
            for (long i = 1; i < pn; ++i) {
                if (i % p == 0) continue;
                QSeries term =
                    one_plus_T_pow(p, PAdic::from_integer(p, -i),
                                   z.exact() ? z.hi() + 1 : z.trunc()) *
                    z;
                for (long s = 0; s < n; ++s) term = psi_binomial(term);
                for (long s = 0; s < n; ++s) term = apply_phi(term);
                term = apply_sigma(term, PAdic::from_ratio(p, -1, i * i), R);
                term = (one_plus_T_pow(p, PAdic::from_ratio(p, 1, i), R) * term)
                           .truncated(R);
                S += term.scaled(delta_D.eval_unit(PAdic::from_integer(p, i)));
            }
            sums.push_back(S);
        }
    }
    if (report) {
        report->distances.clear();
        long achieved = PREC_INF;
        for (size_t i = 0; i + 1 < sums.size(); ++i) {
            long d = residual_valuation(sums[i] - sums[i + 1]);
            report->distances.emplace_back(static_cast<long>(i) + 1, d);
            achieved = std::min(achieved, d);
        }
        report->achieved = achieved;
    }
    return sums;
}

}  // namespace robba
