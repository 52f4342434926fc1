#pragma once

#include "robba/series.hpp"

#include <random>

namespace robba {

/// Deterministic generator for random test data; identical seeds give
/// bit-identical streams.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    long uniform(long a, long b) {  // inclusive range
        return std::uniform_int_distribution<long>(a, b)(g_);
    }

    mpz_class below(const mpz_class& m) {
        // rejection-free: build from 64-bit chunks then reduce
        size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2) + 64;
        mpz_class r = 0;
        for (size_t i = 0; i < bits; i += 64) {
            r <<= 64;
            r += mpz_class(static_cast<unsigned long>(g_()));
        }
        r %= m;
        return r;
    }

    /// Random element of Z_p known mod p^prec.
    PAdic padic_integer(long p, long prec) {
        return PAdic::from_integer(p, below(pow_p(p, prec)), prec);
    }

    /// Random unit of Z_p^x known mod p^prec.
    PAdic padic_unit(long p, long prec) {
        while (true) {
            mpz_class u = below(pow_p(p, prec));
            if (u % p != 0) return PAdic::from_integer(p, u, prec);
        }
    }

    /// Random scalar with valuation in [vmin, vmax].
    PAdic padic_scalar(long p, long prec, long vmin = 0, long vmax = 0) {
        return padic_unit(p, prec).shift(uniform(vmin, vmax));
    }

    /// Random power series with integral coefficients, window [0, len),
    /// truncation order trunc (PREC_INF for an exact polynomial).
    QSeries power_series(long p, long prec, long len, long trunc) {
        std::vector<PAdic> c;
        c.reserve(static_cast<size_t>(len));
        for (long i = 0; i < len; ++i) c.push_back(padic_integer(p, prec));
        return QSeries::from_coeffs(p, Var::T, 0, std::move(c), trunc,
                                    DEFAULT_TAIL_BOUND, 0);
    }

    /// Random Laurent series with principal part down to lo.
    QSeries laurent_series(long p, long prec, long lo, long len, long trunc) {
        std::vector<PAdic> c;
        c.reserve(static_cast<size_t>(len));
        for (long i = 0; i < len; ++i) c.push_back(padic_integer(p, prec));
        return QSeries::from_coeffs(p, Var::T, lo, std::move(c), trunc,
                                    DEFAULT_TAIL_BOUND, 0);
    }

    Cyclo cyclo(long p, long level, long prec) {
        long d = Cyclo::phi_pn(p, level);
        std::vector<PAdic> c;
        c.reserve(static_cast<size_t>(d));
        for (long i = 0; i < d; ++i) c.push_back(padic_integer(p, prec));
        return Cyclo::from_coeffs(p, level, std::move(c));
    }

    Series<Cyclo> t_series_Ln(long p, long level, long prec, long lo, long len,
                              long trunc) {
        std::vector<Cyclo> c;
        c.reserve(static_cast<size_t>(len));
        for (long i = 0; i < len; ++i) c.push_back(cyclo(p, level, prec));
        return Series<Cyclo>::from_coeffs(p, Var::t, lo, std::move(c), trunc,
                                           DEFAULT_TAIL_BOUND, 0);
    }

    std::mt19937_64& raw() { return g_; }

  private:
    std::mt19937_64 g_;
};

}  // namespace robba
