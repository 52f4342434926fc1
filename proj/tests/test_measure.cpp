#include "robba/measure.hpp"
#include "robba/rand.hpp"
#include "robba/restriction.hpp"

#include <doctest.h>

using namespace robba;

namespace {
const long P = 3;
const long PREC = 18;
const long M = 30;

Measure random_measure(Rng& rng, long len = M) {
    std::vector<PAdic> c;
    for (long i = 0; i < len; ++i) c.push_back(rng.padic_integer(P, PREC));
    return Measure(P, std::move(c), 0);
}
}  // namespace

TEST_CASE("amice: Diracs and round trips") {
    // delta_0 -> 1
    Measure d0 = Measure::dirac(P, PAdic::from_integer(P, 0), M);
    QSeries A0 = amice(d0);
    CHECK(A0.coeff(0).matches(PAdic::from_integer(P, 1)));
    for (long n = 1; n < M; ++n) CHECK(A0.coeff(n).is_zero_at_prec());
    // delta_b -> (1+T)^b
    Rng rng(79);
    PAdic b = rng.padic_integer(P, PREC);
    Measure db = Measure::dirac(P, b, M);
    CHECK(amice(db).matches(one_plus_T_pow(P, b, M)));
    // mahler (1,0,0,...) -> 1 (same data)
    Measure unit_m(P, {PAdic::from_integer(P, 1, PREC)}, 0);
    CHECK(amice(unit_m).coeff(0).matches(PAdic::from_integer(P, 1)));
    // inverse_amice round trip
    Measure mu = random_measure(rng);
    CHECK(inverse_amice(amice(mu)).matches(mu));
    // principal part is not a measure
    QSeries bad = QSeries::monomial(P, Var::T, PAdic::from_integer(P, 1), -1, M);
    CHECK_THROWS_AS(inverse_amice(bad), DomainError);
}

TEST_CASE("pushforward matches the P+ action on Amice transforms") {
    Rng rng(83);
    // a = 1, b = 0 is the identity
    Measure mu = random_measure(rng);
    CHECK(pushforward_affine(mu, PAdic::from_integer(P, 1),
                             PAdic::from_integer(P, 0))
              .matches(mu));
    // Dirac pushforwards: delta_c under x -> x + b and x -> p x
    PAdic c = rng.padic_integer(P, PREC);
    PAdic b = rng.padic_integer(P, PREC);
    Measure dc = Measure::dirac(P, c, M);
    CHECK(amice(pushforward_affine(dc, PAdic::from_integer(P, 1), b))
              .matches(one_plus_T_pow(P, c + b, M)));
    CHECK(amice(pushforward_affine(dc, PAdic::from_integer(P, P),
                                   PAdic::from_integer(P, 0)))
              .matches(apply_phi(one_plus_T_pow(P, c, M))));
    // the central consistency: A_{g mu} = (1+T)^b phi^k sigma_a A_mu
    for (int iter = 0; iter < 6; ++iter) {
        Measure nu = random_measure(rng);
        long k = rng.uniform(0, 1);
        PAdic a = rng.padic_unit(P, PREC);
        PAdic bb = rng.padic_integer(P, PREC);
        PPlus g(k, a, bb);
        Measure lhs = pushforward_affine(nu, a.shift(k), bb);
        QSeries rhs = pplus_act(g, amice(nu));
        CHECK(amice(lhs).matches(rhs.truncated(amice(lhs).trunc())));
    }
}

TEST_CASE("psi on measures is the series psi (oracle equivalence)") {
    Rng rng(89);
    for (int iter = 0; iter < 10; ++iter) {
        Measure mu = random_measure(rng);
        Measure lhs = psi_measure(mu);
        QSeries rhs = psi(amice(mu));
        CHECK(amice(lhs).matches(rhs.truncated(amice(lhs).trunc())));
        QSeries rhs2 = psi_binomial(amice(mu));
        CHECK(amice(lhs).matches(rhs2.truncated(amice(lhs).trunc())));
    }
    // support detection
    Measure du = Measure::dirac(P, PAdic::from_integer(P, 7), M);  // unit point
    CHECK(supported_in_units(du));
    Measure dz = Measure::dirac(P, PAdic::from_integer(P, 6), M);  // in pZp
    CHECK(!supported_in_units(dz));
}

TEST_CASE("w_D on Dirac measures") {
    Rng rng(97);
    Character chi = Character::cyclotomic(P);
    Character deltaD = Character(P, PAdic::from_ratio(P, 2, 1, PREC), 1,
                                 PAdic::exact_zero(P)) *
                       chi.inv();
    // delta_1 -> delta_D(1) delta_1 = delta_1
    Measure d1 = Measure::dirac(P, PAdic::from_integer(P, 1), M);
    CHECK(wD_integral(d1, deltaD).matches(d1));
    // delta_b -> delta_D(b) (1+T)^{1/b}
    PAdic b = rng.padic_unit(P, PREC);
    Measure db = Measure::dirac(P, b, M);
    Measure w = wD_integral(db, deltaD);
    QSeries expect =
        one_plus_T_pow(P, b.inv(), M).scaled(deltaD.eval_unit(b));
    CHECK(amice(w).matches(expect));
    // involution
    CHECK(wD_integral(w, deltaD).matches(db));
    // support precondition
    Measure dp = Measure::dirac(P, PAdic::from_integer(P, 3), M);
    CHECK_THROWS_AS(wD_integral(dp, deltaD), SupportError);
}

TEST_CASE("w_D twisted equivariance on unit-supported Diracs") {
    // w_D(sigma_a mu) = delta_D(a) sigma_{a^{-1}} w_D(mu)
    Rng rng(101);
    Character deltaD = Character(P, PAdic::from_ratio(P, 4, 1, PREC), 2,
                                 PAdic::exact_zero(P)) *
                       Character::cyclotomic(P).inv();
    for (int iter = 0; iter < 6; ++iter) {
        std::vector<std::pair<PAdic, PAdic>> pts;
        for (int j = 0; j < 3; ++j)
            pts.emplace_back(rng.padic_integer(P, PREC),
                             rng.padic_unit(P, PREC));
        Measure mu = Measure::diracs(P, pts, M);
        PAdic a = rng.padic_unit(P, PREC);
        // sigma_a on measures is the pushforward by x -> a x
        Measure lhs = wD_integral(
            pushforward_affine(mu, a, PAdic::from_integer(P, 0)), deltaD);
        Measure rhs = pushforward_affine(wD_integral(mu, deltaD), a.inv(),
                                         PAdic::from_integer(P, 0))
                          .scaled(deltaD.eval_unit(a));
        CHECK(lhs.matches(rhs));
    }
}

TEST_CASE("w_D riemann operator converges to the integral oracle") {
    Rng rng(103);
    Character deltaD = Character(P, PAdic::from_ratio(P, 2, 1, PREC), 1,
                                 PAdic::exact_zero(P)) *
                       Character::cyclotomic(P).inv();
    // exact Dirac combinations at integer unit points
    for (int iter = 0; iter < 4; ++iter) {
        std::vector<std::pair<PAdic, PAdic>> pts;
        for (int j = 0; j < 2; ++j) {
            long bpt = rng.uniform(82, 3 * 81);
            while (bpt % P == 0) ++bpt;
            pts.emplace_back(PAdic::from_integer(P, rng.uniform(1, 20)),
                             PAdic::from_integer(P, bpt));
        }
        Measure mu = Measure::diracs(P, pts, M);
        QSeries z = QSeries::zero(P, Var::T);
        for (const auto& [mass, pt] : pts)
            z += one_plus_T_int_pow(
                     P, static_cast<long>(pt.lift().get_si()))
                     .scaled(mass);
        ConvergenceReport rep;
        std::vector<QSeries> sums = wD_riemann(z, deltaD, 4, &rep, M);
        QSeries oracle = amice(wD_integral(mu, deltaD));
        // agreement valuations never decrease and grow overall; per-step
        // strictness carries base-p digit noise and is measured, not
        // asserted, here
        long first = 0, last = 0;
        long prev = -PREC_INF;
        for (size_t i = 0; i < sums.size(); ++i) {
            long agree = residual_valuation(sums[i].truncated(M) -
                                            oracle.truncated(M));
            CHECK(agree >= prev);
            if (i == 0) first = agree;
            last = agree;
            prev = agree;
        }
        CHECK(last > first);
        // psi(z) != 0 is rejected
        CHECK_THROWS_AS(
            wD_riemann(one_plus_T_int_pow(P, P), deltaD, 2, nullptr, M),
            DomainError);
    }
}

TEST_CASE("w_D riemann on truncated series agrees at low level") {
    Rng rng(107);
    Character deltaD = Character::trivial(P);
    // generic path: a random measure restricted to units
    Measure mu = random_measure(rng);
    QSeries z = restrict(amice(mu), CompactOpen::units(P));
    CHECK(psi(z).is_zero_at_prec());
    ConvergenceReport rep;
    std::vector<QSeries> sums = wD_riemann(z, deltaD, 2, &rep);
    CHECK(sums.size() == 2);
    // distances are recorded
    CHECK(rep.distances.size() == 1);
}
