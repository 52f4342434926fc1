#include "robba/rand.hpp"
#include "robba/restriction.hpp"

#include <doctest.h>

using namespace robba;

namespace {
const long P = 3;
const long PREC = 18;
const long M = 27;

QSeries one_series(long p) {
    return QSeries::constant(p, Var::T, PAdic::from_integer(p, 1));
}
}  // namespace

TEST_CASE("compact opens: canonical form and boolean algebra") {
    CompactOpen U(P, 2, {0, 3, 6, 1});  // {0,3,6} is the full fiber of 0 mod 3
    CHECK(U.str() == "0,1,3,6@2");
    CHECK(CompactOpen(P, 1, {0, 1, 2}).is_all());
    CompactOpen V = CompactOpen::cls(P, 1, 1);
    CHECK(U.intersect(V) == CompactOpen(P, 2, {1}));
    CHECK(U.unite(U.complement()).is_all());
    CHECK(U.intersect(U.complement()).is_empty());
    CHECK(CompactOpen::parse(P, "1,2@1") == CompactOpen::units(P));
    CHECK(CompactOpen::parse(P, U.str()) == U);
    // membership
    CHECK(U.contains(9));
    CHECK(U.contains(10));
    CHECK(!U.contains(2));
}

TEST_CASE("restriction: pinned values") {
    // Res_{Zp} = id
    Rng rng(61);
    QSeries f = rng.power_series(P, PREC, 10, M);
    CHECK(restrict(f, CompactOpen::all(P)).matches(f));
    // Res_{pZp}(T) = -1  (phi psi T), so Res_{Zp^x}(T) = T + 1
    QSeries T = QSeries::monomial(P, Var::T, PAdic::from_integer(P, 1, PREC), 1,
                                  M);
    QSeries r0 = restrict(T, CompactOpen::cls(P, 0, 1));
    CHECK(r0.matches(-one_series(P).truncated(r0.trunc())));
    QSeries ru = restrict(T, CompactOpen::units(P));
    CHECK(ru.matches((T + one_series(P).truncated(M)).truncated(ru.trunc())));
    // Res_{1+pZp}((1+T)) = (1+T): Dirac at 1 lives in 1 + pZp
    QSeries e1 = one_plus_T_int_pow(P, 1).truncated(M).with_tail_val(0);
    QSeries r1 = restrict(e1, CompactOpen::cls(P, 1, 1));
    CHECK(r1.matches(e1.truncated(r1.trunc())));
    QSeries r2 = restrict(e1, CompactOpen::cls(P, 2, 1));
    CHECK(r2.is_zero_at_prec());
}

TEST_CASE("restriction: partition of unity and projector algebra") {
    Rng rng(67);
    for (int iter = 0; iter < 8; ++iter) {
        QSeries f = rng.power_series(P, PREC, 9, M);
        QSeries acc = QSeries::zero(P, Var::T, M);
        for (long a = 0; a < P; ++a) acc += restrict_class(f, a, 1);
        CHECK(acc.matches(f.truncated(acc.trunc())));
        // idempotence and commutation
        CompactOpen U = CompactOpen::cls(P, rng.uniform(0, 2), 1);
        CompactOpen V = CompactOpen::cls(P, rng.uniform(0, 8), 2);
        QSeries rU = restrict(f, U);
        CHECK(restrict(rU, U).matches(rU));
        QSeries ruv = restrict(restrict(f, U), V);
        QSeries rvu = restrict(restrict(f, V), U);
        CHECK(ruv.matches(rvu));
        CHECK(ruv.matches(restrict(f, U.intersect(V))));
    }
}

TEST_CASE("P+ action: monoid law and pinned matrices") {
    Rng rng(71);
    QSeries f = rng.power_series(P, PREC, 9, M);
    // identity
    CHECK(pplus_act(PPlus::identity(P), f).matches(f));
    // (p,0;0,1) f = phi(f)
    PPlus frob(1, PAdic::from_integer(P, 1), PAdic::from_integer(P, 0));
    CHECK(pplus_act(frob, f).matches(apply_phi(f)));
    // (1,b;0,1) f = (1+T)^b f
    PAdic b = rng.padic_integer(P, PREC);
    PPlus shift(0, PAdic::from_integer(P, 1), b);
    CHECK(
        pplus_act(shift, f).matches((one_plus_T_pow(P, b, M) * f).truncated(M)));
    // monoid action: act(g1 g2) = act(g1) o act(g2)
    for (int iter = 0; iter < 6; ++iter) {
        PPlus g1(rng.uniform(0, 1), rng.padic_unit(P, PREC),
                 rng.padic_integer(P, PREC));
        PPlus g2(rng.uniform(0, 1), rng.padic_unit(P, PREC),
                 rng.padic_integer(P, PREC));
        QSeries lhs = pplus_act(g1.compose(g2), f);
        QSeries rhs = pplus_act(g1, pplus_act(g2, f));
        CHECK(lhs.matches(rhs));
    }
}

TEST_CASE("equivariance of restriction under P+") {
    Rng rng(73);
    QSeries f = rng.power_series(P, PREC, 9, M);
    // Res_U(g z) = g Res_{g^{-1} U}(z) whenever g^{-1} U meets Z_p
    for (int iter = 0; iter < 5; ++iter) {
        long k = rng.uniform(0, 1);
        PPlus g(k, rng.padic_unit(P, PREC),
                PAdic::from_integer(P, rng.uniform(0, 8)));
        CompactOpen U = CompactOpen::cls(P, rng.uniform(0, 8), 2);
        CompactOpen W = preimage(g, U);
        QSeries lhs = restrict(pplus_act(g, f), U);
        if (W.is_empty()) {
            CHECK(lhs.is_zero_at_prec());
            continue;
        }
        QSeries rhs = pplus_act(g, restrict(f, W));
        CHECK(lhs.matches(rhs));
    }
}
