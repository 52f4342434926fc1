#include "robba/padic.hpp"
#include "robba/rand.hpp"

#include <doctest.h>

using namespace robba;

TEST_CASE("representation and rendering") {
    PAdic x = PAdic::from_integer(5, 75, 10);
    CHECK(x.valuation() == 2);
    CHECK(x.unit() == 3);
    CHECK(x.abs_prec() == 10);
    CHECK(x.str() == "5^2 * 3 + O(5^10)");

    PAdic z = PAdic::zero_mod(3, 7);
    CHECK(z.is_zero_at_prec());
    CHECK(z.abs_prec() == 7);
    CHECK(PAdic::exact_zero(3).abs_prec() == PREC_INF);
}

TEST_CASE("ratio construction") {
    // 1/2 in Z_3
    PAdic h = PAdic::from_ratio(3, 1, 2, 20);
    CHECK(h.valuation() == 0);
    CHECK((h + h).matches(PAdic::from_integer(3, 1, 20)));
    // -1/5 in Q_5 has valuation -1
    PAdic f = PAdic::from_ratio(5, -1, 5, 20);
    CHECK(f.valuation() == -1);
}

TEST_CASE("worst-case precision of arithmetic") {
    long p = 3;
    PAdic a = PAdic::from_integer(p, 4, 10);   // O(3^10)
    PAdic b = PAdic::from_integer(p, 9, 6);    // v=2, O(3^6)
    CHECK((a + b).abs_prec() == 6);
    CHECK((a * b).abs_prec() == 6);  // min(10+2, 6+0)
    PAdic z = PAdic::zero_mod(p, 4);
    CHECK((z * b).abs_prec() == 6);  // O(3^4) * 3^2 unit
    CHECK((z + b).valuation() == 2);
    CHECK((b - b).is_zero_at_prec());
    CHECK_THROWS_AS(z.inv(), DomainError);
}

TEST_CASE("division and shift") {
    long p = 5;
    Rng rng(1);
    for (int i = 0; i < 25; ++i) {
        PAdic a = rng.padic_scalar(p, 20, -2, 3);
        PAdic b = rng.padic_unit(p, 20).shift(rng.uniform(-1, 2));
        CHECK(((a / b) * b).matches(a));
    }
    PAdic x = PAdic::from_integer(p, 7, 12);
    CHECK(x.shift(-3).valuation() == -3);
    CHECK(x.shift(-3).abs_prec() == 9);
}

TEST_CASE("precision soundness: rational identities under chained ops") {
    // random exact rationals computed two ways agree modulo reported precision
    long p = 3;
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        long a = rng.uniform(-40, 40), b = rng.uniform(1, 30);
        long c = rng.uniform(-40, 40), d = rng.uniform(1, 30);
        if (a == 0 || c == 0) continue;
        PAdic x = PAdic::from_ratio(p, a, b, 18);
        PAdic y = PAdic::from_ratio(p, c, d, 18);
        PAdic direct = PAdic::from_ratio(p, a * d + c * b, b * d, 18);
        PAdic chained = x + y;
        CHECK(residual_valuation(chained - direct) >=
              std::min(chained.abs_prec(), direct.abs_prec()));
        PAdic prod_direct = PAdic::from_ratio(p, a * c, b * d, 18);
        CHECK(residual_valuation(x * y - prod_direct) >=
              std::min((x * y).abs_prec(), prod_direct.abs_prec()));
    }
}

TEST_CASE("plog basics") {
    long p = 5;
    PAdic one = PAdic::from_integer(p, 1, 20);
    CHECK(residual_valuation(plog(one)) >= 20);

    // direct series oracle for log(1+5), summed exactly in Q
    mpq_class acc = 0;
    mpz_class pw = 1;
    for (long n = 1; n <= 40; ++n) {
        pw *= 5;
        mpq_class term(pw, n);
        acc += (n % 2) ? term : -term;
    }
    acc.canonicalize();
    PAdic expect =
        PAdic::from_ratio(5, acc.get_num(), acc.get_den(), 20);
    PAdic got = plog(PAdic::from_integer(p, 6, 20));
    CHECK(got.matches(expect));
}

TEST_CASE("plog is a homomorphism, pexp inverts it") {
    long p = 5;
    Rng rng(11);
    PAdic g = PAdic::from_integer(p, 6, 20);  // 1+5
    CHECK(plog(g * g).matches(plog(g) + plog(g)));
    for (int i = 0; i < 20; ++i) {
        PAdic a = PAdic::from_integer(p, 1, 20) +
                  rng.padic_integer(p, 20).shift(1);
        PAdic b = PAdic::from_integer(p, 1, 20) +
                  rng.padic_integer(p, 20).shift(1);
        CHECK(plog(a * b).matches(plog(a) + plog(b)));
        CHECK(pexp(plog(a)).matches(a));
        PAdic x = rng.padic_integer(p, 20).shift(1);
        CHECK(plog(pexp(x)).matches(x));
    }
    CHECK_THROWS_AS(plog(PAdic::from_integer(p, 5, 20)), DomainError);
    CHECK_THROWS_AS(pexp(PAdic::from_integer(p, 1, 20)), DomainError);
}

TEST_CASE("teichmuller and one-unit part") {
    long p = 5;
    PAdic w = teichmuller(PAdic::from_integer(p, 2, 20));
    CHECK(residual_valuation(w.pow(4) - PAdic::from_integer(p, 1, 20)) >= 20);
    CHECK(w.lift_mod(1) == 2);
    PAdic u = one_unit_part(PAdic::from_integer(p, 2, 20));
    CHECK(residual_valuation(u - PAdic::from_integer(p, 1, 20)) >= 1);
    // Iwasawa log kills torsion: plog(teichmuller) = 0
    CHECK(residual_valuation(plog(w)) >= 19);
}
