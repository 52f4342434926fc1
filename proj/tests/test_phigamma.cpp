#include "robba/phigamma.hpp"
#include "robba/rand.hpp"

#include <doctest.h>

using namespace robba;

namespace {
const long P = 3;
const long PREC = 20;
const long M = 32;

ModElem random_elem(Rng& rng, long rank, long len = 8, long trunc = M) {
    ModElem z;
    for (long i = 0; i < rank; ++i)
        z.c.push_back(rng.power_series(P, PREC, len, trunc));
    return z;
}

PhiGammaModule weight_0k(long k, std::optional<QSeries> eta = std::nullopt) {
    return PhiGammaModule(Character::trivial(P), Character::power_of_x(P, k),
                          std::move(eta));
}

PhiGammaModule generic_pair(const PAdic& s) {
    // weights (1, s) with a nontrivial delta(p) on the second factor
    Character d1 = Character::cyclotomic(P);
    Character d2(P, PAdic::from_ratio(P, 2, 1, REL_CAP), 0, s);
    return PhiGammaModule(d1, d2);
}

bool zero(const ModElem& z) { return z.is_zero_at_prec(); }
}  // namespace

TEST_CASE("characters: multiplicativity and weight") {
    Rng rng(113);
    Character chi = Character::cyclotomic(P);
    CHECK(chi.weight().matches(PAdic::from_integer(P, 1)));
    Character del(P, PAdic::from_ratio(P, 5, 2, REL_CAP), 2,
                  PAdic::from_integer(P, 6, PREC));
    for (int i = 0; i < 10; ++i) {
        PAdic a = rng.padic_unit(P, PREC);
        PAdic b = rng.padic_unit(P, PREC);
        CHECK(del.eval(a * b).matches(del.eval(a) * del.eval(b)));
        CHECK(del.eval(a.shift(2) * b).matches(del.eval(a.shift(2)) * del.eval(b)));
        // weight is the derivative at 1: log delta(a) = weight * log a
        CHECK(plog(del.eval_unit(a)).matches(del.weight() * plog(a)));
    }
    // chi(p) = 1 (x |x|_p at x = p)
    CHECK(chi.at_p().matches(PAdic::from_integer(P, 1)));
}

TEST_CASE("module actions: phi/sigma semilinearity and psi") {
    Rng rng(127);
    QSeries eta = rng.power_series(P, PREC, 5, M);
    PhiGammaModule Ms[] = {weight_0k(2), weight_0k(2, eta),
                           generic_pair(PAdic::from_ratio(P, 1, 2, PREC))};
    for (const auto& Mm : Ms) {
        Mm.validate();
        for (int i = 0; i < 4; ++i) {
            ModElem z = random_elem(rng, Mm.rank());
            QSeries f = rng.power_series(P, PREC, 6, M);
            PAdic a = rng.padic_unit(P, PREC);
            // semilinearity: phi(f z) = phi(f) phi(z)
            CHECK(zero(mod_phi(Mm, mod_mul(Mm, z, f)) -
                       mod_mul(Mm, mod_phi(Mm, z), apply_phi(f))));
            CHECK(zero(mod_sigma(Mm, mod_mul(Mm, z, f), a) -
                       mod_mul(Mm, mod_sigma(Mm, z, a), apply_sigma(f, a))));
            // phi and sigma commute on elements
            CHECK(zero(mod_phi(Mm, mod_sigma(Mm, z, a)) -
                       mod_sigma(Mm, mod_phi(Mm, z), a)));
            // psi phi = id
            CHECK(zero(mod_psi(Mm, mod_phi(Mm, z)) - z));
            // nabla: Leibniz against series factors
            CHECK(zero(mod_nabla(Mm, mod_mul(Mm, z, f)) -
                       mod_mul(Mm, mod_nabla(Mm, z), f) -
                       mod_mul(Mm, z, nabla(f))));
            // nabla commutes with phi and sigma
            CHECK(zero(mod_nabla(Mm, mod_phi(Mm, z)) -
                       mod_phi(Mm, mod_nabla(Mm, z))));
            CHECK(zero(mod_nabla(Mm, mod_sigma(Mm, z, a)) -
                       mod_sigma(Mm, mod_nabla(Mm, z), a)));
        }
    }
}

TEST_CASE("nabla: weights on basis vectors and pinned example") {
    PhiGammaModule Mk = weight_0k(3);
    ModElem e1 = Mk.basis(0, M);
    // nabla(e1) = w1 e1 = 0
    CHECK(zero(mod_nabla(Mk, e1)));
    ModElem e2 = Mk.basis(1, M);
    CHECK(zero(mod_nabla(Mk, e2) - e2.scaled(PAdic::from_integer(P, 3))));
    // nabla(T e1) = ((1+T) t + w1 T) e1 with w1 = 0
    ModElem Te1 = mod_mul(
        Mk, e1, QSeries::monomial(P, Var::T, PAdic::from_integer(P, 1), 1, M));
    QSeries expect = (one_plus_T_int_pow(P, 1) * t_series(P, M)).truncated(M);
    CHECK(zero(mod_nabla(Mk, Te1) - mod_mul(Mk, e1, expect)));
}

TEST_CASE("gl2: pinned formulas on basis vectors") {
    long k = 4;
    PhiGammaModule Mk = weight_0k(k);
    ModElem e1 = Mk.basis(0, M);
    // u+(e1) = t e1
    CHECK(zero(gl2_apply(Mk, Gl2::Uplus, e1) -
               mod_mul(Mk, e1, t_series(P, M + 1))));
    // h(e1) = (1-k) e1 (weights (0,k))
    CHECK(zero(gl2_apply(Mk, Gl2::H, e1) -
               e1.scaled(PAdic::from_integer(P, 1 - k))));
    // u-(e1) = 0: P(nabla) kills e1 since nabla e1 = 0
    CHECK(zero(gl2_apply(Mk, Gl2::Uminus, e1)));
    // I2 = (a+b-1)
    CHECK(zero(gl2_apply(Mk, Gl2::I2, e1) -
               e1.scaled(PAdic::from_integer(P, k - 1))));
}

TEST_CASE("sl2 bracket relations as operators") {
    Rng rng(131);
    QSeries eta = rng.power_series(P, PREC, 4, M);
    std::vector<PhiGammaModule> mods;
    mods.push_back(weight_0k(1));
    mods.push_back(weight_0k(2, eta));
    mods.push_back(generic_pair(PAdic::from_ratio(P, 1, 2, PREC)));
    for (const auto& Mm : mods) {
        for (int i = 0; i < 3; ++i) {
            ModElem z = random_elem(rng, Mm.rank());
            auto H = [&](const ModElem& w) { return gl2_apply(Mm, Gl2::H, w); };
            auto Up = [&](const ModElem& w) {
                return gl2_apply(Mm, Gl2::Uplus, w);
            };
            auto Um = [&](const ModElem& w) {
                return gl2_apply(Mm, Gl2::Uminus, w);
            };
            PAdic two = PAdic::from_integer(P, 2);
            // [h, u+] = 2 u+
            CHECK(zero(H(Up(z)) - Up(H(z)) - Up(z).scaled(two)));
            // [h, u-] = -2 u-
            CHECK(zero(H(Um(z)) - Um(H(z)) + Um(z).scaled(two)));
            // [u+, u-] = h
            CHECK(zero(Up(Um(z)) - Um(Up(z)) - H(z)));
        }
    }
}

TEST_CASE("casimir: scalar, operator identity, centrality") {
    Rng rng(137);
    // scalar ((a-b)^2-1)/2 for the weight grid incl. non-integer weights
    std::vector<std::pair<PhiGammaModule, PAdic>> cases;
    for (long k : {1L, 2L, 5L}) {
        cases.emplace_back(weight_0k(k),
                           PAdic::from_ratio(P, k * k - 1, 2, REL_CAP));
    }
    {
        PAdic s = PAdic::from_ratio(P, 1, 2, PREC);  // weights (1, s)
        PhiGammaModule Mm = generic_pair(s);
        PAdic d = PAdic::from_integer(P, 1) - s;
        cases.emplace_back(Mm, (d * d - PAdic::from_integer(P, 1)) /
                                   PAdic::from_integer(P, 2));
    }
    for (const auto& [Mm, expect] : cases) {
        CHECK(casimir_scalar(Mm).matches(expect));
        for (int i = 0; i < 3; ++i) {
            ModElem z = random_elem(rng, Mm.rank());
            ModElem Cz = casimir_apply(Mm, z);
            CHECK(zero(Cz - z.scaled(expect)));
            // Lemme Casimir: C = 2t u- + 2 P(nabla) + scalar
            ModElem route2 = mod_mul_t(Mm, gl2_apply(Mm, Gl2::Uminus, z))
                                 .scaled(PAdic::from_integer(P, 2)) +
                             sen_poly_nabla(Mm, z).scaled(
                                 PAdic::from_integer(P, 2)) +
                             z.scaled(expect);
            CHECK(zero(Cz - route2));
            // centrality
            for (Gl2 X : {Gl2::H, Gl2::Uplus, Gl2::Uminus}) {
                CHECK(zero(casimir_apply(Mm, gl2_apply(Mm, X, z)) -
                           gl2_apply(Mm, X, Cz)));
            }
        }
    }
    // equal weights (a, a): C = -1/2
    PhiGammaModule Maa(Character::cyclotomic(P), Character::cyclotomic(P));
    CHECK(casimir_scalar(Maa).matches(PAdic::from_ratio(P, -1, 2, REL_CAP)));
    ModElem z = random_elem(rng, 2);
    CHECK(zero(casimir_apply(Maa, z) -
               z.scaled(PAdic::from_ratio(P, -1, 2, REL_CAP))));
}

TEST_CASE("gamma equivariance of the gl2 action") {
    Rng rng(139);
    PhiGammaModule Mm = weight_0k(2);
    for (int i = 0; i < 4; ++i) {
        ModElem z = random_elem(rng, 2);
        PAdic a = rng.padic_unit(P, PREC);
        // sigma_a(t z) = a t sigma_a(z)
        CHECK(zero(mod_sigma(Mm, mod_mul_t(Mm, z), a) -
                   mod_mul_t(Mm, mod_sigma(Mm, z, a)).scaled(a)));
        // h and C commute with sigma_a
        CHECK(zero(gl2_apply(Mm, Gl2::H, mod_sigma(Mm, z, a)) -
                   mod_sigma(Mm, gl2_apply(Mm, Gl2::H, z), a)));
        CHECK(zero(casimir_apply(Mm, mod_sigma(Mm, z, a)) -
                   mod_sigma(Mm, casimir_apply(Mm, z), a)));
        // u- twists by a^{-1}: sigma_a(u- z) = a^{-1} u-(sigma_a z),
        // from sigma_a(t) = a t
        CHECK(zero(mod_sigma(Mm, gl2_apply(Mm, Gl2::Uminus, z), a).scaled(a) -
                   gl2_apply(Mm, Gl2::Uminus, mod_sigma(Mm, z, a))));
    }
}

TEST_CASE("Lemme long: closed form of iterated u-") {
    Rng rng(149);
    for (long k : {1L, 3L, 5L}) {
        PhiGammaModule Mk = weight_0k(k);
        for (long j = 1; j <= std::min<long>(k, 3); ++j) {
            ModElem z = random_elem(rng, 2, 6);
            ModElem iter = z;
            for (long m = 0; m < j; ++m)
                iter = gl2_apply(Mk, Gl2::Uminus, iter);
            ModElem closed = uminus_iter_closed(Mk, j, z);
            CHECK(zero(iter - closed));
        }
        // weight-0 pure vectors die: (u-)^j (e1) = 0
        ModElem e1 = Mk.basis(0, M);
        for (long j = 1; j <= 2; ++j)
            CHECK(zero(uminus_iter_closed(Mk, j, e1)));
    }
}

TEST_CASE("Prop HC: t-divisibility of P_Sen(nabla)") {
    Rng rng(151);
    QSeries eta = rng.power_series(P, PREC, 4, M);
    std::vector<PhiGammaModule> mods;
    mods.push_back(weight_0k(2));
    mods.push_back(weight_0k(1, eta));
    mods.push_back(generic_pair(PAdic::from_integer(P, 6, PREC)));
    for (const auto& Mm : mods) {
        for (int i = 0; i < 5; ++i) {
            ModElem z = random_elem(rng, Mm.rank());
            HcSample s = check_prop_hc(Mm, z);
            CHECK(s.divisible);
            CHECK(s.residual_valuation >= s.floor);
        }
        // z = t z' has quotient P(nabla+1) z': -u^-(t z') = P(nabla+1)(z')
        ModElem zp = random_elem(rng, Mm.rank(), 5);
        ModElem tz = mod_mul_t(Mm, zp);
        ModElem q = -gl2_apply(Mm, Gl2::Uminus, tz);
        auto [a, b] = Mm.sen_roots();
        PAdic one = PAdic::from_integer(P, 1);
        ModElem w = mod_nabla(Mm, zp) + zp.scaled(one - b);
        ModElem expect = mod_nabla(Mm, w) + w.scaled(one - a);
        CHECK(zero(q - expect));
    }
}
