#include "robba/wd_experiment.hpp"

namespace robba {

namespace {

long pow_long(long p, long n) {
    long r = 1;
    while (n-- > 0) r *= p;
    return r;
}

}  // namespace

ModElem wd_module_riemann(const PhiGammaModule& M, const ModElem& z, long n) {
    long p = M.prime();
    Character dD = M.delta_D();
    long pn = pow_long(p, n);
    long R = z.c[0].trunc();
    ModElem S;
    for (long r = 0; r < M.rank(); ++r)
        S.c.push_back(QSeries::zero(p, Var::T, R));
    for (long i = 1; i < pn; ++i) {
        if (i % p == 0) continue;
        QSeries down = one_plus_T_pow(p, PAdic::from_integer(p, -i), R);
        ModElem term = mod_mul(M, z, down);
        for (long s = 0; s < n; ++s) term = mod_psi(M, term);
        for (long s = 0; s < n; ++s) term = mod_phi(M, term);
        term = mod_sigma(M, term, PAdic::from_ratio(p, -1, i * i));
        QSeries up = one_plus_T_pow(p, PAdic::from_ratio(p, 1, i), R);
        term = mod_mul(M, term, up);
        S = S + term.scaled(dD.eval_unit(PAdic::from_integer(p, i)));
    }
    return S;
}

StrangeReport strange_experiment(const PhiGammaModule& M, const ModElem& w,
                                 long n_max) {
    long p = M.prime();
    // project to D^{psi = 0}
    ModElem z = w - mod_phi(M, mod_psi(M, w));
    StrangeReport rep{};
    rep.floor = PREC_INF;
    // multiply by the t-window as an exact polynomial: t itself has
    // p-adically unbounded coefficients, and the Riemann operator's psi
    // needs a tail-valuation witness; the dropped O(T^M) part of t is
    // accounted for by the reported floors
    long R = z.c[0].trunc();
    QSeries tpoly;
    {
        QSeries ts = t_series(p, R);
        std::vector<PAdic> c;
        for (long k = ts.lo(); k < ts.hi(); ++k) c.push_back(ts.coeff(k));
        tpoly = QSeries::from_coeffs(p, Var::T, ts.lo(), std::move(c));
    }
    ModElem tz = mod_mul(M, z, tpoly);
    for (long n = 1; n <= n_max; ++n) {
        ModElem lhs = wd_module_riemann(M, tz, n);
        ModElem wz = wd_module_riemann(M, z, n);
        // w_D(t z) should match -P_Sen(nabla)(w_D z)/t = +u^-(w_D z) sign:
        // u^- = -P(nabla)/t, so the claim reads lhs = u^-(w_D z) negated
        ModElem rhs = gl2_apply(M, Gl2::Uminus, wz);
        ModElem diff = lhs - rhs;
        rep.distances.emplace_back(n, residual_valuation(diff));
        rep.floor = std::min(rep.floor, min_abs_prec(diff));
    }
    return rep;
}

}  // namespace robba
