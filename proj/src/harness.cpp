#include "robba/harness.hpp"

#include "robba/dif.hpp"
#include "robba/measure.hpp"
#include "robba/pairing.hpp"
#include "robba/rand.hpp"
#include "robba/restriction.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace robba {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// deterministic per-case generator: thread schedule cannot change streams
Rng case_rng(const RunManifest& m, long suite_salt, long i) {
    return Rng(m.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<unsigned long>(
                             suite_salt * 1000003L + i + 1)));
}

std::vector<CaseResult> parallel_cases(
    const RunManifest& m, long n,
    const std::function<CaseResult(long)>& body) {
    std::vector<CaseResult> out(static_cast<size_t>(n));
    long T = m.threads > 0
                 ? m.threads
                 : static_cast<long>(std::thread::hardware_concurrency());
    if (T < 1) T = 1;
    if (T == 1 || n < 4) {
        for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = body(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (long t = 0; t < T; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                long i = next.fetch_add(1);
                if (i >= n) break;
                out[static_cast<size_t>(i)] = body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

CaseResult make_case(long i, const std::string& digest_src, long residual,
                     long floor, bool pass, std::string note,
                     Clock::time_point t0) {
    CaseResult c;
    c.index = i;
    c.digest = digest_of(digest_src);
    c.residual_valuation = residual;
    c.floor = floor;
    c.pass = pass;
    c.note = std::move(note);
    c.ms = ms_since(t0);
    return c;
}

ModElem random_mod_elem(Rng& rng, const PhiGammaModule& M, long len,
                        long trunc, long prec) {
    ModElem z;
    for (long i = 0; i < M.rank(); ++i)
        z.c.push_back(rng.power_series(M.prime(), prec, len, trunc));
    return z;
}

std::string elem_digest(const ModElem& z) {
    std::string s;
    for (const auto& f : z.c) s += f.str();
    return s;
}

/// the acceptance weight grid: (0,1), (0,2), (0,5), (1,3), (0,s)
std::vector<PhiGammaModule> weight_grid(const RunManifest& m) {
    long p = m.p;
    std::vector<PhiGammaModule> mods;
    for (long k : {1L, 2L, 5L})
        mods.emplace_back(Character::trivial(p), Character::power_of_x(p, k));
    mods.emplace_back(Character::cyclotomic(p), Character::power_of_x(p, 3));
    // non-integer p-adic weight s = 1/2
    mods.emplace_back(
        Character::trivial(p),
        Character(p, PAdic::from_ratio(p, 2, 1, REL_CAP), 0,
                  PAdic::from_ratio(p, 1, 2, m.prec)));
    return mods;
}

// --- suites ---------------------------------------------------------------

std::vector<CaseResult> suite_sl2_brackets(const RunManifest& m) {
    auto mods = weight_grid(m);
    long per = (m.samples > 0 ? m.samples : 100) / static_cast<long>(mods.size());
    if (per < 1) per = 1;
    long n = per * static_cast<long>(mods.size());
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        const PhiGammaModule& M = mods[static_cast<size_t>(i) % mods.size()];
        Rng rng = case_rng(m, 1, i);
        ModElem z = random_mod_elem(rng, M, 8, m.trunc_T, m.prec);
        auto H = [&](const ModElem& w) { return gl2_apply(M, Gl2::H, w); };
        auto Up = [&](const ModElem& w) { return gl2_apply(M, Gl2::Uplus, w); };
        auto Um = [&](const ModElem& w) { return gl2_apply(M, Gl2::Uminus, w); };
        PAdic two = PAdic::from_integer(m.p, 2);
        ModElem d1 = H(Up(z)) - Up(H(z)) - Up(z).scaled(two);
        ModElem d2 = H(Um(z)) - Um(H(z)) + Um(z).scaled(two);
        ModElem d3 = Up(Um(z)) - Um(Up(z)) - H(z);
        long res = std::min({residual_valuation(d1), residual_valuation(d2),
                             residual_valuation(d3)});
        long floor =
            std::min({min_abs_prec(d1), min_abs_prec(d2), min_abs_prec(d3)});
        bool pass = d1.is_zero_at_prec() && d2.is_zero_at_prec() &&
                    d3.is_zero_at_prec();
        return make_case(i, elem_digest(z), res, floor, pass,
                         M.manifest_json(), t0);
    });
}

std::vector<CaseResult> suite_casimir_scalar(const RunManifest& m) {
    auto mods = weight_grid(m);
    // include the degenerate equal-weight pair (a, a)
    mods.emplace_back(Character::cyclotomic(m.p), Character::cyclotomic(m.p));
    long per = (m.samples > 0 ? m.samples : 36) / static_cast<long>(mods.size());
    if (per < 1) per = 1;
    long n = per * static_cast<long>(mods.size());
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        const PhiGammaModule& M = mods[static_cast<size_t>(i) % mods.size()];
        Rng rng = case_rng(m, 2, i);
        ModElem z = random_mod_elem(rng, M, 7, m.trunc_T, m.prec);
        PAdic expect = casimir_scalar(M);
        ModElem diff = casimir_apply(M, z) - z.scaled(expect);
        bool pass = diff.is_zero_at_prec();
        return make_case(i, elem_digest(z), residual_valuation(diff),
                         min_abs_prec(diff), pass,
                         "scalar=" + expect.str(), t0);
    });
}

std::vector<CaseResult> suite_casimir_operator(const RunManifest& m) {
    auto mods = weight_grid(m);
    long per = (m.samples > 0 ? m.samples : 100) / static_cast<long>(mods.size());
    if (per < 1) per = 1;
    long n = per * static_cast<long>(mods.size());
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        const PhiGammaModule& M = mods[static_cast<size_t>(i) % mods.size()];
        Rng rng = case_rng(m, 3, i);
        ModElem z = random_mod_elem(rng, M, 7, m.trunc_T, m.prec);
        PAdic two = PAdic::from_integer(m.p, 2);
        ModElem lhs = casimir_apply(M, z);
        ModElem rhs = mod_mul_t(M, gl2_apply(M, Gl2::Uminus, z)).scaled(two) +
                      sen_poly_nabla(M, z).scaled(two) +
                      z.scaled(casimir_scalar(M));
        ModElem diff = lhs - rhs;
        return make_case(i, elem_digest(z), residual_valuation(diff),
                         min_abs_prec(diff), diff.is_zero_at_prec(), "", t0);
    });
}

std::vector<CaseResult> suite_prop_hc(const RunManifest& m) {
    std::vector<PhiGammaModule> mods;
    {
        Rng r0 = case_rng(m, 40, 0);
        mods.emplace_back(Character::trivial(m.p), Character::power_of_x(m.p, 2));
        mods.emplace_back(Character::cyclotomic(m.p),
                          Character::power_of_x(m.p, 3),
                          r0.power_series(m.p, m.prec, 4, m.trunc_T));
        mods.emplace_back(
            Character::trivial(m.p),
            Character(m.p, PAdic::from_ratio(m.p, 2, 1, REL_CAP), 0,
                      PAdic::from_ratio(m.p, 1, 2, m.prec)));
    }
    long per = (m.samples > 0 ? m.samples : 100);
    long n = per * static_cast<long>(mods.size());
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        const PhiGammaModule& M = mods[static_cast<size_t>(i) % mods.size()];
        Rng rng = case_rng(m, 4, i);
        ModElem z = random_mod_elem(rng, M, 8, m.trunc_T, m.prec);
        HcSample s = check_prop_hc(M, z);
        return make_case(i, elem_digest(z), s.residual_valuation, s.floor,
                         s.divisible && s.residual_valuation >= s.floor, "",
                         t0);
    });
}

std::vector<CaseResult> suite_lemme_long(const RunManifest& m) {
    // (k, j) combinations with j <= k <= 5, plus the annihilation clause
    std::vector<std::pair<long, long>> combos;
    for (long k = 1; k <= 5; ++k)
        for (long j = 1; j <= k; ++j) combos.emplace_back(k, j);
    long per = m.samples > 0 ? std::max<long>(1, m.samples / 15) : 4;
    long n = per * static_cast<long>(combos.size());
    long extra = 10;  // annihilation checks
    return parallel_cases(m, n + extra, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 5, i);
        if (i >= n) {
            // (u^-)^k on A(t) e1 lands in t^k D_dif^+: nabla_{2k}(A) is
            // divisible by t^{2k} for localized images A
            long k = 1 + (i - n) % 3;
            QSeries f = rng.power_series(m.p, m.prec, 10, PREC_INF);
            LnSeries A = localize(f, 1, m.trunc_t);
            LnSeries w = nabla_2k_series(A, k);
            bool ok = divisible_by_t_pow(w, 2 * k);
            long res = PREC_INF;
            for (long d = w.lo(); d < std::min<long>(2 * k, w.trunc()); ++d)
                res = std::min(res, residual_valuation(w.coeff(d)));
            long floor = w.min_abs_prec();
            return make_case(i, f.str(), res, floor, ok,
                             "annihilation k=" + std::to_string(k), t0);
        }
        auto [k, j] = combos[static_cast<size_t>(i) % combos.size()];
        PhiGammaModule M(Character::trivial(m.p),
                         Character::power_of_x(m.p, k));
        ModElem z = random_mod_elem(rng, M, 6, m.trunc_T, m.prec);
        ModElem iter = z;
        for (long s = 0; s < j; ++s) iter = gl2_apply(M, Gl2::Uminus, iter);
        ModElem closed = uminus_iter_closed(M, j, z);
        ModElem diff = iter - closed;
        return make_case(i, elem_digest(z), residual_valuation(diff),
                         min_abs_prec(diff), diff.is_zero_at_prec(),
                         "k=" + std::to_string(k) + " j=" + std::to_string(j),
                         t0);
    });
}

std::vector<CaseResult> suite_psi_res_algebra(const RunManifest& m) {
    long n_psi = m.samples > 0 ? m.samples : 100;
    long n_oracle = m.samples > 0 ? std::max<long>(1, m.samples / 2) : 50;
    long n_res = 30;
    long n = n_psi + n_oracle + n_res;
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 6, i);
        long p = m.p;
        if (i < n_psi) {
            // psi phi = id and the decomposition projections
            QSeries f = rng.power_series(p, m.prec, 9, m.trunc_T);
            QSeries d1 = psi(apply_phi(f)) - f.truncated(psi(apply_phi(f)).trunc());
            long iu = 1 + rng.uniform(0, p - 2);
            QSeries d2 = psi(one_plus_T_int_pow(p, iu) * apply_phi(f));
            bool pass = d1.is_zero_at_prec() && d2.is_zero_at_prec();
            long res = std::min(residual_valuation(d1), residual_valuation(d2));
            long floor = std::min(d1.min_abs_prec(), d2.min_abs_prec());
            return make_case(i, f.str(), res, floor, pass, "psi-phi-id", t0);
        }
        if (i < n_psi + n_oracle) {
            // solver vs the measure-side oracle
            std::vector<PAdic> c;
            for (long t = 0; t < m.trunc_T; ++t)
                c.push_back(rng.padic_integer(p, m.prec));
            Measure mu(p, std::move(c), 0);
            QSeries lhs = amice(psi_measure(mu));
            QSeries rhs = psi(amice(mu)).truncated(lhs.trunc());
            QSeries d = lhs - rhs;
            return make_case(i, mu.str(), residual_valuation(d),
                             d.min_abs_prec(), d.is_zero_at_prec(),
                             "measure-oracle", t0);
        }
        // partition of unity + idempotence / commutation
        QSeries f = rng.power_series(p, m.prec, 9, m.trunc_T);
        QSeries acc = QSeries::zero(p, Var::T, m.trunc_T);
        for (long a = 0; a < p; ++a) acc += restrict_class(f, a, 1);
        QSeries d1 = acc - f.truncated(acc.trunc());
        CompactOpen U = CompactOpen::cls(p, rng.uniform(0, p - 1), 1);
        CompactOpen V = CompactOpen::cls(p, rng.uniform(0, p * p - 1), 2);
        QSeries rU = restrict(f, U);
        QSeries d2 = restrict(rU, U) - rU.truncated(restrict(rU, U).trunc());
        QSeries lhs = restrict(restrict(f, U), V);
        QSeries d3 = lhs - restrict(restrict(f, V), U);
        QSeries d4 = lhs - restrict(f, U.intersect(V)).truncated(lhs.trunc());
        bool pass = d1.is_zero_at_prec() && d2.is_zero_at_prec() &&
                    d3.is_zero_at_prec() && d4.is_zero_at_prec();
        long res = std::min({residual_valuation(d1), residual_valuation(d2),
                             residual_valuation(d3), residual_valuation(d4)});
        long floor = std::min({d1.min_abs_prec(), d2.min_abs_prec(),
                               d3.min_abs_prec(), d4.min_abs_prec()});
        return make_case(i, f.str(), res, floor, pass, "res-algebra", t0);
    });
}

Character default_delta_D(const RunManifest& m) {
    // delta_D of a module with det V = x^2 * unit: nontrivial on p
    return Character(m.p, PAdic::from_ratio(m.p, 2, 1, REL_CAP), 1,
                     PAdic::exact_zero(m.p)) *
           Character::cyclotomic(m.p).inv();
}

std::vector<CaseResult> suite_wd_involution(const RunManifest& m) {
    long n = m.samples > 0 ? m.samples : 20;
    Character dD = default_delta_D(m);
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 7, i);
        std::vector<std::pair<PAdic, PAdic>> pts;
        for (int j = 0; j < 3; ++j)
            pts.emplace_back(rng.padic_integer(m.p, m.prec),
                             rng.padic_unit(m.p, m.prec));
        Measure mu = Measure::diracs(m.p, pts, m.trunc_T);
        Measure back = wD_integral(wD_integral(mu, dD), dD);
        bool pass = back.matches(mu);
        QSeries d = amice(back) - amice(mu);
        return make_case(i, mu.str(), residual_valuation(d), d.min_abs_prec(),
                         pass, "wD^2 = id", t0);
    });
}

std::vector<CaseResult> suite_wd_equivariance(const RunManifest& m) {
    long n = m.samples > 0 ? m.samples : 20;
    Character dD = default_delta_D(m);
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 8, i);
        std::vector<std::pair<PAdic, PAdic>> pts;
        for (int j = 0; j < 3; ++j)
            pts.emplace_back(rng.padic_integer(m.p, m.prec),
                             rng.padic_unit(m.p, m.prec));
        Measure mu = Measure::diracs(m.p, pts, m.trunc_T);
        PAdic a = rng.padic_unit(m.p, m.prec);
        Measure lhs = wD_integral(
            pushforward_affine(mu, a, PAdic::from_integer(m.p, 0)), dD);
        Measure rhs = pushforward_affine(wD_integral(mu, dD), a.inv(),
                                         PAdic::from_integer(m.p, 0))
                          .scaled(dD.eval_unit(a));
        QSeries d = amice(lhs) - amice(rhs);
        return make_case(i, mu.str(), residual_valuation(d), d.min_abs_prec(),
                         lhs.matches(rhs), "wD sigma_a twist", t0);
    });
}

std::vector<CaseResult> suite_wd_riemann(const RunManifest& m) {
    long n = m.samples > 0 ? m.samples : 20;
    Character dD = default_delta_D(m);
    long pn4 = 1;
    for (int t = 0; t < 4; ++t) pn4 *= m.p;
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 9, i);
        std::vector<std::pair<PAdic, PAdic>> pts;
        QSeries z = QSeries::zero(m.p, Var::T);
        for (int j = 0; j < 2; ++j) {
            long bpt = rng.uniform(1, pn4 - 1);
            while (bpt % m.p == 0) bpt = rng.uniform(1, pn4 - 1);
            PAdic mass = PAdic::from_integer(m.p, rng.uniform(1, 40));
            pts.emplace_back(mass, PAdic::from_integer(m.p, bpt));
            z += one_plus_T_int_pow(m.p, bpt).scaled(mass);
        }
        Measure mu = Measure::diracs(m.p, pts, m.trunc_T);
        std::vector<QSeries> sums = wD_riemann(z, dD, 4, nullptr, m.trunc_T);
        QSeries oracle = amice(wD_integral(mu, dD));
        // agreement valuations: never decreasing, strictly larger at the end
        long first = 0, last = 0, prev = -PREC_INF;
        bool monotone = true;
        long strict_steps = 0, steps = 0;
        for (size_t s = 0; s < sums.size(); ++s) {
            long agree = residual_valuation(sums[s].truncated(m.trunc_T) -
                                            oracle.truncated(m.trunc_T));
            if (s == 0)
                first = agree;
            else {
                ++steps;
                if (agree < prev) monotone = false;
                if (agree > prev) ++strict_steps;
            }
            last = agree;
            prev = agree;
        }
        bool pass = monotone && last > first;
        std::ostringstream note;
        note << "first=" << first << " last=" << last << " strict_steps="
             << strict_steps << "/" << steps;
        return make_case(i, mu.str(), last, first, pass, note.str(), t0);
    });
}

std::vector<CaseResult> suite_lemme_diff(const RunManifest& m) {
    long n_each = m.samples > 0 ? m.samples : 100;
    long n_table = 0;
    for (long k = 1; k <= 3; ++k) n_table += 13;
    long n = 2 * n_each + n_table;
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 10, i);
        long p = m.p;
        if (i < 2 * n_each) {
            int eps = i < n_each ? 0 : 1;
            long k = 1 + rng.uniform(0, 1);
            DifLattice L{p, 1, eps, k};
            long extra = rng.uniform(0, 2);
            DifElem z{rng.t_series_Ln(p, 1, m.prec, 0, 5, m.trunc_t),
                      rng.t_series_Ln(p, 1, m.prec, k + extra, 4, m.trunc_t)};
            bool via_test = xn_membership(L, z);
            bool via_closed = xn_closed_form(L, z);
            return make_case(i, z.A.str() + z.B.str(), via_test == via_closed,
                             1, via_test == via_closed,
                             eps ? "nonDeRham" : "deRham", t0);
        }
        // eigenvalue table nabla_{2k}(t^j) = j(j-1)...(j-2k+1) t^j
        long idx = i - 2 * n_each;
        long k = 1 + idx / 13;
        long j = idx % 13;
        LnSeries tj = LnSeries::monomial(
            p, Var::t, Cyclo::from_scalar(PAdic::from_integer(p, 1, m.prec), 1),
            j, m.trunc_t + 1);
        LnSeries got = nabla_2k_series(tj, k);
        mpz_class ev = 1;
        for (long s = 0; s < 2 * k; ++s) ev *= (j - s);
        LnSeries expect =
            tj.scaled(Cyclo::from_scalar(PAdic::from_integer(p, ev)));
        LnSeries d = got - expect;
        return make_case(i, tj.str(), residual_valuation(d), d.min_abs_prec(),
                         d.is_zero_at_prec(),
                         "k=" + std::to_string(k) + " j=" + std::to_string(j),
                         t0);
    });
}

std::vector<CaseResult> suite_lemme_orth(const RunManifest& m) {
    long n_each = m.samples > 0 ? m.samples : 100;
    long n = 2 * n_each + 4;  // + witnesses
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 11, i);
        long p = m.p;
        long k = 1 + (i % 2);
        int eps = static_cast<int>((i / 2) % 2);
        DifLattice L{p, 1, eps, k};
        if (i >= 2 * n_each) {
            // witness: t^{k-1} e2 against e1 is nonzero
            Cyclo one1 = Cyclo::from_scalar(PAdic::from_integer(p, 1, m.prec), 1);
            DifElem w{LnSeries::zero(p, Var::t, m.trunc_t),
                      LnSeries::monomial(p, Var::t, one1, k - 1, m.trunc_t)};
            DifElem e1{LnSeries::monomial(p, Var::t, one1, 0, m.trunc_t),
                       LnSeries::zero(p, Var::t, m.trunc_t)};
            PAdic val = pair_dif(L, w, e1);
            bool pass = !val.is_zero_at_prec();
            return make_case(i, "witness", residual_valuation(val),
                             val.abs_prec(), pass,
                             "nondegeneracy at t^{k-1}, k=" + std::to_string(k),
                             t0);
        }
        PAdic res;
        if (i < n_each) {
            // D+ x D+
            DifElem x{rng.t_series_Ln(p, 1, m.prec, 0, 5, m.trunc_t),
                      rng.t_series_Ln(p, 1, m.prec, k, 4, m.trunc_t)};
            DifElem y{rng.t_series_Ln(p, 1, m.prec, 0, 5, m.trunc_t),
                      rng.t_series_Ln(p, 1, m.prec, k, 4, m.trunc_t)};
            res = pair_dif(L, x, y);
        } else {
            // N x t^k N
            DifElem x{rng.t_series_Ln(p, 1, m.prec, 0, 5, m.trunc_t),
                      rng.t_series_Ln(p, 1, m.prec, 0, 5, m.trunc_t)};
            DifElem y{rng.t_series_Ln(p, 1, m.prec, k, 5, m.trunc_t),
                      rng.t_series_Ln(p, 1, m.prec, k, 4, m.trunc_t)};
            res = pair_dif(L, x, y);
        }
        return make_case(i, "pair", residual_valuation(res), res.abs_prec(),
                         res.is_zero_at_prec(),
                         i < n_each ? "D+ x D+" : "N x t^k N", t0);
    });
}

std::vector<CaseResult> suite_trace_compat(const RunManifest& m) {
    long per = m.samples > 0 ? m.samples : 25;
    long n = 2 * per;
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 12, i);
        long lvl = 1 + i / per;
        QSeries z = rng.power_series(m.p, m.prec, 2 + m.trunc_T / 2, PREC_INF);
        long tl = std::max<long>(4, m.trunc_t - 2 * lvl);
        TraceCompatReport rep = trace_compat(z, lvl, tl);
        return make_case(i, z.str(), rep.residual_valuation, rep.floor,
                         rep.pass(), "n=" + std::to_string(lvl), t0);
    });
}

std::vector<CaseResult> suite_uminus_adjoint(const RunManifest& m) {
    long per = m.samples > 0 ? m.samples : 50;
    long n = 2 * per;
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        Rng rng = case_rng(m, 13, i);
        long k = 1 + i / per;
        PhiGammaModule M(Character::trivial(m.p),
                         Character::power_of_x(m.p, k));
        ModElem x, y;
        for (long r = 0; r < 2; ++r) {
            x.c.push_back(rng.laurent_series(m.p, m.prec, -1, 7, m.trunc_T));
            y.c.push_back(rng.laurent_series(m.p, m.prec, -1, 7, m.trunc_T));
        }
        PairReport rep = uminus_adjoint_check(M, x, y);
        return make_case(i, elem_digest(x) + elem_digest(y),
                         rep.residual_valuation, rep.floor, rep.pass(),
                         "weights (0," + std::to_string(k) + ")", t0);
    });
}

std::vector<CaseResult> suite_sen_poly(const RunManifest& m) {
    // five modules, levels 1..min(level,3)
    long levels = std::min<long>(3, std::max<long>(1, m.level));
    struct Spec {
        PhiGammaModule M;
        std::vector<PAdic> weights;
    };
    std::vector<Spec> specs;
    long p = m.p;
    auto W = [&](long v) { return PAdic::from_integer(p, v); };
    specs.push_back({PhiGammaModule(Character::trivial(p),
                                    Character::power_of_x(p, 2)),
                     {W(0), W(2)}});
    specs.push_back({PhiGammaModule(Character::cyclotomic(p),
                                    Character::power_of_x(p, 3)),
                     {W(1), W(3)}});
    specs.push_back(
        {PhiGammaModule(Character(p, PAdic::from_ratio(p, 2, 1, REL_CAP), 2,
                                  PAdic::exact_zero(p))),
         {W(2)}});
    specs.push_back({PhiGammaModule(Character::cyclotomic(p) *
                                        Character::cyclotomic(p),
                                    Character::power_of_x(p, 4)),
                     {W(2), W(4)}});
    {
        Rng r0 = case_rng(m, 41, 0);
        specs.push_back({PhiGammaModule(Character::cyclotomic(p),
                                        Character::power_of_x(p, 3),
                                        r0.power_series(p, m.prec, 4, 24)),
                         {W(1), W(3)}});
    }
    long n = static_cast<long>(specs.size()) * levels;
    return parallel_cases(m, n, [&](long i) {
        auto t0 = Clock::now();
        const Spec& sp = specs[static_cast<size_t>(i) / levels];
        long lvl = 1 + i % levels;
        SenResult s = sen_operator(sp.M, lvl, m.prec + 4);
        // compare charpoly with prod (X - w_i)
        std::vector<PAdic> expect;  // coefficients low..high
        if (sp.weights.size() == 1) {
            expect = {-sp.weights[0], PAdic::from_integer(p, 1)};
        } else {
            expect = {sp.weights[0] * sp.weights[1],
                      -(sp.weights[0] + sp.weights[1]),
                      PAdic::from_integer(p, 1)};
        }
        long res = PREC_INF;
        long floor = PREC_INF;
        bool pass = true;
        for (size_t c = 0; c < expect.size(); ++c) {
            Cyclo d = s.charpoly[c] - Cyclo::from_scalar(expect[c], lvl);
            res = std::min(res, residual_valuation(d));
            floor = std::min(floor, std::min(s.charpoly[c].min_abs_prec(),
                                             expect[c].abs_prec()));
            if (!d.is_zero_at_prec()) pass = false;
        }
        return make_case(i, sp.M.manifest_json(), res, floor, pass,
                         "level=" + std::to_string(lvl), t0);
    });
}

using SuiteFn = std::vector<CaseResult> (*)(const RunManifest&);

const std::map<std::string, std::pair<SuiteFn, double>>& registry() {
    static const std::map<std::string, std::pair<SuiteFn, double>> reg = {
        {"sl2-brackets", {suite_sl2_brackets, 1.0}},
        {"casimir-scalar", {suite_casimir_scalar, 1.0}},
        {"casimir-operator", {suite_casimir_operator, 1.0}},
        {"prop-hc", {suite_prop_hc, 1.0}},
        {"lemme-long", {suite_lemme_long, 1.0}},
        {"psi-res-algebra", {suite_psi_res_algebra, 1.0}},
        {"wd-involution", {suite_wd_involution, 1.0}},
        {"wd-equivariance", {suite_wd_equivariance, 1.0}},
        {"wd-riemann", {suite_wd_riemann, 0.9}},
        {"lemme-diff", {suite_lemme_diff, 1.0}},
        {"lemme-orth", {suite_lemme_orth, 1.0}},
        {"trace-compat", {suite_trace_compat, 1.0}},
        {"uminus-adjoint", {suite_uminus_adjoint, 1.0}},
        {"sen-poly", {suite_sen_poly, 1.0}},
    };
    return reg;
}

}  // namespace

std::string RunManifest::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << p << ",\"prec\":" << prec << ",\"trunc_T\":" << trunc_T
       << ",\"trunc_t\":" << trunc_t << ",\"level\":" << level
       << ",\"tail\":" << tail << ",\"samples\":" << samples
       << ",\"seed\":" << seed << "}";
    return os.str();
}

long SuiteReport::passed() const {
    long n = 0;
    for (const auto& c : cases) n += c.pass;
    return n;
}

bool SuiteReport::pass() const {
    if (cases.empty()) return false;
    return static_cast<double>(passed()) >=
           min_pass_fraction * static_cast<double>(cases.size()) - 1e-9;
}

void SuiteReport::write_jsonl(std::ostream& os) const {
    for (const auto& c : cases) {
        os << "{\"suite\":\"" << suite << "\",\"case\":" << c.index
           << ",\"inputs\":\"" << c.digest
           << "\",\"residual_valuation\":" << c.residual_valuation
           << ",\"floor\":" << c.floor << ",\"pass\":"
           << (c.pass ? "true" : "false");
        if (!c.note.empty()) os << ",\"note\":\"" << c.note << "\"";
        os << ",\"ms\":" << c.ms << "}\n";
    }
    os << "{\"suite\":\"" << suite << "\",\"cases\":" << cases.size()
       << ",\"passed\":" << passed() << ",\"pass\":"
       << (pass() ? "true" : "false") << ",\"wall_ms\":" << wall_ms << "}\n";
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

SuiteReport run_suite(const std::string& name, const RunManifest& manifest) {
    auto it = registry().find(name);
    if (it == registry().end()) {
        std::string msg = "unknown suite '" + name + "'; available:";
        for (const auto& s : suite_names()) msg += " " + s;
        throw Error(msg);
    }
    auto t0 = Clock::now();
    SuiteReport rep;
    rep.suite = name;
    rep.min_pass_fraction = it->second.second;
    rep.cases = it->second.first(manifest);
    rep.wall_ms = ms_since(t0);
    return rep;
}

std::string digest_of(const std::string& s) {
    unsigned long h = 1469598103934665603UL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211UL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace robba
