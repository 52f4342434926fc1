#include "robba/harness.hpp"
#include "robba/measure.hpp"
#include "robba/pairing.hpp"
#include "robba/rand.hpp"
#include "robba/textio.hpp"
#include "robba/wd_experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace robba;

namespace {

struct CommonOpts {
    RunManifest man;
    bool json = false;
};

void add_manifest_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.man.p, "prime (3 or 5 at desk scale)");
    cmd->add_option("--prec", o.man.prec, "working p-adic precision");
    cmd->add_option("--trunc-T", o.man.trunc_T, "T-truncation order");
    cmd->add_option("--trunc-t", o.man.trunc_t, "t-truncation order");
    cmd->add_option("--level", o.man.level, "highest cyclotomic level");
    cmd->add_option("--tail", o.man.tail, "principal-part bound B");
    cmd->add_option("--seed", o.man.seed, "random seed");
    cmd->add_option("--samples", o.man.samples, "sample count override");
    cmd->add_option("--threads", o.man.threads, "worker threads (0 = auto)");
    cmd->add_flag("--json", o.json, "machine-readable JSON output");
}

int cmd_eval(const CommonOpts& o, const std::string& expr,
             const std::string& series) {
    EvalConfig cfg{o.man.p, o.man.prec, o.man.trunc_T, o.man.trunc_t,
                   o.man.tail};
    QSeries f = parse_series(cfg.p, series, cfg.prec);
    auto out = eval_pipeline(expr, f, cfg);
    if (std::holds_alternative<PAdic>(out))
        std::cout << std::get<PAdic>(out).str() << "\n";
    else
        std::cout << std::get<QSeries>(out).str() << "\n";
    return 0;
}

int cmd_casimir(const CommonOpts& o, const std::string& wa,
                const std::string& wb) {
    long samples = o.man.samples > 0 ? o.man.samples : 5;
    long p = o.man.p;
    PAdic a = parse_padic(p, wa, o.man.prec);
    PAdic b = parse_padic(p, wb, o.man.prec);
    Character d1(p, PAdic::from_integer(p, 1), 0, a);
    Character d2(p, PAdic::from_ratio(p, 2, 1, REL_CAP), 0, b);
    PhiGammaModule M(d1, d2);
    PAdic predicted = casimir_scalar(M);
    std::cout << "weights (" << a.str() << ", " << b.str() << ")\n";
    std::cout << "predicted Casimir scalar: " << predicted.str() << "\n";
    Rng rng(o.man.seed);
    bool all_pass = true;
    for (long i = 0; i < samples; ++i) {
        ModElem z;
        for (long r = 0; r < 2; ++r)
            z.c.push_back(rng.power_series(p, o.man.prec, 7, o.man.trunc_T));
        ModElem Cz = casimir_apply(M, z);
        // recover the scalar from the first visible coefficient
        PAdic rec = PAdic::zero_mod(p, 0);
        for (long r = 0; r < 2 && rec.is_zero_at_prec(); ++r)
            for (long k = z.c[r].lo(); k < z.c[r].hi(); ++k)
                if (!z.c[r].coeff(k).is_zero_at_prec()) {
                    rec = Cz.c[r].coeff(k) / z.c[r].coeff(k);
                    break;
                }
        ModElem diff = Cz - z.scaled(predicted);
        long res = residual_valuation(diff);
        long floor = min_abs_prec(diff);
        bool pass = diff.is_zero_at_prec();
        all_pass = all_pass && pass;
        std::cout << "sample " << i << ": recovered " << rec.str()
                  << "  residual v=" << res << " floor=" << floor << "  "
                  << (pass ? "ok" : "FAIL") << "\n";
    }
    return all_pass ? 0 : 1;
}

int cmd_wd(const CommonOpts& o, const std::string& measure_text,
           const std::string& deltap, long power, const std::string& sweight,
           long n_max) {
    long p = o.man.p;
    Measure mu = parse_measure(p, measure_text, o.man.prec, o.man.trunc_T);
    Character dD(p, parse_padic(p, deltap, o.man.prec), power,
                 parse_padic(p, sweight, o.man.prec));
    ConvergenceReport irep;
    Measure w = wD_integral(mu, dD, std::min<long>(n_max, 3), &irep);
    QSeries oracle = amice(w);
    std::cout << "w_D integral: " << w.str() << "\n";
    if (!irep.distances.empty())
        std::cout << "integral convergence: " << irep.to_json() << "\n";
    // exact operator route when the measure is an explicit Dirac
    // combination at (small) integer points
    QSeries z = amice(mu);
    if (mu.dirac_data()) {
        QSeries acc = QSeries::zero(p, Var::T);
        bool ok = true;
        for (const auto& [mass, pt] : *mu.dirac_data()) {
            if (pt.is_zero_at_prec() || pt.rel_prec() < REL_CAP ||
                pt.valuation() < 0 || pt.lift() > 1 << 20) {
                ok = false;
                break;
            }
            acc += one_plus_T_int_pow(p, static_cast<long>(pt.lift().get_si()))
                       .scaled(mass);
        }
        if (ok) z = acc;
    }
    ConvergenceReport rrep;
    std::vector<QSeries> sums = wD_riemann(z, dD, n_max, &rrep, o.man.trunc_T);
    std::cout << "riemann partial sums vs integral oracle:\n";
    for (size_t i = 0; i < sums.size(); ++i) {
        QSeries diff = sums[i].truncated(o.man.trunc_T) -
                       oracle.truncated(o.man.trunc_T);
        long d = residual_valuation(diff);
        std::cout << "  n=" << (i + 1) << "  agreement valuation ";
        if (d >= PREC_INF / 2)
            std::cout << "inf";
        else
            std::cout << d;
        std::cout << (diff.is_zero_at_prec() ? " (zero at precision)" : "")
                  << "\n";
    }
    std::cout << "riemann self-distances: " << rrep.to_json() << "\n";
    return 0;
}

int cmd_strange(const CommonOpts& o, long k, long n_max) {
    long p = o.man.p;
    PhiGammaModule M(Character::trivial(p), Character::power_of_x(p, k));
    Rng rng(o.man.seed);
    ModElem w;
    for (long r = 0; r < 2; ++r)
        w.c.push_back(rng.power_series(p, o.man.prec, 7, o.man.trunc_T));
    StrangeReport rep = strange_experiment(M, w, n_max);
    std::cout << "w_D(t z) vs -P_Sen(nabla)(w_D z)/t on the split module "
              << M.manifest_json() << "\n";
    for (auto [n, v] : rep.distances)
        std::cout << "  n=" << n << "  residual valuation " << v
                  << (v >= PREC_INF / 2 ? " (zero at precision)" : "")
                  << "\n";
    std::cout << "precision floor " << rep.floor << "\n";
    return 0;
}

int cmd_suite(const CommonOpts& o, const std::string& name) {
    SuiteReport rep = run_suite(name, o.man);
    if (o.json) {
        rep.write_jsonl(std::cout);
    } else {
        std::cout << rep.suite << ": " << rep.passed() << "/"
                  << rep.cases.size() << " cases pass ("
                  << static_cast<long>(rep.wall_ms) << " ms)\n";
        for (const auto& c : rep.cases) {
            if (!c.pass)
                std::cout << "  case " << c.index << " FAIL residual="
                          << c.residual_valuation << " floor=" << c.floor
                          << " " << c.note << "\n";
        }
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "robba: truncated Robba-ring calculus for (phi,Gamma)-modules"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string expr, series_lit;
    auto* eval = app.add_subcommand("eval", "apply an operator pipeline");
    eval->add_option("expr", expr,
                     "ops right-to-left: phi psi sigma(a) nabla mul_t div_t "
                     "res pow1pT(b) restrict(U)")
        ->required();
    eval->add_option("series", series_lit, "series literal, e.g. 'T^-1 + 2*T'")
        ->required();
    add_manifest_flags(eval, opts);

    std::string wa, wb;
    auto* cas = app.add_subcommand("casimir", "Casimir scalar experiment");
    cas->add_option("a", wa, "first weight (rational)")->required();
    cas->add_option("b", wb, "second weight (rational)")->required();
    add_manifest_flags(cas, opts);

    std::string measure_text, deltap = "2", sweight = "0";
    long power = 1, n_max = 4;
    auto* wd = app.add_subcommand("wd", "w_D involution experiment");
    wd->add_option("measure", measure_text,
                   "'mahler: c0,c1,...' or 'dirac: pt:mass,...'")
        ->required();
    wd->add_option("--deltap", deltap, "delta_D(p)");
    wd->add_option("--power", power, "integer power of delta_D on units");
    wd->add_option("--sweight", sweight, "analytic weight s of delta_D");
    wd->add_option("--nmax", n_max, "Riemann-sum depth");
    add_manifest_flags(wd, opts);

    long strange_k = 2, strange_nmax = 3;
    auto* stx = app.add_subcommand(
        "strange", "w_D(tz) = -P_Sen(nabla)(w_D z)/t experiment (measured, "
                   "not asserted, on split modules)");
    stx->add_option("--k", strange_k, "second Hodge-Tate weight");
    stx->add_option("--nmax", strange_nmax, "Riemann operator depth");
    add_manifest_flags(stx, opts);

    std::string suite_name;
    auto* st = app.add_subcommand("suite", "run a named identity suite");
    st->add_option("name", suite_name, "suite name (see 'suites')")
        ->required();
    add_manifest_flags(st, opts);

    auto* ls = app.add_subcommand("suites", "list available suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(opts, expr, series_lit);
        if (cas->parsed()) return cmd_casimir(opts, wa, wb);
        if (wd->parsed())
            return cmd_wd(opts, measure_text, deltap, power, sweight, n_max);
        if (stx->parsed()) return cmd_strange(opts, strange_k, strange_nmax);
        if (st->parsed()) return cmd_suite(opts, suite_name);
        if (ls->parsed()) {
            for (const auto& s : suite_names()) std::cout << s << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
