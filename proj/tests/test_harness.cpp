#include "robba/harness.hpp"
#include "robba/textio.hpp"
#include "robba/wd_experiment.hpp"
#include "robba/rand.hpp"

#include <doctest.h>

#include <sstream>

using namespace robba;

TEST_CASE("text round trips") {
    Rng rng(233);
    long p = 3;
    for (int i = 0; i < 10; ++i) {
        PAdic x = rng.padic_scalar(p, 17, -2, 3);
        CHECK(parse_padic(p, x.str(), 17).matches(x));
        QSeries f = rng.laurent_series(p, 17, -2, 8, 21);
        QSeries g = parse_series(p, f.str(), 17);
        CHECK(g.trunc() == f.trunc());
        for (long k = f.lo(); k < f.hi(); ++k) {
            CHECK(g.coeff(k).matches(f.coeff(k)));
            if (!f.coeff(k).is_zero_at_prec())
                CHECK(g.coeff(k).abs_prec() == f.coeff(k).abs_prec());
        }
    }
    // zero forms
    CHECK(parse_padic(p, "O(3^7)", 20).abs_prec() == 7);
    CHECK(parse_padic(p, "-5/7", 20).matches(PAdic::from_ratio(p, -5, 7, 20)));
    // plain polynomial grammar incl. 1/T^k
    QSeries h = parse_series(p, "2*T^-1 + 1 - 5/7*T^3 + O(T^9)", 20);
    CHECK(h.coeff(-1).matches(PAdic::from_integer(p, 2)));
    CHECK(h.coeff(0).matches(PAdic::from_integer(p, 1)));
    CHECK(h.coeff(3).matches(PAdic::from_ratio(p, -5, 7)));
    CHECK(h.trunc() == 9);
    QSeries q = parse_series(p, "1/T", 20);
    CHECK(q.coeff(-1).matches(PAdic::from_integer(p, 1)));
}

TEST_CASE("eval pipeline") {
    EvalConfig cfg;
    QSeries T = parse_series(3, "T", 20);
    auto out = eval_pipeline("psi", T, cfg);
    CHECK(std::get<QSeries>(out).coeff(0).matches(
        PAdic::from_integer(3, -1)));
    auto r = eval_pipeline("res", parse_series(3, "1/T", 20), cfg);
    CHECK(std::get<PAdic>(r).matches(PAdic::from_integer(3, 1)));
    // pipeline composes right-to-left: psi(phi(T)) = T
    auto rt = eval_pipeline("psi phi", T, cfg);
    CHECK(std::get<QSeries>(rt).coeff(1).matches(PAdic::from_integer(3, 1)));
    CHECK_THROWS_AS(eval_pipeline("nosuchop", T, cfg), Error);
}

TEST_CASE("suite registry and determinism") {
    RunManifest m;
    m.samples = 6;
    m.seed = 424242;
    SuiteReport a = run_suite("casimir-scalar", m);
    SuiteReport b = run_suite("casimir-scalar", m);
    CHECK(a.pass());
    std::ostringstream ja, jb;
    a.write_jsonl(ja);
    b.write_jsonl(jb);
    // identical manifests give identical reports, up to timing fields
    auto strip_ms = [](std::string s) {
        std::string out;
        std::istringstream is(s);
        std::string line;
        while (std::getline(is, line)) {
            auto pos = line.find(",\"ms\":");
            auto pos2 = line.find(",\"wall_ms\":");
            if (pos != std::string::npos) line = line.substr(0, pos);
            if (pos2 != std::string::npos) line = line.substr(0, pos2);
            out += line + "\n";
        }
        return out;
    };
    CHECK(strip_ms(ja.str()) == strip_ms(jb.str()));
    CHECK_THROWS_AS(run_suite("nosuch", m), Error);
    try {
        run_suite("nosuch", m);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("sl2-brackets") != std::string::npos);
    }
    CHECK(suite_names().size() == 14);
}

TEST_CASE("wd module experiment runs and reports") {
    long p = 3;
    PhiGammaModule M(Character::trivial(p), Character::power_of_x(p, 2));
    Rng rng(251);
    ModElem w;
    for (long r = 0; r < 2; ++r) w.c.push_back(rng.power_series(p, 20, 6, 30));
    StrangeReport rep = strange_experiment(M, w, 2);
    CHECK(rep.distances.size() == 2);
    // measured, not asserted: residuals at least reach the honest floor
    for (auto [n, v] : rep.distances) CHECK(v >= rep.floor);
}
