// Acceptance suite: runs every identity suite at desk scale
// (p in {3,5}, precision 20, T-truncation 48, t-truncation 12, levels <= 3)
// and prints one pass/fail line per criterion.

#include "robba/harness.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace robba;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::vector<std::string> suites;
};

const std::vector<Criterion> criteria = {
    {1, "sl2 relations [h,u+]=2u+, [h,u-]=-2u-, [u+,u-]=h", {"sl2-brackets"}},
    {2, "Casimir scalar ((a-b)^2-1)/2 across the weight grid",
     {"casimir-scalar"}},
    {3, "Casimir operator identity C = 2t u- + 2P_Sen(nabla) + scalar",
     {"casimir-operator"}},
    {4, "P_Sen(nabla) is divisible by t with exact round trip", {"prop-hc"}},
    {5, "closed form of (u-)^j and annihilation of weight-0 vectors",
     {"lemme-long"}},
    {6, "psi/Res algebra and the measure-side oracle", {"psi-res-algebra"}},
    {7, "w_D: involution, twisted equivariance, Riemann-sum convergence",
     {"wd-involution", "wd-equivariance", "wd-riemann"}},
    {8, "X_n membership matches the closed-form classification",
     {"lemme-diff"}},
    {9, "orthogonality of N_dif and D_dif+ with nondegeneracy witness",
     {"lemme-orth"}},
    {10, "trace compatibility phi^{-n} psi = p^{-1} Tr phi^{-(n+1)}",
     {"trace-compat"}},
    {11, "u- adjunction [(u-)x,y] = -[x,(u-)y] on D x D",
     {"uminus-adjoint"}},
    {12, "Sen polynomial matches character weights across levels",
     {"sen-poly"}},
};

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    auto t0 = std::chrono::steady_clock::now();
    bool all_pass = true;
    for (long p : {3L, 5L}) {
        RunManifest man;
        man.p = p;
        man.prec = 20;
        man.trunc_T = 48;
        man.trunc_t = 12;
        man.level = 3;
        man.seed = 20240601;
        if (quick) man.samples = 10;
        std::printf("== p = %ld ==\n", p);
        for (const auto& crit : criteria) {
            long cases = 0, passed = 0;
            double ms = 0;
            bool ok = true;
            for (const auto& s : crit.suites) {
                SuiteReport rep = run_suite(s, man);
                cases += static_cast<long>(rep.cases.size());
                passed += rep.passed();
                ms += rep.wall_ms;
                ok = ok && rep.pass();
            }
            all_pass = all_pass && ok;
            std::printf("[%s] criterion %2d: %-62s %ld/%ld cases, %6.0f ms\n",
                        ok ? "PASS" : "FAIL", crit.number,
                        crit.description.c_str(), passed, cases, ms);
            std::fflush(stdout);
        }
    }
    double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("total wall time: %.1f s\n", total);
    std::printf("%s\n", all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
    return all_pass ? 0 : 1;
}
