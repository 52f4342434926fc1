#pragma once

#include "robba/measure.hpp"
#include "robba/restriction.hpp"

#include <variant>

namespace robba {

/// Parse "p^v * u + O(p^N)", "O(p^N)", or a rational "a/b" (taken at
/// working precision prec).
PAdic parse_padic(long p, const std::string& s, long prec);

/// Parse a series literal: either the canonical form produced by
/// Series::str() -- "(c)*T^k + ... + O(T^M)" -- or a plain polynomial
/// "2*T^-1 + 1 - 5/7*T^3 + O(T^M)" with rational coefficients at working
/// precision.  parse(str(f)) reproduces f coefficient-wise.
QSeries parse_series(long p, const std::string& s, long prec);

/// Parse "mahler: c0,c1,..." or "dirac: pt:mass,pt:mass,..." into a measure
/// with len moments.
Measure parse_measure(long p, const std::string& s, long prec, long len);

/// Settings threaded through the expression evaluator.
struct EvalConfig {
    long p = 3;
    long prec = 20;
    long trunc_T = 48;
    long trunc_t = 12;
    long tail = 8;
};

/// Flat operator pipeline, ops applied right-to-left:
///   "phi", "psi", "sigma(a)", "nabla", "mul_t", "div_t", "res",
///   "pow1pT(b)" (multiplies by (1+T)^b), "restrict(a1,a2@n)".
/// "res" produces a scalar and must be the leftmost op.
std::variant<QSeries, PAdic> eval_pipeline(const std::string& expr,
                                           QSeries f, const EvalConfig& cfg);

}  // namespace robba
