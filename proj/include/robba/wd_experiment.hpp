#pragma once

#include "robba/measure.hpp"
#include "robba/phigamma.hpp"

namespace robba {

/// The w_D Riemann-sum operator transported to a rank-2 module: the same
/// formula with phi, psi, sigma taken as the module actions and delta_D the
/// module's central character.
ModElem wd_module_riemann(const PhiGammaModule& M, const ModElem& z, long n);

/// Numerical experiment around w_D(t z) = -P_Sen(nabla)(w_D(z))/t on
/// split trianguline test modules (the statement is proved for absolutely
/// irreducible V; here it is measured, not asserted).  w is projected to
/// D^{psi=0} first; distances between the two sides are reported per level.
struct StrangeReport {
    std::vector<std::pair<long, long>> distances;  // (n, residual valuation)
    long floor;
};

StrangeReport strange_experiment(const PhiGammaModule& M, const ModElem& w,
                                 long n_max);

}  // namespace robba
