#pragma once

#include "robba/dif.hpp"
#include "robba/phigamma.hpp"

namespace robba {

/// Wedge coordinate of x /\ y in the trivialization e1 /\ e2 = 1.
QSeries wedge(const PhiGammaModule& M, const ModElem& x, const ModElem& y);

/// [x, y] = res_0((sigma_{-1}(x) /\ y) dT/(1+T)) on a rank-2 module.
/// Twists: [sigma_a x, sigma_a y] = delta_D(a)[x, y] and
/// [phi x, phi y] = delta_D(p)[x, y].
PAdic pair_D(const PhiGammaModule& M, const ModElem& x, const ModElem& y);

struct PairReport {
    long residual_valuation;
    long floor;
    bool pass() const { return residual_valuation >= floor; }
};

/// [(u^-) x, y] + [x, (u^-) y] = 0 on D x D (weights (0,k)).
PairReport uminus_adjoint_check(const PhiGammaModule& M, const ModElem& x,
                                const ModElem& y);

/// res_0(phi(f) g dT/(1+T)) = res_0(f psi(g) dT/(1+T)): the residue/trace
/// adjunction underlying the P^1 pairing (f without principal part).
PairReport phi_psi_residue_check(const QSeries& f, const QSeries& g);

/// The dual form res_0(psi(f) g dT/(1+T)) = res_0(f phi(g) dT/(1+T)) for
/// Laurent f and g without principal part.
PairReport psi_phi_residue_check(const QSeries& f, const QSeries& g);

/// The pairing-level adjunction [phi x, y] = delta_D(p) [x, psi y],
/// equivalent to the phi-twist law [phi x, phi y] = delta_D(p)[x, y]
/// (specialize y to phi y'); stated this way it stays inside the
/// finite-tail model for x without principal parts and Laurent y.
PairReport phi_pairing_adjoint_check(const PhiGammaModule& M, const ModElem& x,
                                     const ModElem& y);

/// Wedge on the localized lattice: e1 /\ e2 = t^{-k} (so that the lattice
/// basis e1, t^k e2 wedges to 1 -- the determinant of D_dif^+ trivialized).
LnSeries dif_wedge(const DifLattice& L, const DifElem& x, const DifElem& y);

/// [x, y]_dif = res_0(Res_{Z_p}(sigma_{-1}(x) /\ y) dt), with Res_{Z_p} the
/// level-0 Tate trace taken coefficient-wise.
PAdic pair_dif(const DifLattice& L, const DifElem& x, const DifElem& y);

}  // namespace robba
