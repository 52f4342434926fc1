#include "robba/pairing.hpp"

namespace robba {

QSeries wedge(const PhiGammaModule& M, const ModElem& x, const ModElem& y) {
    if (M.rank() != 2) throw Error("wedge: rank-2 only");
    long R = std::min(std::min(x.c[0].trunc(), x.c[1].trunc()),
                      std::min(y.c[0].trunc(), y.c[1].trunc()));
    QSeries w = x.c[0] * y.c[1] - x.c[1] * y.c[0];
    return R >= PREC_INF / 2 ? w : w.truncated(R);
}

PAdic pair_D(const PhiGammaModule& M, const ModElem& x, const ModElem& y) {
    PAdic minus_one = PAdic::from_integer(M.prime(), -1);
    ModElem sx = mod_sigma(M, x, minus_one);
    return residue(wedge(M, sx, y), ResidueForm::dT_over_1pT);
}

PairReport uminus_adjoint_check(const PhiGammaModule& M, const ModElem& x,
                                const ModElem& y) {
    PAdic lhs = pair_D(M, gl2_apply(M, Gl2::Uminus, x), y);
    PAdic rhs = pair_D(M, x, gl2_apply(M, Gl2::Uminus, y));
    PAdic sum = lhs + rhs;
    PairReport rep{};
    rep.residual_valuation = residual_valuation(sum);
    rep.floor = std::min(lhs.abs_prec(), rhs.abs_prec());
    return rep;
}

PairReport phi_psi_residue_check(const QSeries& f, const QSeries& g) {
    // res(phi(f) g w) = res(f psi(g) w).  Sound in the finite-tail model
    // when f has no principal part: phi of a principal part is an element
    // of E whose annulus expansion (which carries the residue) has an
    // unbounded tail the model cannot hold.  The dual form with psi on the
    // left covers Laurent inputs; see psi_phi_residue_check.
    if (f.lo() < 0)
        throw DomainError(
            "phi_psi_residue_check: f must have no principal part here");
    PAdic lhs = residue(apply_phi(f) * g, ResidueForm::dT_over_1pT);
    PAdic rhs = residue(f * psi(g), ResidueForm::dT_over_1pT);
    PAdic diff = lhs - rhs;
    PairReport rep{};
    rep.residual_valuation = residual_valuation(diff);
    rep.floor = std::min(lhs.abs_prec(), rhs.abs_prec());
    return rep;
}

PairReport psi_phi_residue_check(const QSeries& f, const QSeries& g) {
    // res(psi(f) g w) = res(f phi(g) w), f Laurent, g without principal part
    PAdic lhs = residue(psi(f) * g, ResidueForm::dT_over_1pT);
    PAdic rhs = residue(f * apply_phi(g), ResidueForm::dT_over_1pT);
    PAdic diff = lhs - rhs;
    PairReport rep{};
    rep.residual_valuation = residual_valuation(diff);
    rep.floor = std::min(lhs.abs_prec(), rhs.abs_prec());
    return rep;
}

PairReport phi_pairing_adjoint_check(const PhiGammaModule& M, const ModElem& x,
                                     const ModElem& y) {
    PAdic lhs = pair_D(M, mod_phi(M, x), y);
    PAdic rhs = pair_D(M, x, mod_psi(M, y)) * M.delta_D().at_p();
    PAdic diff = lhs - rhs;
    PairReport rep{};
    rep.residual_valuation = residual_valuation(diff);
    rep.floor = std::min(lhs.abs_prec(), rhs.abs_prec());
    return rep;
}

LnSeries dif_wedge(const DifLattice& L, const DifElem& x, const DifElem& y) {
    LnSeries w = x.A * y.B - x.B * y.A;
    return w.shifted(-L.k);
}

PAdic pair_dif(const DifLattice& L, const DifElem& x, const DifElem& y) {
    PAdic minus_one = PAdic::from_integer(L.p, -1);
    DifElem sx = dif_sigma(L, x, minus_one);
    LnSeries w = dif_wedge(L, sx, y);
    LnSeries tr = tate_down(w, 0);
    Cyclo a = residue(tr, ResidueForm::dt);
    return a.scalar();
}

}  // namespace robba
