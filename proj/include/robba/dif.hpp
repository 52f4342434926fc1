#pragma once

#include "robba/phigamma.hpp"

namespace robba {

using LnSeries = Series<Cyclo>;

/// Localization phi^{-n}: f(T) -> f(zeta_{p^n} e^{t/p^n} - 1) in L_n[[t]],
/// truncated at t_len.  Principal parts evaluate through the unit constant
/// term zeta - 1.  For a truncated input the unknown T-tail contributes
/// O(p^{tau + (M-d) r_n - dn - v_p(d!)}) at t-degree d (r_n = 1/(p^{n-1}(p-1)));
/// coefficients are capped accordingly.  The per-degree loss v_p(d!) + dn
/// from exp(t/p^n) is inherent and shows up in the precision ledger.
LnSeries localize(const QSeries& f, long level, long t_len);

/// Evaluation f(zeta_{p^n} - 1) in L_n (the t = 0 coefficient of localize).
Cyclo evaluate_at_zeta(const QSeries& f, long level);

/// sigma_a on L_n((t)): Galois action on coefficients and t -> a t.
LnSeries dif_sigma(const LnSeries& f, const PAdic& a);

/// Coefficient-wise p^{-1} Tr_{L_{n+1}/L_n}.
LnSeries tate_down(const LnSeries& f, long target_level);

struct TraceCompatReport {
    long residual_valuation;
    long floor;
    bool pass() const { return residual_valuation >= floor; }
};

/// phi^{-n}(psi(z)) = p^{-1} Tr_{L_{n+1}/L_n} phi^{-(n+1)}(z),
/// coefficient-by-coefficient in t.
TraceCompatReport trace_compat(const QSeries& z, long n, long t_len);

/// Synthetic D_dif,n^+ lattice with the Prop-basedif Gamma-structure:
/// basis semantics  lattice = L_n[[t]] e1 + L_n[[t]] t^k e2,
/// sigma_a(e1) = e1, sigma_a(e2) = e2 + eps log(a) e1,
/// nabla(e1) = 0,    nabla(e2) = eps e1.
/// eps = 0 is the de Rham structure, eps = 1 the Hodge-Tate non-de Rham one.
struct DifLattice {
    long p;
    long level;
    int eps;
    long k;

    std::string manifest_json() const;
};

/// A e1 + B e2 with A, B in L_n((t)).
struct DifElem {
    LnSeries A, B;

    DifElem operator+(const DifElem& o) const { return {A + o.A, B + o.B}; }
    DifElem operator-(const DifElem& o) const { return {A - o.A, B - o.B}; }
    bool is_zero_at_prec() const {
        return A.is_zero_at_prec() && B.is_zero_at_prec();
    }
};

DifElem dif_sigma(const DifLattice& L, const DifElem& z, const PAdic& a);
DifElem dif_nabla(const DifLattice& L, const DifElem& z);

/// t^m | f at tracked precision.
bool divisible_by_t_pow(const LnSeries& f, long m);

/// Membership in the lattice: t^k | B.
bool in_lattice(const DifLattice& L, const DifElem& z);

/// nabla_{2k} = nabla (nabla - 1) ... (nabla - 2k + 1).
DifElem nabla_2k(const DifLattice& L, const DifElem& z, long k);
LnSeries nabla_2k_series(const LnSeries& f, long k);

/// The X_n test: nabla_{2k}(z) in t^{2k} N_dif,n (both coordinates divisible
/// by t^{2k}); requires z in the lattice.
bool xn_membership(const DifLattice& L, const DifElem& z);

/// Closed-form classification: de Rham -> everything; non-de Rham -> t^{2k} | B.
bool xn_closed_form(const DifLattice& L, const DifElem& z);

/// Sen data at level n: matrix of nabla on D_dif,n^+ / t D_dif,n^+ in the
/// localized basis, extracted as log(Mat sigma_gamma)/log(gamma) for
/// gamma = 1 + p^n (a Gamma_n element, so the matrix is L_n-linear), and its
/// monic characteristic polynomial.
struct SenResult {
    long rank;
    std::vector<Cyclo> matrix;    // rank x rank, row-major
    std::vector<Cyclo> charpoly;  // degree rank, coefficients low..high, monic
};

SenResult sen_operator(const PhiGammaModule& M, long n, long prec = 24);

}  // namespace robba
