#pragma once

#include "robba/character.hpp"
#include "robba/series_ops.hpp"

#include <optional>

namespace robba {

/// An element of a rank-1/rank-2 module: coordinate vector over the
/// truncated series ring in the basis e_1 (, e_2).
struct ModElem {
    std::vector<QSeries> c;

    long rank() const { return static_cast<long>(c.size()); }
    ModElem operator+(const ModElem& o) const;
    ModElem operator-(const ModElem& o) const;
    ModElem operator-() const;
    ModElem scaled(const PAdic& s) const;
    bool is_zero_at_prec() const;
    bool matches(const ModElem& o) const;
};

long residual_valuation(const ModElem& z);
long min_abs_prec(const ModElem& z);

/// Trianguline test module: R(delta_1) for rank 1, or an extension of
/// R(delta_2) by R(delta_1) for rank 2.  Extensions are built from a twist
/// datum eta (e_2 = f_2 + eta f_1 over the split basis f_i), so the phi- and
/// Gamma-cocycles
///     phi(e_2)     = delta_2(p) e_2 + c_phi e_1
///     sigma_a(e_2) = delta_2(a) e_2 + c_a   e_1
///     nabla(e_2)   = w_2 e_2 + nu e_1
/// are coherent by construction; validate() re-checks the commutation of
/// phi and sigma_a on the basis at precision and rejects incoherent data.
class PhiGammaModule {
  public:
    /// rank 1
    PhiGammaModule(Character delta);
    /// rank 2, split or twisted by eta
    PhiGammaModule(Character delta1, Character delta2,
                   std::optional<QSeries> eta = std::nullopt);

    long prime() const { return p_; }
    long rank() const { return rank_; }
    const Character& delta(long i) const { return diag_[static_cast<size_t>(i)]; }
    /// delta_D = delta_1 delta_2 chi^{-1} (rank 2).
    Character delta_D() const;

    PAdic weight(long i) const { return diag_[static_cast<size_t>(i)].weight(); }
    /// Sum of the weights a + b.
    PAdic weight_sum() const;
    /// Monic Sen polynomial (X - a)(X - b) evaluated as the operator
    /// P(nabla) in mod_* routines; coefficients here for reports.
    std::pair<PAdic, PAdic> sen_roots() const;

    bool has_extension() const { return eta_.has_value(); }
    const QSeries& eta() const { return *eta_; }
    /// nabla-cocycle nu = nabla(eta) + (w1 - w2) eta.
    QSeries nabla_cocycle() const;
    QSeries phi_cocycle() const;
    QSeries sigma_cocycle(const PAdic& a) const;

    /// Commutation Mat(phi) phi(Mat(sigma_a)) = Mat(sigma_a) sigma_a(Mat(phi))
    /// on sampled a; throws on incoherent data.
    void validate(long samples = 3) const;

    ModElem basis(long i, long trunc) const;
    std::string manifest_json() const;

  private:
    long p_;
    long rank_;
    std::vector<Character> diag_;
    std::optional<QSeries> eta_;
};

ModElem mod_phi(const PhiGammaModule& M, const ModElem& z);
ModElem mod_psi(const PhiGammaModule& M, const ModElem& z);
ModElem mod_sigma(const PhiGammaModule& M, const ModElem& z, const PAdic& a);
ModElem mod_nabla(const PhiGammaModule& M, const ModElem& z);
ModElem mod_mul_t(const PhiGammaModule& M, const ModElem& z);
ModElem mod_mul(const PhiGammaModule& M, const ModElem& z, const QSeries& f);

/// P_Sen(nabla) = (nabla - a)(nabla - b) as an operator.
ModElem sen_poly_nabla(const PhiGammaModule& M, const ModElem& z);

enum class Gl2 { I2, H, Uplus, Uminus };

/// The infinitesimal action: I2 = (a+b-1), h = 2 nabla - (a+b-1),
/// u+ = t, u- = -P_Sen(nabla)/t.  Divisibility failures in u- surface as
/// DivisibilityError ("Prop HC violation": malformed module data).
ModElem gl2_apply(const PhiGammaModule& M, Gl2 X, const ModElem& z);

/// Casimir C = u+ u- + u- u+ + h^2/2 computed as operators; equals
/// ((a-b)^2 - 1)/2 by Theorem; the scalar is exposed for tests.
ModElem casimir_apply(const PhiGammaModule& M, const ModElem& z);
PAdic casimir_scalar(const PhiGammaModule& M);

/// Closed form of (u^-)^j on weights (0, k):
///   nabla(nabla-1)...(nabla-j+1) (k-nabla)...(k+j-1-nabla) (z) / t^j.
ModElem uminus_iter_closed(const PhiGammaModule& M, long j, const ModElem& z);

struct HcSample {
    long residual_valuation;  // of t*q - P(nabla) z
    long floor;
    bool divisible;
};

/// Prop HC check: P_Sen(nabla)(z) is divisible by t, with exact round trip.
HcSample check_prop_hc(const PhiGammaModule& M, const ModElem& z);

}  // namespace robba
