#pragma once

#include "robba/character.hpp"
#include "robba/cyclo.hpp"
#include "robba/series_ops.hpp"

#include <optional>
#include <utility>

namespace robba {

/// A bounded measure on Z_p given by its truncated Mahler moments
/// c_n = int C(x,n) dmu (n < trunc) together with a boundedness witness:
/// v_p(c_n) >= bound for all n, including the untracked tail.  The Amice
/// transform identifies the moments with the T-coefficients of A_mu.
///
/// Measures built from finite Dirac combinations keep the exact point/mass
/// data alongside the moments; the w_D integral uses it for exact
/// evaluation, everything else goes through the moments.
class Measure {
  public:
    Measure(long p, std::vector<PAdic> mahler, long bound);

    /// sum of point masses  mass_j * delta_{point_j},  moments to length len.
    static Measure diracs(long p,
                          std::vector<std::pair<PAdic, PAdic>> mass_points,
                          long len);
    static Measure dirac(long p, const PAdic& point, long len);

    long prime() const { return p_; }
    long trunc() const { return static_cast<long>(mahler_.size()); }
    long bound() const { return bound_; }
    const std::vector<PAdic>& mahler() const { return mahler_; }
    const std::optional<std::vector<std::pair<PAdic, PAdic>>>& dirac_data()
        const {
        return diracs_;
    }

    Measure operator+(const Measure& o) const;
    Measure operator-() const;
    Measure operator-(const Measure& o) const { return *this + (-o); }
    Measure scaled(const PAdic& s) const;

    bool matches(const Measure& o) const;

    /// Text form "mahler: c0,c1,...".
    std::string str() const;

  private:
    long p_;
    std::vector<PAdic> mahler_;
    long bound_;
    std::optional<std::vector<std::pair<PAdic, PAdic>>> diracs_;
};

/// The Amice transform A_mu = sum c_n T^n (identity on coefficients); the
/// boundedness witness becomes the tail-valuation witness of the series.
QSeries amice(const Measure& mu);

/// Inverse transform.  Requires an exact series window or a tail-valuation
/// witness (the unknown tail perturbs every Mahler coefficient by O(p^tau));
/// principal parts are not measures.
Measure inverse_amice(const QSeries& f);

/// Pushforward under x -> ax + b with a in Z_p (unit or p-power), b in Z_p.
/// Computed on moments by finite differences of C(ax+b, n); satisfies
/// A_{g.mu} = (1+T)^b phi^k sigma_{a'}(A_mu).
Measure pushforward_affine(const Measure& mu, const PAdic& a, const PAdic& b);

/// The measure nu with A_nu = psi(A_mu): the pushforward of mu|_{pZ_p}
/// under x -> x/p, computed independently of the series-side solver by
/// finite differences of 1_{pZ_p}(x) C(x/p, k).
Measure psi_measure(const Measure& mu);

/// Whether mu is visibly supported in Z_p^x at tracked precision
/// (Res_{pZ_p} mu = 0, i.e. psi_measure(mu) = 0).
bool supported_in_units(const Measure& mu);

/// Convergence report: (level, valuation) pairs plus the achieved modulus.
struct ConvergenceReport {
    std::vector<std::pair<long, long>> distances;  // (n, val(S_n - S_{n+1}))
    long achieved;                                 // final agreement valuation
    std::string to_json() const;
};

/// w_D on measures supported in Z_p^x:  A_{w mu} = int delta_D(x)
/// (1+T)^{1/x} mu.  Dirac data evaluates exactly (delta_b -> delta_D(b)
/// delta_{1/b}); otherwise Riemann sums over residue classes mod p^n with
/// masses recovered by Fourier inversion from A_mu(zeta - 1), p-adic
/// convergence monitored up to n_budget.
Measure wD_integral(const Measure& mu, const Character& delta_D,
                    long n_budget = 3, ConvergenceReport* report = nullptr);

/// The series-side operator formula
///   w_D(z) = lim_n sum_{i in (Z/p^n)^*} delta_D(i) (1+T)^{1/i}
///            sigma_{-1/i^2} phi^n psi^n((1+T)^{-i} z)
/// on z with psi(z) = 0.  Returns the partial sums S_1..S_{n_max} and the
/// p-adic distances between consecutive sums.
std::vector<QSeries> wD_riemann(const QSeries& z, const Character& delta_D,
                                long n_max, ConvergenceReport* report = nullptr,
                                long out_trunc = -1);

}  // namespace robba
