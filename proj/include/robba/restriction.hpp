#pragma once

#include "robba/series_ops.hpp"

namespace robba {

/// A compact open subset of Z_p: a union of classes a + p^n Z_p, kept in
/// canonical form (full fibers merged down to the lowest level).
class CompactOpen {
  public:
    CompactOpen(long p, long level, std::vector<long> residues);

    static CompactOpen all(long p) { return CompactOpen(p, 0, {0}); }
    static CompactOpen empty(long p) { return CompactOpen(p, 0, {}); }
    static CompactOpen cls(long p, long a, long level);  // a + p^level Z_p
    static CompactOpen units(long p);                    // Z_p^x

    long prime() const { return p_; }
    long level() const { return n_; }
    const std::vector<long>& residues() const { return res_; }

    bool is_all() const { return n_ == 0 && res_.size() == 1; }
    bool is_empty() const { return res_.empty(); }
    bool contains(long x) const;

    CompactOpen lifted_to(long m) const;
    CompactOpen complement() const;
    CompactOpen intersect(const CompactOpen& o) const;
    CompactOpen unite(const CompactOpen& o) const;
    bool operator==(const CompactOpen& o) const;

    /// Text form "a1,a2,...@n".
    std::string str() const;
    static CompactOpen parse(long p, const std::string& s);

  private:
    void canonicalize();
    long p_, n_;
    std::vector<long> res_;
};

/// Element (p^k a, b; 0, 1) of the monoid P^+ (k >= 0, a a unit, b in Z_p).
struct PPlus {
    long k;
    PAdic a;
    PAdic b;

    PPlus(long k_, PAdic a_, PAdic b_) : k(k_), a(std::move(a_)), b(std::move(b_)) {
        if (k < 0) throw DomainError("PPlus: k < 0 is not in P+");
        if (a.is_zero_at_prec() || a.valuation() != 0)
            throw DomainError("PPlus: a must be a unit");
    }

    static PPlus identity(long p) {
        return PPlus(0, PAdic::from_integer(p, 1), PAdic::from_integer(p, 0));
    }

    /// Matrix product (this o other).
    PPlus compose(const PPlus& o) const;

    /// Image of x in Z_p (x as a p-adic integer).
    PAdic apply(const PAdic& x) const;
};

/// (p^k a, b; 0,1) z = (1+T)^b phi^k(sigma_a(z)).
QSeries pplus_act(const PPlus& g, const QSeries& f, long out_trunc = -1);

/// Res_{a+p^n Z_p} = (1 a;0 1) phi^n psi^n (1 -a;0 1).
QSeries restrict_class(const QSeries& f, long a, long n, long out_trunc = -1);

/// Res_U as the sum over the canonical decomposition of U.
QSeries restrict(const QSeries& f, const CompactOpen& U, long out_trunc = -1);

/// Preimage g^{-1}(U) as a subset of Z_p; throws SupportError if the
/// preimage is not contained in Z_p (cannot happen for g in P^+).
CompactOpen preimage(const PPlus& g, const CompactOpen& U);

}  // namespace robba
