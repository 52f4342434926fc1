#include "robba/phigamma.hpp"

#include <sstream>

namespace robba {

ModElem ModElem::operator+(const ModElem& o) const {
    if (rank() != o.rank()) throw Error("ModElem: rank mismatch");
    ModElem r;
    for (long i = 0; i < rank(); ++i)
        r.c.push_back(c[static_cast<size_t>(i)] + o.c[static_cast<size_t>(i)]);
    return r;
}

ModElem ModElem::operator-(const ModElem& o) const { return *this + (-o); }

ModElem ModElem::operator-() const {
    ModElem r;
    for (const auto& f : c) r.c.push_back(-f);
    return r;
}

ModElem ModElem::scaled(const PAdic& s) const {
    ModElem r;
    for (const auto& f : c) r.c.push_back(f.scaled(s));
    return r;
}

bool ModElem::is_zero_at_prec() const {
    for (const auto& f : c)
        if (!f.is_zero_at_prec()) return false;
    return true;
}

bool ModElem::matches(const ModElem& o) const {
    return (*this - o).is_zero_at_prec();
}

long residual_valuation(const ModElem& z) {
    long v = PREC_INF;
    for (const auto& f : z.c) v = std::min(v, residual_valuation(f));
    return v;
}

long min_abs_prec(const ModElem& z) {
    long v = PREC_INF;
    for (const auto& f : z.c) v = std::min(v, f.min_abs_prec());
    return v;
}

PhiGammaModule::PhiGammaModule(Character delta)
    : p_(delta.prime()), rank_(1), diag_{std::move(delta)} {}

PhiGammaModule::PhiGammaModule(Character delta1, Character delta2,
                               std::optional<QSeries> eta)
    : p_(delta1.prime()),
      rank_(2),
      diag_{std::move(delta1), std::move(delta2)},
      eta_(std::move(eta)) {
    if (eta_ && eta_->var() != Var::T)
        throw Error("PhiGammaModule: eta must be a T-series");
    if (eta_ && eta_->is_zero_at_prec()) eta_.reset();
}

Character PhiGammaModule::delta_D() const {
    if (rank_ != 2) throw Error("delta_D: rank-2 only");
    return diag_[0] * diag_[1] * Character::cyclotomic(p_).inv();
}

PAdic PhiGammaModule::weight_sum() const {
    PAdic s = weight(0);
    if (rank_ == 2) s += weight(1);
    return s;
}

std::pair<PAdic, PAdic> PhiGammaModule::sen_roots() const {
    if (rank_ == 1) return {weight(0), weight(0)};
    return {weight(0), weight(1)};
}

QSeries PhiGammaModule::nabla_cocycle() const {
    // nu = nabla(eta) + (w1 - w2) eta
    const QSeries& e = *eta_;
    return nabla(e) + e.scaled(weight(0) - weight(1));
}

QSeries PhiGammaModule::phi_cocycle() const {
    const QSeries& e = *eta_;
    return apply_phi(e).scaled(diag_[0].at_p()) - e.scaled(diag_[1].at_p());
}

QSeries PhiGammaModule::sigma_cocycle(const PAdic& a) const {
    const QSeries& e = *eta_;
    return apply_sigma(e, a).scaled(diag_[0].eval_unit(a)) -
           e.scaled(diag_[1].eval_unit(a));
}

void PhiGammaModule::validate(long samples) const {
    if (rank_ == 1 || !eta_) return;
    // the e1-coefficient of phi(sigma_a(e2)) = sigma_a(phi(e2))
    long tried = 0;
    for (long u = 2; tried < samples; ++u) {
        if (u % p_ == 0) continue;
        ++tried;
        PAdic a = PAdic::from_integer(p_, u);
        QSeries lhs = phi_cocycle().scaled(diag_[1].eval_unit(a)) +
                      apply_phi(sigma_cocycle(a)).scaled(diag_[0].at_p());
        QSeries rhs =
            sigma_cocycle(a).scaled(diag_[1].at_p()) +
            apply_sigma(phi_cocycle(), a).scaled(diag_[0].eval_unit(a));
        if (!(lhs - rhs).is_zero_at_prec())
            throw Error("PhiGammaModule: phi/sigma cocycles do not commute");
    }
}

ModElem PhiGammaModule::basis(long i, long trunc) const {
    ModElem z;
    for (long j = 0; j < rank_; ++j) {
        z.c.push_back(j == i
                          ? QSeries::constant(p_, Var::T,
                                              PAdic::from_integer(p_, 1), trunc)
                          : QSeries::zero(p_, Var::T, trunc));
    }
    return z;
}

std::string PhiGammaModule::manifest_json() const {
    std::ostringstream os;
    os << "{\"rank\":" << rank_ << ",\"weights\":[";
    for (long i = 0; i < rank_; ++i) {
        if (i) os << ",";
        os << "\"" << weight(i).str() << "\"";
    }
    os << "],\"delta_p\":[";
    for (long i = 0; i < rank_; ++i) {
        if (i) os << ",";
        os << "\"" << diag_[static_cast<size_t>(i)].at_p().str() << "\"";
    }
    os << "],\"cocycle\":\"" << (eta_ ? eta_->str() : std::string("0"))
       << "\"}";
    return os.str();
}

ModElem mod_phi(const PhiGammaModule& M, const ModElem& z) {
    ModElem r;
    r.c.push_back(apply_phi(z.c[0]).scaled(M.delta(0).at_p()));
    if (M.rank() == 2) {
        QSeries z2 = apply_phi(z.c[1]);
        if (M.has_extension())
            r.c[0] += (M.phi_cocycle() * z2).truncated(r.c[0].trunc());
        r.c.push_back(z2.scaled(M.delta(1).at_p()));
    }
    return r;
}

ModElem mod_psi(const PhiGammaModule& M, const ModElem& z) {
    ModElem r;
    if (M.rank() == 1) {
        r.c.push_back(psi(z.c[0]).scaled(M.delta(0).at_p().inv()));
        return r;
    }
    QSeries z1 = z.c[0];
    if (M.has_extension()) {
        // z1 - c_phi z2 / delta2(p) strips the cocycle interference
        z1 = z1 - (M.phi_cocycle() * z.c[1])
                      .truncated(z1.trunc())
                      .scaled(M.delta(1).at_p().inv());
    }
    r.c.push_back(psi(z1).scaled(M.delta(0).at_p().inv()));
    r.c.push_back(psi(z.c[1]).scaled(M.delta(1).at_p().inv()));
    return r;
}

ModElem mod_sigma(const PhiGammaModule& M, const ModElem& z, const PAdic& a) {
    ModElem r;
    r.c.push_back(apply_sigma(z.c[0], a).scaled(M.delta(0).eval_unit(a)));
    if (M.rank() == 2) {
        QSeries z2 = apply_sigma(z.c[1], a);
        if (M.has_extension())
            r.c[0] += (M.sigma_cocycle(a) * z2).truncated(r.c[0].trunc());
        r.c.push_back(z2.scaled(M.delta(1).eval_unit(a)));
    }
    return r;
}

ModElem mod_nabla(const PhiGammaModule& M, const ModElem& z) {
    ModElem r;
    r.c.push_back(nabla(z.c[0]) + z.c[0].scaled(M.weight(0)));
    if (M.rank() == 2) {
        if (M.has_extension())
            r.c[0] += (M.nabla_cocycle() * z.c[1]).truncated(r.c[0].trunc());
        r.c.push_back(nabla(z.c[1]) + z.c[1].scaled(M.weight(1)));
    }
    return r;
}

ModElem mod_mul_t(const PhiGammaModule& M, const ModElem& z) {
    (void)M;
    ModElem r;
    for (const auto& f : z.c) r.c.push_back(mul_t(f));
    return r;
}

ModElem mod_mul(const PhiGammaModule& M, const ModElem& z, const QSeries& f) {
    (void)M;
    ModElem r;
    for (const auto& g : z.c) r.c.push_back((g * f).truncated(g.trunc()));
    return r;
}

ModElem sen_poly_nabla(const PhiGammaModule& M, const ModElem& z) {
    auto [a, b] = M.sen_roots();
    ModElem w = mod_nabla(M, z) - z.scaled(b);
    return mod_nabla(M, w) - w.scaled(a);
}

namespace {

ModElem div_t_elem(const ModElem& z, const char* who) {
    ModElem r;
    for (const auto& f : z.c) {
        try {
            r.c.push_back(div_by_t(f));
        } catch (const DivisibilityError& e) {
            throw DivisibilityError(std::string(who) +
                                        ": Prop HC violation (input not "
                                        "divisible by t): " +
                                        e.what(),
                                    e.residue_valuation);
        }
    }
    return r;
}

}  // namespace

ModElem gl2_apply(const PhiGammaModule& M, Gl2 X, const ModElem& z) {
    PAdic K = M.weight_sum();
    PAdic one = PAdic::from_integer(M.prime(), 1);
    switch (X) {
        case Gl2::I2: return z.scaled(K - one);
        case Gl2::H: {
            ModElem n = mod_nabla(M, z);
            return n.scaled(PAdic::from_integer(M.prime(), 2)) -
                   z.scaled(K - one);
        }
        case Gl2::Uplus: return mod_mul_t(M, z);
        case Gl2::Uminus: {
            ModElem num = sen_poly_nabla(M, z);
            return -div_t_elem(num, "u^-");
        }
    }
    throw Error("gl2_apply: unreachable");
}

PAdic casimir_scalar(const PhiGammaModule& M) {
    auto [a, b] = M.sen_roots();
    PAdic d = a - b;
    return (d * d - PAdic::from_integer(M.prime(), 1)) /
           PAdic::from_integer(M.prime(), 2);
}

ModElem casimir_apply(const PhiGammaModule& M, const ModElem& z) {
    ModElem upm = gl2_apply(M, Gl2::Uplus, gl2_apply(M, Gl2::Uminus, z));
    ModElem ump = gl2_apply(M, Gl2::Uminus, gl2_apply(M, Gl2::Uplus, z));
    ModElem hh = gl2_apply(M, Gl2::H, gl2_apply(M, Gl2::H, z));
    return upm + ump + hh.scaled(PAdic::from_ratio(M.prime(), 1, 2));
}

ModElem uminus_iter_closed(const PhiGammaModule& M, long j, const ModElem& z) {
    auto [a, b] = M.sen_roots();
    long p = M.prime();
    if (!a.is_zero_at_prec())
        throw DomainError("uminus_iter_closed: weights must be (0, k)");
    ModElem acc = z;
    // nabla(nabla-1)...(nabla-j+1)
    for (long m = 0; m < j; ++m)
        acc = mod_nabla(M, acc) - acc.scaled(PAdic::from_integer(p, m));
    // (k-nabla)(k+1-nabla)...(k+j-1-nabla)
    for (long m = 0; m < j; ++m)
        acc = acc.scaled(b + PAdic::from_integer(p, m)) - mod_nabla(M, acc);
    for (long m = 0; m < j; ++m) acc = div_t_elem(acc, "uminus_iter_closed");
    return acc;
}

HcSample check_prop_hc(const PhiGammaModule& M, const ModElem& z) {
    ModElem num = sen_poly_nabla(M, z);
    HcSample s{};
    try {
        ModElem q = div_t_elem(num, "check_prop_hc");
        ModElem back = mod_mul_t(M, q);
        ModElem resid = back - num;
        s.residual_valuation = residual_valuation(resid);
        s.floor = std::min(min_abs_prec(back), min_abs_prec(num));
        s.divisible = true;
    } catch (const DivisibilityError& e) {
        s.residual_valuation = e.residue_valuation;
        s.floor = min_abs_prec(num);
        s.divisible = false;
    }
    return s;
}

}  // namespace robba
