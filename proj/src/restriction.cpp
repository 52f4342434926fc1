#include "robba/restriction.hpp"

#include <algorithm>
#include <sstream>

namespace robba {

namespace {

long pow_long(long p, long n) {
    long r = 1;
    while (n-- > 0) r *= p;
    return r;
}

}  // namespace

CompactOpen::CompactOpen(long p, long level, std::vector<long> residues)
    : p_(p), n_(level), res_(std::move(residues)) {
    if (level < 0) throw Error("CompactOpen: negative level");
    long pn = pow_long(p_, n_);
    for (auto& r : res_) {
        r %= pn;
        if (r < 0) r += pn;
    }
    std::sort(res_.begin(), res_.end());
    res_.erase(std::unique(res_.begin(), res_.end()), res_.end());
    canonicalize();
}

CompactOpen CompactOpen::cls(long p, long a, long level) {
    return CompactOpen(p, level, {a});
}

CompactOpen CompactOpen::units(long p) {
    std::vector<long> r;
    for (long a = 1; a < p; ++a) r.push_back(a);
    return CompactOpen(p, 1, r);
}

void CompactOpen::canonicalize() {
    while (n_ > 0) {
        long q = pow_long(p_, n_ - 1);
        if (static_cast<long>(res_.size()) % p_ != 0) return;
        // all p lifts of each class mod p^(n-1) must be present
        std::vector<long> lower;
        for (size_t i = 0; i < res_.size(); ++i) {
            if (res_[i] < q) {
                long base = res_[i];
                for (long j = 1; j < p_; ++j) {
                    if (!std::binary_search(res_.begin(), res_.end(),
                                            base + j * q))
                        return;
                }
                lower.push_back(base);
            } else if (!std::binary_search(res_.begin(), res_.end(),
                                           res_[i] % q)) {
                return;
            }
        }
        if (static_cast<long>(lower.size()) * p_ !=
            static_cast<long>(res_.size()))
            return;
        res_ = std::move(lower);
        --n_;
    }
}

bool CompactOpen::contains(long x) const {
    long pn = pow_long(p_, n_);
    long r = x % pn;
    if (r < 0) r += pn;
    return std::binary_search(res_.begin(), res_.end(), r);
}

CompactOpen CompactOpen::lifted_to(long m) const {
    if (m < n_) throw Error("CompactOpen::lifted_to: lower level");
    long pn = pow_long(p_, n_);
    long step = pow_long(p_, m - n_);
    std::vector<long> out;
    out.reserve(res_.size() * static_cast<size_t>(step));
    for (long j = 0; j < step; ++j)
        for (long r : res_) out.push_back(r + j * pn);
    return CompactOpen(p_, m, std::move(out));
}

CompactOpen CompactOpen::complement() const {
    long pn = pow_long(p_, n_);
    std::vector<long> out;
    for (long r = 0; r < pn; ++r)
        if (!std::binary_search(res_.begin(), res_.end(), r)) out.push_back(r);
    return CompactOpen(p_, n_, std::move(out));
}

CompactOpen CompactOpen::intersect(const CompactOpen& o) const {
    long m = std::max(n_, o.n_);
    CompactOpen A = lifted_to(m), B = o.lifted_to(m);
    std::vector<long> out;
    std::set_intersection(A.res_.begin(), A.res_.end(), B.res_.begin(),
                          B.res_.end(), std::back_inserter(out));
    return CompactOpen(p_, m, std::move(out));
}

CompactOpen CompactOpen::unite(const CompactOpen& o) const {
    long m = std::max(n_, o.n_);
    CompactOpen A = lifted_to(m), B = o.lifted_to(m);
    std::vector<long> out;
    std::set_union(A.res_.begin(), A.res_.end(), B.res_.begin(), B.res_.end(),
                   std::back_inserter(out));
    return CompactOpen(p_, m, std::move(out));
}

bool CompactOpen::operator==(const CompactOpen& o) const {
    return p_ == o.p_ && n_ == o.n_ && res_ == o.res_;
}

std::string CompactOpen::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < res_.size(); ++i) {
        if (i) os << ",";
        os << res_[i];
    }
    os << "@" << n_;
    return os.str();
}

CompactOpen CompactOpen::parse(long p, const std::string& s) {
    auto at = s.find('@');
    if (at == std::string::npos)
        throw Error("CompactOpen::parse: missing '@level'");
    long level = std::stol(s.substr(at + 1));
    std::vector<long> rs;
    std::string head = s.substr(0, at);
    size_t pos = 0;
    while (pos < head.size()) {
        size_t comma = head.find(',', pos);
        if (comma == std::string::npos) comma = head.size();
        if (comma > pos) rs.push_back(std::stol(head.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return CompactOpen(p, level, std::move(rs));
}

PPlus PPlus::compose(const PPlus& o) const {
    // (p^k a, b)(p^k' a', b') = (p^(k+k') a a', p^k a b' + b)
    return PPlus(k + o.k, a * o.a, a.shift(k) * o.b + b);
}

PAdic PPlus::apply(const PAdic& x) const { return a.shift(k) * x + b; }

QSeries pplus_act(const PPlus& g, const QSeries& f, long out_trunc) {
    long p = f.prime();
    QSeries z = apply_sigma(f, g.a, out_trunc);
    for (long i = 0; i < g.k; ++i) z = apply_phi(z);
    if (g.b.is_exact_zero()) return z;
    if (z.exact()) {
        if (out_trunc < 0)
            throw DomainError("pplus_act: exact input needs a truncation order");
        z = z.truncated(out_trunc);
    }
    long len = z.trunc() - std::min<long>(0, z.lo());
    return (one_plus_T_pow(p, g.b, len) * z).truncated(z.trunc());
}

QSeries restrict_class(const QSeries& f, long a, long n, long out_trunc) {
    long p = f.prime();
    long R = out_trunc >= 0 ? out_trunc : (f.exact() ? -1 : f.trunc());
    if (R < 0)
        throw DomainError("restrict_class: exact input needs a truncation order");
    QSeries z = f;
    if (a != 0) {
        QSeries down = f.exact()
                           ? f
                           : f.truncated(R);
        z = one_plus_T_pow(p, PAdic::from_integer(p, -a),
                           R - std::min<long>(0, f.lo())) *
            down;
    }
    for (long i = 0; i < n; ++i) z = psi(z);
    for (long i = 0; i < n; ++i) z = apply_phi(z);
    if (a != 0) z = one_plus_T_int_pow(p, a, R - std::min<long>(0, z.lo())) * z;
    return z.truncated(R);
}

QSeries restrict(const QSeries& f, const CompactOpen& U, long out_trunc) {
    if (U.is_all()) return out_trunc >= 0 ? f.truncated(out_trunc) : f;
    long R = out_trunc >= 0 ? out_trunc : (f.exact() ? -1 : f.trunc());
    if (R < 0)
        throw DomainError("restrict: exact input needs a truncation order");
    QSeries acc = QSeries::zero(f.prime(), Var::T, R);
    for (long a : U.residues()) acc += restrict_class(f, a, U.level(), R);
    return acc;
}

CompactOpen preimage(const PPlus& g, const CompactOpen& U) {
    long p = U.prime();
    long n = U.level();
    // g(x) = p^k a x + b lands in a class mod p^n; x matters mod p^(n-k)
    long m = std::max<long>(0, n - g.k);
    long pm = pow_long(p, m);
    long pn = pow_long(p, n);
    long lift_level = std::max<long>(1, n);
    long aM = g.a.lift_mod(lift_level).get_si() % pn;
    long bM = g.b.lift_mod(lift_level).get_si() % pn;
    std::vector<long> out;
    for (long x = 0; x < pm; ++x) {
        long img = ((pow_long(p, g.k) % pn) * ((aM * x) % pn)) % pn;
        img = (img + bM) % pn;
        if (U.contains(img)) out.push_back(x);
    }
    return CompactOpen(p, m, std::move(out));
}

}  // namespace robba
