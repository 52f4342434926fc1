#include "robba/textio.hpp"

#include <algorithm>
#include <cctype>

namespace robba {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

/// split on a delimiter at paren depth 0
std::vector<std::string> split_top(const std::string& s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == delim && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

PAdic parse_padic(long p, const std::string& text, long prec) {
    std::string s = strip(text);
    if (s.empty()) throw Error("parse_padic: empty literal");
    // O(p^N)
    if (s.size() > 2 && s[0] == 'O') {
        size_t caret = s.find('^');
        long N = std::stol(s.substr(caret + 1, s.size() - caret - 2));
        return PAdic::zero_mod(p, N);
    }
    // p^v * u + O(p^N)
    size_t star = s.find('*');
    size_t plus = s.find("+ O(");
    if (s.find('^') != std::string::npos && star != std::string::npos &&
        plus != std::string::npos) {
        size_t caret = s.find('^');
        long v = std::stol(s.substr(caret + 1, star - caret - 1));
        mpz_class u(strip(s.substr(star + 1, plus - star - 1)));
        size_t caret2 = s.find('^', plus);
        long N = std::stol(s.substr(caret2 + 1, s.size() - caret2 - 2));
        return PAdic::from_unit(p, v, u, N - v);
    }
    // rational a or a/b: exact data, stored at saturated precision
    (void)prec;
    size_t slash = s.find('/');
    if (slash == std::string::npos)
        return PAdic::from_integer(p, mpz_class(s));
    return PAdic::from_ratio(p, mpz_class(s.substr(0, slash)),
                             mpz_class(s.substr(slash + 1)));
}

QSeries parse_series(long p, const std::string& text, long prec) {
    // normalize "- x" into "+ -x" at depth 0 so we can split on '+'
    std::string s = strip(text);
    std::string norm;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '-' && depth == 0 && i > 0 && s[i - 1] == ' ') {
            norm += "+ -";
        } else {
            norm.push_back(c);
        }
    }
    long trunc = PREC_INF;
    std::vector<std::pair<long, PAdic>> terms;
    for (std::string raw : split_top(norm, '+')) {
        std::string t = strip(raw);
        if (t.empty()) continue;
        if (t[0] == 'O') {
            size_t caret = t.find('^');
            trunc = std::stol(t.substr(caret + 1, t.size() - caret - 2));
            continue;
        }
        bool neg = false;
        if (t[0] == '-' && t.size() > 1 && !std::isdigit(t[1]) ) {
            neg = true;
            t = strip(t.substr(1));
        }
        // c/T^k form
        {
            size_t slash = t.find('/');
            if (slash != std::string::npos && slash + 1 < t.size() &&
                t[slash + 1] == 'T') {
                std::string head = strip(t.substr(0, slash));
                long k = 1;
                size_t caret = t.find('^', slash);
                if (caret != std::string::npos)
                    k = std::stol(t.substr(caret + 1));
                PAdic c = parse_padic(p, head.empty() ? "1" : head, prec);
                if (neg) c = -c;
                terms.emplace_back(-k, c);
                continue;
            }
        }
        // [coef *] T[^k]  or plain coef
        long deg = 0;
        std::string coef_text = t;
        size_t tpos = std::string::npos;
        int d2 = 0;
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '(') ++d2;
            if (t[i] == ')') --d2;
            if (t[i] == 'T' && d2 == 0) {
                tpos = i;
                break;
            }
        }
        if (tpos != std::string::npos) {
            deg = 1;
            size_t caret = t.find('^', tpos);
            if (caret != std::string::npos)
                deg = std::stol(t.substr(caret + 1));
            std::string head = strip(t.substr(0, tpos));
            if (!head.empty() && head.back() == '*')
                head = strip(head.substr(0, head.size() - 1));
            coef_text = head.empty() ? "1" : head;
        }
        if (!coef_text.empty() && coef_text.front() == '(' &&
            coef_text.back() == ')')
            coef_text = coef_text.substr(1, coef_text.size() - 2);
        PAdic c = parse_padic(p, coef_text, prec);
        if (neg) c = -c;
        terms.emplace_back(deg, c);
    }
    long lo = 0, hi = 0;
    for (const auto& [d, c] : terms) {
        lo = std::min(lo, d);
        hi = std::max(hi, d + 1);
    }
    if (terms.empty()) return QSeries::zero(p, Var::T, trunc);
    std::vector<PAdic> cs(static_cast<size_t>(hi - lo), PAdic::exact_zero(p));
    for (const auto& [d, c] : terms) cs[static_cast<size_t>(d - lo)] += c;
    return QSeries::from_coeffs(p, Var::T, lo, std::move(cs), trunc,
                                DEFAULT_TAIL_BOUND,
                                trunc >= PREC_INF / 2 ? PREC_INF : 0);
}

Measure parse_measure(long p, const std::string& text, long prec, long len) {
    std::string s = strip(text);
    if (s.rfind("mahler:", 0) == 0) {
        std::vector<PAdic> c;
        for (std::string part : split_top(s.substr(7), ','))
            c.push_back(parse_padic(p, strip(part), prec));
        long bound = 0;
        for (const auto& a : c)
            if (!a.is_zero_at_prec()) bound = std::min(bound, a.valuation());
        return Measure(p, std::move(c), bound);
    }
    if (s.rfind("dirac:", 0) == 0) {
        std::vector<std::pair<PAdic, PAdic>> pts;
        for (std::string part : split_top(s.substr(6), ',')) {
            auto bits = split_top(strip(part), ':');
            PAdic pt = parse_padic(p, strip(bits[0]), prec);
            PAdic mass = bits.size() > 1 ? parse_padic(p, strip(bits[1]), prec)
                                         : PAdic::from_integer(p, 1);
            pts.emplace_back(mass, pt);
        }
        return Measure::diracs(p, std::move(pts), len);
    }
    throw Error("parse_measure: expected 'mahler:' or 'dirac:' literal");
}

std::variant<QSeries, PAdic> eval_pipeline(const std::string& expr,
                                           QSeries f, const EvalConfig& cfg) {
    std::vector<std::string> ops;
    for (std::string tok : split_top(strip(expr), ' '))
        if (!strip(tok).empty()) ops.push_back(strip(tok));
    // right-to-left
    for (size_t i = ops.size(); i-- > 0;) {
        const std::string& op = ops[i];
        std::string name = op, arg;
        size_t paren = op.find('(');
        if (paren != std::string::npos) {
            name = op.substr(0, paren);
            arg = op.substr(paren + 1, op.size() - paren - 2);
        }
        if (name == "res") {
            if (i != 0) throw Error("eval: res must be the leftmost op");
            return residue(f, ResidueForm::dT_over_1pT);
        }
        if (name == "phi") {
            f = f.exact() && f.lo() >= 0 ? apply_phi(f)
                                         : apply_phi(f, f.exact() ? cfg.trunc_T
                                                                  : -1);
        } else if (name == "psi") {
            f = psi(f);
        } else if (name == "sigma") {
            f = apply_sigma(f, parse_padic(cfg.p, arg, cfg.prec),
                            f.exact() ? cfg.trunc_T : -1);
        } else if (name == "nabla") {
            f = nabla(f, f.exact() ? cfg.trunc_T : -1);
        } else if (name == "mul_t") {
            f = mul_t(f, f.exact() ? cfg.trunc_T : -1);
        } else if (name == "div_t") {
            f = div_by_t(f, true, f.exact() ? cfg.trunc_T : -1);
        } else if (name == "pow1pT") {
            QSeries g = one_plus_T_pow(cfg.p, parse_padic(cfg.p, arg, cfg.prec),
                                       f.exact() ? cfg.trunc_T : f.trunc());
            f = (f * g).truncated(g.trunc());
        } else if (name == "restrict") {
            f = restrict(f, CompactOpen::parse(cfg.p, arg),
                         f.exact() ? cfg.trunc_T : -1);
        } else {
            throw Error("eval: unknown op '" + name +
                        "' (try phi, psi, sigma(a), nabla, mul_t, div_t, "
                        "res, pow1pT(b), restrict(U))");
        }
    }
    return f;
}

}  // namespace robba
