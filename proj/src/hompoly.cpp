#include "cremona/hompoly.hpp"

#include <cctype>
#include <stdexcept>

namespace cremona {

void HomPoly3::insert(const Monomial3& m, const GaussRational& c) {
    if (c.is_zero()) return;
    if (!terms_.empty() && m.total() != degree())
        throw std::domain_error("HomPoly3: mixed total degrees");
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

HomPoly3 hompoly_from_map(std::map<Monomial3, GaussRational> t) {
    HomPoly3 p;
    for (auto& [m, c] : t) p.insert(m, c);
    return p;
}

HomPoly3 HomPoly3::variable(int idx, int deg) {
    Monomial3 m;
    m.e[idx] = deg;
    HomPoly3 p;
    p.insert(m, GaussRational(1));
    return p;
}

HomPoly3 HomPoly3::constant(const GaussRational& c) {
    HomPoly3 p;
    p.insert(Monomial3{}, c);
    return p;
}

HomPoly3 HomPoly3::from_terms(std::vector<std::pair<Monomial3, GaussRational>> terms) {
    HomPoly3 p;
    for (auto& [m, c] : terms) p.insert(m, c);
    return p;
}

bool HomPoly3::is_real() const {
    for (const auto& [m, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

HomPoly3 HomPoly3::conj() const {
    HomPoly3 p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, c.conj());
    return p;
}

HomPoly3 HomPoly3::operator-() const {
    HomPoly3 p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

HomPoly3 operator+(const HomPoly3& a, const HomPoly3& b) {
    if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
        throw std::domain_error("HomPoly3: adding different degrees");
    HomPoly3 p = a;
    for (const auto& [m, c] : b.terms_) p.insert(m, c);
    return p;
}

HomPoly3 operator-(const HomPoly3& a, const HomPoly3& b) { return a + (-b); }

HomPoly3 operator*(const HomPoly3& a, const HomPoly3& b) {
    HomPoly3 p;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial3 m{{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2]}};
            p.insert(m, ca * cb);
        }
    return p;
}

HomPoly3 HomPoly3::scaled(const GaussRational& c) const {
    HomPoly3 p;
    if (c.is_zero()) return p;
    for (const auto& [m, a] : terms_) p.terms_.emplace(m, a * c);
    return p;
}

GaussRational HomPoly3::eval(const GaussRational& x, const GaussRational& y,
                             const GaussRational& z) const {
    int d = degree();
    if (d < 0) return GaussRational(0);
    std::vector<GaussRational> px(d + 1, GaussRational(1)), py = px, pz = px;
    for (int i = 1; i <= d; ++i) {
        px[i] = px[i - 1] * x;
        py[i] = py[i - 1] * y;
        pz[i] = pz[i - 1] * z;
    }
    GaussRational r(0);
    for (const auto& [m, c] : terms_) r += c * px[m.e[0]] * py[m.e[1]] * pz[m.e[2]];
    return r;
}

HomPoly3 HomPoly3::derivative(int var) const {
    HomPoly3 p;
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial3 n = m;
        n.e[var] -= 1;
        p.insert(n, c * GaussRational(m.e[var]));
    }
    return p;
}

HomPoly3 HomPoly3::substitute(const HomPoly3& s0, const HomPoly3& s1,
                              const HomPoly3& s2) const {
    int d = degree();
    if (d < 0) return HomPoly3();
    auto powers = [d](const HomPoly3& s) {
        std::vector<HomPoly3> p(d + 1);
        p[0] = HomPoly3::constant(GaussRational(1));
        for (int i = 1; i <= d; ++i) p[i] = p[i - 1] * s;
        return p;
    };
    std::vector<HomPoly3> p0 = powers(s0), p1 = powers(s1), p2 = powers(s2);
    HomPoly3 r;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        HomPoly3 t = (p0[m.e[0]] * p1[m.e[1]] * p2[m.e[2]]).scaled(c);
        if (first) {
            r = std::move(t);
            first = false;
        } else {
            r += t;
        }
    }
    return r;
}

HomPoly3 HomPoly3::normalized() const {
    if (is_zero()) return *this;
    return scaled(terms_.begin()->second.inv());
}

HomPoly3 HomPoly3::exact_div(const HomPoly3& d) const {
    if (d.is_zero()) throw std::domain_error("HomPoly3: division by zero");
    HomPoly3 rem = *this, q;
    const auto& [dm, dc] = *d.terms_.begin();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = *rem.terms_.begin();
        Monomial3 t{{rm.e[0] - dm.e[0], rm.e[1] - dm.e[1], rm.e[2] - dm.e[2]}};
        if (t.e[0] < 0 || t.e[1] < 0 || t.e[2] < 0)
            throw std::domain_error("HomPoly3: inexact division");
        HomPoly3 term;
        term.insert(t, rc / dc);
        rem -= term * d;
        q += term;
    }
    return q;
}

// ---------------- text grammar ----------------

namespace {

struct PolyParser {
    std::string s;
    size_t pos = 0;

    explicit PolyParser(const std::string& text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }

    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + why);
    }

    int var_index(char c) const {
        switch (c) {
            case 'x': return 0;
            case 'y': return 1;
            case 'z': return 2;
            case 't': return 3;
        }
        return -1;
    }

    Rational parse_number() {
        size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == start) fail("expected number");
        std::string num = s.substr(start, pos - start);
        if (peek() == '/') {
            ++pos;
            size_t dstart = pos;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (pos == dstart) fail("expected denominator");
            num += "/" + s.substr(dstart, pos - dstart);
        }
        return Rational::from_string(num);
    }

    int parse_exponent() {
        if (peek() != '^') return 1;
        ++pos;
        size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == start) fail("expected exponent");
        return std::stoi(s.substr(start, pos - start));
    }

    // factor := number | 'i' | var['^' n] | '(' gaussian ')'
    void parse_factor(GaussRational& coef, std::array<int, 4>& exps) {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational r = parse_number();
            int e = parse_exponent();
            coef *= GaussRational(pow(r, static_cast<unsigned>(e)));
        } else if (c == 'i' || c == 'I') {
            ++pos;
            int e = parse_exponent();
            GaussRational unit = GaussRational::i();
            for (int k = 0; k < e; ++k) coef *= unit;
        } else if (c == '(') {
            size_t depth = 0, start = pos;
            do {
                if (peek() == '(') ++depth;
                if (peek() == ')') --depth;
                ++pos;
                if (pos > s.size()) fail("unbalanced parenthesis");
            } while (depth > 0);
            GaussRational g = gauss_from_string(s.substr(start + 1, pos - start - 2));
            int e = parse_exponent();
            for (int k = 0; k < e; ++k) coef *= g;
        } else if (int vi = var_index(c); vi >= 0) {
            ++pos;
            exps[vi] += parse_exponent();
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    // term := [sign] factor (['*'] factor)*
    void parse_term(std::map<std::array<int, 4>, GaussRational>& acc) {
        int sign = 1;
        while (peek() == '+' || peek() == '-') {
            if (peek() == '-') sign = -sign;
            ++pos;
        }
        if (done()) fail("dangling sign");
        GaussRational coef(sign);
        std::array<int, 4> exps{0, 0, 0, 0};
        parse_factor(coef, exps);
        while (!done() && peek() != '+' && peek() != '-') {
            if (peek() == '*') ++pos;
            parse_factor(coef, exps);
        }
        auto [it, fresh] = acc.emplace(exps, coef);
        if (!fresh) it->second += coef;
    }

    std::map<std::array<int, 4>, GaussRational> parse() {
        std::map<std::array<int, 4>, GaussRational> acc;
        if (done()) fail("empty polynomial");
        while (!done()) parse_term(acc);
        return acc;
    }
};

}  // namespace

HomPoly3 parse_hompoly(const std::string& text) {
    PolyParser p(text);
    auto acc = p.parse();
    HomPoly3 out;
    std::map<Monomial3, GaussRational> t;
    for (const auto& [e, c] : acc) {
        if (e[3] != 0) throw std::invalid_argument("variable t not allowed here");
        if (c.is_zero()) continue;
        Monomial3 m{{e[0], e[1], e[2]}};
        t[m] = c;
    }
    return hompoly_from_map(std::move(t));
}

UniPoly parse_unipoly(const std::string& text) {
    PolyParser p(text);
    auto acc = p.parse();
    std::vector<Rational> coef;
    for (const auto& [e, c] : acc) {
        if (e[0] || e[1] || e[2])
            throw std::invalid_argument("only variable t allowed here");
        if (!c.is_real()) throw std::invalid_argument("coefficients must be real here");
        if (static_cast<size_t>(e[3]) >= coef.size()) coef.resize(e[3] + 1, Rational(0));
        coef[e[3]] += c.re();
    }
    return UniPoly(std::move(coef));
}

namespace {

std::string coeff_prefix(const GaussRational& c, bool leading, bool* negated) {
    // Renders the coefficient followed by '*', folding signs into the
    // separator; *negated reports whether "-" was emitted instead of the value.
    *negated = false;
    std::string sep = leading ? "" : " + ";
    GaussRational v = c;
    if (c.im().is_zero() && c.re().sign() < 0) {
        sep = leading ? "-" : " - ";
        v = -c;
        *negated = true;
    } else if (c.re().is_zero() && c.im().sign() < 0) {
        sep = leading ? "-" : " - ";
        v = -c;
        *negated = true;
    }
    if (v.is_one()) return sep;
    std::string lit = v.str();
    bool needs_parens = !v.re().is_zero() && !v.im().is_zero();
    if (needs_parens) lit = "(" + lit + ")";
    return sep + lit + "*";
}

std::string monomial_str(const char* names[], const int* exps, int nvars) {
    std::string s;
    for (int v = 0; v < nvars; ++v) {
        if (exps[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[v];
        if (exps[v] > 1) s += "^" + std::to_string(exps[v]);
    }
    return s;
}

}  // namespace

std::string HomPoly3::str() const {
    if (is_zero()) return "0";
    static const char* names[] = {"x", "y", "z"};
    std::string out;
    bool leading = true;
    for (const auto& [m, c] : terms_) {
        std::string mono = monomial_str(names, m.e.data(), 3);
        bool neg;
        std::string pre = coeff_prefix(c, leading, &neg);
        if (mono.empty()) {
            GaussRational v = neg ? -c : c;
            out += (leading ? "" : (neg ? " - " : " + "));
            std::string lit = v.str();
            if (!v.re().is_zero() && !v.im().is_zero()) lit = "(" + lit + ")";
            out += lit;
        } else {
            out += pre + mono;
        }
        leading = false;
    }
    return out;
}

std::string unipoly_to_string(const UniPoly& p) {
    if (p.is_zero()) return "0";
    static const char* names[] = {"t"};
    std::string out;
    bool leading = true;
    for (int d = p.degree(); d >= 0; --d) {
        Rational c = p.coeff(d);
        if (c.is_zero()) continue;
        int e[1] = {d};
        std::string mono = monomial_str(names, e, 1);
        bool neg;
        std::string pre = coeff_prefix(GaussRational(c), leading, &neg);
        if (mono.empty()) {
            Rational v = neg ? -c : c;
            out += (leading ? (neg ? "-" : "") : (neg ? " - " : " + ")) + v.str();
        } else {
            out += pre + mono;
        }
        leading = false;
    }
    return out;
}

}  // namespace cremona
