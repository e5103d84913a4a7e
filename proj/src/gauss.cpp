#include "cremona/gauss.hpp"

#include <cctype>
#include <stdexcept>

namespace cremona {

std::string gauss_to_string(const GaussRational& g) {
    if (g.is_zero()) return "0";
    std::string s;
    if (!g.re().is_zero()) s = g.re().str();
    if (!g.im().is_zero()) {
        Rational im = g.im();
        if (!s.empty() && im.sign() > 0) s += "+";
        if (im == Rational(1)) {
            s += "i";
        } else if (im == Rational(-1)) {
            s += "-i";
        } else {
            s += im.str() + "i";
        }
    }
    return s;
}

namespace {

// Parses one signed rational-or-i token starting at pos: "3", "-3/2", "i",
// "3i", "3/2i". Advances pos.
GaussRational parse_term(const std::string& s, size_t& pos) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') sign = -sign;
        ++pos;
    }
    size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
        ++pos;
    Rational mag(1);
    if (pos > start) mag = Rational::from_string(s.substr(start, pos - start));
    bool imaginary = false;
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'I')) {
        imaginary = true;
        ++pos;
    }
    if (pos == start && !imaginary) throw std::invalid_argument("bad Gaussian literal: " + s);
    if (sign < 0) mag = -mag;
    return imaginary ? GaussRational(Rational(0), mag) : GaussRational(mag);
}

}  // namespace

GaussRational gauss_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty Gaussian literal");
    size_t pos = 0;
    GaussRational total(0);
    while (pos < s.size()) total += parse_term(s, pos);
    return total;
}

std::optional<GaussRational> gauss_sqrt(const GaussRational& g) {
    if (g.is_zero()) return GaussRational(0);
    // (c + di)^2 = a + bi  =>  c^2 = (a + |g|)/2, d = b / (2c), with |g|
    // the rational square root of the norm.
    auto mod = rational_sqrt(g.norm());
    if (!mod) return std::nullopt;
    Rational half_sum = (g.re() + *mod) / Rational(2);
    if (auto c = rational_sqrt(half_sum)) {
        if (!c->is_zero()) {
            Rational d = g.im() / (Rational(2) * *c);
            GaussRational r(*c, d);
            if (r * r == g) return r;
        }
    }
    // Pure-imaginary square root (a + |g| = 0 case): g = -c^2 real negative.
    Rational half_diff = (*mod - g.re()) / Rational(2);
    if (auto d = rational_sqrt(half_diff)) {
        GaussRational r(Rational(0), *d);
        if (r * r == g) return r;
    }
    return std::nullopt;
}

}  // namespace cremona
