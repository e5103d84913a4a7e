#include "cremona/unipoly.hpp"

#include <gmpxx.h>

namespace cremona {

namespace {

// ---- integer polynomial helpers (primitive PRS over Z) ----

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class zcontent(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void zdivide_content(ZPoly& p) {
    mpz_class g = zcontent(p);
    if (g == 0 || g == 1) return;
    for (auto& c : p) c /= g;
}

// Pseudo-remainder of a by b (deg a >= deg b >= 0).
ZPoly zprem(ZPoly a, const ZPoly& b) {
    int db = static_cast<int>(b.size()) - 1;
    const mpz_class& lb = b.back();
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int k = static_cast<int>(a.size()) - 1 - db;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[i + k] -= la * b[i];
        ztrim(a);
    }
    return a;
}

ZPoly to_zpoly(const UniPoly& p, mpz_class* den_out = nullptr) {
    mpz_class den = 1;
    for (const auto& c : p.coefficients()) {
        mpz_class d = c.den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        den = den / g * d;
    }
    ZPoly z(p.coefficients().size());
    for (size_t i = 0; i < z.size(); ++i) {
        const Rational& c = p.coefficients()[i];
        z[i] = c.num() * (den / c.den());
    }
    if (den_out) *den_out = den;
    return z;
}

UniPoly from_zpoly(const ZPoly& z) {
    std::vector<Rational> v(z.size());
    for (size_t i = 0; i < z.size(); ++i) v[i] = Rational(z[i]);
    return UniPoly(std::move(v));
}

// ---- Gaussian integer helpers (primitive PRS over Z[i]) ----

struct Gi {
    mpz_class re, im;
    bool is_zero() const { return re == 0 && im == 0; }
};

Gi gi_mul(const Gi& a, const Gi& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Gi gi_sub(const Gi& a, const Gi& b) { return {a.re - b.re, a.im - b.im}; }

mpz_class gi_norm(const Gi& a) { return a.re * a.re + a.im * a.im; }

mpz_class round_div(const mpz_class& a, const mpz_class& b) {
    // nearest integer to a/b
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r >= b) ++q;
    return q;
}

// Euclidean division in Z[i]: remainder of norm < norm(b).
Gi gi_mod(const Gi& a, const Gi& b) {
    mpz_class n = gi_norm(b);
    Gi ab = gi_mul(a, Gi{b.re, -b.im});
    Gi q{round_div(ab.re, n), round_div(ab.im, n)};
    return gi_sub(a, gi_mul(q, b));
}

Gi gi_gcd(Gi a, Gi b) {
    while (!b.is_zero()) {
        Gi r = gi_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// a / b for exact Gaussian integer division.
Gi gi_exact_div(const Gi& a, const Gi& b) {
    mpz_class n = gi_norm(b);
    Gi ab = gi_mul(a, Gi{b.re, -b.im});
    return {ab.re / n, ab.im / n};
}

using GiPoly = std::vector<Gi>;

void gtrim(GiPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Gi gcontent(const GiPoly& p) {
    Gi g{0, 0};
    for (const auto& c : p) {
        g = gi_gcd(g, c);
        if (gi_norm(g) == 1) break;
    }
    return g;
}

void gdivide_content(GiPoly& p) {
    Gi g = gcontent(p);
    if (g.is_zero() || gi_norm(g) == 1) return;
    for (auto& c : p) c = gi_exact_div(c, g);
}

GiPoly gprem(GiPoly a, const GiPoly& b) {
    int db = static_cast<int>(b.size()) - 1;
    const Gi lb = b.back();
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int k = static_cast<int>(a.size()) - 1 - db;
        Gi la = a.back();
        for (auto& c : a) c = gi_mul(c, lb);
        for (int i = 0; i <= db; ++i) a[i + k] = gi_sub(a[i + k], gi_mul(la, b[i]));
        gtrim(a);
    }
    return a;
}

GiPoly to_gipoly(const GaussUPoly& p) {
    mpz_class den = 1;
    for (const auto& c : p.coefficients()) {
        for (const mpz_class d : {c.re().den(), c.im().den()}) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
            den = den / g * d;
        }
    }
    GiPoly z(p.coefficients().size());
    for (size_t i = 0; i < z.size(); ++i) {
        const GaussRational& c = p.coefficients()[i];
        z[i] = {c.re().num() * (den / c.re().den()), c.im().num() * (den / c.im().den())};
    }
    return z;
}

GaussUPoly from_gipoly(const GiPoly& z) {
    std::vector<GaussRational> v(z.size());
    for (size_t i = 0; i < z.size(); ++i)
        v[i] = GaussRational(Rational(z[i].re), Rational(z[i].im));
    return GaussUPoly(std::move(v));
}

}  // namespace

UniPoly upoly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    ZPoly g = to_zpoly(a), h = to_zpoly(b);
    zdivide_content(g);
    zdivide_content(h);
    if (g.size() < h.size()) std::swap(g, h);
    while (!h.empty()) {
        ZPoly r = zprem(g, h);
        zdivide_content(r);
        g = std::move(h);
        h = std::move(r);
    }
    return from_zpoly(g).monic();
}

namespace {

bool all_real(const GaussUPoly& p) {
    for (const auto& c : p.coefficients())
        if (!c.is_real()) return false;
    return true;
}

}  // namespace

GaussUPoly upoly_gcd(const GaussUPoly& a, const GaussUPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (all_real(a) && all_real(b)) {
        // The gcd over Q of real polynomials stays their gcd over Q(i).
        auto real_part = [](const GaussUPoly& p) {
            std::vector<Rational> v(p.coefficients().size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = p.coefficients()[i].re();
            return UniPoly(std::move(v));
        };
        UniPoly g = upoly_gcd(real_part(a), real_part(b));
        std::vector<GaussRational> v(g.coefficients().size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = GaussRational(g.coefficients()[i]);
        return GaussUPoly(std::move(v));
    }
    GiPoly g = to_gipoly(a), h = to_gipoly(b);
    gdivide_content(g);
    gdivide_content(h);
    if (g.size() < h.size()) std::swap(g, h);
    while (!h.empty()) {
        GiPoly r = gprem(g, h);
        gdivide_content(r);
        g = std::move(h);
        h = std::move(r);
    }
    return from_gipoly(g).monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly f = p.monic();
    if (f.degree() == 0) return out;
    UniPoly g = upoly_gcd(f, f.derivative());
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    // Yun's algorithm.
    UniPoly c = f.exact_div(g);
    UniPoly d = f.derivative().exact_div(g) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        UniPoly h = upoly_gcd(c, d);
        if (h.degree() > 0) out.emplace_back(h, i);
        c = c.exact_div(h);
        d = d.exact_div(h) - c.derivative();
        ++i;
    }
    return out;
}

UniPoly odd_multiplicity_part(const UniPoly& p) {
    UniPoly out = UniPoly::one();
    for (const auto& [g, mult] : squarefree_decomposition(p))
        if (mult % 2 == 1) out *= g;
    return out.monic();
}

}  // namespace cremona
