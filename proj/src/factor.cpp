#include "cremona/factor.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace cremona {

namespace {

// ---------------- arithmetic mod a word-sized prime ----------------

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod_u(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod_u(a % p, p - 2, p); }

bool is_prime_u(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
        uint64_t x = powmod_u(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// ---------------- polynomials over F_p ----------------

using FpPoly = std::vector<uint64_t>;  // coefficient i of x^i; normalized

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
    fp_trim(r);
    return r;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, uint64_t p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    fp_trim(a);
    return a;
}

// a mod m (and optionally quotient), m nonzero
FpPoly fp_rem(FpPoly a, const FpPoly& m, uint64_t p, FpPoly* quot = nullptr) {
    int dm = fp_deg(m);
    uint64_t inv = invmod(m.back(), p);
    FpPoly q;
    if (quot) q.assign(std::max(fp_deg(a) - dm + 1, 0), 0);
    while (fp_deg(a) >= dm) {
        int k = fp_deg(a) - dm;
        uint64_t c = mulmod(a.back(), inv, p);
        if (quot) q[k] = c;
        for (int i = 0; i <= dm; ++i)
            a[i + k] = (a[i + k] + p - mulmod(c, m[i], p)) % p;
        fp_trim(a);
    }
    if (quot) {
        fp_trim(q);
        *quot = q;
    }
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

FpPoly fp_powmod(FpPoly base, uint64_t e, const FpPoly& m, uint64_t p) {
    FpPoly r{1};
    base = fp_rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = fp_rem(fp_mul(r, base, p), m, p);
        base = fp_rem(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// s*a + t*b = gcd (monic); degrees of s, t reduced.
void fp_ext_gcd(FpPoly a, FpPoly b, uint64_t p, FpPoly& s, FpPoly& t, FpPoly& g) {
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
        FpPoly q;
        FpPoly r = fp_rem(a, b, p, &q);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
    for (auto& c : s0) c = mulmod(c, inv, p);
    for (auto& c : t0) c = mulmod(c, inv, p);
    g = std::move(a);
    s = std::move(s0);
    t = std::move(t0);
}

// Roots in F_p of a squarefree polynomial (equal-degree splitting, degree 1).
void fp_collect_roots(const FpPoly& f, uint64_t p, std::vector<uint64_t>& out) {
    int d = fp_deg(f);
    if (d <= 0) return;
    if (d == 1) {
        // f = c1 x + c0 -> root = -c0/c1
        out.push_back(mulmod(p - (f[0] % p), invmod(f[1], p), p));
        return;
    }
    for (uint64_t shift = 0;; ++shift) {
        // gcd(f, (x+shift)^((p-1)/2) - 1)
        FpPoly base{shift % p, 1};
        FpPoly w = fp_powmod(base, (p - 1) / 2, f, p);
        if (w.empty())
            w = FpPoly{p - 1};
        else
            w[0] = (w[0] + p - 1) % p;
        fp_trim(w);
        FpPoly g = fp_gcd(f, w, p);
        int dg = fp_deg(g);
        if (dg > 0 && dg < d) {
            fp_collect_roots(g, p, out);
            FpPoly q;
            fp_rem(f, g, p, &q);
            fp_collect_roots(q, p, out);
            return;
        }
    }
}

// Splits a product of irreducible quadratics into its factors.
void fp_collect_quadratics(const FpPoly& f, uint64_t p, std::vector<FpPoly>& out) {
    int d = fp_deg(f);
    if (d <= 0) return;
    if (d == 2) {
        FpPoly m = f;
        uint64_t inv = invmod(m.back(), p);
        for (auto& c : m) c = mulmod(c, inv, p);
        out.push_back(m);
        return;
    }
    uint64_t half = (p * p - 1) / 2;  // p < 2^31 keeps p^2 in range
    for (uint64_t c = 1;; ++c) {
        FpPoly base{c % p, 1};  // probe x + c
        FpPoly w = fp_powmod(base, half, f, p);
        if (w.empty())
            w = FpPoly{p - 1};
        else
            w[0] = (w[0] + p - 1) % p;
        fp_trim(w);
        FpPoly g = fp_gcd(f, w, p);
        int dg = fp_deg(g);
        if (dg > 0 && dg < d) {
            fp_collect_quadratics(g, p, out);
            FpPoly q;
            fp_rem(f, g, p, &q);
            fp_collect_quadratics(q, p, out);
            return;
        }
    }
}

// ---------------- integer polynomial helpers ----------------

using ZPoly = std::vector<mpz_class>;

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

ZPoly z_sub(ZPoly a, const ZPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), mpz_class(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

void z_mod_sym(ZPoly& a, const mpz_class& m) {
    mpz_class half = m / 2;
    for (auto& c : a) {
        c = ((c % m) + m) % m;
        if (c > half) c -= m;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder (and quotient) of division by a monic modulus, coefficients mod m.
ZPoly z_rem_monic(ZPoly a, const ZPoly& g, const mpz_class& m, ZPoly* quot = nullptr) {
    int dg = static_cast<int>(g.size()) - 1;
    ZPoly q;
    if (quot) q.assign(std::max(static_cast<int>(a.size()) - dg, 0), mpz_class(0));
    while (static_cast<int>(a.size()) - 1 >= dg && !a.empty()) {
        int k = static_cast<int>(a.size()) - 1 - dg;
        mpz_class c = a.back() % m;
        if (quot) q[k] = c;
        for (int i = 0; i <= dg; ++i) a[i + k] -= c * g[i];
        z_mod_sym(a, m);
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    if (quot) {
        z_mod_sym(q, m);
        *quot = q;
    }
    z_mod_sym(a, m);
    return a;
}

mpz_class z_eval(const ZPoly& f, const mpz_class& x, const mpz_class& m) {
    mpz_class r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = (r * x + *it) % m;
    return r;
}

ZPoly from_fp(const FpPoly& f) {
    ZPoly z(f.size());
    for (size_t i = 0; i < f.size(); ++i) z[i] = mpz_class(static_cast<unsigned long>(f[i]));
    return z;
}

// ---------------- Hensel machinery ----------------

// Newton-lifts a simple root of monic F from mod p to mod p^(2^k) >= target.
mpz_class lift_root(const ZPoly& F, const ZPoly& dF, uint64_t p, mpz_class target,
                    uint64_t root, mpz_class* modulus_out) {
    mpz_class m(static_cast<unsigned long>(p));
    mpz_class r(static_cast<unsigned long>(root));
    while (m < target) {
        mpz_class m2 = m * m;
        mpz_class fr = z_eval(F, r, m2);
        mpz_class dfr = z_eval(dF, r, m2);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), m2.get_mpz_t()) == 0)
            throw std::runtime_error("lift_root: derivative not invertible");
        r = ((r - fr * inv) % m2 + m2) % m2;
        m = m2;
    }
    *modulus_out = m;
    return r;
}

// Quadratic Hensel lift of a monic coprime factorization F = g*h (mod p)
// to mod p^(2^k) >= target. F, g, h monic.
void lift_pair(const ZPoly& F, ZPoly g, ZPoly h, ZPoly s, ZPoly t, uint64_t p,
               mpz_class target, ZPoly* g_out, mpz_class* modulus_out) {
    mpz_class m(static_cast<unsigned long>(p));
    while (m < target) {
        mpz_class m2 = m * m;
        ZPoly e = z_sub(F, z_mul(g, h));
        z_mod_sym(e, m2);
        ZPoly q;
        ZPoly r = z_rem_monic(z_mul(t, e), g, m2, &q);
        ZPoly g1 = g;
        for (size_t i = 0; i < r.size(); ++i) {
            if (i >= g1.size()) g1.resize(i + 1, mpz_class(0));
            g1[i] += r[i];
        }
        z_mod_sym(g1, m2);
        ZPoly h1 = h;
        ZPoly se = z_mul(s, e), qh = z_mul(q, h);
        for (size_t i = 0; i < std::max(se.size(), qh.size()); ++i) {
            mpz_class add = (i < se.size() ? se[i] : mpz_class(0)) +
                            (i < qh.size() ? qh[i] : mpz_class(0));
            if (i >= h1.size()) h1.resize(i + 1, mpz_class(0));
            h1[i] += add;
        }
        z_mod_sym(h1, m2);

        // refresh the Bezout pair
        ZPoly b = z_sub(z_sub(ZPoly{mpz_class(1)}, z_mul(s, g1)), z_mul(t, h1));
        b = z_sub(ZPoly{mpz_class(0)}, b);  // b = s g1 + t h1 - 1
        z_mod_sym(b, m2);
        ZPoly c;
        ZPoly d = z_rem_monic(z_mul(s, b), h1, m2, &c);
        ZPoly s1 = z_sub(s, d);
        z_mod_sym(s1, m2);
        ZPoly tb = z_mul(t, b), cg = z_mul(c, g1);
        ZPoly t1 = z_sub(z_sub(t, tb), cg);
        z_mod_sym(t1, m2);

        g = std::move(g1);
        h = std::move(h1);
        s = std::move(s1);
        t = std::move(t1);
        m = m2;
    }
    *g_out = g;
    *modulus_out = m;
}

mpz_class sym_rep(mpz_class v, const mpz_class& m) {
    v = ((v % m) + m) % m;
    if (v * 2 > m) v -= m;
    return v;
}

// ---------------- driver for one squarefree monic rational polynomial ----------------

struct SqfreeFactors {
    std::vector<Rational> roots;
    std::vector<std::pair<Rational, Rational>> quads;  // t^2 + p t + q
    UniPoly remainder = UniPoly::one();
};

UniPoly linear_of(const Rational& root) {
    return UniPoly(std::vector<Rational>{-root, Rational(1)});
}

UniPoly quad_of(const Rational& p, const Rational& q) {
    return UniPoly(std::vector<Rational>{q, p, Rational(1)});
}

SqfreeFactors factor_squarefree(UniPoly f) {
    SqfreeFactors out;
    f = f.monic();
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        out.roots.push_back(-f.coeff(0));
        return out;
    }
    if (f.degree() == 2) {
        Rational p1 = f.coeff(1), q1 = f.coeff(0);
        Rational disc = p1 * p1 - Rational(4) * q1;
        if (auto s = rational_sqrt(disc)) {
            out.roots.push_back((-p1 + *s) / Rational(2));
            out.roots.push_back((-p1 - *s) / Rational(2));
        } else {
            out.quads.emplace_back(p1, q1);
        }
        return out;
    }

    // Clear denominators, then monicize: F(x) = a^(n-1) f(x/a) for integer f
    // with leading coefficient a.
    mpz_class den = 1;
    for (const auto& c : f.coefficients()) {
        mpz_class d = c.den(), g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        den = den / g * d;
    }
    int n = f.degree();
    ZPoly zf(n + 1);
    for (int i = 0; i <= n; ++i) {
        Rational c = f.coeff(i);
        zf[i] = c.num() * (den / c.den());
    }
    mpz_class a = zf[n];
    ZPoly F(n + 1);
    // F_i = zf_i * a^(n-1-i)
    mpz_class pw = 1;
    for (int i = n; i >= 0; --i) {
        F[i] = zf[i] * pw;
        if (i > 0) pw *= a;
    }
    ZPoly dF(n);
    for (int i = 1; i <= n; ++i) dF[i - 1] = F[i] * i;

    // Coefficient bound for monic degree <= 2 factors of monic F, doubled for
    // the symmetric representation, with slack for root-pair products.
    mpz_class norm2 = 0;
    for (const auto& c : F) norm2 += c * c;
    mpz_class B = sqrt(norm2) + 1;
    mpz_class target = 8 * B * B + 16;

    // A prime with F squarefree mod p.
    uint64_t p = 0;
    FpPoly Fp;
    for (uint64_t cand = 1000000007ull;; cand += 2) {
        if (!is_prime_u(cand)) continue;
        FpPoly g(F.size());
        for (size_t i = 0; i < F.size(); ++i) {
            mpz_class c = F[i] % static_cast<unsigned long>(cand);
            if (c < 0) c += static_cast<unsigned long>(cand);
            g[i] = c.get_ui();
        }
        fp_trim(g);
        if (fp_deg(g) != n) continue;  // never for monic F, kept for safety
        FpPoly dg(n);
        for (int i = 1; i <= n; ++i) dg[i - 1] = mulmod(g[i], i, cand);
        fp_trim(dg);
        if (fp_deg(fp_gcd(g, dg, cand)) == 0) {
            p = cand;
            Fp = g;
            break;
        }
    }

    // Factor mod p: rational points and irreducible quadratics.
    FpPoly xp = fp_powmod(FpPoly{0, 1}, p, Fp, p);
    FpPoly xp_minus_x = fp_sub(xp, FpPoly{0, 1}, p);
    FpPoly lin_part = fp_gcd(Fp, xp_minus_x, p);
    std::vector<uint64_t> roots_p;
    fp_collect_roots(lin_part, p, roots_p);
    std::sort(roots_p.begin(), roots_p.end());

    FpPoly rest;
    fp_rem(Fp, lin_part, p, &rest);
    std::vector<FpPoly> quads_p;
    if (fp_deg(rest) >= 2) {
        FpPoly xpp = fp_powmod(FpPoly{0, 1}, p * p, rest, p);
        FpPoly quad_part = fp_gcd(rest, fp_sub(xpp, FpPoly{0, 1}, p), p);
        fp_collect_quadratics(quad_part, p, quads_p);
    }

    // Lift everything to a modulus exceeding the coefficient bound.
    mpz_class M;
    std::vector<mpz_class> lifted_roots;
    for (uint64_t r : roots_p) lifted_roots.push_back(lift_root(F, dF, p, target, r, &M));
    std::vector<ZPoly> lifted_quads;
    for (const FpPoly& g : quads_p) {
        FpPoly hq;
        fp_rem(Fp, g, p, &hq);
        FpPoly s, t, gg;
        fp_ext_gcd(g, hq, p, s, t, gg);
        if (fp_deg(gg) != 0) continue;  // not coprime: cannot happen, F squarefree
        ZPoly lifted;
        lift_pair(F, from_fp(g), from_fp(hq), from_fp(s), from_fp(t), p, target, &lifted, &M);
        lifted_quads.push_back(lifted);
    }
    if (M == 0) M = target;  // nothing to lift

    // Trial division over Q against the running cofactor of f.
    UniPoly cof = f;
    std::vector<bool> root_used(lifted_roots.size(), false);

    for (size_t i = 0; i < lifted_roots.size(); ++i) {
        Rational root(sym_rep(lifted_roots[i], M), a);
        UniPoly cand = linear_of(root);
        if (cof.degree() >= 1 && cand.divides(cof)) {
            out.roots.push_back(root);
            cof = cof.exact_div(cand);
            root_used[i] = true;
        }
    }
    auto try_quad = [&](const Rational& u, const Rational& v) {
        // factor of F: x^2 + u x + v  ->  factor of f: t^2 + (u/a) t + v/a^2
        Rational qp = u / Rational(a), qq = v / (Rational(a) * Rational(a));
        UniPoly cand = quad_of(qp, qq);
        if (cof.degree() >= 2 && cand.divides(cof)) {
            out.quads.emplace_back(qp, qq);
            cof = cof.exact_div(cand);
            return true;
        }
        return false;
    };
    for (const ZPoly& g : lifted_quads) {
        if (g.size() != 3) continue;
        try_quad(Rational(sym_rep(g[1], M)), Rational(sym_rep(g[0], M)));
    }
    for (size_t i = 0; i < lifted_roots.size(); ++i) {
        if (root_used[i]) continue;
        for (size_t j = i + 1; j < lifted_roots.size(); ++j) {
            if (root_used[j]) continue;
            mpz_class su = sym_rep(-(lifted_roots[i] + lifted_roots[j]), M);
            mpz_class sv = sym_rep(lifted_roots[i] * lifted_roots[j], M);
            if (try_quad(Rational(su), Rational(sv))) {
                root_used[i] = root_used[j] = true;
                break;
            }
        }
    }
    out.remainder = cof.monic();
    return out;
}

}  // namespace

LinQuadFactors factor_linear_quadratic(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("factor_linear_quadratic: zero polynomial");
    LinQuadFactors out;
    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        SqfreeFactors sf = factor_squarefree(part);
        for (const auto& r : sf.roots) out.roots.emplace_back(r, mult);
        for (const auto& q : sf.quads) out.quadratics.emplace_back(q, mult);
        if (sf.remainder.degree() > 0) out.remainder.emplace_back(sf.remainder, mult);
    }
    return out;
}

}  // namespace cremona
