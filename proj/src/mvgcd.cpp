#include <algorithm>
#include <climits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cremona/hompoly.hpp"

namespace cremona {

namespace {

// Bivariate view of a dehomogenized (z = 1) polynomial: cx[j] is the
// coefficient of x^j, a polynomial in y.
struct BiPoly {
    std::vector<GaussUPoly> cx;

    int xdeg() const {
        for (int j = static_cast<int>(cx.size()) - 1; j >= 0; --j)
            if (!cx[j].is_zero()) return j;
        return -1;
    }
    int ydeg() const {
        int d = -1;
        for (const auto& c : cx) d = std::max(d, c.degree());
        return d;
    }
    bool is_zero() const { return xdeg() < 0; }
};

BiPoly dehomogenize(const HomPoly3& p) {
    BiPoly b;
    b.cx.resize(p.degree() + 1);
    for (const auto& [m, c] : p.terms()) {
        auto& slot = b.cx[m.e[0]];
        slot += GaussUPoly::monomial(m.e[1], c);
    }
    return b;
}

HomPoly3 homogenize(const BiPoly& b) {
    int total = -1;
    for (size_t j = 0; j < b.cx.size(); ++j)
        if (!b.cx[j].is_zero())
            total = std::max(total, static_cast<int>(j) + b.cx[j].degree());
    std::map<Monomial3, GaussRational> t;
    for (size_t j = 0; j < b.cx.size(); ++j) {
        const auto& c = b.cx[j];
        for (int k = 0; k <= c.degree(); ++k) {
            if (c.coeff(k).is_zero()) continue;
            Monomial3 m{{static_cast<int>(j), k, total - static_cast<int>(j) - k}};
            t[m] = c.coeff(k);
        }
    }
    return hompoly_from_map(std::move(t));
}

GaussUPoly content_x(const BiPoly& b) {
    GaussUPoly g;
    for (const auto& c : b.cx) {
        g = upoly_gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

BiPoly divide_content(const BiPoly& b, const GaussUPoly& cont) {
    BiPoly r;
    r.cx.reserve(b.cx.size());
    for (const auto& c : b.cx) r.cx.push_back(c.is_zero() ? c : c.exact_div(cont));
    return r;
}

GaussUPoly eval_y(const BiPoly& b, const GaussRational& y) {
    std::vector<GaussRational> v(b.cx.size());
    for (size_t j = 0; j < b.cx.size(); ++j) v[j] = b.cx[j].eval(y);
    return GaussUPoly(std::move(v));
}

// Newton interpolation of a polynomial in y through (u_k, v_k).
GaussUPoly interpolate(const std::vector<GaussRational>& us,
                       const std::vector<GaussRational>& vs) {
    size_t n = us.size();
    std::vector<GaussRational> dd = vs;
    for (size_t level = 1; level < n; ++level)
        for (size_t k = n - 1; k >= level; --k)
            dd[k] = (dd[k] - dd[k - 1]) / (us[k] - us[k - level]);
    GaussUPoly result(dd[n - 1]);
    for (size_t k = n - 1; k-- > 0;) {
        GaussUPoly lin(std::vector<GaussRational>{-us[k], GaussRational(1)});
        result = result * lin + GaussUPoly(dd[k]);
    }
    return result;
}

int min_exponent(const HomPoly3& p, int var) {
    int e = p.degree();
    for (const auto& [m, c] : p.terms()) e = std::min(e, m.e[var]);
    return e;
}

HomPoly3 shift_down(const HomPoly3& p, int var, int k) {
    if (k == 0) return p;
    std::map<Monomial3, GaussRational> t;
    for (const auto& [m, c] : p.terms()) {
        Monomial3 n = m;
        n.e[var] -= k;
        t[n] = c;
    }
    return hompoly_from_map(std::move(t));
}

bool divides_hom(const HomPoly3& d, const HomPoly3& p) {
    try {
        p.exact_div(d);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

struct SampleResult {
    bool usable = false;
    int deg = -1;
    GaussUPoly image;  // gamma(y_k) * monic gcd of the specializations
};

}  // namespace

HomPoly3 poly_gcd(const HomPoly3& a, const HomPoly3& b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("poly_gcd: both arguments zero");
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();

    int za = min_exponent(a, 2), zb = min_exponent(b, 2);
    HomPoly3 a0 = shift_down(a, 2, za), b0 = shift_down(b, 2, zb);
    int zshared = std::min(za, zb);

    BiPoly A = dehomogenize(a0), B = dehomogenize(b0);
    GaussUPoly contA = content_x(A), contB = content_x(B);
    BiPoly ppA = divide_content(A, contA), ppB = divide_content(B, contB);
    GaussUPoly contG = upoly_gcd(contA, contB);

    auto finish = [&](const BiPoly& pp_gcd) {
        HomPoly3 g = homogenize(pp_gcd);
        if (contG.degree() > 0) {
            BiPoly cg;
            cg.cx.push_back(contG);
            g = g * homogenize(cg);
        }
        if (zshared > 0) g = g * HomPoly3::variable(2, zshared);
        return g.normalized();
    };
    BiPoly unit;
    unit.cx.push_back(GaussUPoly::one());

    if (ppA.xdeg() == 0 || ppB.xdeg() == 0) return finish(unit);

    GaussUPoly gamma = upoly_gcd(ppA.cx[ppA.xdeg()], ppB.cx[ppB.xdeg()]);
    const size_t needed =
        static_cast<size_t>(std::min(ppA.ydeg(), ppB.ydeg()) + std::max(gamma.degree(), 0) + 1);

    int dmin = INT_MAX;
    std::vector<GaussRational> us;
    std::vector<GaussUPoly> images;
    long next_sample = 0;
    int stale_guard = 0;

    while (true) {
        // Evaluate a deterministic batch of sample points in parallel, then
        // merge serially so the result is independent of the thread count.
        const size_t batch = std::max<size_t>(needed + 2, 8);
        std::vector<long> ys(batch);
        for (size_t k = 0; k < batch; ++k) {
            long v = next_sample++;
            ys[k] = (v % 2 == 0) ? v / 2 : -(v / 2 + 1);  // 0, -1, 1, -2, 2, ...
        }
        std::vector<SampleResult> results(batch);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (long k = 0; k < static_cast<long>(batch); ++k) {
            GaussRational y{Rational(ys[k])};
            if (ppA.cx[ppA.xdeg()].eval(y).is_zero() || ppB.cx[ppB.xdeg()].eval(y).is_zero())
                continue;
            GaussUPoly g = upoly_gcd(eval_y(ppA, y), eval_y(ppB, y));
            results[k].usable = true;
            results[k].deg = g.degree();
            results[k].image = g.scaled(gamma.eval(y));
        }

        bool interpolated = false;
        for (size_t k = 0; k < batch && !interpolated; ++k) {
            if (!results[k].usable) continue;
            if (results[k].deg == 0) return finish(unit);
            if (results[k].deg < dmin) {
                dmin = results[k].deg;
                us.clear();
                images.clear();
            }
            if (results[k].deg > dmin) continue;
            us.push_back(GaussRational(Rational(ys[k])));
            images.push_back(results[k].image);
            if (us.size() < needed) continue;

            BiPoly H;
            H.cx.resize(dmin + 1);
            for (int j = 0; j <= dmin; ++j) {
                std::vector<GaussRational> vals(us.size());
                for (size_t s = 0; s < us.size(); ++s) vals[s] = images[s].coeff(j);
                H.cx[j] = interpolate(us, vals);
            }
            GaussUPoly hc = content_x(H);
            BiPoly Hpp = divide_content(H, hc);
            HomPoly3 cand = homogenize(Hpp);
            if (divides_hom(cand, a0) && divides_hom(cand, b0)) return finish(Hpp);
            interpolated = true;  // unlucky run; rescan with fresh samples
            us.clear();
            images.clear();
            dmin = INT_MAX;
        }
        if (++stale_guard > 64)
            throw std::runtime_error("poly_gcd: interpolation failed to stabilize");
    }
}

}  // namespace cremona
