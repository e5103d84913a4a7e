#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cremona/gauss.hpp"
#include "cremona/rational.hpp"

namespace cremona {

// Dense univariate polynomial over an exact field K (Rational or
// GaussRational). Invariant: trailing (leading) coefficient nonzero unless
// the polynomial is zero.
template <typename K>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(K c) { coef_.push_back(std::move(c)); trim(); }
    explicit UPoly(std::vector<K> coef) : coef_(std::move(coef)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly one() { return UPoly(K(1)); }
    static UPoly x() { return UPoly(std::vector<K>{K(0), K(1)}); }
    static UPoly monomial(int deg, K c) {
        std::vector<K> v(deg + 1, K(0));
        v[deg] = std::move(c);
        return UPoly(std::move(v));
    }

    bool is_zero() const { return coef_.empty(); }
    int degree() const { return static_cast<int>(coef_.size()) - 1; }  // -1 for zero
    const std::vector<K>& coefficients() const { return coef_; }
    K coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coef_.size())) ? coef_[i] : K(0);
    }
    const K& lc() const {
        if (is_zero()) throw std::domain_error("UPoly: leading coefficient of zero");
        return coef_.back();
    }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.coef_) c = -c;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<K> v(std::max(a.coef_.size(), b.coef_.size()), K(0));
        for (size_t i = 0; i < a.coef_.size(); ++i) v[i] += a.coef_[i];
        for (size_t i = 0; i < b.coef_.size(); ++i) v[i] += b.coef_[i];
        return UPoly(std::move(v));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<K> v(a.coef_.size() + b.coef_.size() - 1, K(0));
        for (size_t i = 0; i < a.coef_.size(); ++i) {
            if (a.coef_[i].is_zero()) continue;
            for (size_t j = 0; j < b.coef_.size(); ++j)
                v[i + j] += a.coef_[i] * b.coef_[j];
        }
        return UPoly(std::move(v));
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    UPoly scaled(const K& c) const {
        if (c.is_zero()) return UPoly();
        UPoly r = *this;
        for (auto& a : r.coef_) a = a * c;
        return r;
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    K eval(const K& x) const {
        K r(0);
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) r = r * x + *it;
        return r;
    }

    UPoly derivative() const {
        if (coef_.size() <= 1) return UPoly();
        std::vector<K> v(coef_.size() - 1);
        for (size_t i = 1; i < coef_.size(); ++i) v[i - 1] = coef_[i] * K(static_cast<int>(i));
        return UPoly(std::move(v));
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inv());
    }

    // Quotient and remainder over the field K.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
        UPoly r = a;
        std::vector<K> q(std::max<int>(a.degree() - b.degree() + 1, 0), K(0));
        K binv = b.lc().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            K c = r.lc() * binv;
            q[k] = c;
            // r -= c * x^k * b
            for (int i = 0; i <= b.degree(); ++i) r.coef_[i + k] -= c * b.coef_[i];
            r.trim();
        }
        return {UPoly(std::move(q)), r};
    }

    UPoly exact_div(const UPoly& b) const {
        auto [q, r] = divmod(*this, b);
        if (!r.is_zero()) throw std::domain_error("UPoly: inexact division");
        return q;
    }

    bool divides(const UPoly& a) const { return divmod(a, *this).second.is_zero(); }

    // p(x) -> p(x + c)
    UPoly shift(const K& c) const {
        UPoly r, xc(std::vector<K>{c, K(1)});
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it)
            r = r * xc + UPoly(*it);
        return r;
    }

    // p(x) -> p(c*x)
    UPoly dilate(const K& c) const {
        UPoly r = *this;
        K pw(1);
        for (size_t i = 1; i < r.coef_.size(); ++i) {
            pw = pw * c;
            r.coef_[i] = r.coef_[i] * pw;
        }
        r.trim();
        return r;
    }

private:
    void trim() {
        while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
    }
    std::vector<K> coef_;
};

using UniPoly = UPoly<Rational>;
using GaussUPoly = UPoly<GaussRational>;

// Gcd over the coefficient field; result is monic (or zero).
UniPoly upoly_gcd(const UniPoly& a, const UniPoly& b);
GaussUPoly upoly_gcd(const GaussUPoly& a, const GaussUPoly& b);

// Radical: p / gcd(p, p'), made monic. Same root set, all roots simple.
template <typename K>
UPoly<K> squarefree_part(const UPoly<K>& p) {
    if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
    if (p.degree() == 0) return UPoly<K>::one();
    UPoly<K> g = upoly_gcd(p, p.derivative());
    return p.exact_div(g).monic();
}

// Yun decomposition: returns (g_i, i) with p = lc * prod g_i^i, the g_i
// monic, squarefree and pairwise coprime.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);

// Product of the factors appearing with odd multiplicity, monic. This is the
// square-class representative of p in Q(t)*/squares (up to the sign of lc).
UniPoly odd_multiplicity_part(const UniPoly& p);

}  // namespace cremona
