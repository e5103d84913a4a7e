#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cremona/gauss.hpp"
#include "cremona/unipoly.hpp"

namespace cremona {

// Exponent triple (x, y, z). Ordered lexicographically with x taking
// precedence, descending power first, so map iteration starts at the
// monomial used for canonical scaling.
struct Monomial3 {
    std::array<int, 3> e{0, 0, 0};
    int total() const { return e[0] + e[1] + e[2]; }
    friend bool operator==(const Monomial3& a, const Monomial3& b) { return a.e == b.e; }
    friend bool operator<(const Monomial3& a, const Monomial3& b) { return a.e > b.e; }
};

// Homogeneous polynomial in x, y, z over Q(i). Every stored monomial has
// total degree = degree(); zero coefficients are never stored.
class HomPoly3 {
public:
    HomPoly3() = default;

    static HomPoly3 zero() { return HomPoly3(); }
    static HomPoly3 variable(int idx, int deg = 1);
    static HomPoly3 constant(const GaussRational& c);
    static HomPoly3 from_terms(std::vector<std::pair<Monomial3, GaussRational>> terms);

    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }
    const std::map<Monomial3, GaussRational>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    GaussRational coeff(const Monomial3& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? GaussRational(0) : it->second;
    }

    bool is_real() const;
    HomPoly3 conj() const;

    HomPoly3 operator-() const;
    friend HomPoly3 operator+(const HomPoly3& a, const HomPoly3& b);
    friend HomPoly3 operator-(const HomPoly3& a, const HomPoly3& b);
    friend HomPoly3 operator*(const HomPoly3& a, const HomPoly3& b);
    HomPoly3& operator+=(const HomPoly3& o) { return *this = *this + o; }
    HomPoly3& operator-=(const HomPoly3& o) { return *this = *this - o; }
    HomPoly3& operator*=(const HomPoly3& o) { return *this = *this * o; }
    HomPoly3 scaled(const GaussRational& c) const;

    friend bool operator==(const HomPoly3& a, const HomPoly3& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const HomPoly3& a, const HomPoly3& b) { return !(a == b); }

    GaussRational eval(const GaussRational& x, const GaussRational& y,
                       const GaussRational& z) const;

    HomPoly3 derivative(int var) const;

    // Substitution [x:y:z] -> [s0:s1:s2]; the s_i must share a common degree.
    HomPoly3 substitute(const HomPoly3& s0, const HomPoly3& s1, const HomPoly3& s2) const;

    // Leading coefficient in the fixed monomial order scaled to 1.
    HomPoly3 normalized() const;

    // True exact division; throws if not divisible.
    HomPoly3 exact_div(const HomPoly3& d) const;

    std::string str() const;

private:
    void insert(const Monomial3& m, const GaussRational& c);
    std::map<Monomial3, GaussRational> terms_;
    friend HomPoly3 hompoly_from_map(std::map<Monomial3, GaussRational> t);
};

HomPoly3 hompoly_from_map(std::map<Monomial3, GaussRational> t);

// Parses the CLI polynomial grammar, e.g. "3/2*x^2*y - i*z^3".
// Accepted variables are x, y, z; must be homogeneous.
HomPoly3 parse_hompoly(const std::string& text);

// Same grammar restricted to the single variable t, rational coefficients.
UniPoly parse_unipoly(const std::string& text);
std::string unipoly_to_string(const UniPoly& p);

// Gcd of homogeneous trivariate polynomials over Q(i), computed by Brown's
// evaluation/interpolation on a bivariate dehomogenization. Result is
// normalized(); gcd(0, b) = normalized b.
HomPoly3 poly_gcd(const HomPoly3& a, const HomPoly3& b);

}  // namespace cremona
