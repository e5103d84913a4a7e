#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cremona/birmap.hpp"

namespace cremona {

// Real 2x2 matrix of an induced P^1 action, up to scalar.
struct Mat2 {
    std::array<std::array<Rational, 2>, 2> a{{{Rational(0), Rational(0)},
                                              {Rational(0), Rational(0)}}};
    bool proportional_to(const Mat2& o) const;
    bool is_diagonal() const { return a[0][1].is_zero() && a[1][0].is_zero(); }
    bool is_antidiagonal() const { return a[0][0].is_zero() && a[1][1].is_zero(); }
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
};

struct Mat3 {
    std::array<std::array<Rational, 3>, 3> a{};
    static Mat3 identity();
    Rational det() const;
    Mat3 adjugate() const;
    friend Mat3 operator*(const Mat3& x, const Mat3& y);
};

// Which canonical subgroups of the generating alphabet the map was certified
// to live in. A raw quintic away from the pencil carries no membership and
// must be normalized before it can serve as a word letter.
struct Membership {
    bool aut = false;
    bool jstar = false;
    bool jcirc = false;
    bool any() const { return aut || jstar || jcirc; }
};

struct Generator {
    BirMap map;
    std::string kind;                  // constructor id
    std::vector<std::string> params;   // constructor arguments, serialized
    Membership member;
    std::vector<BasePoint> certified;  // base points with multiplicities
    std::optional<Mat2> induced_star;
    std::optional<Mat2> induced_circ;
    // Extra certified data used downstream.
    std::optional<ProjPoint> inverse_real_base_point;     // degree-2/3 J-circ maps
    std::vector<ProjPoint> inverse_base_points;           // quintics: the six r's
};

struct Letter {
    Generator gen;
    int exponent = 1;  // +1 or -1
};
using Word = std::vector<Letter>;

// Composition of the letters, leftmost applied last.
BirMap evaluate(const Word& w);
Word inverse_word(const Word& w);

// ---- constructors ----

Generator sigma0();
Generator sigma1_intro();   // [xz : yz : x^2+y^2]
Generator sigma1_jcirc();   // [y^2+z^2 : xy : xz]
Generator linear_map(const Mat3& m);

// The involutions of Aut_R(P^2) within J-circ used for normalizations:
// [-x:y:z] (swaps p1, p1bar), [x:y:-z] (swaps p2, p2bar), [z:-y:x] (p1 <-> p2).
Generator perm_conj_p1();
Generator perm_conj_p2();
Generator perm_swap_pairs();

// Degree-2 element of J-circ with base points p_i, p_ibar, q (q real).
Generator quadratic_jcirc(int i, const ProjPoint& q);

// Degree-3 element of J-circ with double point r and simple base points at
// the four pencil points.
Generator cubic_jcirc(const ProjPoint& r);

// Splits a degree-3 J-circ element into two quadratics: f = first o second.
std::pair<Generator, Generator> decompose_cubic(const Generator& f);

// Standard quintic with double points q1, q1bar, q2, q2bar, q3, q3bar.
// Certified Jcirc when the first two pairs are the pencil pairs.
Generator standard_quintic(const ProjPoint& q1, const ProjPoint& q2, const ProjPoint& q3);

// Linear alpha, beta with beta o theta o alpha in J-circ.
struct JcircNormalization {
    Generator alpha, beta, normalized;
};
JcircNormalization normalize_to_jcirc(const Generator& quintic);

// Real linear map fixing p1 and sending the non-real q to p2.
Generator alpha_fixing_p1_sending(const ProjPoint& q);

// Degree-2 or -3 element of J-circ preserving C_q and moving q infinitely
// near p1 (the conic-fixing construction).
Generator deg3_fixing_conic(const ProjPoint& q);

// ---- recognizers ----

std::optional<Mat2> is_in_jstar(const BirMap& f);
std::optional<Mat2> is_in_jcirc(const BirMap& f);

// Runs both recognizers plus the linearity check.
Membership classify(const BirMap& f);

// Rebuilds a generator from its (kind, params) serialization.
Generator generator_from_kind(const std::string& kind, const std::vector<std::string>& params);

}  // namespace cremona
