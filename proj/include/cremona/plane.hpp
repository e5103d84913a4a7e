#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/hompoly.hpp"

namespace cremona {

// Point of P^2(Q(i)), stored normalized: first nonzero coordinate equals 1.
class ProjPoint {
public:
    ProjPoint() : c_{GaussRational(1), GaussRational(0), GaussRational(0)} {}
    ProjPoint(GaussRational x, GaussRational y, GaussRational z);

    const GaussRational& x() const { return c_[0]; }
    const GaussRational& y() const { return c_[1]; }
    const GaussRational& z() const { return c_[2]; }
    const GaussRational& operator[](int i) const { return c_[i]; }

    ProjPoint conj() const { return ProjPoint(c_[0].conj(), c_[1].conj(), c_[2].conj()); }
    bool is_real() const { return c_[0].is_real() && c_[1].is_real() && c_[2].is_real(); }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.c_ < b.c_; }

    std::string str() const;

private:
    std::array<GaussRational, 3> c_;
};

// The four base points of the conic pencil.
ProjPoint point_p1();       // [1 : i : 0]
ProjPoint point_p1_bar();   // [1 : -i : 0]
ProjPoint point_p2();       // [0 : 1 : i]
ProjPoint point_p2_bar();   // [0 : 1 : -i]
const std::vector<ProjPoint>& pencil_base_points();

// Point of P^1(Q(i)) (a value of either fibration), normalized like ProjPoint.
class PencilValue {
public:
    PencilValue() : u_(1), v_(0) {}
    PencilValue(GaussRational u, GaussRational v);

    const GaussRational& u() const { return u_; }
    const GaussRational& v() const { return v_; }

    PencilValue conj() const { return PencilValue(u_.conj(), v_.conj()); }
    bool is_real() const { return u_.is_real() && v_.is_real(); }

    friend bool operator==(const PencilValue& a, const PencilValue& b) {
        return a.u_ == b.u_ && a.v_ == b.v_;
    }
    friend bool operator!=(const PencilValue& a, const PencilValue& b) { return !(a == b); }

    std::string str() const;

private:
    GaussRational u_, v_;
};

// Degree-2 form with canonical scalar normalization.
class Conic {
public:
    explicit Conic(const HomPoly3& form);
    const HomPoly3& form() const { return form_; }
    bool is_real() const { return form_.is_real(); }
    // 3x3 symmetric-matrix determinant test.
    bool is_reducible() const;
    friend bool operator==(const Conic& a, const Conic& b) { return a.form_ == b.form_; }
    friend bool operator!=(const Conic& a, const Conic& b) { return !(a == b); }

private:
    HomPoly3 form_;
};

// Direction at a point, recorded as the line through it.
struct TangentDirection {
    ProjPoint base;
    HomPoly3 line;  // degree 1, vanishing at base, normalized

    TangentDirection(ProjPoint b, const HomPoly3& l);
    TangentDirection conj() const { return TangentDirection(base.conj(), line.conj()); }
    friend bool operator==(const TangentDirection& a, const TangentDirection& b) {
        return a.base == b.base && a.line == b.line;
    }
    friend bool operator<(const TangentDirection& a, const TangentDirection& b);
};

// The orbit key of a non-real pencil value under real scaling and
// conjugation: kappa = a^2/(a^2+b^2) for the affine value a+ib. The paper's
// display index is nu = 1 - sqrt(kappa) in (0, 1].
struct NuKey {
    Rational kappa;

    friend bool operator==(const NuKey& a, const NuKey& b) { return a.kappa == b.kappa; }
    friend bool operator!=(const NuKey& a, const NuKey& b) { return !(a == b); }
    friend bool operator<(const NuKey& a, const NuKey& b) { return a.kappa < b.kappa; }

    std::string str() const { return kappa.str(); }
    double nu_display() const;  // 1 - sqrt(kappa), approximate
};

// The two fibrations.
PencilValue pi_star(const ProjPoint& p);   // [x:y:z] -> [y:z], center [1:0:0]
PencilValue pi_circ(const ProjPoint& p);   // [y^2+(x+z)^2 : y^2+(x-z)^2]

// Spanning conics of the pencil through p1, p1bar, p2, p2bar.
const HomPoly3& pencil_A();  // y^2 + (x+z)^2, the fibre over [0:1]
const HomPoly3& pencil_B();  // y^2 + (x-z)^2, the fibre over [1:0]

// Pencil member with the given value: u*B - v*A vanishes where [A:B] = [u:v].
Conic pencil_member(const PencilValue& v);

struct ConicConstraint {
    ProjPoint at;
    std::optional<HomPoly3> tangent_line;  // present: prescribed tangent at `at`

    static ConicConstraint through(const ProjPoint& p) { return {p, std::nullopt}; }
    static ConicConstraint tangent(const ProjPoint& p, const HomPoly3& line) {
        return {p, line};
    }
};

// Unique conic satisfying five independent linear conditions.
Conic conic_through(const std::vector<ConicConstraint>& constraints);

// [lambda:mu] with c = lambda*A + mu*B, reported as the fibration value
// [-mu : lambda]; NotInPencil otherwise.
PencilValue pencil_value_of_conic(const Conic& c);

// Unique pencil member tangent to `dir` at one of the four base points.
Conic conic_at_infinitely_near(const TangentDirection& dir);

NuKey nu_key(const PencilValue& v);

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);

// Line through two distinct points, normalized degree-1 form.
HomPoly3 line_through(const ProjPoint& p, const ProjPoint& q);

}  // namespace cremona
