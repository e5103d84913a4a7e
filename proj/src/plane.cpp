#include "cremona/plane.hpp"

#include <cmath>

#include "cremona/linalg.hpp"

namespace cremona {

ProjPoint::ProjPoint(GaussRational x, GaussRational y, GaussRational z)
    : c_{std::move(x), std::move(y), std::move(z)} {
    int k = 0;
    while (k < 3 && c_[k].is_zero()) ++k;
    if (k == 3) throw std::domain_error("ProjPoint: all coordinates zero");
    GaussRational inv = c_[k].inv();
    for (auto& c : c_) c *= inv;
}

std::string ProjPoint::str() const {
    return "[" + c_[0].str() + " : " + c_[1].str() + " : " + c_[2].str() + "]";
}

ProjPoint point_p1() { return ProjPoint(GaussRational(1), GaussRational::i(), GaussRational(0)); }
ProjPoint point_p1_bar() { return point_p1().conj(); }
ProjPoint point_p2() { return ProjPoint(GaussRational(0), GaussRational(1), GaussRational::i()); }
ProjPoint point_p2_bar() { return point_p2().conj(); }

const std::vector<ProjPoint>& pencil_base_points() {
    static const std::vector<ProjPoint> pts{point_p1(), point_p1_bar(), point_p2(),
                                            point_p2_bar()};
    return pts;
}

PencilValue::PencilValue(GaussRational u, GaussRational v) : u_(std::move(u)), v_(std::move(v)) {
    if (u_.is_zero() && v_.is_zero())
        throw std::domain_error("PencilValue: both coordinates zero");
    GaussRational inv = (u_.is_zero() ? v_ : u_).inv();
    u_ *= inv;
    v_ *= inv;
}

std::string PencilValue::str() const { return "[" + u_.str() + " : " + v_.str() + "]"; }

Conic::Conic(const HomPoly3& form) : form_(form.normalized()) {
    if (form_.degree() != 2) throw std::domain_error("Conic: degree must be 2");
}

bool Conic::is_reducible() const {
    // Determinant of the symmetric Gram matrix of the quadratic form.
    auto c = [&](int i, int j) {
        Monomial3 m;
        m.e[i] += 1;
        m.e[j] += 1;
        GaussRational v = form_.coeff(m);
        return (i == j) ? v : v / GaussRational(2);
    };
    GaussRational det = c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) -
                        c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0)) +
                        c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0));
    return det.is_zero();
}

TangentDirection::TangentDirection(ProjPoint b, const HomPoly3& l)
    : base(std::move(b)), line(l.normalized()) {
    if (line.degree() != 1) throw std::domain_error("TangentDirection: line must have degree 1");
    if (!line.eval(base.x(), base.y(), base.z()).is_zero())
        throw std::domain_error("TangentDirection: line must pass through base");
}

bool operator<(const TangentDirection& a, const TangentDirection& b) {
    if (a.base != b.base) return a.base < b.base;
    auto ita = a.line.terms().begin(), itb = b.line.terms().begin();
    for (; ita != a.line.terms().end() && itb != b.line.terms().end(); ++ita, ++itb) {
        if (ita->first < itb->first) return true;
        if (itb->first < ita->first) return false;
        if (ita->second < itb->second) return true;
        if (itb->second < ita->second) return false;
    }
    return a.line.terms().size() < b.line.terms().size();
}

double NuKey::nu_display() const { return 1.0 - std::sqrt(kappa.to_double()); }

PencilValue pi_star(const ProjPoint& p) {
    if (p.y().is_zero() && p.z().is_zero())
        throw DomainError(ErrorCode::BasePointOfFibration, "pi_star undefined at [1:0:0]");
    return PencilValue(p.y(), p.z());
}

const HomPoly3& pencil_A() {
    static const HomPoly3 A = parse_hompoly("y^2 + x^2 + 2*x*z + z^2");
    return A;
}

const HomPoly3& pencil_B() {
    static const HomPoly3 B = parse_hompoly("y^2 + x^2 - 2*x*z + z^2");
    return B;
}

PencilValue pi_circ(const ProjPoint& p) {
    GaussRational a = pencil_A().eval(p.x(), p.y(), p.z());
    GaussRational b = pencil_B().eval(p.x(), p.y(), p.z());
    if (a.is_zero() && b.is_zero())
        throw DomainError(ErrorCode::BasePointOfFibration,
                          "pi_circ undefined at the pencil base points");
    return PencilValue(a, b);
}

Conic pencil_member(const PencilValue& v) {
    // [A : B] = [u : v] on the member, so the form is u*B - v*A.
    HomPoly3 f = pencil_B().scaled(v.u()) - pencil_A().scaled(v.v());
    return Conic(f);
}

namespace {

// Index of the conic coefficient vector: monomials of degree 2 in map order.
std::vector<Monomial3> conic_monomials() {
    std::vector<Monomial3> ms;
    for (int a = 2; a >= 0; --a)
        for (int b = 2 - a; b >= 0; --b) ms.push_back(Monomial3{{a, b, 2 - a - b}});
    return ms;
}

std::vector<GaussRational> gradient_at(const HomPoly3& f, const ProjPoint& p) {
    return {f.derivative(0).eval(p.x(), p.y(), p.z()),
            f.derivative(1).eval(p.x(), p.y(), p.z()),
            f.derivative(2).eval(p.x(), p.y(), p.z())};
}

std::vector<GaussRational> line_coeffs(const HomPoly3& line) {
    return {line.coeff(Monomial3{{1, 0, 0}}), line.coeff(Monomial3{{0, 1, 0}}),
            line.coeff(Monomial3{{0, 0, 1}})};
}

}  // namespace

Conic conic_through(const std::vector<ConicConstraint>& constraints) {
    std::vector<Monomial3> ms = conic_monomials();
    std::vector<std::vector<GaussRational>> rows;
    for (const auto& cc : constraints) {
        const ProjPoint& p = cc.at;
        if (!cc.tangent_line) {
            std::vector<GaussRational> row(6);
            for (size_t j = 0; j < 6; ++j) {
                HomPoly3 mono = HomPoly3::from_terms({{ms[j], GaussRational(1)}});
                row[j] = mono.eval(p.x(), p.y(), p.z());
            }
            rows.push_back(std::move(row));
        } else {
            // Tangency: gradient of the conic at p proportional to the line's
            // coefficient vector (two cross-product conditions; passage
            // through p follows by the Euler relation).
            std::vector<GaussRational> l = line_coeffs(*cc.tangent_line);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    std::vector<GaussRational> row(6);
                    for (size_t k = 0; k < 6; ++k) {
                        HomPoly3 mono = HomPoly3::from_terms({{ms[k], GaussRational(1)}});
                        std::vector<GaussRational> g = gradient_at(mono, p);
                        row[k] = g[i] * l[j] - g[j] * l[i];
                    }
                    rows.push_back(std::move(row));
                }
        }
    }
    GMatrix M(rows.size(), 6);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < 6; ++j) M.at(i, j) = rows[i][j];
    auto kernel = kernel_basis(M);
    if (kernel.size() != 1)
        throw DomainError(ErrorCode::DegenerateConstraints,
                          "conic solution space has dimension " + std::to_string(kernel.size()));
    std::map<Monomial3, GaussRational> t;
    for (size_t j = 0; j < 6; ++j)
        if (!kernel[0][j].is_zero()) t[ms[j]] = kernel[0][j];
    return Conic(hompoly_from_map(std::move(t)));
}

PencilValue pencil_value_of_conic(const Conic& c) {
    // Solve c = lambda*A + mu*B on the six coefficients.
    std::vector<Monomial3> ms = conic_monomials();
    GMatrix M(6, 2);
    std::vector<GaussRational> rhs(6);
    for (size_t j = 0; j < 6; ++j) {
        M.at(j, 0) = pencil_A().coeff(ms[j]);
        M.at(j, 1) = pencil_B().coeff(ms[j]);
        rhs[j] = c.form().coeff(ms[j]);
    }
    std::vector<GaussRational> sol;
    try {
        sol = solve_particular(M, rhs);
    } catch (const DomainError&) {
        throw DomainError(ErrorCode::NotInPencil, "conic is not a member of the pencil");
    }
    // lambda*A + mu*B = 0 on the member forces [A:B] = [-mu : lambda].
    return PencilValue(-sol[1], sol[0]);
}

Conic conic_at_infinitely_near(const TangentDirection& dir) {
    bool at_base = false;
    for (const auto& p : pencil_base_points()) at_base = at_base || p == dir.base;
    if (!at_base)
        throw DomainError(ErrorCode::DegenerateConstraints,
                          "tangent direction must sit at a pencil base point");
    std::vector<GaussRational> ga = gradient_at(pencil_A(), dir.base);
    std::vector<GaussRational> gb = gradient_at(pencil_B(), dir.base);
    std::vector<GaussRational> l = line_coeffs(dir.line);
    // lambda*ga + mu*gb proportional to l.
    GMatrix M(3, 2);
    size_t r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3 && r < 3; ++j, ++r) {
            M.at(r, 0) = ga[i] * l[j] - ga[j] * l[i];
            M.at(r, 1) = gb[i] * l[j] - gb[j] * l[i];
        }
    auto kernel = kernel_basis(M);
    if (kernel.size() != 1)
        throw DomainError(ErrorCode::DegenerateConstraints,
                          "tangency condition does not cut out a unique member");
    HomPoly3 f = pencil_A().scaled(kernel[0][0]) + pencil_B().scaled(kernel[0][1]);
    if (f.is_zero())
        throw DomainError(ErrorCode::DegenerateConstraints, "degenerate tangency data");
    return Conic(f);
}

NuKey nu_key(const PencilValue& v) {
    if (v.v().is_zero())
        throw DomainError(ErrorCode::RealPencilValue, "pencil value [1:0] is real");
    GaussRational t = v.u() / v.v();
    if (t.is_real())
        throw DomainError(ErrorCode::RealPencilValue, "pencil value " + v.str() + " is real");
    Rational a2 = t.re() * t.re();
    return NuKey{a2 / t.norm()};
}

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    GaussRational det = p.x() * (q.y() * r.z() - q.z() * r.y()) -
                        p.y() * (q.x() * r.z() - q.z() * r.x()) +
                        p.z() * (q.x() * r.y() - q.y() * r.x());
    return det.is_zero();
}

HomPoly3 line_through(const ProjPoint& p, const ProjPoint& q) {
    if (p == q) throw std::domain_error("line_through: points coincide");
    GaussRational a = p.y() * q.z() - p.z() * q.y();
    GaussRational b = p.z() * q.x() - p.x() * q.z();
    GaussRational c = p.x() * q.y() - p.y() * q.x();
    HomPoly3 l = HomPoly3::variable(0).scaled(a) + HomPoly3::variable(1).scaled(b) +
                 HomPoly3::variable(2).scaled(c);
    return l.normalized();
}

}  // namespace cremona
