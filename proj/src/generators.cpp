#include "cremona/generators.hpp"

#include <algorithm>
#include <functional>

#include "cremona/linalg.hpp"

namespace cremona {

// ---------------- small matrices ----------------

bool Mat2::proportional_to(const Mat2& o) const {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    if (a[i][j] * o.a[k][l] != a[k][l] * o.a[i][j]) return false;
    return true;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.a[i][j] += x.a[i][k] * y.a[k][j];
    return r;
}

Mat3 Mat3::identity() {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m.a[i][i] = Rational(1);
    return m;
}

Rational Mat3::det() const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 Mat3::adjugate() const {
    Mat3 r;
    auto minor = [&](int i, int j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        if (r0 > r1) std::swap(r0, r1);
        if (c0 > c1) std::swap(c0, c1);
        Rational m = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
        return ((i + j) % 2 == 0) ? m : -m;
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.a[i][j] = minor(j, i);
    return r;
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r.a[i][j] += x.a[i][k] * y.a[k][j];
    return r;
}

namespace {

std::array<HomPoly3, 3> triple_of_matrix(const Mat3& m) {
    std::array<HomPoly3, 3> t;
    for (int i = 0; i < 3; ++i) {
        HomPoly3 row;
        for (int j = 0; j < 3; ++j)
            row += HomPoly3::variable(j).scaled(GaussRational(m.a[i][j]));
        t[i] = row;
    }
    return t;
}

std::vector<std::string> matrix_params(const Mat3& m) {
    std::vector<std::string> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.push_back(m.a[i][j].str());
    return out;
}

BirMap linear_birmap(const Mat3& m, const std::string& tag) {
    if (m.det().is_zero())
        throw DomainError(ErrorCode::SingularMatrix, "linear map is not invertible");
    return BirMap::from_triples(triple_of_matrix(m), triple_of_matrix(m.adjugate()),
                                {{tag, 1}}, false);
}

ProjPoint apply_matrix(const Mat3& m, const ProjPoint& p) {
    std::array<GaussRational, 3> v;
    for (int i = 0; i < 3; ++i) {
        v[i] = GaussRational(0);
        for (int j = 0; j < 3; ++j) v[i] += GaussRational(m.a[i][j]) * p[j];
    }
    return ProjPoint(v[0], v[1], v[2]);
}

// Real 3x3 matrices M with M*from proportional to `to` for every constraint,
// searched inside the solution space for one passing `accept`.
std::optional<Mat3> solve_projective_constraints(
    const std::vector<std::pair<ProjPoint, ProjPoint>>& constraints,
    const std::function<bool(const Mat3&)>& accept) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& [p, q] : constraints) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                // sum_k M_ik p_k q_j - M_jk p_k q_i = 0
                std::array<GaussRational, 9> coef;
                for (int k = 0; k < 3; ++k) {
                    coef[3 * i + k] += p[k] * q[j];
                    coef[3 * j + k] -= p[k] * q[i];
                }
                std::vector<Rational> re(9), im(9);
                bool has_im = false;
                for (int k = 0; k < 9; ++k) {
                    re[k] = coef[k].re();
                    im[k] = coef[k].im();
                    has_im = has_im || !im[k].is_zero();
                }
                rows.push_back(std::move(re));
                if (has_im) rows.push_back(std::move(im));
            }
    }
    QMatrix M(rows.size(), 9);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < 9; ++j) M.at(i, j) = rows[i][j];
    auto kernel = kernel_basis(M);
    if (kernel.empty()) return std::nullopt;

    auto candidate = [&](const std::vector<int>& c) {
        Mat3 m;
        for (size_t b = 0; b < kernel.size(); ++b)
            for (int k = 0; k < 9; ++k)
                m.a[k / 3][k % 3] += Rational(c[b]) * kernel[b][k];
        return m;
    };
    // Deterministic sweep of small integer combinations.
    size_t dim = std::min<size_t>(kernel.size(), 4);
    std::vector<int> c(kernel.size(), 0);
    const int radius = 4;
    std::function<std::optional<Mat3>(size_t)> sweep = [&](size_t idx) -> std::optional<Mat3> {
        if (idx == dim) {
            bool all_zero = true;
            for (int v : c) all_zero = all_zero && v == 0;
            if (all_zero) return std::nullopt;
            Mat3 m = candidate(c);
            if (!m.det().is_zero() && accept(m)) return m;
            return std::nullopt;
        }
        for (int v = 0; v <= 2 * radius; ++v) {
            c[idx] = (v % 2 == 0) ? v / 2 : -(v / 2 + 1);
            if (auto r = sweep(idx + 1)) return r;
        }
        c[idx] = 0;
        return std::nullopt;
    };
    return sweep(0);
}

std::optional<ProjPoint> eval_triple(const std::array<HomPoly3, 3>& t, const ProjPoint& p) {
    GaussRational a = t[0].eval(p.x(), p.y(), p.z());
    GaussRational b = t[1].eval(p.x(), p.y(), p.z());
    GaussRational c = t[2].eval(p.x(), p.y(), p.z());
    if (a.is_zero() && b.is_zero() && c.is_zero()) return std::nullopt;
    return ProjPoint(a, b, c);
}

// A point on the line other than `avoid` ones; lines may be complex.
ProjPoint point_on_line(const HomPoly3& line, const std::vector<ProjPoint>& avoid) {
    GMatrix M(1, 3);
    M.at(0, 0) = line.coeff(Monomial3{{1, 0, 0}});
    M.at(0, 1) = line.coeff(Monomial3{{0, 1, 0}});
    M.at(0, 2) = line.coeff(Monomial3{{0, 0, 1}});
    auto kernel = kernel_basis(M);
    for (int c0 = 0; c0 <= 8; ++c0)
        for (int c1 = -8; c1 <= 8; ++c1) {
            GaussRational u(Rational(c0)), v(Rational(c1));
            std::array<GaussRational, 3> pt{};
            for (int k = 0; k < 3; ++k) pt[k] = u * kernel[0][k] + v * kernel[1][k];
            if (pt[0].is_zero() && pt[1].is_zero() && pt[2].is_zero()) continue;
            ProjPoint p(pt[0], pt[1], pt[2]);
            bool bad = false;
            for (const auto& q : avoid) bad = bad || q == p;
            if (!bad) return p;
        }
    throw std::runtime_error("point_on_line: no usable point found");
}

// The second intersection of `line through b and aux` with the conic, given
// that b lies on the conic.
std::optional<ProjPoint> second_intersection(const HomPoly3& conic, const ProjPoint& b,
                                             const ProjPoint& aux) {
    GaussRational c2 = conic.eval(aux.x(), aux.y(), aux.z());
    if (c2.is_zero()) return std::nullopt;  // aux on the conic
    GaussRational c1(0);
    for (int v = 0; v < 3; ++v)
        c1 += conic.derivative(v).eval(b.x(), b.y(), b.z()) * aux[v];
    if (c1.is_zero()) return std::nullopt;  // line tangent at b
    GaussRational s = -(c1 / c2);
    return ProjPoint(b.x() + s * aux.x(), b.y() + s * aux.y(), b.z() + s * aux.z());
}

Generator make_linear(const Mat3& m, const std::string& kind, std::vector<std::string> params) {
    Generator g;
    g.map = linear_birmap(m, kind);
    g.kind = kind;
    g.params = std::move(params);
    g.member.aut = true;
    g.member.jstar = is_in_jstar(g.map).has_value();
    if (auto mc = is_in_jcirc(g.map)) {
        g.member.jcirc = true;
        g.induced_circ = mc;
    }
    if (auto ms = is_in_jstar(g.map)) g.induced_star = ms;
    return g;
}

const char* kLinearKind = "linear";

}  // namespace

// ---------------- word evaluation ----------------

BirMap evaluate(const Word& w) {
    BirMap acc = BirMap::identity();
    for (const auto& letter : w) {
        const BirMap& m = letter.exponent >= 0 ? letter.gen.map : letter.gen.map.inverse();
        acc = compose(acc, m);
    }
    return acc;
}

Word inverse_word(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->gen, -it->exponent});
    return out;
}

// ---------------- recognizers ----------------

std::optional<Mat2> is_in_jstar(const BirMap& f) {
    HomPoly3 g = poly_gcd(f.forward()[1], f.forward()[2]);
    HomPoly3 u = f.forward()[1], v = f.forward()[2];
    if (g.degree() > 0) {
        u = u.exact_div(g);
        v = v.exact_div(g);
    }
    if (u.degree() != 1 || v.degree() != 1) return std::nullopt;
    auto in_span_yz = [](const HomPoly3& w) {
        return w.coeff(Monomial3{{1, 0, 0}}).is_zero();
    };
    if (!in_span_yz(u) || !in_span_yz(v)) return std::nullopt;
    Mat2 m;
    GaussRational uy = u.coeff(Monomial3{{0, 1, 0}}), uz = u.coeff(Monomial3{{0, 0, 1}});
    GaussRational vy = v.coeff(Monomial3{{0, 1, 0}}), vz = v.coeff(Monomial3{{0, 0, 1}});
    if (!uy.is_real() || !uz.is_real() || !vy.is_real() || !vz.is_real()) return std::nullopt;
    m.a = {{{uy.re(), uz.re()}, {vy.re(), vz.re()}}};
    if ((m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0]).is_zero()) return std::nullopt;
    return m;
}

std::optional<Mat2> is_in_jcirc(const BirMap& f) {
    HomPoly3 pa = pencil_A().substitute(f.forward()[0], f.forward()[1], f.forward()[2]);
    HomPoly3 pb = pencil_B().substitute(f.forward()[0], f.forward()[1], f.forward()[2]);
    HomPoly3 g = poly_gcd(pa, pb);
    if (g.degree() > 0) {
        pa = pa.exact_div(g);
        pb = pb.exact_div(g);
    }
    if (pa.degree() != 2 || pb.degree() != 2) return std::nullopt;
    // Solve (pa, pb) = M * (A, B) coefficientwise.
    auto in_pencil_span = [](const HomPoly3& w) -> std::optional<std::pair<Rational, Rational>> {
        std::vector<Monomial3> ms;
        for (int a = 2; a >= 0; --a)
            for (int b = 2 - a; b >= 0; --b) ms.push_back(Monomial3{{a, b, 2 - a - b}});
        GMatrix M(6, 2);
        std::vector<GaussRational> rhs(6);
        for (size_t j = 0; j < 6; ++j) {
            M.at(j, 0) = pencil_A().coeff(ms[j]);
            M.at(j, 1) = pencil_B().coeff(ms[j]);
            rhs[j] = w.coeff(ms[j]);
        }
        try {
            auto sol = solve_particular(M, rhs);
            if (!sol[0].is_real() || !sol[1].is_real()) return std::nullopt;
            return std::make_pair(sol[0].re(), sol[1].re());
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };
    auto ra = in_pencil_span(pa), rb = in_pencil_span(pb);
    if (!ra || !rb) return std::nullopt;
    Mat2 m;
    m.a = {{{ra->first, ra->second}, {rb->first, rb->second}}};
    if ((m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0]).is_zero()) return std::nullopt;
    return m;
}

Membership classify(const BirMap& f) {
    Membership m;
    m.aut = f.degree() == 1;
    m.jstar = is_in_jstar(f).has_value();
    m.jcirc = is_in_jcirc(f).has_value();
    return m;
}

// ---------------- basic generators ----------------

Generator sigma0() {
    Generator g;
    g.map = BirMap::from_triples({parse_hompoly("y*z"), parse_hompoly("x*z"), parse_hompoly("x*y")},
                                 {parse_hompoly("y*z"), parse_hompoly("x*z"), parse_hompoly("x*y")},
                                 {{"sigma0", 1}});
    g.kind = "sigma0";
    g.member = classify(g.map);
    g.induced_star = is_in_jstar(g.map);
    ProjPoint e0(GaussRational(1), GaussRational(0), GaussRational(0));
    ProjPoint e1(GaussRational(0), GaussRational(1), GaussRational(0));
    ProjPoint e2(GaussRational(0), GaussRational(0), GaussRational(1));
    g.certified = {BasePoint::proper(e0, 1), BasePoint::proper(e1, 1), BasePoint::proper(e2, 1)};
    return g;
}

Generator sigma1_intro() {
    Generator g;
    auto triple = std::array<HomPoly3, 3>{parse_hompoly("x*z"), parse_hompoly("y*z"),
                                          parse_hompoly("x^2+y^2")};
    g.map = BirMap::from_triples(triple, triple, {{"sigma1_intro", 1}});
    g.kind = "sigma1_intro";
    g.member = classify(g.map);
    ProjPoint e2(GaussRational(0), GaussRational(0), GaussRational(1));
    g.certified = {BasePoint::proper(point_p1(), 1), BasePoint::proper(point_p1_bar(), 1),
                   BasePoint::proper(e2, 1)};
    return g;
}

Generator sigma1_jcirc() {
    Generator g;
    auto triple = std::array<HomPoly3, 3>{parse_hompoly("y^2+z^2"), parse_hompoly("x*y"),
                                          parse_hompoly("x*z")};
    g.map = BirMap::from_triples(triple, triple, {{"sigma1_jcirc", 1}});
    g.kind = "sigma1_jcirc";
    g.member = classify(g.map);
    g.induced_star = is_in_jstar(g.map);
    g.induced_circ = is_in_jcirc(g.map);
    ProjPoint e0(GaussRational(1), GaussRational(0), GaussRational(0));
    g.certified = {BasePoint::proper(point_p2(), 1), BasePoint::proper(point_p2_bar(), 1),
                   BasePoint::proper(e0, 1)};
    // The real base point of the inverse is again [1:0:0] (involution).
    g.inverse_real_base_point = e0;
    return g;
}

Generator linear_map(const Mat3& m) { return make_linear(m, kLinearKind, matrix_params(m)); }

namespace {

Mat3 diag(int a, int b, int c) {
    Mat3 m;
    m.a[0][0] = Rational(a);
    m.a[1][1] = Rational(b);
    m.a[2][2] = Rational(c);
    return m;
}

}  // namespace

Generator perm_conj_p1() {
    Generator g = make_linear(diag(-1, 1, 1), "perm_conj_p1", {});
    return g;
}

Generator perm_conj_p2() { return make_linear(diag(1, 1, -1), "perm_conj_p2", {}); }

Generator perm_swap_pairs() {
    Mat3 m;
    m.a[0][2] = Rational(1);
    m.a[1][1] = Rational(-1);
    m.a[2][0] = Rational(1);
    return make_linear(m, "perm_swap_pairs", {});
}

// ---------------- quadratic and cubic J-circ elements ----------------

namespace {

// Throws when q is collinear with a forbidden pair of pencil base points.
void check_quadratic_position(int i, const ProjPoint& q) {
    const auto& pts = pencil_base_points();  // p1, p1b, p2, p2b
    static const char* names[] = {"p1", "p1bar", "p2", "p2bar"};
    int allow_a = (i == 1) ? 2 : 0, allow_b = (i == 1) ? 3 : 1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            if (a == allow_a && b == allow_b) continue;  // the complementary pair
            if (collinear(pts[a], pts[b], q))
                throw DomainError(ErrorCode::CollinearityViolation,
                                  "q lies on the line through " + std::string(names[a]) +
                                      " and " + names[b]);
        }
}

const HomPoly3& sigma1_contracted_product() {
    // z * (x^2 + y^2): the three lines contracted by sigma1_intro.
    static const HomPoly3 p = parse_hompoly("x^2*z + y^2*z");
    return p;
}

Generator finish_jcirc_generator(BirMap map, const std::string& kind,
                                 std::vector<std::string> params,
                                 std::vector<BasePoint> certified,
                                 const std::vector<ProjPoint>& contracted_samples) {
    // Normalize so that the induced P^1 action is a positive diagonal (the
    // paper's R_{>0} part); an antidiagonal action is corrected by the
    // pair-preserving involution [-x:y:z].
    auto mc = is_in_jcirc(map);
    if (!mc) throw std::runtime_error(kind + ": constructed map not in J-circ");
    if (mc->is_antidiagonal()) {
        map = compose(perm_conj_p1().map, map);
        mc = is_in_jcirc(map);
    }
    if (!mc || !mc->is_diagonal())
        throw std::runtime_error(kind + ": induced action is not diagonal");

    Generator g;
    g.map = BirMap::from_triples(map.forward(), map.inverse_triple(), {{kind, 1}}, false);
    g.kind = kind;
    g.params = std::move(params);
    g.member = classify(g.map);
    g.induced_circ = is_in_jcirc(g.map);
    g.induced_star = is_in_jstar(g.map);
    g.certified = std::move(certified);

    // Image of the real contracted curve = the real base point of the inverse.
    for (const auto& sample : contracted_samples) {
        auto img = eval_triple(g.map.forward(), sample);
        if (!img) continue;
        if (g.inverse_real_base_point && *g.inverse_real_base_point != *img)
            throw std::runtime_error(kind + ": contracted curve image is not constant");
        g.inverse_real_base_point = *img;
    }
    if (!g.inverse_real_base_point)
        throw std::runtime_error(kind + ": could not evaluate the contracted curve");
    if (!g.inverse_real_base_point->is_real())
        throw std::runtime_error(kind + ": inverse base point not real");
    return g;
}

}  // namespace

Generator quadratic_jcirc(int i, const ProjPoint& q) {
    if (i != 1 && i != 2) throw std::invalid_argument("quadratic_jcirc: i must be 1 or 2");
    if (!q.is_real())
        throw DomainError(ErrorCode::CollinearityViolation, "base point q must be real");
    check_quadratic_position(i, q);
    const ProjPoint pi = (i == 1) ? point_p1() : point_p2();
    const ProjPoint pother = (i == 1) ? point_p2() : point_p1();
    const ProjPoint origin(GaussRational(0), GaussRational(0), GaussRational(1));

    Generator s1 = sigma1_intro();
    // alpha: p_i -> p1, q -> [0:0:1]; sigma1_intro must stay an isomorphism
    // around alpha(p_other).
    auto alpha = solve_projective_constraints(
        {{pi, point_p1()}, {q, origin}}, [&](const Mat3& m) {
            ProjPoint w = apply_matrix(m, pother);
            return !sigma1_contracted_product().eval(w.x(), w.y(), w.z()).is_zero();
        });
    if (!alpha)
        throw DomainError(ErrorCode::DegeneratePosition,
                          "quadratic_jcirc: no usable normalization found");
    auto timg = eval_triple(s1.map.forward(), apply_matrix(*alpha, pother));
    if (!timg) throw std::runtime_error("quadratic_jcirc: normalization hit a base point");
    ProjPoint t = *timg;
    // beta: fixes p1, sends t to p2 (the image pencil runs through p1, p1bar, t, tbar).
    auto beta = solve_projective_constraints({{point_p1(), point_p1()}, {t, point_p2()}},
                                             [](const Mat3&) { return true; });
    if (!beta)
        throw DomainError(ErrorCode::DegeneratePosition,
                          "quadratic_jcirc: no usable realignment found");

    BirMap f = compose(compose(linear_birmap(*beta, "b"), s1.map), linear_birmap(*alpha, "a"));
    if (f.degree() != 2) throw std::runtime_error("quadratic_jcirc: unexpected degree");

    std::vector<BasePoint> certified{BasePoint::proper(pi, 1),
                                     BasePoint::proper(pi.conj(), 1), BasePoint::proper(q, 1)};
    // The real contracted line joins p_i and its conjugate.
    HomPoly3 rline = line_through(pi, pi.conj());
    std::vector<ProjPoint> avoid{pi, pi.conj(), q};
    std::vector<ProjPoint> samples;
    while (samples.size() < 3) {
        ProjPoint s = point_on_line(rline, avoid);
        avoid.push_back(s);
        samples.push_back(s);
    }
    std::string kind = "quadratic_jcirc";
    std::vector<std::string> params{std::to_string(i), q.str()};
    return finish_jcirc_generator(std::move(f), kind, std::move(params), std::move(certified),
                                  samples);
}

Generator cubic_jcirc(const ProjPoint& r) {
    if (!r.is_real())
        throw DomainError(ErrorCode::CollinearityViolation, "double point r must be real");
    const auto& pts = pencil_base_points();
    static const char* names[] = {"p1", "p1bar", "p2", "p2bar"};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (collinear(pts[a], pts[b], r))
                throw DomainError(ErrorCode::CollinearityViolation,
                                  "r lies on the line through " + std::string(names[a]) +
                                      " and " + names[b]);
    Generator tau1 = quadratic_jcirc(1, r);
    ProjPoint s = *tau1.inverse_real_base_point;
    Generator tau2 = quadratic_jcirc(2, s);
    BirMap f = compose(tau2.map, tau1.map);
    if (f.degree() != 3) throw std::runtime_error("cubic_jcirc: unexpected degree");

    std::vector<BasePoint> certified{BasePoint::proper(r, 2)};
    for (const auto& p : pts) certified.push_back(BasePoint::proper(p, 1));
    // The real curve contracted by the cubic is the pencil conic C_r through
    // r; its image is the real base point of the inverse.
    Conic cr = pencil_member(pi_circ(r));
    std::vector<ProjPoint> samples;
    {
        int coords[][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {2, -1, 3}, {1, 4, -2}};
        for (auto& c : coords) {
            if (samples.size() >= 3) break;
            ProjPoint aux(GaussRational(Rational(c[0])), GaussRational(Rational(c[1])),
                          GaussRational(Rational(c[2])));
            auto s = second_intersection(cr.form(), r, aux);
            if (s && *s != r) samples.push_back(*s);
        }
    }
    Generator g = finish_jcirc_generator(std::move(f), "cubic_jcirc", {r.str()},
                                         std::move(certified), samples);
    if (multiplicity_at(g.map, r) != 2)
        throw std::runtime_error("cubic_jcirc: double point certification failed");
    return g;
}

std::pair<Generator, Generator> decompose_cubic(const Generator& f) {
    if (f.map.degree() != 3 || !f.member.jcirc)
        throw std::invalid_argument("decompose_cubic: input must be a degree-3 J-circ element");
    const BasePoint* dbl = nullptr;
    for (const auto& bp : f.certified)
        if (bp.multiplicity == 2) dbl = &bp;
    if (!dbl || dbl->kind != BasePointKind::Proper || !dbl->point.is_real())
        throw DomainError(ErrorCode::DeepTower,
                          "decompose_cubic: double point is not a proper real point");
    Generator g = quadratic_jcirc(1, dbl->point);
    BirMap h = compose(f.map, g.map.inverse());
    if (h.degree() != 2) throw std::runtime_error("decompose_cubic: residual degree wrong");

    Generator left;
    left.map = BirMap::from_triples(h.forward(), h.inverse_triple(), {{"quadratic_jcirc", 1}},
                                    false);
    left.kind = "quadratic_jcirc_derived";
    left.member = classify(left.map);
    for (const auto& bp : base_points(left.map)) left.certified.push_back(bp);
    left.induced_circ = is_in_jcirc(left.map);
    if (!maps_equal(compose(left.map, g.map), f.map))
        throw std::runtime_error("decompose_cubic: recomposition failed");
    return {left, g};
}

// ---------------- standard quintics ----------------

namespace {

// 18 double-point conditions on the 21 coefficients of a real quintic.
std::vector<std::vector<Rational>> quintic_rows(const std::vector<ProjPoint>& pts) {
    std::vector<Monomial3> ms;
    for (int a = 5; a >= 0; --a)
        for (int b = 5 - a; b >= 0; --b) ms.push_back(Monomial3{{a, b, 5 - a - b}});
    std::vector<std::vector<Rational>> rows;
    for (const auto& q : pts) {
        for (int v = 0; v < 3; ++v) {
            std::vector<Rational> re(21), im(21);
            bool has_im = false;
            for (size_t j = 0; j < 21; ++j) {
                HomPoly3 mono = HomPoly3::from_terms({{ms[j], GaussRational(1)}});
                GaussRational val = mono.derivative(v).eval(q.x(), q.y(), q.z());
                re[j] = val.re();
                im[j] = val.im();
                has_im = has_im || !im[j].is_zero();
            }
            rows.push_back(std::move(re));
            if (has_im) rows.push_back(std::move(im));
        }
    }
    return rows;
}

HomPoly3 quintic_of_coeffs(const std::vector<Rational>& coef) {
    std::vector<Monomial3> ms;
    for (int a = 5; a >= 0; --a)
        for (int b = 5 - a; b >= 0; --b) ms.push_back(Monomial3{{a, b, 5 - a - b}});
    std::map<Monomial3, GaussRational> t;
    for (size_t j = 0; j < 21; ++j)
        if (!coef[j].is_zero()) t[ms[j]] = GaussRational(coef[j]);
    return hompoly_from_map(std::move(t));
}

bool six_points_on_a_conic(const std::vector<ProjPoint>& six) {
    GMatrix M(6, 6);
    std::vector<Monomial3> ms;
    for (int a = 2; a >= 0; --a)
        for (int b = 2 - a; b >= 0; --b) ms.push_back(Monomial3{{a, b, 2 - a - b}});
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            HomPoly3 mono = HomPoly3::from_terms({{ms[j], GaussRational(1)}});
            M.at(i, j) = mono.eval(six[i].x(), six[i].y(), six[i].z());
        }
    return matrix_rank(M) <= 5;
}

// The image of a curve contracted by the triple: evaluated at two sample
// points to guard against the curve not actually being contracted.
ProjPoint contracted_image(const std::array<HomPoly3, 3>& triple, const HomPoly3& conic,
                           const std::vector<ProjPoint>& on_conic) {
    static const std::vector<ProjPoint> aux_pool = [] {
        std::vector<ProjPoint> v;
        int coords[][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 3},
                           {2, -1, 1}, {3, 1, -2}, {1, -3, 2}, {5, 2, -1}};
        for (auto& c : coords)
            v.emplace_back(GaussRational(Rational(c[0])), GaussRational(Rational(c[1])),
                           GaussRational(Rational(c[2])));
        return v;
    }();
    std::optional<ProjPoint> image;
    int confirmations = 0;
    for (const auto& aux : aux_pool) {
        auto pt = second_intersection(conic, on_conic[0], aux);
        if (!pt) continue;
        auto img = eval_triple(triple, *pt);
        if (!img) continue;
        if (!image) {
            image = img;
            confirmations = 1;
        } else if (*image == *img) {
            if (++confirmations >= 2) return *image;
        } else {
            throw std::runtime_error("contracted_image: conic is not contracted");
        }
    }
    if (image) return *image;
    throw std::runtime_error("contracted_image: no usable sample on the conic");
}

bool pair_matches(const ProjPoint& a, const ProjPoint& b) { return a == b || a == b.conj(); }

}  // namespace

Generator standard_quintic(const ProjPoint& q1, const ProjPoint& q2, const ProjPoint& q3) {
    std::vector<ProjPoint> qs{q1, q2, q3};
    for (const auto& q : qs)
        if (q.is_real())
            throw DomainError(ErrorCode::ConjugatePair, "base points must be non-real");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (pair_matches(qs[i], qs[j]))
                throw DomainError(ErrorCode::ConjugatePair,
                                  "base-point pairs must be disjoint");
    std::vector<ProjPoint> six{q1, q1.conj(), q2, q2.conj(), q3, q3.conj()};
    if (six_points_on_a_conic(six))
        throw DomainError(ErrorCode::OnConic, "the six points lie on one conic");

    auto net_basis = [](const std::vector<ProjPoint>& pts) {
        auto rows = quintic_rows(pts);
        QMatrix M(rows.size(), 21);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < 21; ++j) M.at(i, j) = rows[i][j];
        auto kernel = kernel_basis(M);
        if (kernel.size() != 3)
            throw DomainError(ErrorCode::NetDegenerate,
                              "quintic net has dimension " + std::to_string(kernel.size()));
        std::array<HomPoly3, 3> t;
        for (int k = 0; k < 3; ++k) t[k] = quintic_of_coeffs(kernel[k]);
        return t;
    };
    std::array<HomPoly3, 3> fwd = net_basis(qs);

    // Images of the six contracted conics; r_k is the image of the conic
    // missing the k-th point of `six`.
    std::vector<ProjPoint> rs;
    for (size_t skip = 0; skip < 6; ++skip) {
        std::vector<ConicConstraint> cc;
        std::vector<ProjPoint> on_conic;
        for (size_t l = 0; l < 6; ++l) {
            if (l == skip) continue;
            cc.push_back(ConicConstraint::through(six[l]));
            on_conic.push_back(six[l]);
        }
        Conic c = conic_through(cc);
        rs.push_back(contracted_image(fwd, c.form(), on_conic));
    }
    for (int k = 0; k < 3; ++k)
        if (rs[2 * k + 1] != rs[2 * k].conj())
            throw std::runtime_error("standard_quintic: image pairs not conjugate");

    std::array<HomPoly3, 3> gw = net_basis({rs[0], rs[2], rs[4]});

    // Fit the linear map L with g o theta = L, from generic samples.
    std::vector<std::pair<ProjPoint, ProjPoint>> fit;
    for (int k = 2; static_cast<int>(fit.size()) < 6 && k < 80; ++k) {
        ProjPoint p(GaussRational(Rational(k)), GaussRational(Rational(k * k - 2)),
                    GaussRational(1));
        auto mid = eval_triple(fwd, p);
        if (!mid) continue;
        auto img = eval_triple(gw, *mid);
        if (!img) continue;
        fit.emplace_back(p, *img);
    }
    auto L = solve_projective_constraints(fit, [](const Mat3&) { return true; });
    if (!L) throw std::runtime_error("standard_quintic: inverse normalization not found");
    Mat3 Linv = L->adjugate();
    std::array<HomPoly3, 3> inv;
    for (int i = 0; i < 3; ++i) {
        HomPoly3 acc;
        for (int j = 0; j < 3; ++j) acc += gw[j].scaled(GaussRational(Linv.a[i][j]));
        inv[i] = acc;
    }

    std::vector<std::string> params{q1.str(), q2.str(), q3.str()};
    BirMap theta = BirMap::from_triples(fwd, inv, {{"quintic", 1}});
    if (theta.degree() != 5) throw std::runtime_error("standard_quintic: degree is not 5");

    Generator g;
    g.kind = "quintic";
    g.params = params;
    for (const auto& p : six) g.certified.push_back(BasePoint::proper(p, 2));

    // When the first two pairs are the pencil pairs, renormalize the target
    // side so the transformation preserves the conic pencil.
    bool pencil_case = (pair_matches(q1, point_p1()) && pair_matches(q2, point_p2())) ||
                       (pair_matches(q1, point_p2()) && pair_matches(q2, point_p1()));
    if (pencil_case) {
        std::array<ProjPoint, 2> t1{point_p1(), point_p1_bar()};
        std::array<ProjPoint, 2> t2{point_p2(), point_p2_bar()};
        bool done = false;
        for (int order = 0; order < 2 && !done; ++order)
            for (int v1 = 0; v1 < 2 && !done; ++v1)
                for (int v2 = 0; v2 < 2 && !done; ++v2) {
                    const ProjPoint& ra = rs[order == 0 ? 0 : 2];
                    const ProjPoint& rb = rs[order == 0 ? 2 : 0];
                    auto lam = solve_projective_constraints(
                        {{ra, t1[v1]}, {rb, t2[v2]}}, [](const Mat3&) { return true; });
                    if (!lam) continue;
                    BirMap cand = compose(linear_birmap(*lam, "l"), theta);
                    if (is_in_jcirc(cand)) {
                        theta = BirMap::from_triples(cand.forward(), cand.inverse_triple(),
                                                     {{"quintic", 1}}, false);
                        Mat3 lm = *lam;
                        for (auto& r : rs) r = apply_matrix(lm, r);
                        done = true;
                    }
                }
        if (!done)
            throw std::runtime_error("standard_quintic: pencil normalization failed");
        g.member.jcirc = true;
        g.induced_circ = is_in_jcirc(theta);
    }
    g.map = theta;
    g.member.aut = false;
    g.member.jstar = false;
    g.inverse_base_points = rs;
    return g;
}

JcircNormalization normalize_to_jcirc(const Generator& quintic) {
    if (quintic.map.degree() != 5)
        throw std::invalid_argument("normalize_to_jcirc: input must be a quintic");
    // Base-point pairs of theta and theta^{-1}.
    std::vector<ProjPoint> qs;
    for (const auto& bp : quintic.certified)
        if (bp.kind == BasePointKind::Proper) qs.push_back(bp.point);
    const auto& rs = quintic.inverse_base_points;
    if (qs.size() != 6 || rs.size() != 6)
        throw std::invalid_argument("normalize_to_jcirc: certified data incomplete");

    std::array<ProjPoint, 2> p1s{point_p1(), point_p1_bar()};
    std::array<ProjPoint, 2> p2s{point_p2(), point_p2_bar()};
    // alpha sends (p1, p2) onto the first two base-point pairs.
    auto alpha = solve_projective_constraints({{point_p1(), qs[0]}, {point_p2(), qs[2]}},
                                              [](const Mat3&) { return true; });
    if (!alpha)
        throw DomainError(ErrorCode::DegeneratePosition, "normalize_to_jcirc: alpha not found");
    for (int order = 0; order < 2; ++order) {
        const ProjPoint& ra = rs[order == 0 ? 0 : 2];
        const ProjPoint& rb = rs[order == 0 ? 2 : 0];
        for (int v1 = 0; v1 < 2; ++v1)
            for (int v2 = 0; v2 < 2; ++v2) {
                auto beta = solve_projective_constraints(
                    {{ra, p1s[v1]}, {rb, p2s[v2]}}, [](const Mat3&) { return true; });
                if (!beta) continue;
                BirMap cand = compose(compose(linear_birmap(*beta, "b"), quintic.map),
                                      linear_birmap(*alpha, "a"));
                if (!is_in_jcirc(cand)) continue;
                JcircNormalization out;
                out.alpha = make_linear(*alpha, kLinearKind, matrix_params(*alpha));
                out.beta = make_linear(*beta, kLinearKind, matrix_params(*beta));
                out.normalized.map = BirMap::from_triples(cand.forward(), cand.inverse_triple(),
                                                          {{"quintic", 1}}, false);
                out.normalized.kind = "quintic_normalized";
                out.normalized.member.jcirc = true;
                out.normalized.induced_circ = is_in_jcirc(out.normalized.map);
                Mat3 am = *alpha;
                Mat3 ainv = am.adjugate();
                for (const auto& q : qs)
                    out.normalized.certified.push_back(
                        BasePoint::proper(apply_matrix(ainv, q), 2));
                for (const auto& r : rs)
                    out.normalized.inverse_base_points.push_back(apply_matrix(*beta, r));
                return out;
            }
    }
    throw std::runtime_error("normalize_to_jcirc: no pairing produced a J-circ element");
}

Generator alpha_fixing_p1_sending(const ProjPoint& q) {
    if (q.is_real())
        throw DomainError(ErrorCode::DegeneratePosition, "q must be non-real");
    if (pair_matches(q, point_p1()))
        throw DomainError(ErrorCode::DegeneratePosition, "q must avoid the pair of p1");
    std::vector<ProjPoint> four{point_p1(), point_p1_bar(), q, q.conj()};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c)
                if (collinear(four[a], four[b], four[c]))
                    throw DomainError(ErrorCode::DegeneratePosition,
                                      "three of p1, p1bar, q, qbar are collinear");
    auto m = solve_projective_constraints({{point_p1(), point_p1()}, {q, point_p2()}},
                                          [](const Mat3&) { return true; });
    if (!m)
        throw DomainError(ErrorCode::DegeneratePosition,
                          "alpha_fixing_p1_sending: no invertible solution");
    Generator g = make_linear(*m, kLinearKind, matrix_params(*m));
    if (apply_matrix(*m, point_p1()) != point_p1() || apply_matrix(*m, q) != point_p2())
        throw std::runtime_error("alpha_fixing_p1_sending: postcondition failed");
    return g;
}

Generator deg3_fixing_conic(const ProjPoint& q) {
    if (q.is_real())
        throw DomainError(ErrorCode::ReducibleConic, "q must be non-real");
    PencilValue value = pi_circ(q);
    Conic cq = pencil_member(value);
    if (cq.is_reducible())
        throw DomainError(ErrorCode::ReducibleConic, "C_q is reducible");

    HomPoly3 l1 = line_through(q, point_p2_bar());
    HomPoly3 l1c = l1.conj();
    // r = intersection of the conjugate pair of lines.
    auto lc = [](const HomPoly3& l, int k) {
        Monomial3 m;
        m.e[k] = 1;
        return l.coeff(m);
    };
    GaussRational rx = lc(l1, 1) * lc(l1c, 2) - lc(l1, 2) * lc(l1c, 1);
    GaussRational ry = lc(l1, 2) * lc(l1c, 0) - lc(l1, 0) * lc(l1c, 2);
    GaussRational rz = lc(l1, 0) * lc(l1c, 1) - lc(l1, 1) * lc(l1c, 0);
    ProjPoint r(rx, ry, rz);
    if (!r.is_real()) throw std::runtime_error("deg3_fixing_conic: r is not real");

    const auto& pts = pencil_base_points();
    bool on_c3_line = collinear(pts[0], pts[1], r);  // r on L_{p1, p1bar}
    Generator base = on_c3_line ? quadratic_jcirc(2, r) : cubic_jcirc(r);

    auto contracted_target = [&](const BirMap& m) -> ProjPoint {
        std::vector<ProjPoint> avoid{q, q.conj(), point_p2(), point_p2_bar(), r};
        for (int tries = 0; tries < 4; ++tries) {
            ProjPoint sample = point_on_line(l1, avoid);
            avoid.push_back(sample);
            if (auto img = eval_triple(m.forward(), sample)) return *img;
        }
        throw std::runtime_error("deg3_fixing_conic: could not sample the contracted line");
    };

    BirMap f = base.map;
    ProjPoint target = contracted_target(f);
    if (!on_c3_line) {
        // Cubic case: move the contraction target to p1 using only the
        // permutations inducing the identity on P^1, so the trivial induced
        // action of the cubic is preserved.
        if (target == point_p1_bar()) {
            f = compose(compose(perm_conj_p1().map, perm_conj_p2().map), f);
        } else if (target == point_p2()) {
            f = compose(perm_swap_pairs().map, f);
        } else if (target == point_p2_bar()) {
            f = compose(compose(perm_swap_pairs().map,
                                compose(perm_conj_p1().map, perm_conj_p2().map)), f);
        } else if (target != point_p1()) {
            throw std::runtime_error("deg3_fixing_conic: contracted image not a pencil point");
        }
    } else {
        // Quadratic case: arrange the contraction onto p1 and f(p1) = p2;
        // the induced action is then the identity because r lies on z = 0.
        if (target == point_p1_bar()) {
            f = compose(perm_conj_p1().map, f);
        } else if (target == point_p2() || target == point_p2_bar()) {
            throw std::runtime_error("deg3_fixing_conic: unexpected contraction target");
        }
        auto at_p1 = eval_triple(f.forward(), point_p1());
        if (!at_p1) throw std::runtime_error("deg3_fixing_conic: p1 became a base point");
        if (*at_p1 == point_p2_bar()) f = compose(perm_conj_p2().map, f);
    }

    auto mc = is_in_jcirc(f);
    if (!mc || !mc->is_diagonal() || mc->a[0][0] != mc->a[1][1])
        throw std::runtime_error("deg3_fixing_conic: induced action is not the identity");

    // Postconditions: the conic is preserved and the line contracts to p1.
    HomPoly3 image = image_of_curve(f, cq.form());
    if (image.normalized() != cq.form().normalized())
        throw std::runtime_error("deg3_fixing_conic: conic not preserved");
    if (contracted_target(f) != point_p1())
        throw std::runtime_error("deg3_fixing_conic: line not contracted to p1");

    Generator g;
    g.map = BirMap::from_triples(f.forward(), f.inverse_triple(), {{"deg3_fix", 1}}, false);
    g.kind = "deg3_fix";
    g.params = {q.str()};
    g.member = classify(g.map);
    g.induced_circ = is_in_jcirc(g.map);
    g.certified = base.certified;
    return g;
}

Generator generator_from_kind(const std::string& kind, const std::vector<std::string>& params) {
    if (kind == "sigma0") return sigma0();
    if (kind == "sigma1_intro") return sigma1_intro();
    if (kind == "sigma1_jcirc") return sigma1_jcirc();
    if (kind == "perm_conj_p1") return perm_conj_p1();
    if (kind == "perm_conj_p2") return perm_conj_p2();
    if (kind == "perm_swap_pairs") return perm_swap_pairs();
    if (kind == "linear") {
        if (params.size() != 9) throw std::invalid_argument("linear: expected 9 entries");
        Mat3 m;
        for (int k = 0; k < 9; ++k) m.a[k / 3][k % 3] = Rational::from_string(params[k]);
        return linear_map(m);
    }
    if (kind == "quadratic_jcirc") {
        if (params.size() != 2) throw std::invalid_argument("quadratic_jcirc: expected i, q");
        return quadratic_jcirc(std::stoi(params[0]), parse_point(params[1]));
    }
    if (kind == "cubic_jcirc") {
        if (params.size() != 1) throw std::invalid_argument("cubic_jcirc: expected r");
        return cubic_jcirc(parse_point(params[0]));
    }
    if (kind == "quintic") {
        if (params.size() != 3) throw std::invalid_argument("quintic: expected three points");
        return standard_quintic(parse_point(params[0]), parse_point(params[1]),
                                parse_point(params[2]));
    }
    if (kind == "deg3_fix") {
        if (params.size() != 1) throw std::invalid_argument("deg3_fix: expected q");
        return deg3_fixing_conic(parse_point(params[0]));
    }
    throw std::invalid_argument("unknown generator kind: " + kind);
}

}  // namespace cremona
