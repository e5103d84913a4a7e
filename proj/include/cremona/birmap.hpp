#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cremona/plane.hpp"

namespace cremona {

struct ProvEntry {
    std::string name;
    int exponent = 1;  // +1 or -1
};

// Birational transformation of P^2 as a gcd-free real polynomial triple with
// a cached inverse triple. Every map is built from generators with known
// inverses; inverses propagate through composition and are never recomputed.
class BirMap {
public:
    static BirMap identity();

    // Verifies forward o inverse = identity up to content unless told not to.
    static BirMap from_triples(std::array<HomPoly3, 3> forward,
                               std::array<HomPoly3, 3> inverse,
                               std::vector<ProvEntry> provenance, bool verify = true);

    int degree() const { return fwd_[0].degree(); }
    const std::array<HomPoly3, 3>& forward() const { return fwd_; }
    const std::array<HomPoly3, 3>& inverse_triple() const { return inv_; }
    const std::vector<ProvEntry>& provenance() const { return prov_; }

    BirMap inverse() const;
    bool is_identity() const;

private:
    BirMap() = default;
    std::array<HomPoly3, 3> fwd_, inv_;
    std::vector<ProvEntry> prov_;
};

// f o g with the full common factor removed.
BirMap compose(const BirMap& f, const BirMap& g);

// Evaluation; BasePoint error when all three components vanish.
ProjPoint apply(const BirMap& f, const ProjPoint& p);

// True iff all 2x2 cross products of the forward triples vanish identically.
bool maps_equal(const BirMap& f, const BirMap& g);

// Zariski closure of f(C) for an irreducible curve C, by substituting the
// inverse triple and stripping every factor contracted by it (divisors of
// the inverse's Jacobian). ContractedCurve if nothing remains.
HomPoly3 image_of_curve(const BirMap& f, const HomPoly3& curve);

// Multiplicity of the linear system of f at a proper point (minimum
// vanishing order of the components).
int multiplicity_at(const BirMap& f, const ProjPoint& q);

// Multiplicity at a first-neighborhood point given by a tangent direction.
int multiplicity_at_direction(const BirMap& f, const TangentDirection& dir);

enum class BasePointKind { Proper, FirstNeighborhood, Higher };

struct BasePoint {
    BasePointKind kind = BasePointKind::Proper;
    ProjPoint point;                           // Proper: the point; FN: its parent
    std::optional<TangentDirection> direction; // FN only
    std::string descriptor;                    // Higher only, opaque
    int multiplicity = 1;

    static BasePoint proper(ProjPoint p, int mult) {
        BasePoint b;
        b.point = std::move(p);
        b.multiplicity = mult;
        return b;
    }
    static BasePoint first_neighborhood(TangentDirection d, int mult) {
        BasePoint b;
        b.kind = BasePointKind::FirstNeighborhood;
        b.point = d.base;
        b.direction = std::move(d);
        b.multiplicity = mult;
        return b;
    }

    BasePoint conj() const;
    bool same_location(const BasePoint& o) const;
};

struct LinearSystem {
    int degree = 1;
    std::vector<BasePoint> assigned;  // multiplicity field = m_Lambda
};

struct Characteristic {
    int degree = 0;
    std::vector<int> multiplicities;  // sorted descending, with repetition

    // (d; m1^e1, ..., mk^ek)
    std::string str() const;
    friend bool operator==(const Characteristic& a, const Characteristic& b) {
        return a.degree == b.degree && a.multiplicities == b.multiplicities;
    }
};

// All base points with multiplicities, proper ones by resultant elimination
// and first-neighborhood ones by one blow-up per proper point.
std::vector<BasePoint> base_points(const BirMap& f);

// Noether-complete characteristic; DeepTower / NonQiBasePoint propagate.
Characteristic characteristic(const BirMap& f);

// deg(f)*D - sum of m_f(q) * m_Lambda(q).
int degree_after(const BirMap& f, const LinearSystem& system);

// Linear system of f itself: its degree with its base points.
LinearSystem own_linear_system(const BirMap& f);

int multiplicity_of_system(const LinearSystem& system, const BasePoint& at);

struct NoetherWitness {
    std::vector<BasePoint> points;  // the base points of f realizing the bound
    int attained;                   // sum of the system's multiplicities there
    bool strict;                    // whether the strict inequality was required
};

enum class SubgroupTag { Jstar, Jcirc };

// Witness points for the degree-multiplicity inequality. `strict` asks for
// "> D" (used when deg f(system) < D). NoWitness signals violated hypotheses.
NoetherWitness noether_witness(const BirMap& f, SubgroupTag tag, const LinearSystem& system,
                               bool strict);

}  // namespace cremona
