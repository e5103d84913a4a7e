#pragma once

#include <vector>

#include "cremona/rational.hpp"
#include "cremona/unipoly.hpp"

namespace cremona {

// Factorization data of a rational univariate polynomial, resolved only down
// to degree <= 2 over Q. Anything further stays in `remainder`.
struct LinQuadFactors {
    std::vector<std::pair<Rational, int>> roots;                    // t = r, multiplicity
    std::vector<std::pair<std::pair<Rational, Rational>, int>> quadratics;  // t^2+p*t+q, mult
    std::vector<std::pair<UniPoly, int>> remainder;  // monic, no factors of degree <= 2
};

// Deterministic extraction of all monic linear and quadratic rational factors
// (small primes, Hensel lifting, exact trial division). The returned pieces
// multiply back to p up to its leading coefficient.
LinQuadFactors factor_linear_quadratic(const UniPoly& p);

}  // namespace cremona
