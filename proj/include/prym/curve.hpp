#pragma once

#include <cstdint>
#include <vector>

#include "prym/matrix.hpp"
#include "prym/poly.hpp"
#include "prym/rational.hpp"

namespace prym {

/// y^2 = f(x) with f squarefree of degree 2g+1 or 2g+2.
struct HyperellipticCurve {
    FieldCtx ctx;
    Poly f;
    int genus;
};

// char-p-aware squarefreeness (p-th power parts detected via the derivative)
bool is_squarefree(const Poly& f);

// validated: throws on non-squarefree f or degree < 3
HyperellipticCurve make_curve(const Poly& f);
// no smoothness check; downstream operations re-check and throw
HyperellipticCurve make_curve_unchecked(const Poly& f);

// g x g matrix of coefficients a_{ip-j} of f^{(p-1)/2} in the basis x^{i-1}dx/y.
// Throws on a singular curve.
Matrix hasse_witt(const HyperellipticCurve& C);

// rank of H * H^(p) * ... * H^(p^{g-1})
int p_rank(const HyperellipticCurve& C);
// genus - rank(H)
int a_number(const HyperellipticCurve& C);

// coefficient of x^{p-1} in f^{(p-1)/2} for an elliptic model (degree 3 or 4)
FieldElement hasse_invariant(const Poly& f);

// j-invariant of y^2 = x^3 + A x + B (throws on zero discriminant)
FieldElement j_invariant_short(const FieldElement& A, const FieldElement& B);
// j-invariant of y^2 = cubic (monic cubic is depressed first)
FieldElement j_invariant_cubic(const Poly& cubic);

struct SupersingularCurve {
    FieldElement j; // in F_{p^2}
    int aut_order;  // 2 generic, 4 at j=1728, 6 at j=0, 12 for p=3
    Poly model;     // cubic over F_{p^2}
};

// All supersingular j-invariants of F_{p^2} in canonical order, each with a
// model and its automorphism order. The mass sums to (p-1)/24.
std::vector<SupersingularCurve> enumerate_supersingular(std::int64_t p);
Rat supersingular_mass(std::int64_t p);

// y^2 = cubic realizing the given j over the smallest of F_p / F_{p^2}
Poly standard_supersingular_model(const FieldElement& j);

} // namespace prym
