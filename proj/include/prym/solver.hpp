#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prym/bipoly.hpp"
#include "prym/curve.hpp"

namespace prym {

/// The p-rank-zero polynomial system on the (a, b) plane for the genus-2
/// family y^2 = (x^2 + a x + b) f_E(x) with E fixed: symbolic Hasse-Witt
/// matrix H, the four entries of M = H * H^{[p]} (entrywise polynomial p-th
/// power twist), and det H as elimination accelerator.
struct PrymFiberSystem {
    std::int64_t p;
    FieldCtx base;
    Poly e_model;
    BiPoly H[2][2];
    BiPoly M[2][2];
    BiPoly det;
    BiPoly dMa[4], dMb[4]; // partials of M entries, row-major order
};

PrymFiberSystem build_system(const Poly& e_model);

/// A verified zero of the system, as a closed point: one representative of
/// the Frobenius orbit, living in its own residue field. The orbit has
/// residue_degree geometric conjugates; `key` is a canonical invariant of the
/// orbit, identical across conjugates and ambient-field presentations.
struct SolutionPoint {
    FieldCtx small_ctx;
    FieldElement a_small, b_small;
    FieldElement a, b; // aliases of the small coordinates
    int residue_degree = 0;
    bool smooth = true;
    std::string key;
};

// Canonical closed-point invariant: smallest lambda in {0,...,p-1} making
// c = a + lambda*b a primitive element of F_p(a,b), with minpoly(c) and the
// F_p[c]-expressions of a and b.
std::string closed_point_key(const FieldElement& a, const FieldElement& b);

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveResult {
    std::vector<SolutionPoint> points; // smooth closed points, ordered by key
    std::vector<SolutionPoint> excluded_singular;
    // gcd of the four det-vs-entry resultants, with each singular point's
    // root multiplicity lowered by the universal (p-1)/2 singular-locus excess
    Poly eliminant;
    Poly eliminant_raw; // the unnormalized gcd
    std::vector<std::pair<Poly, int>> eliminant_factors; // of the normalized eliminant
    // total number of geometric solutions (sum of residue degrees)
    int geometric_count = 0;
};

// Complete solution of the fiber system over the algebraic closure; the
// output lists one representative per Frobenius orbit.
SolveResult solve_fiber(const PrymFiberSystem& sys, std::uint64_t seed);

// The eliminant in the b direction (resultants w.r.t. a), normalized the same
// way using the singular exclusions recorded in `sol`.
Poly b_eliminant(const PrymFiberSystem& sys, const SolveResult& sol, std::uint64_t seed);

// Direct scan of F_{p^k} x F_{p^k}; guard p^{2k} <= 10^8.
std::vector<SolutionPoint> brute_force_oracle(const PrymFiberSystem& sys, int k,
                                              std::uint64_t seed);

// a-number of the specialized genus-2 curve at a smooth solution
int solution_a_number(const PrymFiberSystem& sys, const SolutionPoint& pt);
// some 2x2 Jacobian minor of the system is invertible at the point
bool jacobian_transversal(const PrymFiberSystem& sys, const SolutionPoint& pt);

} // namespace prym
