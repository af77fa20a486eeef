#pragma once

#include <optional>
#include <vector>

#include "prym/curve.hpp"

namespace prym {

/// The 2g+2 branch points of a hyperelliptic curve, realized in an explicit
/// splitting field; infinity is branch iff deg f is odd.
struct BranchSet {
    FieldCtx ctx;
    std::vector<FieldElement> finite;
    bool has_infinity = false;

    int size() const { return static_cast<int>(finite.size()) + (has_infinity ? 1 : 0); }
};

// lcm of [coefficient field : F_p] and the absolute degrees of the roots of f
int branch_splitting_degree(const Poly& f, std::uint64_t seed);

// Branch set of C realized in `target` (must contain the splitting field).
BranchSet branch_set(const HyperellipticCurve& C, const FieldCtx& target, std::uint64_t seed);

/// B = B1 ∐ B2 with both parts of even cardinality >= 2; carries the
/// 2-torsion point of the Jacobian that defines the etale double cover.
struct EvenPartition {
    BranchSet b1, b2;
};

// all unordered nontrivial even splittings; 2^{2g} - 1 of them
std::vector<EvenPartition> even_partitions(const BranchSet& B);

/// Quotient pair (C1, C2); an absent entry is the rational-curve marker.
struct PrymDecomposition {
    std::optional<HyperellipticCurve> c1, c2;
    int genus1() const { return c1 ? c1->genus : 0; }
    int genus2() const { return c2 ? c2->genus : 0; }
};

PrymDecomposition prym_components(const HyperellipticCurve& C, const EvenPartition& part);

// p-rank of the etale double cover attached to the partition:
// p_rank(C) + p_rank(C1) + p_rank(C2)
int cover_p_rank(const HyperellipticCurve& C, const EvenPartition& part);

// (x^2 + a x + b) * f_E; smoothness is NOT checked here
Poly pair_poly(const FieldElement& a, const FieldElement& b, const Poly& e_model);
HyperellipticCurve pair_curve(const FieldElement& a, const FieldElement& b, const Poly& e_model);
// disc(x^2+ax+b) != 0 and gcd(x^2+ax+b, f_E) = 1 (f_E assumed squarefree)
bool is_smooth_pair(const FieldElement& a, const FieldElement& b, const Poly& e_model);

} // namespace prym
