#include "prym/covers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "prym/bipoly.hpp"
#include "prym/rng.hpp"

namespace prym {

int branch_splitting_degree(const Poly& f, std::uint64_t seed) {
    int l = f.ctx()->k;
    for (auto& [u, mult] : factor(f, seed)) {
        (void)mult;
        int m = u.degree() == 1 ? 1 : absolute_root_degree(u);
        l = static_cast<int>(std::lcm(l, m));
    }
    return l;
}

BranchSet branch_set(const HyperellipticCurve& C, const FieldCtx& target, std::uint64_t seed) {
    if (!is_squarefree(C.f)) throw std::invalid_argument("singular curve: f has multiple roots");
    BranchSet B;
    B.ctx = target;
    for (auto& [r, mult] : roots_in(C.f, target, seed)) {
        if (mult != 1) throw std::logic_error("branch_set: repeated root in squarefree f");
        B.finite.push_back(r);
    }
    B.has_infinity = (C.f.degree() % 2) == 1;
    if (B.size() != 2 * C.genus + 2) throw std::logic_error("branch_set: wrong cardinality");
    return B;
}

std::vector<EvenPartition> even_partitions(const BranchSet& B) {
    const int n = B.size();
    if (n % 2 != 0) throw std::invalid_argument("even_partitions: odd branch cardinality");
    // points 0..n-1, the last one = infinity when present; dedup unordered
    // splittings by always keeping point 0 in B1
    std::vector<EvenPartition> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!(mask & 1u)) continue;
        int c = __builtin_popcount(mask);
        if (c % 2 != 0 || c < 2 || c > n - 2) continue;
        EvenPartition part;
        part.b1.ctx = part.b2.ctx = B.ctx;
        for (int i = 0; i < n; ++i) {
            bool in1 = (mask >> i) & 1u;
            bool is_inf = B.has_infinity && i == n - 1;
            BranchSet& side = in1 ? part.b1 : part.b2;
            if (is_inf)
                side.has_infinity = true;
            else
                side.finite.push_back(B.finite[i]);
        }
        out.push_back(std::move(part));
    }
    return out;
}

namespace {

Poly poly_from_roots(const FieldCtx& ctx, const std::vector<FieldElement>& roots) {
    Poly f = Poly::one(ctx);
    for (const auto& r : roots) f = f * Poly::from_coeffs(ctx, {-r, FieldElement::one(ctx)});
    return f;
}

std::optional<HyperellipticCurve> component_curve(const FieldCtx& ctx, const BranchSet& side) {
    if (side.size() <= 2) return std::nullopt; // rational
    return make_curve(poly_from_roots(ctx, side.finite));
}

} // namespace

PrymDecomposition prym_components(const HyperellipticCurve& C, const EvenPartition& part) {
    const FieldCtx& pctx = part.b1.ctx;
    if (part.b1.size() % 2 != 0 || part.b2.size() % 2 != 0 || part.b1.size() < 2 ||
        part.b2.size() < 2)
        throw std::invalid_argument("partition parts must be even and nonempty");
    if (part.b1.size() + part.b2.size() != 2 * C.genus + 2)
        throw std::invalid_argument("partition inconsistent with the branch set");
    if (part.b1.has_infinity && part.b2.has_infinity)
        throw std::invalid_argument("partition places infinity on both sides");
    bool inf_expected = (C.f.degree() % 2) == 1;
    if ((part.b1.has_infinity || part.b2.has_infinity) != inf_expected)
        throw std::invalid_argument("partition inconsistent with the branch set at infinity");
    Poly flift = C.f.lifted(pctx);
    for (const auto& side : {part.b1, part.b2})
        for (const auto& r : side.finite)
            if (!flift.eval(r).is_zero())
                throw std::invalid_argument("partition point is not a branch point of C");
    // distinctness across the union
    std::vector<FieldElement> all = part.b1.finite;
    all.insert(all.end(), part.b2.finite.begin(), part.b2.finite.end());
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i] == all[i - 1])
            throw std::invalid_argument("partition repeats a branch point");
    PrymDecomposition d;
    d.c1 = component_curve(pctx, part.b1);
    d.c2 = component_curve(pctx, part.b2);
    if (d.genus1() + d.genus2() != C.genus - 1)
        throw std::logic_error("prym component genera do not sum to g - 1");
    return d;
}

int cover_p_rank(const HyperellipticCurve& C, const EvenPartition& part) {
    PrymDecomposition d = prym_components(C, part);
    int r = p_rank(C);
    if (d.c1) r += p_rank(*d.c1);
    if (d.c2) r += p_rank(*d.c2);
    return r;
}

Poly pair_poly(const FieldElement& a, const FieldElement& b, const Poly& e_model) {
    const FieldCtx& ctx = a.ctx();
    Poly q = Poly::from_coeffs(ctx, {b, a, FieldElement::one(ctx)});
    return q * e_model.lifted(ctx);
}

HyperellipticCurve pair_curve(const FieldElement& a, const FieldElement& b, const Poly& e_model) {
    return make_curve_unchecked(pair_poly(a, b, e_model));
}

bool is_smooth_pair(const FieldElement& a, const FieldElement& b, const Poly& e_model) {
    const FieldCtx& ctx = a.ctx();
    FieldElement disc = a * a - FieldElement::from_int(ctx, 4) * b;
    if (disc.is_zero()) return false;
    Poly q = Poly::from_coeffs(ctx, {b, a, FieldElement::one(ctx)});
    return !resultant_univariate(q, e_model.lifted(ctx)).is_zero();
}

} // namespace prym
