#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "prym/ff.hpp"
#include "prym/poly.hpp"

namespace prym {

/// Point of P^1 over a finite field: either finite(e) or infinity.
struct PointP1 {
    bool infinite = false;
    FieldElement v; // carries the context even for the infinite point

    static PointP1 finite(FieldElement e) { return PointP1{false, std::move(e)}; }
    static PointP1 inf(const FieldCtx& ctx) { return PointP1{true, FieldElement::zero(ctx)}; }

    const FieldCtx& ctx() const { return v.ctx(); }
    bool operator==(const PointP1& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
    bool operator!=(const PointP1& o) const { return !(*this == o); }
    bool operator<(const PointP1& o) const { // finite points first, canonical order
        if (infinite != o.infinite) return !infinite;
        if (infinite) return false;
        return v < o.v;
    }
    std::string str() const { return infinite ? "inf" : v.str(); }
};

/// x -> (a x + b)/(c x + d) with ad - bc != 0, stored with the first nonzero
/// entry normalized to 1 so representatives are unique.
class MobiusMap {
public:
    MobiusMap() = default;
    MobiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

    static MobiusMap identity(const FieldCtx& ctx);
    // the unique map with src[i] -> dst[i] for three distinct points each
    static MobiusMap through(const std::array<PointP1, 3>& src,
                             const std::array<PointP1, 3>& dst);

    const FieldCtx& ctx() const { return m_[0].ctx(); }
    const FieldElement& a() const { return m_[0]; }
    const FieldElement& b() const { return m_[1]; }
    const FieldElement& c() const { return m_[2]; }
    const FieldElement& d() const { return m_[3]; }

    PointP1 apply(const PointP1& x) const;
    MobiusMap compose(const MobiusMap& o) const; // (*this) after o
    MobiusMap inverse() const;
    MobiusMap lifted(const FieldCtx& dst) const;

    bool operator==(const MobiusMap& o) const;
    bool operator!=(const MobiusMap& o) const { return !(*this == o); }
    bool operator<(const MobiusMap& o) const;

    std::string str() const;

private:
    void normalize();
    FieldElement m_[4];
};

// All Mobius maps with entries in the points' field preserving S as a set.
// |S| >= 3 and points distinct; output canonically ordered.
std::vector<MobiusMap> symmetry_group(const std::vector<PointP1>& s);

// Monic quadratic x^2 + a x + b pulled back through m^{-1} (a left action on
// the (a, b) plane). Throws when the image quadratic degenerates, which means
// the precondition (m fixes the ambient branch 4-set) was violated.
std::pair<FieldElement, FieldElement> act_on_pair(const MobiusMap& m, const FieldElement& a,
                                                  const FieldElement& b);

struct Orbit {
    int rep;                  // index of the canonical (minimal) representative
    std::vector<int> members; // indices into the input point list
    int stabilizer_order;
};

// Partition of points (closed under the group action; validated) into orbits.
std::vector<Orbit> orbits(const std::vector<MobiusMap>& group,
                          const std::vector<std::pair<FieldElement, FieldElement>>& points);

// Pullback of a branch polynomial under a coordinate change, with formal even
// degree D = 2g+2: P(u) = sum_i f_i (a u + b)^i (c u + d)^{D-i}.
Poly transform_branch_poly(const Poly& f, int formal_degree, const MobiusMap& m);

} // namespace prym
