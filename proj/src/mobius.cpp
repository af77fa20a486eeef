#include "prym/mobius.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace prym {

MobiusMap::MobiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
    m_[0] = std::move(a);
    m_[1] = std::move(b);
    m_[2] = std::move(c);
    m_[3] = std::move(d);
    if ((m_[0] * m_[3] - m_[1] * m_[2]).is_zero())
        throw std::invalid_argument("Mobius map with zero determinant");
    normalize();
}

void MobiusMap::normalize() {
    for (int i = 0; i < 4; ++i) {
        if (!m_[i].is_zero()) {
            if (m_[i].is_one()) return;
            FieldElement inv = m_[i].inverse();
            for (int j = i; j < 4; ++j) m_[j] = m_[j] * inv;
            return;
        }
    }
}

MobiusMap MobiusMap::identity(const FieldCtx& ctx) {
    return MobiusMap(FieldElement::one(ctx), FieldElement::zero(ctx), FieldElement::zero(ctx),
                     FieldElement::one(ctx));
}

namespace {

// map sending (z0, z1, z2) -> (0, 1, inf)
MobiusMap to_standard_triple(const std::array<PointP1, 3>& z) {
    const FieldCtx& ctx = z[0].ctx();
    const FieldElement one = FieldElement::one(ctx);
    if (z[0].infinite) {
        // z -> (z1 - z2)/(z - z2)
        return MobiusMap(FieldElement::zero(ctx), z[1].v - z[2].v, one, -z[2].v);
    }
    if (z[1].infinite) {
        // z -> (z - z0)/(z - z2)
        return MobiusMap(one, -z[0].v, one, -z[2].v);
    }
    if (z[2].infinite) {
        // z -> (z - z0)/(z1 - z0)
        return MobiusMap(one, -z[0].v, FieldElement::zero(ctx), z[1].v - z[0].v);
    }
    FieldElement d12 = z[1].v - z[2].v;
    FieldElement d10 = z[1].v - z[0].v;
    return MobiusMap(d12, -z[0].v * d12, d10, -z[2].v * d10);
}

} // namespace

MobiusMap MobiusMap::through(const std::array<PointP1, 3>& src, const std::array<PointP1, 3>& dst) {
    return to_standard_triple(dst).inverse().compose(to_standard_triple(src));
}

PointP1 MobiusMap::apply(const PointP1& x) const {
    if (x.infinite) {
        if (m_[2].is_zero()) return PointP1::inf(ctx());
        return PointP1::finite(m_[0] * m_[2].inverse());
    }
    FieldElement den = m_[2] * x.v + m_[3];
    if (den.is_zero()) return PointP1::inf(ctx());
    return PointP1::finite((m_[0] * x.v + m_[1]) * den.inverse());
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return MobiusMap(m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
                     m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(m_[3], -m_[1], -m_[2], m_[0]); }

MobiusMap MobiusMap::lifted(const FieldCtx& dst) const {
    if (ctx()->same(*dst)) return *this;
    if (ctx()->k == 1) {
        auto lift = [&](const FieldElement& e) { return FieldElement::from_int(dst, e.coeff(0)); };
        return MobiusMap(lift(m_[0]), lift(m_[1]), lift(m_[2]), lift(m_[3]));
    }
    const Embedding& emb = get_embedding(ctx(), dst);
    return MobiusMap(emb.apply(m_[0]), emb.apply(m_[1]), emb.apply(m_[2]), emb.apply(m_[3]));
}

bool MobiusMap::operator==(const MobiusMap& o) const {
    for (int i = 0; i < 4; ++i)
        if (!(m_[i] == o.m_[i])) return false;
    return true;
}

bool MobiusMap::operator<(const MobiusMap& o) const {
    for (int i = 0; i < 4; ++i)
        if (m_[i] != o.m_[i]) return m_[i] < o.m_[i];
    return false;
}

std::string MobiusMap::str() const {
    std::ostringstream os;
    os << "[[" << m_[0].str() << "," << m_[1].str() << "],[" << m_[2].str() << "," << m_[3].str()
       << "]]";
    return os.str();
}

std::vector<MobiusMap> symmetry_group(const std::vector<PointP1>& s) {
    const int n = static_cast<int>(s.size());
    if (n < 3) throw std::invalid_argument("symmetry_group needs at least 3 points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s[i] == s[j]) throw std::invalid_argument("symmetry_group: repeated point");
    std::array<PointP1, 3> base{s[0], s[1], s[2]};
    std::vector<MobiusMap> group;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                MobiusMap m = MobiusMap::through(base, {s[i], s[j], s[k]});
                bool preserves = true;
                for (const auto& pt : s) {
                    PointP1 img = m.apply(pt);
                    if (std::find(s.begin(), s.end(), img) == s.end()) {
                        preserves = false;
                        break;
                    }
                }
                if (preserves) group.push_back(std::move(m));
            }
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    return group;
}

std::pair<FieldElement, FieldElement> act_on_pair(const MobiusMap& m, const FieldElement& a,
                                                  const FieldElement& b) {
    MobiusMap inv = m.inverse();
    const FieldElement& A = inv.a();
    const FieldElement& B = inv.b();
    const FieldElement& C = inv.c();
    const FieldElement& D = inv.d();
    FieldElement two = FieldElement::from_int(a.ctx(), 2);
    FieldElement lead = A * A + a * A * C + b * C * C;
    if (lead.is_zero())
        throw std::domain_error("act_on_pair: image quadratic degenerates (precondition violated)");
    FieldElement mid = two * A * B + a * (A * D + B * C) + two * b * C * D;
    FieldElement cons = B * B + a * B * D + b * D * D;
    FieldElement linv = lead.inverse();
    return {mid * linv, cons * linv};
}

std::vector<Orbit> orbits(const std::vector<MobiusMap>& group,
                          const std::vector<std::pair<FieldElement, FieldElement>>& points) {
    if (group.empty()) throw std::invalid_argument("orbits: empty group");
    std::map<std::string, int> index;
    for (size_t i = 0; i < points.size(); ++i)
        index[points[i].first.key() + "|" + points[i].second.key()] = static_cast<int>(i);
    std::vector<bool> seen(points.size(), false);
    std::vector<Orbit> out;
    for (size_t start = 0; start < points.size(); ++start) {
        if (seen[start]) continue;
        Orbit orb;
        std::vector<int> stack{static_cast<int>(start)};
        seen[start] = true;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            orb.members.push_back(cur);
            for (const auto& g : group) {
                auto [ia, ib] = act_on_pair(g, points[cur].first, points[cur].second);
                auto it = index.find(ia.key() + "|" + ib.key());
                if (it == index.end())
                    throw std::runtime_error("orbits: point set is not closed under the action");
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    stack.push_back(it->second);
                }
            }
        }
        std::sort(orb.members.begin(), orb.members.end(), [&](int x, int y) {
            if (points[x].first != points[y].first) return points[x].first < points[y].first;
            return points[x].second < points[y].second;
        });
        orb.rep = orb.members.front();
        int stab = 0;
        for (const auto& g : group) {
            auto [ia, ib] = act_on_pair(g, points[orb.rep].first, points[orb.rep].second);
            if (ia == points[orb.rep].first && ib == points[orb.rep].second) ++stab;
        }
        orb.stabilizer_order = stab;
        if (stab * static_cast<int>(orb.members.size()) != static_cast<int>(group.size()))
            throw std::logic_error("orbits: orbit size times stabilizer is not the group order");
        out.push_back(std::move(orb));
    }
    std::sort(out.begin(), out.end(), [&](const Orbit& x, const Orbit& y) {
        if (points[x.rep].first != points[y.rep].first)
            return points[x.rep].first < points[y.rep].first;
        return points[x.rep].second < points[y.rep].second;
    });
    return out;
}

Poly transform_branch_poly(const Poly& f, int formal_degree, const MobiusMap& m) {
    if (f.degree() > formal_degree)
        throw std::invalid_argument("transform_branch_poly: formal degree too small");
    const FieldCtx& ctx = f.ctx();
    Poly num = Poly::from_coeffs(ctx, {m.b(), m.a()}); // a u + b
    Poly den = Poly::from_coeffs(ctx, {m.d(), m.c()}); // c u + d
    std::vector<Poly> num_pow(formal_degree + 1, Poly::one(ctx));
    std::vector<Poly> den_pow(formal_degree + 1, Poly::one(ctx));
    for (int i = 1; i <= formal_degree; ++i) {
        num_pow[i] = num_pow[i - 1] * num;
        den_pow[i] = den_pow[i - 1] * den;
    }
    Poly out = Poly::zero(ctx);
    for (int i = 0; i <= formal_degree; ++i) {
        FieldElement fi = f.coeff(i);
        if (fi.is_zero()) continue;
        out = out + (num_pow[i] * den_pow[formal_degree - i]).scaled(fi);
    }
    return out;
}

} // namespace prym
