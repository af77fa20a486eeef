#include "prym/mult.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "prym/matrix.hpp"
#include "prym/rng.hpp"

namespace prym {

namespace {

// Pascal triangle mod p, n up to `size`
std::vector<std::vector<std::int64_t>> binomials_mod(std::int64_t p, int size) {
    std::vector<std::vector<std::int64_t>> c(size + 1);
    for (int n = 0; n <= size; ++n) {
        c[n].assign(n + 1, 1);
        for (int k = 1; k < n; ++k) c[n][k] = (c[n - 1][k - 1] + c[n - 1][k]) % p;
    }
    return c;
}

// g(a + alpha, b + beta) as a dense table over the point's field
std::vector<std::vector<FieldElement>> translate_entry(const BiPoly& g, const FieldElement& alpha,
                                                       const FieldElement& beta) {
    const FieldCtx& F = alpha.ctx();
    const int da = std::max(g.deg_a(), 0), db = std::max(g.deg_b(), 0);
    auto binom = binomials_mod(F->p, std::max(da, db));
    std::vector<std::vector<FieldElement>> t(
        da + 1, std::vector<FieldElement>(db + 1, FieldElement::zero(F)));
    for (int i = 0; i <= da; ++i)
        for (int j = 0; j <= db; ++j) t[i][j] = g.coeff(i, j);
    std::vector<FieldElement> apow(da + 1, FieldElement::one(F));
    for (int i = 1; i <= da; ++i) apow[i] = apow[i - 1] * alpha;
    for (int j = 0; j <= db; ++j) {
        std::vector<FieldElement> ns(da + 1, FieldElement::zero(F));
        for (int u = 0; u <= da; ++u)
            for (int i = u; i <= da; ++i) {
                if (t[i][j].is_zero() || binom[i][u] == 0) continue;
                ns[u] = ns[u] + t[i][j] * FieldElement::from_int(F, binom[i][u]) * apow[i - u];
            }
        for (int u = 0; u <= da; ++u) t[u][j] = ns[u];
    }
    std::vector<FieldElement> bpow(db + 1, FieldElement::one(F));
    for (int j = 1; j <= db; ++j) bpow[j] = bpow[j - 1] * beta;
    for (int i = 0; i <= da; ++i) {
        std::vector<FieldElement> ns(db + 1, FieldElement::zero(F));
        for (int v = 0; v <= db; ++v)
            for (int j = v; j <= db; ++j) {
                if (t[i][j].is_zero() || binom[j][v] == 0) continue;
                ns[v] = ns[v] + t[i][j] * FieldElement::from_int(F, binom[j][v]) * bpow[j - v];
            }
        t[i] = std::move(ns);
    }
    return t;
}

// Macaulay dual-space length of the four-entry ideal in the fiber plane.
// Valid at a-number-1 solutions, where the entries cut the p-rank-0 curve
// with its reduced structure near the point.
MultiplicityResult dual_space_length(const PrymFiberSystem& sys, const SolutionPoint& pt,
                                     int cap) {
    const FieldCtx& F = pt.small_ctx;
    std::vector<std::vector<std::vector<FieldElement>>> tr;
    for (int i = 0; i < 4; ++i) {
        BiPoly g = sys.M[i / 2][i % 2].lifted(F);
        tr.push_back(translate_entry(g, pt.a_small, pt.b_small));
        if (!tr.back()[0][0].is_zero())
            throw std::invalid_argument("local_multiplicity: point is not a solution");
    }
    auto coeff = [&](int i, int u, int v) -> FieldElement {
        const auto& t = tr[i];
        if (u < 0 || v < 0 || u >= static_cast<int>(t.size()) ||
            v >= static_cast<int>(t[0].size()))
            return FieldElement::zero(F);
        return t[u][v];
    };
    std::vector<int> dims{1};
    int prev = 1;
    for (int d = 1; d <= cap; ++d) {
        std::vector<std::pair<int, int>> cols;
        for (int tot = 0; tot <= d; ++tot)
            for (int u = tot; u >= 0; --u) cols.emplace_back(u, tot - u);
        std::vector<std::pair<int, int>> muls;
        for (int tot = 0; tot < d; ++tot)
            for (int e = tot; e >= 0; --e) muls.emplace_back(e, tot - e);
        Matrix mac(F, static_cast<int>(muls.size()) * 4, static_cast<int>(cols.size()));
        int r = 0;
        for (int i = 0; i < 4; ++i)
            for (const auto& [e, f] : muls) {
                for (size_t c = 0; c < cols.size(); ++c) {
                    auto [u, v] = cols[c];
                    mac.at(r, static_cast<int>(c)) = coeff(i, u - e, v - f);
                }
                ++r;
            }
        int mu = static_cast<int>(cols.size()) - mac.rank();
        dims.push_back(mu);
        if (mu == prev) return MultiplicityResult{mu, d, dims};
        prev = mu;
    }
    throw MultiplicityError("dual-space dimension did not stabilize by the degree cap", dims);
}

// ---- a-number-2 points ----
//
// There H = 0, every entry of H*H^[p] vanishes to order >= p+1, and the plane
// ideal no longer carries the intersection number. Deform E transversally to
// the supersingular locus, find the p+1 tangent directions of the p-rank-0
// curve from H_1(u) * H_1(u)^[p] = 0, and sum the contact orders of the
// branches with the Prym fiber {s = 0}.

using XSeries = std::vector<Poly>; // poly in x, coefficients truncated series in t

Poly ser_trunc(const Poly& f, int N) {
    if (f.degree() < N) return f;
    std::vector<FieldElement> c(f.coeffs().begin(), f.coeffs().begin() + N);
    return Poly::from_coeffs(f.ctx(), std::move(c));
}

Poly ser_pow(const Poly& h, std::uint64_t e, int N) {
    Poly acc = Poly::one(h.ctx());
    Poly base = ser_trunc(h, N);
    while (e > 0) {
        if (e & 1) acc = ser_trunc(acc * base, N);
        base = ser_trunc(base * base, N);
        e >>= 1;
    }
    return acc;
}

XSeries xs_mul(const XSeries& u, const XSeries& v, int N, const FieldCtx& F) {
    XSeries r(u.size() + v.size() - 1, Poly::zero(F));
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            r[i + j] = ser_trunc(r[i + j] + u[i] * v[j], N);
        }
    }
    return r;
}

XSeries xs_pow(XSeries base, std::uint64_t e, int N, const FieldCtx& F) {
    XSeries acc{Poly::one(F)};
    while (e > 0) {
        if (e & 1) acc = xs_mul(acc, base, N, F);
        base = xs_mul(base, base, N, F);
        e >>= 1;
    }
    return acc;
}

// H matrix entries along a formal curve (a(t), b(t), s(t)) for the family
// y^2 = (x^2 + a x + b)(E + s d), mod t^N
std::array<Poly, 4> h_along(const Poly& E, const Poly& d, const Poly& at, const Poly& bt,
                            const Poly& st, int N, std::int64_t p) {
    const FieldCtx& F = E.ctx();
    XSeries quad{ser_trunc(bt, N), ser_trunc(at, N), Poly::one(F)};
    XSeries emod;
    int edeg = std::max(E.degree(), d.degree());
    for (int i = 0; i <= edeg; ++i)
        emod.push_back(ser_trunc(Poly::monomial(F, 0, E.coeff(i)) + st.scaled(d.coeff(i)), N));
    XSeries f = xs_mul(quad, emod, N, F);
    XSeries a = xs_pow(f, static_cast<std::uint64_t>((p - 1) / 2), N, F);
    auto cf = [&](std::int64_t n) {
        return n >= 0 && n < static_cast<std::int64_t>(a.size()) ? a[n] : Poly::zero(F);
    };
    std::array<Poly, 4> H;
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c) H[2 * (r - 1) + (c - 1)] = cf(c * p - r);
    return H;
}

// the four entries of M = H * H^[p] along the formal curve, mod t^N
std::array<Poly, 4> entries_along(const Poly& E, const Poly& d, const Poly& at, const Poly& bt,
                                  const Poly& st, int N, std::int64_t p) {
    std::array<Poly, 4> H = h_along(E, d, at, bt, st, N, p);
    std::array<Poly, 4> Hp;
    for (int i = 0; i < 4; ++i) Hp[i] = ser_pow(H[i], static_cast<std::uint64_t>(p), N);
    std::array<Poly, 4> M;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            M[2 * i + j] = ser_trunc(H[2 * i] * Hp[j] + H[2 * i + 1] * Hp[2 + j], N);
    return M;
}

// first-order H matrices at q: H(q + t e_dir) = t * dH_dir + O(t^2)
std::array<Matrix, 3> h_linearization(const Poly& E, const Poly& d, const FieldElement& alpha,
                                      const FieldElement& beta, std::int64_t p) {
    const FieldCtx& F = E.ctx();
    std::array<Matrix, 3> out{Matrix(F, 2, 2), Matrix(F, 2, 2), Matrix(F, 2, 2)};
    for (int dir = 0; dir < 3; ++dir) {
        Poly at = Poly::monomial(F, 0, alpha);
        Poly bt = Poly::monomial(F, 0, beta);
        Poly st = Poly::zero(F);
        Poly t = Poly::x(F);
        if (dir == 0) at = at + t;
        if (dir == 1) bt = bt + t;
        if (dir == 2) st = t;
        std::array<Poly, 4> H = h_along(E, d, at, bt, st, 2, p);
        for (int i = 0; i < 4; ++i) {
            if (!H[i].coeff(0).is_zero())
                throw std::logic_error("a-number-2 branch analysis: H(q) != 0");
            out[dir].at(i / 2, i % 2) = H[i].coeff(1);
        }
    }
    return out;
}

// deformation direction of E transversal to the supersingular locus
Poly pick_deformation(const Poly& E) {
    const FieldCtx& F = E.ctx();
    const std::int64_t p = F->p;
    for (int deg : {1, 0, 2}) {
        Poly d = Poly::monomial(F, deg, FieldElement::one(F));
        XSeries emod;
        int edeg = std::max(E.degree(), d.degree());
        for (int i = 0; i <= edeg; ++i)
            emod.push_back(
                ser_trunc(Poly::monomial(F, 0, E.coeff(i)) + Poly::x(F).scaled(d.coeff(i)), 2));
        XSeries a = xs_pow(emod, static_cast<std::uint64_t>((p - 1) / 2), 2, F);
        if (static_cast<std::int64_t>(a.size()) > p - 1 && !a[p - 1].coeff(1).is_zero()) return d;
    }
    throw std::logic_error("no transversal deformation of the supersingular model found");
}

struct Direction {
    FieldCtx ctx;
    FieldElement ua, ub, us;
};

// all projective solutions of H1(u) * H1(u)^[p] = 0; exactly p+1 expected
std::vector<Direction> tangent_directions(const std::array<Matrix, 3>& dH, std::int64_t p,
                                          std::uint64_t seed) {
    const FieldCtx& F = dH[0].ctx();
    std::vector<Direction> out;
    auto forms_for = [&](const BiPoly& ua, const BiPoly& ub, const BiPoly& us) {
        BiPoly h1[2][2], h1p[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                h1[i][j] = ua * BiPoly::constant(F, dH[0].at(i, j)) +
                           ub * BiPoly::constant(F, dH[1].at(i, j)) +
                           us * BiPoly::constant(F, dH[2].at(i, j));
                h1p[i][j] = h1[i][j].pow(static_cast<std::uint64_t>(p));
            }
        std::array<BiPoly, 4> forms;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                forms[2 * i + j] = h1[i][0] * h1p[0][j] + h1[i][1] * h1p[1][j];
        return forms;
    };
    // chart us = 1: bivariate system in (ua, ub)
    {
        auto forms = forms_for(BiPoly::var_a(F), BiPoly::var_b(F),
                               BiPoly::constant(F, FieldElement::one(F)));
        Poly elim(F);
        bool have = false;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                if (forms[i].is_zero() || forms[j].is_zero()) continue;
                if (forms[i].deg_b() == 0 && forms[j].deg_b() == 0) continue;
                Poly r = resultant_wrt_b(forms[i], forms[j]);
                if (r.is_zero()) continue;
                elim = have ? gcd(elim, r) : r.monic();
                have = true;
            }
        if (have && elim.degree() > 0) {
            for (auto& [u, mult] : factor(elim, subseed(seed, "dir-a"))) {
                (void)mult;
                int dd = F->k == 1 ? u.degree() : absolute_root_degree(u);
                int joint = static_cast<int>(std::lcm<std::int64_t>(F->k, dd));
                FieldCtx big = joint == F->k ? F : make_extension(F->p, joint, seed);
                for (auto& ua_root : roots_in_own_field(u.lifted(big), subseed(seed, "dir-ua"))) {
                    Poly g(big);
                    bool haveg = false;
                    for (int i = 0; i < 4; ++i) {
                        if (forms[i].is_zero()) continue;
                        Poly gi = forms[i].lifted(big).eval_a(ua_root);
                        if (gi.is_zero()) continue;
                        g = haveg ? gcd(g, gi) : gi.monic();
                        haveg = true;
                    }
                    if (!haveg || g.degree() == 0) continue;
                    for (auto& [v, vm] : factor(g, subseed(seed, "dir-ub"))) {
                        (void)vm;
                        int jd = big->k * v.degree();
                        FieldCtx vb = v.degree() == 1 ? big : make_extension(F->p, jd, seed);
                        FieldElement ua_b = embed(ua_root, vb);
                        for (auto& ub_root :
                             roots_in_own_field(v.lifted(vb), subseed(seed, "dir-ub2")))
                            out.push_back(Direction{vb, ua_b, ub_root, FieldElement::one(vb)});
                    }
                }
            }
        }
    }
    // chart us = 0, ub = 1: univariate in ua
    {
        auto forms = forms_for(BiPoly::var_a(F), BiPoly::constant(F, FieldElement::one(F)),
                               BiPoly::zero(F));
        Poly g(F);
        bool have = false;
        for (int i = 0; i < 4; ++i) {
            if (forms[i].is_zero()) continue;
            Poly gi = forms[i].eval_b(FieldElement::zero(F)); // univariate in ua
            if (gi.is_zero()) continue;
            g = have ? gcd(g, gi) : gi.monic();
            have = true;
        }
        if (have && g.degree() > 0) {
            for (auto& [v, vm] : factor(g, subseed(seed, "dir-planar"))) {
                (void)vm;
                int dd = F->k == 1 ? v.degree() : absolute_root_degree(v);
                int joint = static_cast<int>(std::lcm<std::int64_t>(F->k, dd));
                FieldCtx big = joint == F->k ? F : make_extension(F->p, joint, seed);
                for (auto& r : roots_in_own_field(v.lifted(big), subseed(seed, "dir-p2")))
                    out.push_back(
                        Direction{big, r, FieldElement::one(big), FieldElement::zero(big)});
            }
        }
    }
    // chart u = (1, 0, 0)
    {
        auto forms = forms_for(BiPoly::constant(F, FieldElement::one(F)), BiPoly::zero(F),
                               BiPoly::zero(F));
        bool all_zero = true;
        for (const auto& f : forms)
            if (!f.is_zero()) all_zero = false;
        if (all_zero)
            out.push_back(
                Direction{F, FieldElement::one(F), FieldElement::zero(F), FieldElement::zero(F)});
    }
    return out;
}

// contact order with {s = 0} of the smooth branch tangent to u0 (u0.us = 0)
int branch_contact(const Poly& E, const Poly& d, const FieldElement& alpha,
                   const FieldElement& beta, const Direction& u0, std::int64_t p, int cap) {
    const FieldCtx& F = E.ctx();
    bool pivot_a = !u0.ua.is_zero();
    int comp_plane = pivot_a ? 1 : 0; // unknowns move along the non-pivot plane coord and s
    std::array<Matrix, 3> dH = h_linearization(E, d, alpha, beta, p);
    Matrix K(F, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            FieldElement h1 = u0.ua * dH[0].at(i, j) + u0.ub * dH[1].at(i, j);
            K.at(i, j) = h1.pow(static_cast<std::uint64_t>(p));
        }
    Matrix L(F, 4, 2); // w = (w_plane, w_s) -> H1(w) * K
    for (int which = 0; which < 2; ++which) {
        const Matrix& Hw = which == 0 ? dH[comp_plane] : dH[2];
        Matrix prod = Hw * K;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) L.at(2 * i + j, which) = prod.at(i, j);
    }
    if (L.rank() != 2)
        throw MultiplicityError("a-number-2 branch is not smooth (lifting map degenerate)", {});
    int r1 = -1, r2 = -1;
    for (int r = 0; r < 4 && r2 < 0; ++r) {
        if (L.at(r, 0).is_zero() && L.at(r, 1).is_zero()) continue;
        if (r1 < 0) {
            r1 = r;
            continue;
        }
        if (!(L.at(r1, 0) * L.at(r, 1) - L.at(r1, 1) * L.at(r, 0)).is_zero()) r2 = r;
    }
    if (r2 < 0) {
        // first candidate row may pair with a later one
        for (int ra = 0; ra < 4 && r2 < 0; ++ra)
            for (int rb = ra + 1; rb < 4 && r2 < 0; ++rb)
                if (!(L.at(ra, 0) * L.at(rb, 1) - L.at(ra, 1) * L.at(rb, 0)).is_zero()) {
                    r1 = ra;
                    r2 = rb;
                }
    }
    if (r2 < 0) throw std::logic_error("branch lifting: no independent row pair");
    FieldElement det2 = L.at(r1, 0) * L.at(r2, 1) - L.at(r1, 1) * L.at(r2, 0);
    FieldElement inv = det2.inverse();
    Poly at = Poly::monomial(F, 0, alpha) + Poly::x(F).scaled(u0.ua);
    Poly bt = Poly::monomial(F, 0, beta) + Poly::x(F).scaled(u0.ub);
    Poly st = Poly::zero(F);
    const int pi = static_cast<int>(p);
    for (int k = 2; k <= cap; ++k) {
        int N = pi + k + 1;
        std::array<Poly, 4> M = entries_along(E, d, at, bt, st, N, p);
        for (const auto& m : M)
            for (int o = 0; o < pi + k; ++o)
                if (!m.coeff(o).is_zero())
                    throw std::logic_error("branch lifting: unexpected low-order residual");
        FieldElement rhs1 = -M[r1].coeff(pi + k), rhs2 = -M[r2].coeff(pi + k);
        FieldElement wc = (rhs1 * L.at(r2, 1) - rhs2 * L.at(r1, 1)) * inv;
        FieldElement ws = (rhs2 * L.at(r1, 0) - rhs1 * L.at(r2, 0)) * inv;
        for (int r = 0; r < 4; ++r) {
            FieldElement lhs = L.at(r, 0) * wc + L.at(r, 1) * ws;
            if (!(lhs == -M[r].coeff(pi + k)))
                throw std::logic_error("branch lifting: inconsistent linear system");
        }
        if (!ws.is_zero()) return k; // the s-component appeared: contact order k
        Poly tk = Poly::monomial(F, k, wc);
        if (comp_plane == 0)
            at = at + tk;
        else
            bt = bt + tk;
    }
    throw MultiplicityError("branch contact order exceeded the degree cap", {});
}

MultiplicityResult a2_branch_multiplicity(const PrymFiberSystem& sys, const SolutionPoint& pt,
                                          int cap) {
    const std::int64_t p = sys.p;
    const FieldCtx& F0 = pt.small_ctx;
    Poly E = sys.e_model.lifted(F0);
    Poly d = pick_deformation(E);
    auto dH = h_linearization(E, d, pt.a_small, pt.b_small, p);
    bool some_nonzero = false;
    for (const auto& m : dH)
        if (!m.is_zero()) some_nonzero = true;
    if (!some_nonzero)
        throw MultiplicityError("H vanishes to second order; branch analysis does not apply", {});
    auto dirs = tangent_directions(dH, p, 0x97b1e5ULL);
    if (static_cast<std::int64_t>(dirs.size()) != p + 1)
        throw MultiplicityError(
            "tangent direction count is not p+1: got " + std::to_string(dirs.size()), {});
    int m = 0;
    std::vector<int> orders;
    for (const auto& dir : dirs) {
        if (!dir.us.is_zero()) {
            m += 1;
            orders.push_back(1);
            continue;
        }
        const FieldCtx& F2 = dir.ctx;
        Poly E2 = sys.e_model.lifted(F2);
        Poly d2 = d.ctx()->same(*F2) ? d : d.lifted(F2);
        FieldElement a2 = embed(pt.a_small, F2), b2 = embed(pt.b_small, F2);
        Direction u0{F2, dir.ua, dir.ub, FieldElement::zero(F2)};
        int c = branch_contact(E2, d2, a2, b2, u0, p, cap);
        m += c;
        orders.push_back(c);
    }
    std::sort(orders.begin(), orders.end());
    return MultiplicityResult{m, cap, orders};
}

} // namespace

MultiplicityResult local_multiplicity(const PrymFiberSystem& sys, const SolutionPoint& pt,
                                      int degree_cap, bool force_dual) {
    const int cap = degree_cap > 0 ? degree_cap : 2 * (static_cast<int>(sys.p) + 3);
    if (!force_dual && jacobian_transversal(sys, pt))
        return MultiplicityResult{1, 1, {1, 1}};
    bool h_vanishes = true;
    for (int i = 0; i < 2 && h_vanishes; ++i)
        for (int j = 0; j < 2 && h_vanishes; ++j)
            if (!sys.H[i][j].lifted(pt.small_ctx).eval(pt.a_small, pt.b_small).is_zero())
                h_vanishes = false;
    if (!h_vanishes) return dual_space_length(sys, pt, cap);
    // a-number 2: the four entries all vanish to order >= p+1 and the plane
    // length overshoots; sum the branch contact orders instead
    return a2_branch_multiplicity(sys, pt, cap);
}

std::optional<int> vanishing_order_in_family(const std::vector<Poly>& f_t, int cap) {
    if (f_t.empty()) throw std::invalid_argument("empty family");
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    const FieldCtx& ctx = f_t.front().ctx();
    const std::int64_t p = ctx->p;
    XSeries base;
    for (const auto& c : f_t) base.push_back(ser_trunc(c, cap + 1));
    XSeries acc = xs_pow(base, static_cast<std::uint64_t>((p - 1) / 2), cap + 1, ctx);
    const size_t want = static_cast<size_t>(p - 1);
    if (want >= acc.size()) return std::nullopt;
    const Poly& h = acc[want];
    if (h.is_zero()) return std::nullopt;
    for (int i = 0; i <= h.degree(); ++i)
        if (!h.coeff(i).is_zero()) return i;
    return std::nullopt;
}

} // namespace prym
