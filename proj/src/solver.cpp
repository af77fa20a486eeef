#include "prym/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "prym/covers.hpp"
#include "prym/matrix.hpp"
#include "prym/rng.hpp"

namespace prym {

namespace {

using XPoly = std::vector<BiPoly>; // polynomial in x with BiPoly coefficients

XPoly xpoly_mul(const XPoly& f, const XPoly& g, const FieldCtx& base) {
    XPoly r(f.size() + g.size() - 1, BiPoly::zero(base));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        for (size_t j = 0; j < g.size(); ++j) {
            if (g[j].is_zero()) continue;
            r[i + j] = r[i + j] + f[i] * g[j];
        }
    }
    return r;
}

XPoly xpoly_pow(const XPoly& f, std::uint64_t e, const FieldCtx& base) {
    XPoly result{BiPoly::constant(base, FieldElement::one(base))};
    XPoly b = f;
    while (e > 0) {
        if (e & 1) result = xpoly_mul(result, b, base);
        b = xpoly_mul(b, b, base);
        e >>= 1;
    }
    return result;
}

} // namespace

PrymFiberSystem build_system(const Poly& e_model) {
    if (e_model.degree() != 3 && e_model.degree() != 4)
        throw std::invalid_argument("elliptic model must be a cubic or quartic");
    if (!is_squarefree(e_model))
        throw std::invalid_argument("elliptic model has a repeated root");
    PrymFiberSystem sys;
    sys.base = e_model.ctx();
    sys.p = sys.base->p;
    sys.e_model = e_model;
    const FieldCtx& K = sys.base;
    XPoly quad{BiPoly::var_b(K), BiPoly::var_a(K), BiPoly::constant(K, FieldElement::one(K))};
    XPoly emod;
    for (int i = 0; i <= e_model.degree(); ++i)
        emod.push_back(BiPoly::constant(K, e_model.coeff(i)));
    XPoly f = xpoly_mul(quad, emod, K);
    XPoly a = xpoly_pow(f, static_cast<std::uint64_t>((sys.p - 1) / 2), K);
    auto coeff_of = [&](std::int64_t n) {
        return n >= 0 && n < static_cast<std::int64_t>(a.size()) ? a[n] : BiPoly::zero(K);
    };
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c) sys.H[r - 1][c - 1] = coeff_of(c * sys.p - r);
    BiPoly Hp[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            Hp[i][j] = sys.H[i][j].pow(static_cast<std::uint64_t>(sys.p));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            sys.M[i][j] = sys.H[i][0] * Hp[0][j] + sys.H[i][1] * Hp[1][j];
    sys.det = sys.H[0][0] * sys.H[1][1] - sys.H[0][1] * sys.H[1][0];
    for (int i = 0; i < 4; ++i) {
        sys.dMa[i] = sys.M[i / 2][i % 2].derivative_a();
        sys.dMb[i] = sys.M[i / 2][i % 2].derivative_b();
    }
    return sys;
}

namespace {

int pair_residue_degree(const FieldElement& a, const FieldElement& b) {
    int da = a.is_zero() ? 1 : a.residue_degree();
    int db = b.is_zero() ? 1 : b.residue_degree();
    return static_cast<int>(std::lcm(da, db));
}

// express x as an F_p-polynomial in c (degree < deg); exact linear algebra
std::vector<std::int64_t> express_in(const FieldElement& x, const FieldElement& c, int deg) {
    const FieldCtx& F = x.ctx();
    const std::int64_t p = F->p;
    const int L = F->k;
    // columns: coordinates of c^k; augmented with x
    std::vector<std::vector<std::int64_t>> m(L, std::vector<std::int64_t>(deg + 1, 0));
    FieldElement pw = FieldElement::one(F);
    for (int k = 0; k < deg; ++k) {
        for (int r = 0; r < L; ++r) m[r][k] = pw.coeff(r);
        pw = pw * c;
    }
    for (int r = 0; r < L; ++r) m[r][deg] = x.coeff(r);
    std::vector<int> pivot_of_col(deg, -1);
    int rank = 0;
    for (int col = 0; col < deg && rank < L; ++col) {
        int pv = -1;
        for (int r = rank; r < L; ++r)
            if (m[r][col] % p != 0) {
                pv = r;
                break;
            }
        if (pv < 0) continue;
        std::swap(m[pv], m[rank]);
        std::int64_t inv = 1, base = m[rank][col] % p, e = p - 2;
        while (e > 0) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (int cc = col; cc <= deg; ++cc) m[rank][cc] = m[rank][cc] * inv % p;
        for (int r = 0; r < L; ++r) {
            if (r == rank) continue;
            std::int64_t f = m[r][col] % p;
            if (f == 0) continue;
            for (int cc = col; cc <= deg; ++cc)
                m[r][cc] = ((m[r][cc] - f * m[rank][cc]) % p + p) % p;
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (int r = rank; r < L; ++r)
        if (m[r][deg] % p != 0)
            throw std::logic_error("closed_point_key: element not in F_p[c]");
    std::vector<std::int64_t> sol(deg, 0);
    for (int col = 0; col < deg; ++col)
        if (pivot_of_col[col] >= 0) sol[col] = m[pivot_of_col[col]][deg];
    return sol;
}

} // namespace

std::string closed_point_key(const FieldElement& a, const FieldElement& b) {
    const FieldCtx& F = a.ctx();
    const std::int64_t p = F->p;
    const int deg = pair_residue_degree(a, b);
    for (std::int64_t lam = 0; lam < p; ++lam) {
        FieldElement c = a + FieldElement::from_int(F, lam) * b;
        int dc = c.is_zero() ? 1 : c.residue_degree();
        if (dc != deg) continue;
        Poly mpc = min_poly(c);
        auto A = express_in(a, c, deg);
        auto B = express_in(b, c, deg);
        std::string key = "l" + std::to_string(lam) + "|" + mpc.str() + "|";
        for (size_t i = 0; i < A.size(); ++i) key += (i ? "," : "") + std::to_string(A[i]);
        key += "|";
        for (size_t i = 0; i < B.size(); ++i) key += (i ? "," : "") + std::to_string(B[i]);
        return key;
    }
    throw std::logic_error("closed_point_key: no primitive lambda in the prime field");
}

namespace {

// gcd of the four det-vs-entry resultants (the raw Sylvester gcd)
Poly raw_axis_gcd(const PrymFiberSystem& sys, bool wrt_b) {
    if (sys.det.is_zero()) throw DimensionError("det(H) vanishes identically");
    const BiPoly* entries[4] = {&sys.M[0][0], &sys.M[0][1], &sys.M[1][0], &sys.M[1][1]};
    int zero_entries = 0;
    Poly elim(sys.base);
    bool have = false;
    for (int i = 0; i < 4; ++i) {
        if (entries[i]->is_zero()) {
            ++zero_entries;
            continue;
        }
        Poly ri = wrt_b ? resultant_wrt_b(sys.det, *entries[i])
                        : resultant_wrt_a(sys.det, *entries[i]);
        if (ri.is_zero()) continue; // no constraint from this entry
        elim = have ? gcd(elim, ri) : ri.monic();
        have = true;
    }
    if (zero_entries == 4) throw DimensionError("all four system entries vanish identically");
    if (!have) throw DimensionError("eliminant vanishes identically (positive-dimensional)");
    return elim;
}

// The raw resultant gcd carries a universal excess of (p-1)/2 at the
// coordinate of every singular solution of the system; lowering those root
// multiplicities reproduces the classical elimination figures.
Poly normalize_eliminant(const Poly& raw,
                         const std::vector<std::pair<Poly, int>>& singular_weights,
                         std::int64_t p, std::uint64_t seed) {
    if (singular_weights.empty()) return raw;
    Poly out = Poly::one(raw.ctx());
    for (auto& [u, mult] : factor(raw, subseed(seed, "normalize"))) {
        int m = mult;
        for (const auto& [s, per_root] : singular_weights) {
            if (!(s == u)) continue;
            m = std::max(1, m - per_root * static_cast<int>((p - 1) / 2));
        }
        out = out * u.pow(static_cast<std::uint64_t>(m));
    }
    return out;
}

// per-root geometric count of singular closed points, keyed by coordinate minpoly
std::vector<std::pair<Poly, int>> singular_weights_of(const std::vector<SolutionPoint>& singular,
                                                      bool use_a) {
    std::vector<std::pair<Poly, int>> out;
    for (const auto& pt : singular) {
        Poly mp = min_poly(use_a ? pt.a_small : pt.b_small);
        int w = pt.residue_degree / mp.degree();
        bool found = false;
        for (auto& [s, cnt] : out)
            if (s == mp) {
                cnt += w;
                found = true;
            }
        if (!found) out.emplace_back(mp, w);
    }
    return out;
}

} // namespace

SolveResult solve_fiber(const PrymFiberSystem& sys, std::uint64_t seed) {
    const FieldCtx& K = sys.base;
    const std::int64_t p = sys.p;
    SolveResult res;
    const BiPoly* entries[4] = {&sys.M[0][0], &sys.M[0][1], &sys.M[1][0], &sys.M[1][1]};
    Poly elim = raw_axis_gcd(sys, true);
    res.eliminant_raw = elim;
    auto raw_factors = factor(elim, subseed(seed, "eliminant"));

    std::set<std::string> seen;
    std::map<int, FieldCtx> ctx_by_degree; // joint extensions, shared per degree
    auto joint_ctx = [&](int deg) -> FieldCtx {
        auto it = ctx_by_degree.find(deg);
        if (it != ctx_by_degree.end()) return it->second;
        FieldCtx c = deg == 1 ? FieldContext::prime_field(p) : make_extension(p, deg, seed);
        ctx_by_degree.emplace(deg, c);
        return c;
    };
    auto push_point = [&](const FieldCtx& ctx, const FieldElement& a, const FieldElement& b,
                          bool smooth) {
        SolutionPoint sp;
        sp.key = closed_point_key(a, b);
        if (!seen.insert(sp.key).second) return;
        sp.small_ctx = ctx;
        sp.a_small = sp.a = a;
        sp.b_small = sp.b = b;
        sp.residue_degree = pair_residue_degree(a, b);
        sp.smooth = smooth;
        (smooth ? res.points : res.excluded_singular).push_back(std::move(sp));
    };

    for (auto& [u, umult] : raw_factors) {
        (void)umult;
        // residue field of the a-coordinate and one root in it
        FieldCtx actx;
        FieldElement alpha;
        if (K->k == 1) {
            int d = u.degree();
            if (d == 1) {
                actx = K;
                alpha = -u.coeff(0);
            } else {
                std::vector<std::int64_t> ui(d + 1);
                for (int i = 0; i <= d; ++i) ui[i] = u.coeff(i).coeff(0);
                actx = FieldContext::with_modulus(p, ui);
                alpha = FieldElement::from_coeffs(actx, {0, 1});
            }
        } else {
            int m = u.degree() == 1 ? (-u.coeff(0)).residue_degree() : absolute_root_degree(u);
            actx = joint_ctx(m);
            if (u.degree() == 1) {
                alpha = embed(-u.coeff(0), actx);
            } else {
                auto rs = roots_in_own_field(u.lifted(actx), subseed(seed, "alpha"));
                if (rs.empty()) throw std::logic_error("solve_fiber: factor lost its roots");
                alpha = rs.front();
            }
        }
        // specialize the four entries at a = alpha
        Poly gs[4] = {Poly(actx), Poly(actx), Poly(actx), Poly(actx)};
        bool all_zero = true;
        Poly gb(actx);
        bool have_gb = false;
        for (int i = 0; i < 4; ++i) {
            gs[i] = entries[i]->lifted(actx).eval_a(alpha);
            if (gs[i].is_zero()) continue;
            all_zero = false;
            gb = have_gb ? gcd(gb, gs[i]) : gs[i].monic();
            have_gb = true;
        }
        if (all_zero)
            throw DimensionError("fiber is positive-dimensional at an eliminant root");
        if (gb.degree() == 0) continue; // spurious eliminant root
        for (auto& [v, vmult] : factor(gb, subseed(seed, "fiber"))) {
            (void)vmult;
            if (v.degree() == 1) {
                FieldElement beta = -v.coeff(0);
                for (const auto& g : gs)
                    if (!g.is_zero() && !g.eval(beta).is_zero())
                        throw std::logic_error("solve_fiber: fiber root fails verification");
                push_point(actx, alpha, beta, is_smooth_pair(alpha, beta, sys.e_model));
            } else {
                int joint_deg = actx->k * v.degree();
                FieldCtx jctx = joint_ctx(joint_deg);
                FieldElement alpha_j = embed(alpha, jctx);
                Poly vj = v.lifted(jctx);
                Poly gsj[4];
                for (int i = 0; i < 4; ++i) gsj[i] = gs[i].lifted(jctx);
                for (auto& beta : roots_in_own_field(vj, subseed(seed, "beta"))) {
                    for (const auto& g : gsj)
                        if (!g.is_zero() && !g.eval(beta).is_zero())
                            throw std::logic_error("solve_fiber: fiber root fails verification");
                    push_point(jctx, alpha_j, beta, is_smooth_pair(alpha_j, beta, sys.e_model));
                }
            }
        }
    }

    res.eliminant =
        normalize_eliminant(elim, singular_weights_of(res.excluded_singular, true), p, seed);
    res.eliminant_factors = factor(res.eliminant, subseed(seed, "eliminant-normalized"));

    auto by_key = [](const SolutionPoint& x, const SolutionPoint& y) { return x.key < y.key; };
    std::sort(res.points.begin(), res.points.end(), by_key);
    std::sort(res.excluded_singular.begin(), res.excluded_singular.end(), by_key);
    res.geometric_count = 0;
    for (const auto& sp : res.points) res.geometric_count += sp.residue_degree;
    return res;
}

Poly b_eliminant(const PrymFiberSystem& sys, const SolveResult& sol, std::uint64_t seed) {
    Poly raw = raw_axis_gcd(sys, false);
    return normalize_eliminant(raw, singular_weights_of(sol.excluded_singular, false), sys.p,
                               seed);
}

std::vector<SolutionPoint> brute_force_oracle(const PrymFiberSystem& sys, int k,
                                              std::uint64_t seed) {
    const std::int64_t p = sys.p;
    if (k < 1 || k % sys.base->k != 0)
        throw std::invalid_argument("oracle degree must be a multiple of the base degree");
    double size = 1;
    for (int i = 0; i < 2 * k; ++i) size *= static_cast<double>(p);
    if (size > 1e8) throw std::invalid_argument("oracle scan exceeds the 10^8 pair guard");
    FieldCtx ctx = k == 1 ? FieldContext::prime_field(p) : make_extension(p, k, seed);
    BiPoly lifted[4];
    for (int i = 0; i < 4; ++i) lifted[i] = sys.M[i / 2][i % 2].lifted(ctx);
    const std::uint64_t q = ctx->order_fits();
    std::vector<SolutionPoint> out;
    for (std::uint64_t ia = 0; ia < q; ++ia) {
        FieldElement alpha = element_from_index(ctx, ia);
        Poly ga[4];
        for (int i = 0; i < 4; ++i) ga[i] = lifted[i].eval_a(alpha);
        for (std::uint64_t ib = 0; ib < q; ++ib) {
            FieldElement beta = element_from_index(ctx, ib);
            bool zero = true;
            for (int i = 0; i < 4 && zero; ++i) zero = ga[i].eval(beta).is_zero();
            if (!zero) continue;
            if (!is_smooth_pair(alpha, beta, sys.e_model)) continue;
            SolutionPoint sp;
            sp.small_ctx = ctx;
            sp.a = sp.a_small = alpha;
            sp.b = sp.b_small = beta;
            sp.residue_degree = pair_residue_degree(alpha, beta);
            sp.smooth = true;
            sp.key = closed_point_key(alpha, beta);
            out.push_back(std::move(sp));
        }
    }
    std::sort(out.begin(), out.end(), [](const SolutionPoint& x, const SolutionPoint& y) {
        if (x.key != y.key) return x.key < y.key;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

int solution_a_number(const PrymFiberSystem& sys, const SolutionPoint& pt) {
    if (!pt.smooth) throw std::invalid_argument("a-number of a singular pair");
    HyperellipticCurve C = make_curve(pair_poly(pt.a_small, pt.b_small, sys.e_model));
    return a_number(C);
}

bool jacobian_transversal(const PrymFiberSystem& sys, const SolutionPoint& pt) {
    const FieldCtx& ctx = pt.small_ctx;
    Matrix J(ctx, 4, 2);
    for (int i = 0; i < 4; ++i) {
        J.at(i, 0) = sys.dMa[i].lifted(ctx).eval(pt.a_small, pt.b_small);
        J.at(i, 1) = sys.dMb[i].lifted(ctx).eval(pt.a_small, pt.b_small);
    }
    return J.rank() == 2;
}

} // namespace prym
