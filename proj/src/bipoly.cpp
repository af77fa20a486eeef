#include "prym/bipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace prym {

void BiPoly::trim() {
    if (c_.empty()) {
        da_ = db_ = -1;
        return;
    }
    int maxi = -1, maxj = -1;
    for (int i = 0; i <= da_; ++i)
        for (int j = 0; j <= db_; ++j)
            if (!slot(i, j).is_zero()) {
                maxi = std::max(maxi, i);
                maxj = std::max(maxj, j);
            }
    if (maxi < 0) {
        c_.clear();
        da_ = db_ = -1;
        return;
    }
    if (maxi == da_ && maxj == db_) return;
    std::vector<FieldElement> nc(static_cast<size_t>(maxi + 1) * (maxj + 1));
    for (int i = 0; i <= maxi; ++i)
        for (int j = 0; j <= maxj; ++j) nc[static_cast<size_t>(i) * (maxj + 1) + j] = slot(i, j);
    c_ = std::move(nc);
    da_ = maxi;
    db_ = maxj;
}

BiPoly BiPoly::constant(const FieldCtx& base, const FieldElement& c) {
    BiPoly r(base);
    if (!c.is_zero()) {
        r.da_ = r.db_ = 0;
        r.c_ = {c};
    }
    return r;
}

BiPoly BiPoly::var_a(const FieldCtx& base) {
    BiPoly r(base);
    r.da_ = 1;
    r.db_ = 0;
    r.c_ = {FieldElement::zero(base), FieldElement::one(base)};
    return r;
}

BiPoly BiPoly::var_b(const FieldCtx& base) {
    BiPoly r(base);
    r.da_ = 0;
    r.db_ = 1;
    r.c_ = {FieldElement::zero(base), FieldElement::one(base)};
    return r;
}

BiPoly BiPoly::from_table(const FieldCtx& base,
                          const std::vector<std::vector<std::int64_t>>& rows) {
    BiPoly r(base);
    if (rows.empty()) return r;
    size_t cols = 0;
    for (const auto& row : rows) cols = std::max(cols, row.size());
    if (cols == 0) return r;
    r.da_ = static_cast<int>(rows.size()) - 1;
    r.db_ = static_cast<int>(cols) - 1;
    r.c_.assign(rows.size() * cols, FieldElement::zero(base));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            r.c_[i * cols + j] = FieldElement::from_int(base, rows[i][j]);
    r.trim();
    return r;
}

BiPoly BiPoly::from_poly_in_a(const Poly& f) {
    BiPoly r(f.ctx());
    if (f.is_zero()) return r;
    r.da_ = f.degree();
    r.db_ = 0;
    r.c_ = f.coeffs();
    return r;
}

BiPoly BiPoly::from_poly_in_b(const Poly& f) { return from_poly_in_a(f).transpose(); }

int BiPoly::total_degree() const {
    int t = -1;
    for (int i = 0; i <= da_; ++i)
        for (int j = 0; j <= db_; ++j)
            if (!slot(i, j).is_zero()) t = std::max(t, i + j);
    return t;
}

FieldElement BiPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > da_ || j > db_) return FieldElement::zero(base_);
    return slot(i, j);
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r(base_);
    r.da_ = std::max(da_, o.da_);
    r.db_ = std::max(db_, o.db_);
    if (r.da_ < 0) return r;
    r.c_.assign(static_cast<size_t>(r.da_ + 1) * (r.db_ + 1), FieldElement::zero(base_));
    for (int i = 0; i <= r.da_; ++i)
        for (int j = 0; j <= r.db_; ++j) r.slot(i, j) = coeff(i, j) + o.coeff(i, j);
    r.trim();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& e : r.c_) e = -e;
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r(base_);
    if (is_zero() || o.is_zero()) return r;
    r.da_ = da_ + o.da_;
    r.db_ = db_ + o.db_;
    if (base_->k == 1) {
        // delayed-reduction fast path over F_p
        const std::int64_t p = base_->p;
        const size_t W = static_cast<size_t>(r.db_ + 1);
        std::vector<std::int64_t> acc(static_cast<size_t>(r.da_ + 1) * W, 0);
        const std::int64_t cap = (std::int64_t{1} << 62) - (p - 1) * (p - 1);
        for (int i = 0; i <= da_; ++i)
            for (int j = 0; j <= db_; ++j) {
                std::int64_t v = slot(i, j).coeff(0);
                if (v == 0) continue;
                for (int s = 0; s <= o.da_; ++s) {
                    const size_t base_idx = static_cast<size_t>(i + s) * W + j;
                    for (int t = 0; t <= o.db_; ++t) {
                        std::int64_t w = o.slot(s, t).coeff(0);
                        if (w == 0) continue;
                        std::int64_t& cell = acc[base_idx + t];
                        cell += v * w;
                        if (cell >= cap) cell %= p;
                    }
                }
            }
        r.c_.reserve(acc.size());
        for (auto v : acc) r.c_.push_back(FieldElement::from_int(base_, v % p));
    } else {
        r.c_.assign(static_cast<size_t>(r.da_ + 1) * (r.db_ + 1), FieldElement::zero(base_));
        for (int i = 0; i <= da_; ++i)
            for (int j = 0; j <= db_; ++j) {
                const FieldElement& v = slot(i, j);
                if (v.is_zero()) continue;
                for (int s = 0; s <= o.da_; ++s)
                    for (int t = 0; t <= o.db_; ++t) {
                        if (o.slot(s, t).is_zero()) continue;
                        r.slot(i + s, j + t) = r.slot(i + s, j + t) + v * o.slot(s, t);
                    }
            }
    }
    r.trim();
    return r;
}

BiPoly BiPoly::pow(std::uint64_t e) const {
    BiPoly result = constant(base_, FieldElement::one(base_));
    BiPoly b = *this;
    while (e > 0) {
        if (e & 1) result = result * b;
        b = b * b;
        e >>= 1;
    }
    return result;
}

bool BiPoly::operator==(const BiPoly& o) const {
    if (da_ != o.da_ || db_ != o.db_) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

FieldElement BiPoly::eval(const FieldElement& a, const FieldElement& b) const {
    // Horner in a of Horner-in-b row values
    FieldElement acc = FieldElement::zero(a.ctx());
    for (int i = da_; i >= 0; --i) {
        FieldElement row = FieldElement::zero(a.ctx());
        for (int j = db_; j >= 0; --j) row = row * b + slot(i, j);
        acc = acc * a + row;
    }
    return acc;
}

Poly BiPoly::eval_a(const FieldElement& alpha) const {
    std::vector<FieldElement> out(db_ + 1, FieldElement::zero(alpha.ctx()));
    for (int j = 0; j <= db_; ++j) {
        FieldElement acc = FieldElement::zero(alpha.ctx());
        for (int i = da_; i >= 0; --i) acc = acc * alpha + slot(i, j);
        out[j] = acc;
    }
    return Poly::from_coeffs(alpha.ctx(), std::move(out));
}

Poly BiPoly::eval_b(const FieldElement& beta) const { return transpose().eval_a(beta); }

BiPoly BiPoly::derivative_a() const {
    BiPoly r(base_);
    if (da_ < 1) return r;
    r.da_ = da_ - 1;
    r.db_ = db_;
    r.c_.assign(static_cast<size_t>(r.da_ + 1) * (r.db_ + 1), FieldElement::zero(base_));
    for (int i = 1; i <= da_; ++i)
        for (int j = 0; j <= db_; ++j)
            r.slot(i - 1, j) = slot(i, j) * FieldElement::from_int(base_, i);
    r.trim();
    return r;
}

BiPoly BiPoly::derivative_b() const { return transpose().derivative_a().transpose(); }

BiPoly BiPoly::transpose() const {
    BiPoly r(base_);
    if (is_zero()) return r;
    r.da_ = db_;
    r.db_ = da_;
    r.c_.assign(c_.size(), FieldElement::zero(base_));
    for (int i = 0; i <= da_; ++i)
        for (int j = 0; j <= db_; ++j) r.slot(j, i) = slot(i, j);
    return r;
}

BiPoly BiPoly::lifted(const FieldCtx& dst) const {
    if (base_->same(*dst)) return *this;
    BiPoly r(dst);
    r.da_ = da_;
    r.db_ = db_;
    r.c_.reserve(c_.size());
    if (base_->k == 1) {
        for (const auto& e : c_) r.c_.push_back(FieldElement::from_int(dst, e.coeff(0)));
    } else {
        const Embedding& emb = get_embedding(base_, dst);
        for (const auto& e : c_) r.c_.push_back(emb.apply(e));
    }
    return r;
}

std::vector<Poly> BiPoly::as_poly_in_b() const {
    std::vector<Poly> out;
    out.reserve(db_ + 1);
    for (int j = 0; j <= db_; ++j) {
        std::vector<FieldElement> col(da_ + 1, FieldElement::zero(base_));
        for (int i = 0; i <= da_; ++i) col[i] = slot(i, j);
        out.push_back(Poly::from_coeffs(base_, std::move(col)));
    }
    return out;
}

std::string BiPoly::str() const {
    std::ostringstream os;
    os << "dega:" << da_ << " degb:" << db_ << ";";
    for (int i = 0; i <= da_; ++i) {
        os << "[";
        for (int j = 0; j <= db_; ++j) os << (j ? "," : "") << slot(i, j).str();
        os << "]";
    }
    return os.str();
}

// ---- resultants ----

FieldElement resultant_univariate(const Poly& f, const Poly& g) {
    const FieldCtx& ctx = f.ctx();
    if (f.is_zero() || g.is_zero()) {
        // Res(f, 0) = 0 for deg f > 0; Res of two (nonzero) constants is 1
        if (f.is_zero() && g.is_zero()) return FieldElement::zero(ctx);
        const Poly& nz = f.is_zero() ? g : f;
        return nz.degree() == 0 ? FieldElement::one(ctx) : FieldElement::zero(ctx);
    }
    Poly a = f, b = g;
    FieldElement res = FieldElement::one(ctx);
    bool negate = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        std::swap(a, b);
    }
    while (b.degree() > 0) {
        Poly r = a % b;
        int dr = r.is_zero() ? -1 : r.degree();
        if (dr < 0) return FieldElement::zero(ctx); // common factor of positive degree
        res = res * b.lc().pow(static_cast<std::uint64_t>(a.degree() - dr));
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        a = std::move(b);
        b = std::move(r);
    }
    res = res * b.coeff(0).pow(static_cast<std::uint64_t>(a.degree()));
    return negate ? -res : res;
}

namespace {

// Sylvester-determinant value at a sample point, honoring the formal degrees
// (m, n) of the unevaluated inputs. Degree drops at the sample contribute the
// classical correction factor lc^{drop} * (-1)^{n*drop}.
FieldElement resultant_with_formal_degrees(const Poly& f, const Poly& g, int m, int n) {
    const FieldCtx& ctx = f.ctx();
    int mf = f.is_zero() ? -1 : f.degree();
    int ng = g.is_zero() ? -1 : g.degree();
    if (m == 0 && n == 0) return FieldElement::one(ctx);
    if (mf < m && ng < n) return FieldElement::zero(ctx);
    if (mf == m && ng == n) return resultant_univariate(f, g);
    if (mf < m) {
        // Res_{m,n}(f,g) = lc(g)^{m-m'} (-1)^{n(m-m')} Res_{m',n}(f,g)
        int mp = std::max(mf, 0);
        FieldElement factor = g.lc().pow(static_cast<std::uint64_t>(m - mp));
        if ((n & 1) && ((m - mp) & 1)) factor = -factor;
        if (mf < 0) {
            // f vanished identically at the sample
            return n > 0 ? FieldElement::zero(ctx)
                         : factor; // n == 0 cannot happen here (ng == n = 0 => handled above)
        }
        return factor * resultant_with_formal_degrees(f, g, mp, n);
    }
    // ng < n: swap via Res_{m,n}(f,g) = (-1)^{mn} Res_{n,m}(g,f)
    FieldElement v = resultant_with_formal_degrees(g, f, n, m);
    if ((m & 1) && (n & 1)) v = -v;
    return v;
}

} // namespace

Poly resultant_wrt_b(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    const FieldCtx& base = f.base();
    const int m = f.deg_b(), n = g.deg_b();
    if (m == 0 && n == 0)
        throw std::invalid_argument("resultant_wrt_b: both inputs have b-degree 0");
    if (m == 0) {
        // Res(f, g) with f free of b: f(a)^{deg_b g}
        Poly fa = f.as_poly_in_b()[0];
        return fa.pow(static_cast<std::uint64_t>(n));
    }
    if (n == 0) {
        Poly ga = g.as_poly_in_b()[0];
        return ga.pow(static_cast<std::uint64_t>(m));
    }
    // degree bound from the Sylvester matrix: n rows of f-coefficients and m of g's
    const std::int64_t bound =
        static_cast<std::int64_t>(n) * std::max(f.deg_a(), 0) +
        static_cast<std::int64_t>(m) * std::max(g.deg_a(), 0);
    const std::int64_t samples = bound + 1;
    // minimal extension with enough sample points
    int ext = base->k;
    std::uint64_t count = 1;
    for (int i = 0; i < ext; ++i) count *= static_cast<std::uint64_t>(base->p);
    while (count < static_cast<std::uint64_t>(samples)) {
        ext += base->k;
        std::uint64_t nc = count;
        for (int i = 0; i < base->k; ++i) nc *= static_cast<std::uint64_t>(base->p);
        count = nc;
    }
    FieldCtx sample_ctx =
        ext == base->k ? base : make_extension(base->p, ext, /*seed*/ 0x5a3210ULL);
    BiPoly fl = f.lifted(sample_ctx), gl = g.lifted(sample_ctx);
    std::vector<FieldElement> xs, ys;
    xs.reserve(samples);
    ys.reserve(samples);
    for (std::int64_t i = 0; i < samples; ++i) {
        FieldElement alpha = element_from_index(sample_ctx, static_cast<std::uint64_t>(i));
        Poly fa = fl.eval_a(alpha);
        Poly ga = gl.eval_a(alpha);
        xs.push_back(alpha);
        ys.push_back(resultant_with_formal_degrees(fa, ga, m, n));
    }
    Poly res = interpolate(xs, ys);
    if (sample_ctx.get() == base.get() || sample_ctx->same(*base)) return res;
    // descend coefficients back to the base field
    if (base->k == 1) {
        std::vector<std::int64_t> down(res.degree() + 1);
        for (int i = 0; i <= res.degree(); ++i) down[i] = res.coeff(i).prime_value();
        return Poly::from_ints(base, down);
    }
    // base is a proper extension: express each coefficient in the embedded basis
    const Embedding& emb = get_embedding(base, sample_ctx);
    // powers of the generator image
    std::vector<FieldElement> pows(base->k, FieldElement::one(sample_ctx));
    for (int i = 1; i < base->k; ++i) pows[i] = pows[i - 1] * emb.gen_image;
    // solve sum_i c_i * pows[i] = value, c_i in F_p, via linear algebra over F_p
    {
        const int L = sample_ctx->k, K = base->k;
        std::vector<FieldElement> out(res.degree() + 1, FieldElement::zero(base));
        // Build the K x L matrix once, then solve per coefficient by elimination.
        // Sizes are tiny (K <= 2 in practice), so repeat elimination per value.
        for (int ci = 0; ci <= res.degree(); ++ci) {
            FieldElement v = res.coeff(ci);
            // find c in F_p^K with sum c_i pows[i] = v: set up L x (K+1) system
            std::vector<std::vector<std::int64_t>> m2(L, std::vector<std::int64_t>(K + 1, 0));
            for (int i = 0; i < K; ++i)
                for (int r = 0; r < L; ++r) m2[r][i] = pows[i].coeff(r);
            for (int r = 0; r < L; ++r) m2[r][K] = v.coeff(r);
            // Gaussian elimination over F_p
            const std::int64_t p = base->p;
            int rank = 0;
            std::vector<int> pivot_of_col(K, -1);
            for (int col = 0; col < K && rank < L; ++col) {
                int pv = -1;
                for (int r = rank; r < L; ++r)
                    if (m2[r][col] % p != 0) {
                        pv = r;
                        break;
                    }
                if (pv < 0) continue;
                std::swap(m2[pv], m2[rank]);
                // normalize
                std::int64_t inv = 1, bse = m2[rank][col] % p, e = p - 2;
                while (e > 0) {
                    if (e & 1) inv = inv * bse % p;
                    bse = bse * bse % p;
                    e >>= 1;
                }
                for (int cc = col; cc <= K; ++cc) m2[rank][cc] = m2[rank][cc] * inv % p;
                for (int r = 0; r < L; ++r) {
                    if (r == rank) continue;
                    std::int64_t fct = m2[r][col] % p;
                    if (fct == 0) continue;
                    for (int cc = col; cc <= K; ++cc)
                        m2[r][cc] = ((m2[r][cc] - fct * m2[rank][cc]) % p + p) % p;
                }
                pivot_of_col[col] = rank;
                ++rank;
            }
            std::vector<std::int64_t> sol(K, 0);
            for (int col = 0; col < K; ++col)
                if (pivot_of_col[col] >= 0) sol[col] = m2[pivot_of_col[col]][K];
            // consistency: residual rows must be zero
            for (int r = rank; r < L; ++r)
                if (m2[r][K] % p != 0)
                    throw std::logic_error("resultant descent: value outside the base field");
            out[ci] = FieldElement::from_coeffs(base, sol);
        }
        return Poly::from_coeffs(base, std::move(out));
    }
}

Poly resultant_wrt_a(const BiPoly& f, const BiPoly& g) {
    return resultant_wrt_b(f.transpose(), g.transpose());
}

Poly sylvester_resultant_wrt_b(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    const FieldCtx& base = f.base();
    const int m = f.deg_b(), n = g.deg_b();
    if (m == 0 && n == 0)
        throw std::invalid_argument("resultant_wrt_b: both inputs have b-degree 0");
    std::vector<Poly> fc = f.as_poly_in_b(); // coefficient of b^j
    std::vector<Poly> gc = g.as_poly_in_b();
    const int N = m + n;
    std::vector<std::vector<Poly>> s(N, std::vector<Poly>(N, Poly::zero(base)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s[r][r + (m - j)] = fc[j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s[n + r][r + (n - j)] = gc[j];
    // cofactor expansion along the first column of the active submatrix
    std::vector<int> rows(N);
    for (int i = 0; i < N; ++i) rows[i] = i;
    struct Rec {
        const std::vector<std::vector<Poly>>& s;
        const FieldCtx& base;
        Poly run(std::vector<int>& act, int col) {
            if (col == static_cast<int>(s.size())) return Poly::one(base);
            Poly acc = Poly::zero(base);
            for (size_t i = 0; i < act.size(); ++i) {
                const Poly& e = s[act[i]][col];
                if (e.is_zero()) continue;
                int keep = act[i];
                act.erase(act.begin() + i);
                Poly sub = run(act, col + 1);
                act.insert(act.begin() + i, keep);
                Poly term = e * sub;
                if (i & 1) term = Poly::zero(base) - term;
                acc = acc + term;
            }
            return acc;
        }
    } rec{s, base};
    return rec.run(rows, 0);
}

} // namespace prym
