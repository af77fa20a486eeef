#include "prym/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "prym/rng.hpp"

namespace prym {

namespace {
void require_same(const FieldCtx& a, const FieldCtx& b) {
    if (a.get() != b.get() && !a->same(*b))
        throw std::invalid_argument("polynomials over different contexts");
}
} // namespace

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::one(const FieldCtx& ctx) { return monomial(ctx, 0, FieldElement::one(ctx)); }

Poly Poly::x(const FieldCtx& ctx) { return monomial(ctx, 1, FieldElement::one(ctx)); }

Poly Poly::monomial(const FieldCtx& ctx, int deg, const FieldElement& c) {
    Poly f(ctx);
    if (!c.is_zero()) {
        f.c_.assign(deg + 1, FieldElement::zero(ctx));
        f.c_[deg] = c;
    }
    return f;
}

Poly Poly::from_coeffs(const FieldCtx& ctx, std::vector<FieldElement> c) {
    Poly f(ctx);
    f.c_ = std::move(c);
    f.trim();
    return f;
}

Poly Poly::from_ints(const FieldCtx& ctx, const std::vector<std::int64_t>& c) {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (auto ci : c) v.push_back(FieldElement::from_int(ctx, ci));
    return from_coeffs(ctx, std::move(v));
}

const FieldElement& Poly::lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

FieldElement Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElement::zero(ctx_);
    return c_[i];
}

FieldElement Poly::eval(const FieldElement& at) const {
    FieldElement acc = FieldElement::zero(ctx_);
    for (int i = degree(); i >= 0; --i) acc = acc * at + c_[i];
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    require_same(ctx_, o.ctx_);
    Poly r(ctx_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), FieldElement::zero(ctx_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        FieldElement a = i < c_.size() ? c_[i] : FieldElement::zero(ctx_);
        FieldElement b = i < o.c_.size() ? o.c_[i] : FieldElement::zero(ctx_);
        r.c_[i] = a + b;
    }
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    require_same(ctx_, o.ctx_);
    Poly r(ctx_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), FieldElement::zero(ctx_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        FieldElement a = i < c_.size() ? c_[i] : FieldElement::zero(ctx_);
        FieldElement b = i < o.c_.size() ? o.c_[i] : FieldElement::zero(ctx_);
        r.c_[i] = a - b;
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_same(ctx_, o.ctx_);
    if (is_zero() || o.is_zero()) return Poly(ctx_);
    Poly r(ctx_);
    size_t n = c_.size(), m = o.c_.size();
    if (ctx_->k == 1) {
        // prime-field fast path with delayed reduction
        const std::int64_t p = ctx_->p;
        std::vector<std::int64_t> a(n), b(m), out(n + m - 1, 0);
        for (size_t i = 0; i < n; ++i) a[i] = c_[i].coeff(0);
        for (size_t j = 0; j < m; ++j) b[j] = o.c_[j].coeff(0);
        const std::int64_t guard = (std::int64_t{1} << 62) / ((p - 1) * (p - 1) + 1);
        for (size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < m; ++j) out[i + j] += a[i] * b[j];
            if (static_cast<std::int64_t>(i + 1) % guard == 0)
                for (auto& v : out) v %= p;
        }
        std::vector<FieldElement> rc;
        rc.reserve(out.size());
        for (auto v : out) rc.push_back(FieldElement::from_int(ctx_, v % p));
        r.c_ = std::move(rc);
    } else {
        r.c_.assign(n + m - 1, FieldElement::zero(ctx_));
        for (size_t i = 0; i < n; ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly Poly::scaled(const FieldElement& s) const {
    Poly r(ctx_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const auto& ci : c_) r.c_.push_back(ci * s);
    r.trim();
    return r;
}

Poly Poly::shifted_up(int n) const {
    if (is_zero()) return *this;
    Poly r(ctx_);
    r.c_.assign(c_.size() + n, FieldElement::zero(ctx_));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + n] = c_[i];
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    require_same(ctx_, d.ctx_);
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q(ctx_), rem = *this;
    if (degree() < d.degree()) return {q, rem};
    FieldElement lcinv = d.lc().inverse();
    q.c_.assign(degree() - d.degree() + 1, FieldElement::zero(ctx_));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        FieldElement c = rem.c_.back() * lcinv;
        int shift = rem.degree() - d.degree();
        q.c_[shift] = c;
        for (int j = 0; j <= d.degree(); ++j)
            rem.c_[shift + j] = rem.c_[shift + j] - c * d.c_[j];
        rem.trim();
    }
    q.trim();
    return {q, rem};
}

Poly Poly::operator/(const Poly& d) const { return divrem(d).first; }
Poly Poly::operator%(const Poly& d) const { return divrem(d).second; }

Poly Poly::monic() const {
    if (is_zero()) return *this;
    if (lc().is_one()) return *this;
    return scaled(lc().inverse());
}

Poly Poly::derivative() const {
    Poly r(ctx_);
    if (degree() < 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (int i = 1; i <= degree(); ++i)
        r.c_.push_back(c_[i] * FieldElement::from_int(ctx_, i));
    r.trim();
    return r;
}

Poly Poly::pth_root() const {
    const std::int64_t p = ctx_->p;
    Poly r(ctx_);
    if (is_zero()) return r;
    r.c_.assign(degree() / p + 1, FieldElement::zero(ctx_));
    for (int i = 0; i <= degree(); ++i) {
        if (c_[i].is_zero()) continue;
        if (i % p != 0) throw std::domain_error("pth_root: polynomial is not a p-th power shape");
        r.c_[i / p] = frobenius_iter(c_[i], ctx_->k - 1); // e^{p^{k-1}} is the p-th root
    }
    r.trim();
    return r;
}

Poly Poly::frobenius_coeffs(int n) const {
    Poly r(ctx_);
    r.c_.reserve(c_.size());
    for (const auto& ci : c_) r.c_.push_back(frobenius_iter(ci, n));
    return r;
}

Poly Poly::pow(std::uint64_t e) const {
    Poly result = Poly::one(ctx_);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Poly Poly::lifted(const FieldCtx& dst) const {
    if (ctx_->same(*dst)) return *this;
    Poly r(dst);
    r.c_.reserve(c_.size());
    if (ctx_->k == 1) {
        for (const auto& ci : c_) r.c_.push_back(FieldElement::from_int(dst, ci.coeff(0)));
    } else {
        const Embedding& emb = get_embedding(ctx_, dst);
        for (const auto& ci : c_) r.c_.push_back(emb.apply(ci));
    }
    r.trim();
    return r;
}

bool Poly::operator==(const Poly& o) const {
    require_same(ctx_, o.ctx_);
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

bool Poly::operator<(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        if (ctx_->k == 1)
            os << c_[i].coeff(0);
        else
            os << c_[i].str();
    }
    return os.str();
}

Poly gcd(const Poly& f, const Poly& g) {
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
    Poly result = Poly::one(base.ctx());
    Poly b = base % mod;
    while (e > 0) {
        if (e & 1) result = result * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return result;
}

Poly pow_p_geometric(const Poly& base, int n, const Poly& mod) {
    const std::uint64_t p = static_cast<std::uint64_t>(base.ctx()->p);
    Poly t = base % mod;
    Poly acc = t;
    for (int i = 1; i < n; ++i) {
        t = powmod(t, p, mod);
        acc = acc * t % mod;
    }
    return acc;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    std::vector<std::pair<Poly, int>> res;
    Poly g = f.monic();
    if (g.degree() == 0) return res;
    Poly d = g.derivative();
    if (d.is_zero()) {
        // pure p-th power
        for (auto& [h, m] : squarefree_decomposition(g.pth_root()))
            res.emplace_back(h, m * static_cast<int>(f.ctx()->p));
        return res;
    }
    Poly c = gcd(g, d);
    Poly w = g / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) res.emplace_back(z.monic(), i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [h, m] : squarefree_decomposition(c.pth_root()))
            res.emplace_back(h, m * static_cast<int>(f.ctx()->p));
    }
    std::sort(res.begin(), res.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return res;
}

Poly squarefree_part(const Poly& f) {
    Poly r = Poly::one(f.ctx());
    for (auto& [g, m] : squarefree_decomposition(f)) r = r * g;
    return r;
}

namespace {

// x^{p^k} == x^q mod f, by k successive p-th powerings
Poly q_power(const Poly& h, const Poly& f) {
    const std::uint64_t p = static_cast<std::uint64_t>(f.ctx()->p);
    Poly r = h;
    for (int i = 0; i < f.ctx()->k; ++i) r = powmod(r, p, f);
    return r;
}

// distinct-degree: input monic squarefree; returns {(product of irred of degree d, d)}
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
    std::vector<std::pair<Poly, int>> res;
    Poly fr = f;
    Poly h = Poly::x(f.ctx()) % fr;
    int d = 0;
    while (fr.degree() > 0 && 2 * (d + 1) <= fr.degree()) {
        ++d;
        h = q_power(h, fr);
        Poly g = gcd(h - Poly::x(f.ctx()), fr);
        if (g.degree() > 0) {
            res.emplace_back(g, d);
            fr = fr / g;
            h = h % fr;
        }
    }
    if (fr.degree() > 0) res.emplace_back(fr, fr.degree());
    return res;
}

Poly random_poly_below(const FieldCtx& ctx, int deg_bound, Rng& rng) {
    std::vector<FieldElement> c;
    c.reserve(deg_bound);
    for (int i = 0; i < deg_bound; ++i) {
        std::vector<std::int64_t> rep(ctx->k);
        for (int j = 0; j < ctx->k; ++j) rep[j] = static_cast<std::int64_t>(rng.below(ctx->p));
        c.push_back(FieldElement::from_coeffs(ctx, rep));
    }
    return Poly::from_coeffs(ctx, std::move(c));
}

// equal-degree splitting (Cantor-Zassenhaus, odd characteristic)
void equal_degree(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
    if (f.degree() == 0) return;
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const FieldCtx& ctx = f.ctx();
    const std::uint64_t half = static_cast<std::uint64_t>((ctx->p - 1) / 2);
    for (;;) {
        Poly r = random_poly_below(ctx, f.degree(), rng);
        if (r.is_zero()) continue;
        Poly g0 = gcd(r, f);
        if (g0.degree() > 0 && g0.degree() < f.degree()) {
            equal_degree(g0, d, rng, out);
            equal_degree(f / g0, d, rng, out);
            return;
        }
        Poly s = pow_p_geometric(r, ctx->k * d, f);
        s = powmod(s, half, f);
        Poly g = gcd(s - Poly::one(ctx), f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
    std::vector<std::pair<Poly, int>> res;
    if (f.degree() == 0) return res;
    Rng rng(subseed(seed, "factor"));
    for (auto& [sq, mult] : squarefree_decomposition(f)) {
        for (auto& [prod, d] : distinct_degree(sq)) {
            std::vector<Poly> irr;
            equal_degree(prod, d, rng, irr);
            for (auto& u : irr) res.emplace_back(std::move(u), mult);
        }
    }
    std::sort(res.begin(), res.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return res;
}

bool is_irreducible(const Poly& f, std::uint64_t seed) {
    if (f.degree() < 1) return false;
    auto fs = factor(f, seed);
    return fs.size() == 1 && fs[0].second == 1;
}

std::vector<FieldElement> roots_in_own_field(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
    std::vector<FieldElement> roots;
    if (f.degree() == 0) return roots;
    Poly sf = squarefree_part(f);
    Poly h = q_power(Poly::x(f.ctx()) % sf, sf);
    Poly lin = gcd(h - Poly::x(f.ctx()), sf);
    if (lin.degree() == 0) return roots;
    Rng rng(subseed(seed, "roots"));
    std::vector<Poly> parts;
    equal_degree(lin, 1, rng, parts);
    roots.reserve(parts.size());
    for (auto& q : parts) roots.push_back(-q.coeff(0));
    std::sort(roots.begin(), roots.end());
    return roots;
}

int absolute_root_degree(const Poly& u) {
    // smallest m with u | x^{p^m} - x
    const std::uint64_t p = static_cast<std::uint64_t>(u.ctx()->p);
    Poly x = Poly::x(u.ctx()) % u;
    Poly h = x;
    int bound = u.ctx()->k * u.degree();
    for (int m = 1; m <= bound; ++m) {
        h = powmod(h, p, u);
        if (h == x) return m;
    }
    throw std::logic_error("absolute_root_degree: no exponent found");
}

std::vector<FieldElement> realize_roots(const Poly& u, const FieldCtx& target,
                                        std::uint64_t seed) {
    if (u.ctx()->k != 1) throw std::invalid_argument("realize_roots expects a prime-field poly");
    const std::int64_t p = u.ctx()->p;
    if (target->p != p) throw std::invalid_argument("mismatched characteristic");
    const int d = u.degree();
    if (d < 1) throw std::invalid_argument("realize_roots: constant polynomial");
    if (target->k % d != 0)
        throw std::invalid_argument("target field does not contain the roots");
    if (d == 1) return {FieldElement::from_int(target, -u.coeff(0).coeff(0))};

    FieldElement first_root;
    bool have = false;
    if (target->k == d) {
        std::vector<std::int64_t> ui(d + 1);
        for (int i = 0; i <= d; ++i) ui[i] = u.coeff(i).coeff(0);
        if (ui == target->modulus) {
            first_root = FieldElement::from_coeffs(target, {0, 1}); // the generator itself
            have = true;
        } else {
            // two presentations of the same field: root-find directly
            Poly ut = u.lifted(target);
            auto rs = roots_in_own_field(ut, subseed(seed, "iso"));
            if (rs.empty()) throw std::logic_error("realize_roots: lost roots in isomorphic field");
            first_root = rs[0];
            have = true;
        }
    }
    if (!have) {
        // Locate the degree-d subfield by traces, then root-find over a small
        // presentation of it and push the root up.
        Rng rng(subseed(seed, "embed-theta") ^ static_cast<std::uint64_t>(d));
        const int L = target->k;
        for (int attempt = 0; attempt < 64 && !have; ++attempt) {
            std::vector<std::int64_t> rep(L);
            for (int j = 0; j < L; ++j) rep[j] = static_cast<std::int64_t>(rng.below(p));
            FieldElement r = FieldElement::from_coeffs(target, rep);
            FieldElement s = r, theta = r;
            for (int i = 1; i < L / d; ++i) {
                s = frobenius_iter(s, d);
                theta = theta + s;
            }
            if (theta.is_zero() || theta.residue_degree() != d) continue;
            Poly g = min_poly(theta); // degree d over F_p
            FieldCtx small = FieldContext::with_modulus(p, [&] {
                std::vector<std::int64_t> gi(d + 1);
                for (int i = 0; i <= d; ++i) gi[i] = g.coeff(i).coeff(0);
                return gi;
            }());
            Poly us = u.lifted(small);
            auto rs = roots_in_own_field(us, subseed(seed, "embed-root"));
            if (rs.empty()) throw std::logic_error("realize_roots: subfield misses roots");
            // map the root through t -> theta
            FieldElement img = FieldElement::zero(target);
            for (int i = d - 1; i >= 0; --i)
                img = img * theta + FieldElement::from_int(target, rs[0].coeff(i));
            first_root = img;
            have = true;
        }
        if (!have) throw std::logic_error("realize_roots: subfield generator search failed");
    }
    std::vector<FieldElement> roots{first_root};
    FieldElement it = frobenius(first_root);
    while (!(it == first_root)) {
        roots.push_back(it);
        it = frobenius(it);
    }
    if (static_cast<int>(roots.size()) != d)
        throw std::logic_error("realize_roots: root orbit has unexpected size");
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<std::pair<FieldElement, int>> roots_in(const Poly& f, const FieldCtx& target,
                                                   std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
    const bool prime_base = f.ctx()->k == 1;
    if (!prime_base && target->k % f.ctx()->k != 0)
        throw std::invalid_argument("target does not contain the coefficient field");
    std::vector<std::pair<FieldElement, int>> out;
    std::vector<Poly> uncovered;
    for (auto& [u, mult] : factor(f, seed)) {
        int m = prime_base ? u.degree() : absolute_root_degree(u);
        if (target->k % m != 0) {
            uncovered.push_back(u);
            continue;
        }
        if (prime_base) {
            for (auto& r : realize_roots(u, target, seed)) out.emplace_back(r, mult);
        } else {
            // all e roots of u lie in the target once their absolute degree divides
            Poly ut = u.lifted(target);
            for (auto& r : roots_in_own_field(ut, subseed(seed, "roots_in-general")))
                out.emplace_back(r, mult);
        }
    }
    if (!uncovered.empty())
        throw RootsCoverageError("target field does not contain all roots", std::move(uncovered));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Poly min_poly(const FieldElement& e) {
    const FieldCtx& ctx = e.ctx();
    FieldCtx primectx = FieldContext::prime_field(ctx->p);
    if (ctx->k == 1)
        return Poly::from_ints(primectx, {-e.coeff(0), 1});
    // product of (X - conjugates); coefficients land in the prime subfield
    std::vector<FieldElement> orbit{e};
    FieldElement it = frobenius(e);
    while (!(it == e)) {
        orbit.push_back(it);
        it = frobenius(it);
    }
    Poly prod = Poly::one(ctx);
    for (const auto& r : orbit)
        prod = prod * Poly::from_coeffs(ctx, {-r, FieldElement::one(ctx)});
    std::vector<std::int64_t> down(prod.degree() + 1);
    for (int i = 0; i <= prod.degree(); ++i) down[i] = prod.coeff(i).prime_value();
    return Poly::from_ints(primectx, down);
}

Poly interpolate(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys) {
    if (xs.empty() || xs.size() != ys.size())
        throw std::invalid_argument("interpolate: bad point set");
    const FieldCtx& ctx = xs[0].ctx();
    const size_t n = xs.size();
    // T = prod (x - x_i)
    Poly T = Poly::one(ctx);
    for (const auto& xi : xs) T = T * Poly::from_coeffs(ctx, {-xi, FieldElement::one(ctx)});
    std::vector<FieldElement> acc(n, FieldElement::zero(ctx));
    std::vector<FieldElement> q(n); // quotient T / (x - x_i), degree n-1
    for (size_t i = 0; i < n; ++i) {
        // synthetic division by (x - x_i)
        FieldElement carry = T.coeff(static_cast<int>(n));
        for (int j = static_cast<int>(n) - 1; j >= 0; --j) {
            q[j] = carry;
            carry = T.coeff(j) + carry * xs[i];
        }
        // weight = prod_{j != i} (x_i - x_j) = Q(x_i)
        FieldElement w = FieldElement::zero(ctx);
        for (int j = static_cast<int>(n) - 1; j >= 0; --j) w = w * xs[i] + q[j];
        FieldElement scale = ys[i] * w.inverse();
        if (!scale.is_zero())
            for (size_t j = 0; j < n; ++j) acc[j] = acc[j] + scale * q[j];
    }
    return Poly::from_coeffs(ctx, std::move(acc));
}

FieldElement element_from_index(const FieldCtx& ctx, std::uint64_t i) {
    std::vector<std::int64_t> rep(ctx->k, 0);
    for (int j = 0; j < ctx->k && i > 0; ++j) {
        rep[j] = static_cast<std::int64_t>(i % static_cast<std::uint64_t>(ctx->p));
        i /= static_cast<std::uint64_t>(ctx->p);
    }
    if (i > 0) throw std::out_of_range("element index exceeds field order");
    return FieldElement::from_coeffs(ctx, rep);
}

} // namespace prym
