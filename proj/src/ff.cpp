#include "prym/ff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "prym/rng.hpp"

namespace prym {

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

// ---- raw F_p[x] helpers on plain ascending coefficient vectors ----
// Only what the irreducibility test needs; the full generic machinery lives
// in the poly module on top of FieldElement.

using RawPoly = std::vector<std::int64_t>;

void raw_trim(RawPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    RawPoly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    int k = static_cast<int>(f.size()) - 1; // f monic of degree k
    for (int i = static_cast<int>(prod.size()) - 1; i >= k; --i) {
        std::int64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < k; ++j) prod[i - k + j] = mod_pos(prod[i - k + j] - c * f[j], p);
    }
    prod.resize(k);
    raw_trim(prod);
    return prod;
}

RawPoly raw_powmod(RawPoly base, std::uint64_t e, const RawPoly& f, std::int64_t p) {
    RawPoly result{1};
    while (e > 0) {
        if (e & 1) result = raw_mulmod(result, base, f, p);
        base = raw_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, std::int64_t p) {
    raw_trim(a);
    raw_trim(b);
    while (!b.empty()) {
        // a mod b, b monic-ized on the fly
        std::int64_t lc = b.back();
        if (lc != 1) {
            // scale b monic: multiply by lc^{-1}
            std::int64_t inv = 1, base = lc, e = p - 2;
            while (e > 0) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (auto& c : b) c = c * inv % p;
        }
        int db = static_cast<int>(b.size()) - 1;
        while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
            std::int64_t c = a.back();
            int shift = static_cast<int>(a.size()) - 1 - db;
            if (c != 0)
                for (int j = 0; j <= db; ++j) a[shift + j] = mod_pos(a[shift + j] - c * b[j], p);
            raw_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    raw_trim(a);
    return a;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(const std::vector<std::int64_t>& monic, std::int64_t p) {
    int k = static_cast<int>(monic.size()) - 1;
    if (k < 1 || monic[k] != 1) return false;
    if (k == 1) return true;
    // Rabin: x^{p^k} == x (mod f), and gcd(x^{p^{k/q}} - x, f) = 1 for prime q | k.
    std::vector<RawPoly> xq(k + 1); // xq[i] = x^{p^i} mod f
    xq[0] = {0, 1};
    for (int i = 1; i <= k; ++i)
        xq[i] = raw_powmod(xq[i - 1], static_cast<std::uint64_t>(p), monic, p);
    RawPoly x{0, 1};
    if (xq[k] != x) return false;
    int rem = k;
    for (int q = 2; q <= rem; ++q) {
        if (rem % q != 0) continue;
        while (rem % q == 0) rem /= q;
        RawPoly diff = xq[k / q];
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = mod_pos(diff[1] - 1, p);
        raw_trim(diff);
        RawPoly g = raw_gcd(diff, monic, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

FieldCtx FieldContext::prime_field(std::int64_t p) {
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (p > (1 << 20)) throw std::invalid_argument("p exceeds the supported range");
    return FieldCtx(new FieldContext(p, 1, {0, 1}));
}

FieldCtx FieldContext::with_modulus(std::int64_t p, std::vector<std::int64_t> modulus) {
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (p > (1 << 20)) throw std::invalid_argument("p exceeds the supported range");
    for (auto& c : modulus) c = mod_pos(c, p);
    int k = static_cast<int>(modulus.size()) - 1;
    if (k < 1 || modulus[k] != 1)
        throw std::invalid_argument("modulus must be monic of degree >= 1");
    if (!is_irreducible_mod_p(modulus, p))
        throw std::invalid_argument("modulus is reducible over F_p");
    return FieldCtx(new FieldContext(p, k, std::move(modulus)));
}

std::uint64_t FieldContext::order_fits() const {
    std::uint64_t o = 1;
    for (int i = 0; i < k; ++i) {
        if (o > (1ULL << 62) / static_cast<std::uint64_t>(p))
            throw std::overflow_error("field order exceeds 2^62");
        o *= static_cast<std::uint64_t>(p);
    }
    return o;
}

bool FieldContext::same(const FieldContext& o) const {
    return p == o.p && k == o.k && modulus == o.modulus;
}

std::string FieldContext::str() const {
    std::ostringstream os;
    os << "{p:" << p << ", k:" << k << ", modulus:[";
    for (int i = 0; i <= k; ++i) os << (i ? "," : "") << modulus[i];
    os << "]}";
    return os.str();
}

FieldCtx make_extension(std::int64_t p, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (k == 1) return FieldContext::prime_field(p);
    Rng rng(subseed(seed, "make_extension") ^ (static_cast<std::uint64_t>(p) << 20) ^
            static_cast<std::uint64_t>(k));
    for (;;) {
        std::vector<std::int64_t> cand(k + 1, 0);
        cand[k] = 1;
        for (int i = 0; i < k; ++i) cand[i] = static_cast<std::int64_t>(rng.below(p));
        if (is_irreducible_mod_p(cand, p)) return FieldContext::with_modulus(p, std::move(cand));
    }
}

// ---- FieldElement ----

namespace {
void require_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument("uninitialized field element");
    if (a.ctx().get() != b.ctx().get() && !a.ctx()->same(*b.ctx()))
        throw std::invalid_argument("field elements from different contexts");
}
} // namespace

FieldElement FieldElement::zero(const FieldCtx& ctx) {
    return FieldElement(ctx, CoeffVec(ctx->k));
}

FieldElement FieldElement::one(const FieldCtx& ctx) { return from_int(ctx, 1); }

FieldElement FieldElement::from_int(const FieldCtx& ctx, std::int64_t v) {
    CoeffVec c(ctx->k);
    c[0] = mod_pos(v, ctx->p);
    return FieldElement(ctx, std::move(c));
}

FieldElement FieldElement::from_coeffs(const FieldCtx& ctx, const std::vector<std::int64_t>& in) {
    if (static_cast<int>(in.size()) > ctx->k)
        throw std::invalid_argument("coefficient vector longer than extension degree");
    CoeffVec c(ctx->k);
    for (size_t i = 0; i < in.size(); ++i) c[static_cast<int>(i)] = mod_pos(in[i], ctx->p);
    return FieldElement(ctx, std::move(c));
}

std::vector<std::int64_t> FieldElement::coeffs() const {
    std::vector<std::int64_t> v(rep_.size());
    for (int i = 0; i < rep_.size(); ++i) v[i] = rep_[i];
    return v;
}

bool FieldElement::is_zero() const {
    for (int i = 0; i < rep_.size(); ++i)
        if (rep_[i] != 0) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (rep_.size() == 0 || rep_[0] != 1) return false;
    for (int i = 1; i < rep_.size(); ++i)
        if (rep_[i] != 0) return false;
    return true;
}

std::int64_t FieldElement::as_int() const {
    if (ctx_->k != 1) throw std::domain_error("as_int on a proper extension element");
    return rep_[0];
}

std::int64_t FieldElement::prime_value() const {
    for (int i = 1; i < rep_.size(); ++i)
        if (rep_[i] != 0) throw std::domain_error("element is not in the prime subfield");
    return rep_[0];
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_ctx(*this, o);
    CoeffVec c(ctx_->k);
    for (int i = 0; i < ctx_->k; ++i) {
        std::int64_t s = rep_[i] + o.rep_[i];
        c[i] = s >= ctx_->p ? s - ctx_->p : s;
    }
    return FieldElement(ctx_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_ctx(*this, o);
    CoeffVec c(ctx_->k);
    for (int i = 0; i < ctx_->k; ++i) {
        std::int64_t s = rep_[i] - o.rep_[i];
        c[i] = s < 0 ? s + ctx_->p : s;
    }
    return FieldElement(ctx_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    CoeffVec c(ctx_->k);
    for (int i = 0; i < ctx_->k; ++i) c[i] = rep_[i] == 0 ? 0 : ctx_->p - rep_[i];
    return FieldElement(ctx_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_ctx(*this, o);
    const std::int64_t p = ctx_->p;
    const int k = ctx_->k;
    if (k == 1) {
        CoeffVec c(1);
        c[0] = rep_[0] * o.rep_[0] % p;
        return FieldElement(ctx_, std::move(c));
    }
    // schoolbook product, then reduce by the monic modulus
    std::int64_t prod[256] = {};
    if (2 * k - 1 > 256) throw std::overflow_error("extension degree too large");
    for (int i = 0; i < k; ++i) {
        if (rep_[i] == 0) continue;
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + rep_[i] * o.rep_[j]) % p;
    }
    const auto& m = ctx_->modulus;
    for (int i = 2 * k - 2; i >= k; --i) {
        std::int64_t c = prod[i];
        if (c == 0) continue;
        for (int j = 0; j < k; ++j) prod[i - k + j] = mod_pos(prod[i - k + j] - c * m[j], p);
    }
    CoeffVec c(k);
    for (int i = 0; i < k; ++i) c[i] = prod[i];
    return FieldElement(ctx_, std::move(c));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    const std::int64_t p = ctx_->p;
    if (ctx_->k == 1) {
        std::int64_t inv = 1, base = rep_[0], e = p - 2;
        while (e > 0) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return from_int(ctx_, inv);
    }
    // extended Euclid in F_p[x] on (rep, modulus)
    RawPoly r0 = ctx_->modulus, r1(ctx_->k);
    for (int i = 0; i < ctx_->k; ++i) r1[i] = rep_[i];
    raw_trim(r1);
    RawPoly s0{}, s1{1}; // Bezout coefficients for rep
    auto scalar_inv = [p](std::int64_t v) {
        std::int64_t inv = 1, base = v, e = p - 2;
        while (e > 0) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return inv;
    };
    while (r1.size() > 1 || (r1.size() == 1 && false)) {
        // divide r0 by r1
        RawPoly q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        RawPoly rem = r0;
        std::int64_t lcinv = scalar_inv(r1.back());
        while (rem.size() >= r1.size() && !rem.empty()) {
            std::int64_t c = rem.back() * lcinv % p;
            int shift = static_cast<int>(rem.size() - r1.size());
            q[shift] = c;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[shift + j] = mod_pos(rem[shift + j] - c * r1[j], p);
            raw_trim(rem);
            if (rem.empty()) break;
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        RawPoly qs1(q.size() + (s1.empty() ? 0 : s1.size() - 1) + 1, 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs1[i + j] = (qs1[i + j] + q[i] * s1[j]) % p;
        RawPoly ns(std::max(s0.size(), qs1.size()), 0);
        for (size_t i = 0; i < ns.size(); ++i) {
            std::int64_t a = i < s0.size() ? s0[i] : 0;
            std::int64_t b = i < qs1.size() ? qs1[i] : 0;
            ns[i] = mod_pos(a - b, p);
        }
        raw_trim(ns);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(ns);
        if (r1.empty()) throw std::domain_error("inverse: element not invertible");
    }
    // r1 is a nonzero constant; rep^{-1} = s1 / r1
    std::int64_t cinv = scalar_inv(r1[0]);
    CoeffVec c(ctx_->k);
    for (size_t i = 0; i < s1.size(); ++i) c[static_cast<int>(i)] = s1[i] * cinv % p;
    return FieldElement(ctx_, std::move(c));
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement result = one(ctx_);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_ctx(*this, o);
    for (int i = 0; i < ctx_->k; ++i)
        if (rep_[i] != o.rep_[i]) return false;
    return true;
}

bool FieldElement::operator<(const FieldElement& o) const {
    require_same_ctx(*this, o);
    for (int i = 0; i < ctx_->k; ++i) {
        if (rep_[i] != o.rep_[i]) return rep_[i] < o.rep_[i];
    }
    return false;
}

int FieldElement::residue_degree() const {
    FieldElement e = frobenius(*this);
    int d = 1;
    while (!(e == *this)) {
        e = frobenius(e);
        ++d;
        if (d > ctx_->k) throw std::logic_error("Frobenius orbit failed to close");
    }
    return d;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rep_.size(); ++i) os << (i ? "," : "") << rep_[i];
    os << "]";
    return os.str();
}

std::string FieldElement::key() const { return str(); }

FieldElement frobenius(const FieldElement& e) {
    if (!e.valid()) throw std::invalid_argument("uninitialized field element");
    if (e.ctx()->k == 1) return e; // Fermat
    return e.pow(static_cast<std::uint64_t>(e.ctx()->p));
}

FieldElement frobenius_iter(const FieldElement& e, int n) {
    FieldElement r = e;
    for (int i = 0; i < n; ++i) r = frobenius(r);
    return r;
}

FieldElement Embedding::apply(const FieldElement& e) const {
    if (!e.ctx()->same(*src)) throw std::invalid_argument("embedding applied to a foreign element");
    // Horner in the image of the source generator
    FieldElement acc = FieldElement::zero(dst);
    for (int i = src->k - 1; i >= 0; --i)
        acc = acc * gen_image + FieldElement::from_int(dst, e.coeff(i));
    return acc;
}

FieldElement embed(const FieldElement& e, const FieldCtx& dst) {
    if (e.ctx()->same(*dst)) return e;
    return get_embedding(e.ctx(), dst).apply(e);
}

} // namespace prym
