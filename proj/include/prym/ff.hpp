#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace prym {

class FieldContext;
using FieldCtx = std::shared_ptr<const FieldContext>;

/// F_{p^k} described by an explicit monic irreducible modulus over F_p.
/// Contexts are immutable after construction and freely shared.
class FieldContext {
public:
    std::int64_t p;
    int k;
    std::vector<std::int64_t> modulus; // ascending, length k+1, monic; {0,1} for k = 1

    // F_p itself (modulus x).
    static FieldCtx prime_field(std::int64_t p);
    // F_{p^k} with a caller-supplied modulus; validates irreducibility.
    static FieldCtx with_modulus(std::int64_t p, std::vector<std::int64_t> modulus);

    std::uint64_t order_fits() const; // p^k, throws if it exceeds 2^62
    bool same(const FieldContext& o) const;
    std::string str() const; // {p, k, modulus:[...]}

private:
    FieldContext(std::int64_t p_, int k_, std::vector<std::int64_t> mod)
        : p(p_), k(k_), modulus(std::move(mod)) {}
};

// Deterministic seeded search for a monic irreducible modulus of degree k.
FieldCtx make_extension(std::int64_t p, int k, std::uint64_t seed);

bool is_prime(std::int64_t n);
// Irreducibility of a monic polynomial over F_p (Rabin's test).
bool is_irreducible_mod_p(const std::vector<std::int64_t>& monic, std::int64_t p);

// Coefficient vector with inline storage for small extension degrees.
class CoeffVec {
public:
    CoeffVec() : size_(0) {}
    explicit CoeffVec(int n) : size_(n) {
        if (n > kInline) heap_.reset(new std::int64_t[n]);
        for (int i = 0; i < n; ++i) (*this)[i] = 0;
    }
    CoeffVec(const CoeffVec& o) : size_(o.size_) {
        if (size_ > kInline) heap_.reset(new std::int64_t[size_]);
        for (int i = 0; i < size_; ++i) (*this)[i] = o[i];
    }
    CoeffVec(CoeffVec&& o) noexcept = default;
    CoeffVec& operator=(const CoeffVec& o) {
        if (this != &o) { CoeffVec tmp(o); *this = std::move(tmp); }
        return *this;
    }
    CoeffVec& operator=(CoeffVec&& o) noexcept = default;

    int size() const { return size_; }
    std::int64_t& operator[](int i) { return size_ > kInline ? heap_[i] : inline_[i]; }
    std::int64_t operator[](int i) const { return size_ > kInline ? heap_[i] : inline_[i]; }

private:
    static constexpr int kInline = 4;
    int size_;
    std::int64_t inline_[kInline] = {0, 0, 0, 0};
    std::unique_ptr<std::int64_t[]> heap_;
};

/// Element of F_{p^k}: fully reduced coefficient vector of length k against
/// the context modulus. Plain immutable value; all arithmetic is exact.
class FieldElement {
public:
    FieldElement() = default; // invalid until assigned

    static FieldElement zero(const FieldCtx& ctx);
    static FieldElement one(const FieldCtx& ctx);
    static FieldElement from_int(const FieldCtx& ctx, std::int64_t v);
    static FieldElement from_coeffs(const FieldCtx& ctx, const std::vector<std::int64_t>& c);

    const FieldCtx& ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    int klen() const { return rep_.size(); }
    std::int64_t coeff(int i) const { return i < rep_.size() ? rep_[i] : 0; }
    std::vector<std::int64_t> coeffs() const;

    bool is_zero() const;
    bool is_one() const;
    // k = 1 value; throws for proper extensions.
    std::int64_t as_int() const;
    // Constant value if the element lies in the prime subfield, else throws.
    std::int64_t prime_value() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // Canonical ordering: lexicographic on (c0, ..., c_{k-1}), coefficients in {0,...,p-1}.
    bool operator<(const FieldElement& o) const;

    // Frobenius orbit length = degree of the subfield this element generates.
    int residue_degree() const;

    std::string str() const; // [c0,c1,...]
    std::string key() const; // stable map key within one context

private:
    friend FieldElement frobenius(const FieldElement&);
    FieldElement(FieldCtx ctx, CoeffVec rep) : ctx_(std::move(ctx)), rep_(std::move(rep)) {}

    FieldCtx ctx_;
    CoeffVec rep_;
};

// e^p; a field automorphism fixing exactly F_p.
FieldElement frobenius(const FieldElement& e);
FieldElement frobenius_iter(const FieldElement& e, int n);

/// Ring homomorphism F_{p^d} -> F_{p^L} for d | L, fixed by sending the
/// source generator to the smallest root of the source modulus in the target
/// (smallest under the canonical element ordering).
class Embedding {
public:
    FieldCtx src, dst;
    FieldElement gen_image;

    FieldElement apply(const FieldElement& e) const;
};

// Cached; deterministic for a given (src, dst) pair. Throws on d not dividing L
// or mismatched characteristic.
const Embedding& get_embedding(const FieldCtx& src, const FieldCtx& dst);
FieldElement embed(const FieldElement& e, const FieldCtx& dst);

} // namespace prym
