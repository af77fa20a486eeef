#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prym/ff.hpp"

namespace prym {

/// Dense univariate polynomial over a FieldContext, ascending coefficients,
/// trimmed so the leading coefficient is nonzero (zero poly has no coefficients).
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldCtx ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(const FieldCtx& ctx) { return Poly(ctx); }
    static Poly one(const FieldCtx& ctx);
    static Poly x(const FieldCtx& ctx);
    static Poly monomial(const FieldCtx& ctx, int deg, const FieldElement& c);
    static Poly from_coeffs(const FieldCtx& ctx, std::vector<FieldElement> c);
    static Poly from_ints(const FieldCtx& ctx, const std::vector<std::int64_t>& c);

    const FieldCtx& ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const FieldElement& lc() const;
    FieldElement coeff(int i) const;
    const std::vector<FieldElement>& coeffs() const { return c_; }

    FieldElement eval(const FieldElement& at) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const FieldElement& s) const;
    Poly shifted_up(int n) const; // * x^n
    std::pair<Poly, Poly> divrem(const Poly& d) const;
    Poly operator/(const Poly& d) const;
    Poly operator%(const Poly& d) const;
    Poly monic() const;
    Poly derivative() const;
    // f(x) = g(x^p) -> g with p-th roots of coefficients; throws otherwise.
    Poly pth_root() const;
    // entrywise e -> e^{p^n}
    Poly frobenius_coeffs(int n) const;
    Poly pow(std::uint64_t e) const;
    // coefficients mapped through an embedding into a larger field
    Poly lifted(const FieldCtx& dst) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // degree, then lexicographic on ascending coefficients (canonical order)
    bool operator<(const Poly& o) const;

    std::string str() const; // c0,c1,...

private:
    void trim();
    FieldCtx ctx_;
    std::vector<FieldElement> c_;
};

// monic gcd; gcd(f, 0) = monic f
Poly gcd(const Poly& f, const Poly& g);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);
// base^{1 + p + p^2 + ... + p^{n-1}} mod m (q-power ladders without big integers)
Poly pow_p_geometric(const Poly& base, int n, const Poly& mod);

// squarefree machinery (characteristic p aware: f' = 0 handled via p-th roots)
Poly squarefree_part(const Poly& f);
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

// complete factorization into monic irreducibles with multiplicities,
// deterministic given seed, canonical factor order
std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t seed);

bool is_irreducible(const Poly& f, std::uint64_t seed);

// distinct roots of f lying in f's own coefficient field
std::vector<FieldElement> roots_in_own_field(const Poly& f, std::uint64_t seed);

// smallest absolute degree m with u | x^{p^m} - x, i.e. [F_p(root) : F_p]
int absolute_root_degree(const Poly& irreducible);

struct RootsCoverageError : std::runtime_error {
    explicit RootsCoverageError(std::string msg, std::vector<Poly> uncovered_)
        : std::runtime_error(std::move(msg)), uncovered(std::move(uncovered_)) {}
    std::vector<Poly> uncovered;
};

// All roots of f realized in the target field, with multiplicities, canonically
// ordered. Throws RootsCoverageError listing factors whose roots do not fit.
std::vector<std::pair<FieldElement, int>> roots_in(const Poly& f, const FieldCtx& target,
                                                   std::uint64_t seed);

// All roots in `target` of an irreducible monic u over F_p (degree d | target.k).
std::vector<FieldElement> realize_roots(const Poly& u, const FieldCtx& target, std::uint64_t seed);

// minimal polynomial over F_p of an element of any F_{p^k}
Poly min_poly(const FieldElement& e);

// Newton/Lagrange interpolation: unique poly of degree < xs.size() through the
// given points (xs pairwise distinct, same context).
Poly interpolate(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys);

// i-th element of the context in canonical order (base-p digits of i)
FieldElement element_from_index(const FieldCtx& ctx, std::uint64_t i);

} // namespace prym
