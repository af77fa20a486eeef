#include "prym/curve.hpp"

#include <stdexcept>

namespace prym {

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    if (f.degree() == 0) return true;
    Poly d = f.derivative();
    if (d.is_zero()) return false; // a p-th power shape cannot be squarefree in degree >= 1
    return gcd(f, d).degree() == 0;
}

HyperellipticCurve make_curve(const Poly& f) {
    if (f.degree() < 3) throw std::invalid_argument("defining polynomial must have degree >= 3");
    if (!is_squarefree(f)) throw std::invalid_argument("singular curve: f has multiple roots");
    return HyperellipticCurve{f.ctx(), f, (f.degree() + 1) / 2 - 1};
}

HyperellipticCurve make_curve_unchecked(const Poly& f) {
    if (f.degree() < 3) throw std::invalid_argument("defining polynomial must have degree >= 3");
    return HyperellipticCurve{f.ctx(), f, (f.degree() + 1) / 2 - 1};
}

Matrix hasse_witt(const HyperellipticCurve& C) {
    if (!is_squarefree(C.f)) throw std::invalid_argument("singular curve: f has multiple roots");
    const std::int64_t p = C.ctx->p;
    const int g = C.genus;
    Poly a = C.f.pow(static_cast<std::uint64_t>((p - 1) / 2));
    Matrix H(C.ctx, g, g);
    for (int r = 1; r <= g; ++r)
        for (int c = 1; c <= g; ++c) H.at(r - 1, c - 1) = a.coeff(static_cast<int>(c * p - r));
    return H;
}

int p_rank(const HyperellipticCurve& C) {
    Matrix H = hasse_witt(C);
    Matrix prod = H;
    for (int i = 1; i < C.genus; ++i) prod = prod * H.frobenius_entrywise(i);
    return prod.rank();
}

int a_number(const HyperellipticCurve& C) { return C.genus - hasse_witt(C).rank(); }

FieldElement hasse_invariant(const Poly& f) {
    if (f.degree() != 3 && f.degree() != 4)
        throw std::invalid_argument("hasse_invariant expects an elliptic model");
    const std::int64_t p = f.ctx()->p;
    Poly a = f.pow(static_cast<std::uint64_t>((p - 1) / 2));
    return a.coeff(static_cast<int>(p - 1));
}

FieldElement j_invariant_short(const FieldElement& A, const FieldElement& B) {
    const FieldCtx& ctx = A.ctx();
    FieldElement four = FieldElement::from_int(ctx, 4);
    FieldElement twentyseven = FieldElement::from_int(ctx, 27);
    FieldElement a3 = four * A * A * A;
    FieldElement disc = a3 + twentyseven * B * B;
    if (disc.is_zero()) throw std::invalid_argument("singular Weierstrass model");
    return FieldElement::from_int(ctx, 1728) * a3 * disc.inverse();
}

FieldElement j_invariant_cubic(const Poly& cubic) {
    if (cubic.degree() != 3) throw std::invalid_argument("expected a cubic");
    const FieldCtx& ctx = cubic.ctx();
    Poly m = cubic.monic();
    FieldElement c2 = m.coeff(2), c1 = m.coeff(1), c0 = m.coeff(0);
    if (ctx->p == 3) {
        if (!is_squarefree(m)) throw std::invalid_argument("singular Weierstrass model");
        if (c2.is_zero()) return FieldElement::zero(ctx); // supersingular shape, j = 0
        // kill the linear term with x -> x + c1/c2, then j = -c2^3 / constant
        FieldElement t = c1 * c2.inverse();
        FieldElement c0p = m.eval(t);
        if (c0p.is_zero()) throw std::invalid_argument("singular Weierstrass model");
        return -(c2 * c2 * c2) * c0p.inverse();
    }
    // depress: x -> x - c2/3
    FieldElement s = c2 * FieldElement::from_int(ctx, 3).inverse();
    FieldElement A = c1 - c2 * s;
    FieldElement B = c0 - c1 * s + FieldElement::from_int(ctx, 2) * s * s * s;
    return j_invariant_short(A, B);
}

Poly standard_supersingular_model(const FieldElement& j) {
    const FieldCtx& ctx = j.ctx();
    const std::int64_t p = ctx->p;
    bool in_prime = true;
    for (int i = 1; i < ctx->k; ++i)
        if (j.coeff(i) != 0) in_prime = false;
    FieldCtx mctx = in_prime ? FieldContext::prime_field(p) : ctx;
    FieldElement jm = in_prime ? FieldElement::from_int(mctx, j.coeff(0)) : j;
    FieldElement j1728 = FieldElement::from_int(mctx, 1728);
    if (p == 3) {
        if (jm.is_zero()) return Poly::from_ints(mctx, {0, -1, 0, 1}); // x^3 - x, j = 0 = 1728
        // ordinary char-3 family y^2 = x^3 + x^2 - 1/j
        std::vector<FieldElement> c{-(jm.inverse()), FieldElement::zero(mctx),
                                    FieldElement::one(mctx), FieldElement::one(mctx)};
        return Poly::from_coeffs(mctx, c);
    }
    if (jm.is_zero()) return Poly::from_ints(mctx, {-1, 0, 0, 1}); // x^3 - 1
    if (jm == j1728) return Poly::from_ints(mctx, {0, -1, 0, 1});  // x^3 - x
    // y^2 = x^3 + 3s x + 2s with s = j/(1728 - j)
    FieldElement s = jm * (j1728 - jm).inverse();
    std::vector<FieldElement> c{FieldElement::from_int(mctx, 2) * s,
                                FieldElement::from_int(mctx, 3) * s, FieldElement::zero(mctx),
                                FieldElement::one(mctx)};
    return Poly::from_coeffs(mctx, c);
}

std::vector<SupersingularCurve> enumerate_supersingular(std::int64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    FieldCtx ctx2 = make_extension(p, 2, 0);
    std::vector<SupersingularCurve> out;
    const std::uint64_t order = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
    for (std::uint64_t idx = 0; idx < order; ++idx) {
        FieldElement j = element_from_index(ctx2, idx);
        Poly model = standard_supersingular_model(j).lifted(ctx2);
        if (!is_squarefree(model)) throw std::logic_error("standard model is singular");
        if (!hasse_invariant(model).is_zero()) continue;
        int aut;
        if (p == 3)
            aut = 12;
        else if (j.is_zero())
            aut = 6;
        else if (j == FieldElement::from_int(ctx2, 1728))
            aut = 4;
        else
            aut = 2;
        out.push_back(SupersingularCurve{j, aut, model});
    }
    return out; // canonical order: element_from_index is ordered
}

Rat supersingular_mass(std::int64_t p) {
    Rat mass(0);
    for (const auto& sc : enumerate_supersingular(p)) mass += Rat(1, sc.aut_order);
    return mass;
}

} // namespace prym
