#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prym/ff.hpp"
#include "prym/poly.hpp"
#include "prym/rng.hpp"

using namespace prym;

namespace {
FieldElement random_element(const FieldCtx& ctx, Rng& rng) {
    std::vector<std::int64_t> c(ctx->k);
    for (int i = 0; i < ctx->k; ++i) c[i] = static_cast<std::int64_t>(rng.below(ctx->p));
    return FieldElement::from_coeffs(ctx, c);
}
} // namespace

TEST_CASE("context construction and validation") {
    auto f49 = make_extension(7, 2, 1);
    CHECK(f49->p == 7);
    CHECK(f49->k == 2);
    CHECK(f49->order_fits() == 49);
    auto f343 = make_extension(7, 3, 1);
    CHECK(f343->order_fits() == 343);
    CHECK_THROWS_AS(make_extension(2, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_extension(9, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldContext::with_modulus(5, {1, 0, 1, 0}), std::invalid_argument);
    // x^2+1 reducible over F_5 (2^2 = -1), irreducible over F_7
    CHECK_THROWS_AS(FieldContext::with_modulus(5, {1, 0, 1}), std::invalid_argument);
    CHECK(FieldContext::with_modulus(7, {1, 0, 1})->k == 2);
}

TEST_CASE("field axioms on random triples") {
    Rng rng(42);
    for (auto p : {3, 5, 7, 13}) {
        for (int k : {1, 2, 3}) {
            auto ctx = make_extension(p, k, 7);
            for (int trial = 0; trial < 25; ++trial) {
                auto a = random_element(ctx, rng);
                auto b = random_element(ctx, rng);
                auto c = random_element(ctx, rng);
                CHECK((a + b) + c == a + (b + c));
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
                CHECK(a + (-a) == FieldElement::zero(ctx));
                if (!a.is_zero()) {
                    CHECK(a * a.inverse() == FieldElement::one(ctx));
                }
            }
        }
    }
}

TEST_CASE("frobenius fixes exactly the prime field") {
    auto f7 = FieldContext::prime_field(7);
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        auto e = random_element(f7, rng);
        CHECK(frobenius(e) == e);
    }
    // alpha^2 = -1 in F_9: frobenius(alpha) = alpha^3 = -alpha
    auto f9 = FieldContext::with_modulus(3, {1, 0, 1});
    auto alpha = FieldElement::from_coeffs(f9, {0, 1});
    CHECK(alpha * alpha == -FieldElement::one(f9));
    CHECK(frobenius(alpha) == -alpha);
    for (auto p : {3, 5, 7}) {
        for (int k : {2, 3, 4}) {
            auto ctx = make_extension(p, k, 3);
            for (int t = 0; t < 15; ++t) {
                auto e = random_element(ctx, rng);
                CHECK(frobenius_iter(e, k) == e); // full orbit closes
                bool fixed = frobenius(e) == e;
                CHECK(fixed == (min_poly(e).degree() == 1));
            }
        }
    }
}

TEST_CASE("embedding is a ring homomorphism preserving minimal polynomials") {
    Rng rng(5);
    auto f5 = FieldContext::prime_field(5);
    auto f25 = make_extension(5, 2, 9);
    for (int t = 0; t < 10; ++t) {
        auto e = random_element(f5, rng);
        auto img = embed(e, f25);
        CHECK(img.prime_value() == e.coeff(0));
    }
    auto f9 = make_extension(3, 2, 9);
    auto f81 = make_extension(3, 4, 9);
    // multiplicative order preserved: pick a generator of F_9^*
    for (std::uint64_t idx = 1; idx < 9; ++idx) {
        auto g = element_from_index(f9, idx);
        int order = 1;
        auto cur = g;
        while (!cur.is_one()) {
            cur = cur * g;
            ++order;
        }
        if (order != 8) continue;
        auto img = embed(g, f81);
        int iorder = 1;
        auto icur = img;
        while (!icur.is_one()) {
            icur = icur * img;
            ++iorder;
        }
        CHECK(iorder == 8);
        break;
    }
    for (auto [p, d, L] : {std::tuple{3, 2, 6}, {5, 2, 4}, {7, 3, 6}}) {
        auto src = make_extension(p, d, 13);
        auto dst = make_extension(p, L, 13);
        for (int t = 0; t < 8; ++t) {
            auto x = random_element(src, rng);
            auto y = random_element(src, rng);
            CHECK(embed(x * y, dst) == embed(x, dst) * embed(y, dst));
            CHECK(embed(x + y, dst) == embed(x, dst) + embed(y, dst));
            CHECK(min_poly(embed(x, dst)) == min_poly(x));
        }
    }
    auto f27 = make_extension(3, 3, 1);
    auto e = random_element(f27, rng);
    CHECK_THROWS_AS(embed(e, f81), std::invalid_argument); // 3 does not divide 4
}

TEST_CASE("canonical ordering is lexicographic on coefficients") {
    auto f9 = make_extension(3, 2, 2);
    auto e01 = FieldElement::from_coeffs(f9, {0, 1});
    auto e10 = FieldElement::from_coeffs(f9, {1, 0});
    auto e11 = FieldElement::from_coeffs(f9, {1, 1});
    CHECK(FieldElement::zero(f9) < e01);
    CHECK(e01 < e10); // (0,1) before (1,0)
    CHECK(e10 < e11);
    CHECK_FALSE(e11 < e11);
}
