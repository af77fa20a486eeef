#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prym/ff.hpp"
#include "prym/poly.hpp"

namespace prym {

/// Dense bivariate polynomial in (a, b) over a fixed base field (k = 1 or 2 in
/// the census; the type itself is generic). Coefficient of a^i b^j sits at
/// row i, column j; trailing all-zero rows/columns are trimmed.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(FieldCtx base) : base_(std::move(base)) {}

    static BiPoly zero(const FieldCtx& base) { return BiPoly(base); }
    static BiPoly constant(const FieldCtx& base, const FieldElement& c);
    static BiPoly var_a(const FieldCtx& base);
    static BiPoly var_b(const FieldCtx& base);
    // rows[i][j] = coefficient of a^i b^j
    static BiPoly from_table(const FieldCtx& base,
                             const std::vector<std::vector<std::int64_t>>& rows);
    // univariate in a (b-degree 0) or in b
    static BiPoly from_poly_in_a(const Poly& f);
    static BiPoly from_poly_in_b(const Poly& f);

    const FieldCtx& base() const { return base_; }
    bool is_zero() const { return c_.empty(); }
    int deg_a() const { return da_; }
    int deg_b() const { return db_; }
    int total_degree() const;
    FieldElement coeff(int i, int j) const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly pow(std::uint64_t e) const;
    bool operator==(const BiPoly& o) const;
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    FieldElement eval(const FieldElement& a, const FieldElement& b) const;
    // specialize a = alpha (alpha in the base context); result is a Poly in b
    Poly eval_a(const FieldElement& alpha) const;
    Poly eval_b(const FieldElement& beta) const;

    BiPoly derivative_a() const;
    BiPoly derivative_b() const;
    BiPoly transpose() const; // swap the roles of a and b
    BiPoly lifted(const FieldCtx& dst) const;

    // view as polynomial in b: element j is the Poly-in-a coefficient of b^j
    std::vector<Poly> as_poly_in_b() const;

    std::string str() const;

private:
    void trim();
    FieldElement& slot(int i, int j) { return c_[static_cast<size_t>(i) * (db_ + 1) + j]; }
    const FieldElement& slot(int i, int j) const {
        return c_[static_cast<size_t>(i) * (db_ + 1) + j];
    }

    FieldCtx base_;
    int da_ = -1, db_ = -1;
    std::vector<FieldElement> c_;
};

// Resultant of f and g viewed as polynomials in b with coefficients in base[a],
// by evaluation at canonical sample points of a (drawn from an extension when
// the base is too small) and interpolation; degree-aware correction factors
// account for sample points where a formal leading coefficient vanishes.
// Throws if both inputs have b-degree 0.
Poly resultant_wrt_b(const BiPoly& f, const BiPoly& g);
Poly resultant_wrt_a(const BiPoly& f, const BiPoly& g);

// Independent route for validation: Sylvester matrix over base[a], determinant
// by cofactor expansion. Exponential in the matrix size; test-scale inputs only.
Poly sylvester_resultant_wrt_b(const BiPoly& f, const BiPoly& g);

// Classical resultant of two univariate polynomials (actual degrees).
FieldElement resultant_univariate(const Poly& f, const Poly& g);

} // namespace prym
