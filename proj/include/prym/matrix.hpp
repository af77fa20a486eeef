#pragma once

#include <string>
#include <vector>

#include "prym/ff.hpp"

namespace prym {

/// Dense matrix over a finite field; only the handful of exact operations the
/// rank and dual-space computations need.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldCtx ctx, int rows, int cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * cols, FieldElement::zero(ctx_)) {}

    static Matrix identity(const FieldCtx& ctx, int n);

    const FieldCtx& ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldElement& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const FieldElement& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool is_zero() const;

    // entrywise e -> e^{p^n}
    Matrix frobenius_entrywise(int n) const;

    int rank() const;
    FieldElement det() const;
    // basis of the right null space, as column vectors
    std::vector<std::vector<FieldElement>> nullspace() const;

    std::string str() const;

private:
    FieldCtx ctx_;
    int rows_ = 0, cols_ = 0;
    std::vector<FieldElement> a_;
};

} // namespace prym
