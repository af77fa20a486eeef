#include "prym/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace prym {

Matrix Matrix::identity(const FieldCtx& ctx, int n) {
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(ctx);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(ctx_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const FieldElement& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
        }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (!(a_[i] == o.a_[i])) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

Matrix Matrix::frobenius_entrywise(int n) const {
    Matrix r = *this;
    for (auto& e : r.a_) e = frobenius_iter(e, n);
    return r;
}

int Matrix::rank() const {
    Matrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows_; ++i)
            if (!m.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        FieldElement inv = m.at(rank, col).inverse();
        for (int j = col; j < cols_; ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            FieldElement f = m.at(i, col);
            for (int j = col; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

FieldElement Matrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    Matrix m = *this;
    FieldElement d = FieldElement::one(ctx_);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int i = col; i < rows_; ++i)
            if (!m.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) return FieldElement::zero(ctx_);
        if (pivot != col) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            d = -d;
        }
        d = d * m.at(col, col);
        FieldElement inv = m.at(col, col).inverse();
        for (int i = col + 1; i < rows_; ++i) {
            if (m.at(i, col).is_zero()) continue;
            FieldElement f = m.at(i, col) * inv;
            for (int j = col; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
        }
    }
    return d;
}

std::vector<std::vector<FieldElement>> Matrix::nullspace() const {
    Matrix m = *this;
    std::vector<int> pivot_col; // pivot column of each eliminated row
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows_; ++i)
            if (!m.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        FieldElement inv = m.at(rank, col).inverse();
        for (int j = col; j < cols_; ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            FieldElement f = m.at(i, col);
            for (int j = col; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> v(cols_, FieldElement::zero(ctx_));
        v[free] = FieldElement::one(ctx_);
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace prym
