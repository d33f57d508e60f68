#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/rational.hpp"

namespace resolvekit::exactmath {

/// Dense row-major matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InvalidArgument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw InvalidArgument("ragged matrix rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rat>;
using RatVector = std::vector<Rat>;
using IntVector = std::vector<std::int64_t>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rat(m(r, c));
    return out;
}

/// M' = ((M, 1), (1^T, 0)): M bordered by an all-ones column and row with a zero corner.
inline IntMatrix bordered(const IntMatrix& m) {
    IntMatrix out(m.rows() + 1, m.cols() + 1, 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    out(m.rows(), m.cols()) = 0;
    return out;
}

/// Matrix-vector product over int64 with overflow checking.
inline IntVector multiply(const IntMatrix& m, std::span<const std::int64_t> v) {
    if (v.size() != m.cols()) throw InvalidArgument("matrix-vector dimension mismatch");
    IntVector out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::int64_t term;
            if (__builtin_mul_overflow(m(r, c), v[c], &term) || __builtin_add_overflow(acc, term, &acc))
                throw ResourceError("integer overflow in matrix-vector product");
        }
        out[r] = acc;
    }
    return out;
}

inline RatVector multiply(const RatMatrix& m, std::span<const Rat> v) {
    if (v.size() != m.cols()) throw InvalidArgument("matrix-vector dimension mismatch");
    RatVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Rat acc;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_zero() && !v[c].is_zero()) acc += m(r, c) * v[c];
        }
        out[r] = std::move(acc);
    }
    return out;
}

}  // namespace resolvekit::exactmath
