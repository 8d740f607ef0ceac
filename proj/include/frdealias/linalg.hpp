#ifndef FRDEALIAS_LINALG_HPP
#define FRDEALIAS_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frdealias {

/// Small dense row-major matrix. Sizes here are O(p+1), so no attempt is
/// made at cache blocking or expression templates.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += a * o(k, j);
            }
        return r;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("Matrix apply: size mismatch");
        std::vector<double> y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    /// Inverse via LU with partial pivoting. Matrices here are tiny and
    /// well conditioned (Vandermonde of orthonormal bases at quadrature nodes).
    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix inverse: not square");
        const std::size_t n = rows_;
        Matrix a(*this);
        Matrix inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
            if (a(piv, col) == 0.0) throw std::runtime_error("Matrix inverse: singular");
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(col, j), a(piv, j));
                    std::swap(inv(col, j), inv(piv, j));
                }
            }
            const double d = a(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) /= d;
                inv(col, j) /= d;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                const double f = a(r, col);
                if (f == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    a(r, j) -= f * a(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace frdealias

#endif
