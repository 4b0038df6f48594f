#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lhchi {

/// Small dense row-major matrix of doubles, 0-based.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_{rows}, cols_{cols}, data_(rows * cols, fill) {}

    [[nodiscard]] static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::vector<double> column(std::size_t j) const;

    [[nodiscard]] Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

[[nodiscard]] Matrix operator*(const Matrix& a, const Matrix& b);
[[nodiscard]] std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Largest absolute entrywise difference; matrices must agree in shape.
[[nodiscard]] double max_abs_diff(const Matrix& a, const Matrix& b);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Sweeps until the off-diagonal Frobenius norm drops below `tol`.
[[nodiscard]] std::vector<double> jacobi_eigenvalues(const Matrix& symmetric, double tol = 1e-12,
                                                     int max_sweeps = 100);

} // namespace lhchi
