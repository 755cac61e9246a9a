#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "growthlab/lie/gaussian_rational.hpp"

namespace growthlab::lie {

/// Dense row-major matrix over the Gaussian rationals.
class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);
    /// Columns given as vectors of equal length.
    static ExactMatrix from_columns(const std::vector<std::vector<GQ>>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    GQ& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const GQ& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<GQ> column(std::size_t j) const;
    ExactMatrix adjoint() const;
    bool is_zero() const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

    /// [A | B] and [A ; B].
    static ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b);
    static ExactMatrix vcat(const ExactMatrix& a, const ExactMatrix& b);

    /// Rank by fraction-free (Bareiss) elimination.
    std::size_t rank() const;
    /// Determinant by Bareiss elimination; throws unless square.
    GQ determinant() const;
    /// Reduced row echelon form and its pivot columns.
    ExactMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    /// Basis of the null space, one vector per free column.
    std::vector<std::vector<GQ>> nullspace() const;
    /// Some x with A x = b, or nullopt when b is outside the column space.
    std::optional<std::vector<GQ>> solve(const std::vector<GQ>& b) const;

    /// Positive definiteness of a Hermitian matrix by leading principal
    /// minors; false for non-Hermitian input.
    bool hermitian_positive_definite() const;
    bool is_hermitian() const;

    Eigen::MatrixXcd to_complex() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GQ> a_;
};

/// Indices of a maximal linearly independent subset of the given vectors,
/// scanning in order.
std::vector<std::size_t> independent_subset(const std::vector<std::vector<GQ>>& vectors, std::size_t dim);

} // namespace growthlab::lie
