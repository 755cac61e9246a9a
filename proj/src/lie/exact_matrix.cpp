#include "growthlab/lie/exact_matrix.hpp"

#include <stdexcept>

namespace growthlab::lie {

namespace {

// Bareiss elimination in place; returns the rank and leaves the last pivot
// (the determinant for a full-rank square matrix) in *det.
std::size_t bareiss(ExactMatrix& m, GQ* det)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    GQ prev = 1;
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = GQ();
        }
        prev = m(r, c);
        ++r;
    }
    if (det != nullptr)
        *det = sign > 0 ? prev : -prev;
    return r;
}

} // namespace

ExactMatrix ExactMatrix::identity(std::size_t n)
{
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<std::vector<GQ>>& cols, std::size_t rows)
{
    ExactMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

std::vector<GQ> ExactMatrix::column(std::size_t j) const
{
    std::vector<GQ> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

ExactMatrix ExactMatrix::adjoint() const
{
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j).conj();
    return t;
}

bool ExactMatrix::is_zero() const
{
    for (const GQ& x : a_)
        if (!x.is_zero())
            return false;
    return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    ExactMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const GQ& x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    c(i, j) += x * b(k, j);
        }
    return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    ExactMatrix c = a;
    for (std::size_t k = 0; k < c.a_.size(); ++k)
        c.a_[k] += b.a_[k];
    return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

ExactMatrix ExactMatrix::hcat(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.rows_ != b.rows_)
        throw std::invalid_argument("hcat row mismatch");
    ExactMatrix c(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j)
            c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j)
            c(i, a.cols_ + j) = b(i, j);
    }
    return c;
}

ExactMatrix ExactMatrix::vcat(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.cols_ != b.cols_)
        throw std::invalid_argument("vcat column mismatch");
    ExactMatrix c(a.rows_ + b.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) {
        for (std::size_t i = 0; i < a.rows_; ++i)
            c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            c(a.rows_ + i, j) = b(i, j);
    }
    return c;
}

std::size_t ExactMatrix::rank() const
{
    ExactMatrix m = *this;
    return bareiss(m, nullptr);
}

GQ ExactMatrix::determinant() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("determinant of a non-square matrix");
    if (rows_ == 0)
        return 1;
    ExactMatrix m = *this;
    GQ det;
    return bareiss(m, &det) == rows_ ? det : GQ();
}

ExactMatrix ExactMatrix::rref(std::vector<std::size_t>* pivots) const
{
    ExactMatrix m = *this;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && m(p, c).is_zero())
            ++p;
        if (p == rows_)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(m(p, j), m(r, j));
        const GQ inv = GQ(1) / m(r, c);
        for (std::size_t j = c; j < cols_; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const GQ f = m(i, c);
            for (std::size_t j = c; j < cols_; ++j)
                if (!m(r, j).is_zero())
                    m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots != nullptr)
        *pivots = std::move(piv);
    return m;
}

std::vector<std::vector<GQ>> ExactMatrix::nullspace() const
{
    std::vector<std::size_t> piv;
    const ExactMatrix r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv)
        is_pivot[c] = true;
    std::vector<std::vector<GQ>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<GQ> v(cols_);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k)
            v[piv[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<GQ>> ExactMatrix::solve(const std::vector<GQ>& b) const
{
    if (b.size() != rows_)
        throw std::invalid_argument("right-hand side length mismatch");
    ExactMatrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, cols_) = b[i];
    }
    std::vector<std::size_t> piv;
    const ExactMatrix r = aug.rref(&piv);
    if (!piv.empty() && piv.back() == cols_)
        return std::nullopt;
    std::vector<GQ> x(cols_);
    for (std::size_t k = 0; k < piv.size(); ++k)
        x[piv[k]] = r(k, cols_);
    return x;
}

bool ExactMatrix::is_hermitian() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i).conj()))
                return false;
    return true;
}

bool ExactMatrix::hermitian_positive_definite() const
{
    if (!is_hermitian())
        return false;
    for (std::size_t k = 1; k <= rows_; ++k) {
        ExactMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                minor(i, j) = (*this)(i, j);
        const GQ d = minor.determinant();
        if (!d.is_real() || sgn(d.re()) <= 0)
            return false;
    }
    return true;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const
{
    Eigen::MatrixXcd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(i, j).to_complex();
    return m;
}

std::vector<std::size_t> independent_subset(const std::vector<std::vector<GQ>>& vectors, std::size_t dim)
{
    std::vector<std::size_t> keep;
    std::vector<std::vector<GQ>> chosen;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        chosen.push_back(vectors[k]);
        const std::size_t r = ExactMatrix::from_columns(chosen, dim).rank();
        if (r > rank) {
            rank = r;
            keep.push_back(k);
        } else {
            chosen.pop_back();
        }
        if (rank == dim)
            break;
    }
    return keep;
}

} // namespace growthlab::lie
