#pragma once

// Left-invariant forms ξ_I ∧ ξ̄_J with exact coefficients, and the
// Chevalley–Eilenberg bicomplex (∂, ∂̄) they span.

#include <cstdint>
#include <map>
#include <vector>

#include "growthlab/lie/algebra.hpp"
#include "growthlab/lie/exact_matrix.hpp"

namespace growthlab::lie {

/// Bit k < n is ξ^{k+1}, bit n + k is ξ̄^{k+1}; monomials are ordered by bit.
using Mask = std::uint32_t;

class InvariantForm {
  public:
    explicit InvariantForm(int n = 0) : n_(n) {}

    static InvariantForm constant(int n, const GQ& c);
    static InvariantForm generator(int n, int k);      // ξ^{k+1}
    static InvariantForm generator_bar(int n, int k);  // ξ̄^{k+1}
    /// i Σ h_{jk} ξ^j ∧ ξ̄^k
    static InvariantForm hermitian(const ExactMatrix& h);

    int dim() const { return n_; }
    const std::map<Mask, GQ>& terms() const { return terms_; }
    GQ coefficient(Mask m) const;
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero form and for mixed degrees.
    int degree() const;

    void add_term(Mask m, const GQ& c);
    InvariantForm bidegree_component(int p, int q) const;
    InvariantForm conj() const;
    bool is_real() const { return conj() == *this; }

    InvariantForm& operator+=(const InvariantForm& o);
    InvariantForm& operator-=(const InvariantForm& o);
    friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
    friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
    friend InvariantForm operator-(const InvariantForm& a);
    friend InvariantForm operator*(const GQ& c, const InvariantForm& a);
    friend InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);
    friend bool operator==(const InvariantForm& a, const InvariantForm& b)
    {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

  private:
    int n_;
    std::map<Mask, GQ> terms_;
};

InvariantForm power(const InvariantForm& a, int p);
/// a + conj(a)
InvariantForm realify(const InvariantForm& a);
/// The standard diagonal metric (i/2) Σ ξ^k ∧ ξ̄^k.
InvariantForm standard_metric(int n);
/// Places a form of an n_a-dimensional factor into the direct sum of
/// dimension n, starting at covector `offset`.
InvariantForm embed(const InvariantForm& a, int n, int offset);

int holomorphic_degree(Mask m, int n);
int antiholomorphic_degree(Mask m, int n);

InvariantForm exterior_d(const ComplexLieAlgebra& g, const InvariantForm& a);
InvariantForm del(const ComplexLieAlgebra& g, const InvariantForm& a);
InvariantForm del_bar(const ComplexLieAlgebra& g, const InvariantForm& a);

/// Thrown by InvariantComplex when d² ≠ 0.
class JacobiError : public std::runtime_error {
  public:
    explicit JacobiError(JacobiReport report) : std::runtime_error(report.message), report_(std::move(report)) {}
    const JacobiReport& report() const { return report_; }

  private:
    JacobiReport report_;
};

class InvariantComplex {
  public:
    /// Throws JacobiError when the structure equations violate d² = 0.
    explicit InvariantComplex(ComplexLieAlgebra algebra);

    const ComplexLieAlgebra& algebra() const { return algebra_; }
    int dim() const { return algebra_.dim(); }

    /// ξ_I ∧ ξ̄_J with |I| = p, |J| = q in lexicographic order of (I, J).
    const std::vector<Mask>& basis(int p, int q) const;
    /// All bidegrees of total degree k, p descending, each block lexicographic.
    std::vector<Mask> total_basis(int k) const;

    InvariantForm d(const InvariantForm& a) const { return exterior_d(algebra_, a); }
    InvariantForm del(const InvariantForm& a) const { return lie::del(algebra_, a); }
    InvariantForm del_bar(const InvariantForm& a) const { return lie::del_bar(algebra_, a); }

    /// dξ^k for every k.
    std::vector<InvariantForm> structure_equations() const;

    /// Columns are images of basis(p, q); rows index basis(p+1, q) resp. basis(p, q+1).
    ExactMatrix del_matrix(int p, int q) const;
    ExactMatrix del_bar_matrix(int p, int q) const;
    /// ∂∂̄ from (p, q) to (p+1, q+1).
    ExactMatrix del_del_bar_matrix(int p, int q) const;
    /// d on total degree k, in total_basis order.
    ExactMatrix d_matrix(int k) const;

    std::vector<GQ> coordinates(const InvariantForm& a, const std::vector<Mask>& basis) const;
    InvariantForm from_coordinates(const std::vector<GQ>& x, const std::vector<Mask>& basis) const;

    /// ∂² = 0, ∂̄² = 0 and ∂∂̄ + ∂̄∂ = 0 on every basis monomial.
    bool bicomplex_identities_hold() const;

    /// "alpha^beta^bar(gamma)"
    std::string label(Mask m) const;
    /// "1/2 alpha^bar(alpha) + ..." or "0"
    std::string to_string(const InvariantForm& a) const;

  private:
    ComplexLieAlgebra algebra_;
    std::vector<std::vector<Mask>> bases_;  // (n+1)^2 bidegrees
};

InvariantComplex build_complex(const ComplexLieAlgebra& algebra);

/// Real forms of degree k spanning the closed real forms over the rationals.
std::vector<InvariantForm> closed_real_forms(const InvariantComplex& cx, int k);

} // namespace growthlab::lie
