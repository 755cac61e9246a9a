#pragma once

// Pointwise complex exterior algebra on C^m with metric-dependent operators.
//
// Conventions: a (1,1)-form is ω = i Σ h_{jk} dz_j ∧ dz̄_k, so the Euclidean
// metric β = (1/2) Σ i dz_j ∧ dz̄_j has h = I/2 and β^m/m! is Lebesgue
// measure on R^{2m} (i dz ∧ dz̄ = 2 dx ∧ dy).

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "growthlab/forms/form.hpp"

namespace growthlab::forms {

using Complex = std::complex<double>;
using ExteriorForm = BasicForm<Complex>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class Definiteness { positive_definite, positive_semidefinite, indefinite, unknown };

std::string to_string(Definiteness d);

class HermitianForm {
  public:
    /// Throws std::invalid_argument unless h is square and Hermitian to 1e-12
    /// (relative to its largest entry).
    explicit HermitianForm(CMatrix h, Definiteness flag = Definiteness::unknown);

    int dim() const { return static_cast<int>(h_.rows()); }
    const CMatrix& matrix() const { return h_; }
    Definiteness definiteness() const { return flag_; }

    /// Eigenvalue-based classification with tolerance tol on the smallest
    /// eigenvalue; returns a copy carrying the flag.
    HermitianForm classified(double tol = 1e-12) const;
    double min_eigenvalue() const;

    /// The (1,1)-form i Σ h_{jk} dz_j ∧ dz̄_k.
    ExteriorForm to_form() const;

    HermitianForm scaled(double a) const { return HermitianForm(h_ * a, flag_); }

  private:
    CMatrix h_;
    Definiteness flag_;
};

HermitianForm euclidean(int m);

struct Density {
    double value = 0.0;
    int dim = 0;
};

inline Complex conj_scalar(const Complex& c) { return std::conj(c); }

inline ExteriorForm conj(const ExteriorForm& f)
{
    return f.conjugate([](const Complex& c) { return std::conj(c); });
}

ExteriorForm dz(int m, int j);
ExteriorForm dzbar(int m, int j);

/// ∂τ and ∂̄τ for τ = |z|^2 at the point z.
ExteriorForm del_tau(const CVector& z);
ExteriorForm delbar_tau(const CVector& z);

/// Matrix c of a pure (1,1)-form γ = i Σ c_{jk} dz_j ∧ dz̄_k.
CMatrix coefficient_matrix(const ExteriorForm& gamma);

/// Top-degree density relative to Lebesgue measure on R^{2m}.
Density top_density(const ExteriorForm& top, double imag_tolerance = 1e-12);

/// Hodge star of the Riemannian metric underlying g, extended C-linearly.
/// Computed in a g-orthonormal coframe obtained from the Cholesky factor of 2h.
ExteriorForm hodge_star(const ExteriorForm& v, const HermitianForm& g);

/// Pointwise norm of a 1-form with respect to g.
double covector_norm(const ExteriorForm& v, const HermitianForm& g);

/// Λ_g γ = tr(h_g^{-1} c_γ) for a (1,1)-form γ.
Complex trace_lambda(const ExteriorForm& gamma, const HermitianForm& g);

/// The volume form g^m / m!.
ExteriorForm volume_form(const HermitianForm& g);

} // namespace growthlab::forms
