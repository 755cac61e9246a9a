#pragma once

// Exact witnesses on invariant forms: degenerate balanced potentials, power
// and product potentials, invariant Bott-Chern/Aeppli dimensions, the map P,
// and one-sided certificates for the Gauduchon cone.
//
// Positivity of an (n-1,n-1)-form Ω = Σ c_{jk} ξ_{ĵ} ∧ ξ̄_{k̂} (ĵ: all
// indices but j) is read from its associated Hermitian matrix
//   M_{jk} = (-1)^{j+k} c_{jk} / (i^{n-1} (-1)^{(n-1)(n-2)/2}),
// which for Ω = ω^{n-1}, ω = i Σ h_{jk} ξ^j ∧ ξ̄^k, equals (n-1)! adj(h)^T. The
// reference metric is the standard diagonal one.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "growthlab/lie/invariant_complex.hpp"

namespace growthlab::lie {

enum class CertificateKind { gauduchon_member, strongly_gauduchon, degenerate_balanced_witness, dk_member, hs_positive };
std::string to_string(CertificateKind k);

struct ConeCertificate {
    CertificateKind kind = CertificateKind::gauduchon_member;
    bool issued = false;
    std::string verdict;
    std::vector<std::pair<std::string, InvariantForm>> witnesses;
    /// "0" for identities verified exactly, a decimal bound otherwise.
    std::string residual = "0";
    /// λ_min / λ_max of the associated matrix where positivity is involved.
    std::optional<double> margin;
    std::vector<std::string> notes;

    const InvariantForm* witness(const std::string& name) const;
};

nlohmann::json to_json(const ConeCertificate& c, const InvariantComplex& cx);
/// Re-checks the stated identity or infeasibility from the stored data.
bool reverify(const ConeCertificate& c, const InvariantComplex& cx);

/// h with ω^{1,1} = i Σ h_{jk} ξ^j ∧ ξ̄^k.
ExactMatrix metric_matrix(const InvariantForm& omega);
ExactMatrix associated_matrix(const InvariantComplex& cx, const InvariantForm& big_omega);
/// λ_min and λ_max of a Hermitian matrix.
std::pair<double, double> eigen_range(const Eigen::MatrixXcd& m);

/// Exact solve of dΓ = ω^{n-1} over invariant (2n-3)-forms. Throws unless
/// ω is a real positive-definite (1,1)-form.
ConeCertificate degenerate_balanced_witness(const InvariantComplex& cx, const InvariantForm& omega);

struct PowerWitness {
    InvariantForm alpha;    // dβ
    InvariantForm witness;  // β ∧ (dβ)^{p-1}
    bool verified = false;  // d(witness) == α^p exactly
};

PowerWitness exact_power_witness(const InvariantComplex& cx, const InvariantForm& beta, int p);

struct FactorData {
    const InvariantComplex* complex = nullptr;
    InvariantForm omega;
    /// dΓ = ω^{n-1}; when absent ω must be closed.
    std::optional<InvariantForm> gamma;
};

struct ProductWitness {
    ComplexLieAlgebra algebra;
    ConeCertificate certificate;
    /// "binomial", "kaehler-factor" or "direct-solve".
    std::string variant;
};

/// Potential of ω^{N-1} for ω = ω₁ ⊕ ω₂ on the direct sum. Throws
/// std::invalid_argument when a factor has neither Γ nor dω = 0.
ProductWitness product_witness(const FactorData& a, const FactorData& b);

struct CohomologyDims {
    std::size_t bott_chern = 0;
    std::size_t aeppli = 0;
};

CohomologyDims cohomology_dims(const InvariantComplex& cx, int p, int q);

/// ker ∂∂̄ = (Im ∂ + Im ∂̄) ⊕ span(complement) on bidegree (p, q).
struct AeppliSpace {
    int p = 0, q = 0;
    std::vector<Mask> basis;
    std::size_t image_rank = 0;
    std::vector<std::vector<GQ>> complement;
    ExactMatrix combined;  // [image basis | complement]
};

AeppliSpace aeppli_space(const InvariantComplex& cx, int p, int q);

struct AeppliClass {
    int p = 0, q = 0;
    std::vector<GQ> coordinates;
    InvariantForm representative;

    bool operator==(const AeppliClass& o) const { return p == o.p && q == o.q && coordinates == o.coordinates; }
};

/// Throws std::invalid_argument when the representative is not ∂∂̄-closed.
AeppliClass aeppli_class(const InvariantComplex& cx, const AeppliSpace& space, const InvariantForm& rep);

/// {(α^{n-1})^{n-1,n-1}}_A. Throws std::invalid_argument unless α is a
/// closed real 2-form.
AeppliClass p_map(const InvariantComplex& cx, const InvariantForm& alpha);
AeppliClass p_map(const InvariantComplex& cx, const AeppliSpace& space, const InvariantForm& alpha);

/// Issued iff Ω is real, its associated matrix is positive definite and
/// ∂∂̄Ω = 0, all exactly.
ConeCertificate certify_gauduchon(const InvariantComplex& cx, const InvariantForm& big_omega);
/// ∂ω^{n-1} ∈ Im ∂̄, with the ∂̄-preimage as witness.
ConeCertificate certify_strongly_gauduchon(const InvariantComplex& cx, const InvariantForm& omega);
/// Throws std::invalid_argument unless ω̃ is a closed real 2-form.
ConeCertificate hs_positivity_check(const InvariantComplex& cx, const InvariantForm& omega_tilde);

/// Ω(x) = (α^{n-1})^{n-1,n-1} + ∂u + ∂̄ū with u = Σ_r (x_{2r} + i x_{2r+1}) e_r
/// over the (n-2, n-1) basis e_r, as associated matrices.
struct DkFamily {
    InvariantForm omega0;
    std::vector<Mask> u_basis;
    Eigen::MatrixXcd m0;
    std::vector<Eigen::MatrixXcd> generators;

    std::size_t parameters() const { return generators.size(); }
    Eigen::MatrixXcd at(const Eigen::VectorXd& x) const;
    double min_eigenvalue(const Eigen::VectorXd& x) const;
};

DkFamily dk_family(const InvariantComplex& cx, const InvariantForm& alpha);

struct DkSearchOptions {
    int iterations = 500;
    double tolerance = 1e-9;
    long max_denominator = 1000000;
};

struct DkSearchResult {
    ConeCertificate certificate;
    double optimum = 0.0;
    Eigen::VectorXd argmax;
    int iterations = 0;
};

/// Subgradient ascent on λ_min over the family with step 1/k; the best point
/// is rationalized and re-verified exactly. Throws unless α is closed.
DkSearchResult dk_membership_search(const InvariantComplex& cx, const InvariantForm& alpha,
                                    const DkSearchOptions& options = {});

} // namespace growthlab::lie
