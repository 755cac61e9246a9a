#pragma once

// Holomorphic maps f: C^m -> X (m = n - 1) represented by the pullback
// metric f*ω on the domain, together with the data needed to integrate it.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/forms/exterior.hpp"

namespace growthlab::gallery {

using forms::CMatrix;
using forms::Complex;
using forms::CVector;
using forms::ExteriorForm;
using forms::HermitianForm;

using MetricEvaluator = std::function<CMatrix(const CVector&)>;
/// Holomorphic partial derivatives ∂h/∂z_l, l = 1..m. The antiholomorphic
/// ones follow from Hermitian symmetry: ∂h/∂z̄_l = (∂h/∂z_l)^*.
using DerivativeEvaluator = std::function<std::vector<CMatrix>(const CVector&)>;

enum class DerivativeMode { analytic, finite_difference };

struct HolomorphicMapSpec {
    int domain_dim = 0;
    int target_dim = 0;  // number of complex ambient chart coordinates
    std::function<CVector(const CVector&)> evaluate;
    /// Rows are ∂f/∂z_j; only used in analytic mode.
    std::function<CMatrix(const CVector&)> jacobian;
    DerivativeMode mode = DerivativeMode::finite_difference;
};

struct PullbackModel {
    std::string name;
    int domain_dim = 0;
    int ambient_dim = 0;
    MetricEvaluator metric;
    /// Supplied for non-closed models; d(f*ω_{m-1}) is assembled from it.
    std::optional<DerivativeEvaluator> metric_derivative;
    /// f*ω declared closed, so d(f*ω_{m-1}) vanishes.
    bool closed_metric = false;
    bool pd_everywhere = false;
    std::string reference_notes;

    /// The map itself and the ambient metric in the target chart, used for
    /// the independent pullback paths.
    std::optional<HolomorphicMapSpec> map;
    std::optional<MetricEvaluator> ambient_metric;

    /// Largest radius the quadrature is allowed to reach (double-precision
    /// headroom for exponentially growing integrands).
    std::optional<double> radius_cap;

    HermitianForm metric_at(const CVector& z) const;
    bool closed() const { return closed_metric; }

    /// d(f*ω_{m-1}) at z; the zero form for closed models, nullopt when the
    /// model is neither closed nor carries a derivative evaluator.
    std::optional<ExteriorForm> d_lower_power_at(const CVector& z) const;

    /// Same map with the ambient metric multiplied by a > 0.
    PullbackModel scaled(double a) const;
};

struct ModelParams {
    int n = 3;
};

/// torus, iwasawa, nakamura, sl2c, fubini_study
PullbackModel gallery(const std::string& name, const ModelParams& params = {});
std::vector<std::string> gallery_names();

/// d ω for ω = i Σ h_{jk} dz_j ∧ dz̄_k given the holomorphic derivatives of h.
ExteriorForm exterior_derivative_of_metric(const std::vector<CMatrix>& dh);

// ---------------------------------------------------------------------------
// Pullback machinery

/// m×N matrix of ∂f_a/∂z_j. Fourth-order central differences with step
/// 1e-5·(1+|z|) on each real coordinate unless the spec is analytic.
CMatrix numeric_jacobian(const HolomorphicMapSpec& f, const CVector& z);

/// max |∂f/∂z̄_j| relative to max(1, max |∂f/∂z_j|), by finite differences.
double cauchy_riemann_residual(const HolomorphicMapSpec& f, const CVector& z);

/// (f*ω)_{jk} = Σ_{a,b} ω_{ab}(f(z)) J_{ja} conj(J_{kb}).
HermitianForm pullback_metric(const CMatrix& jacobian, const HermitianForm& ambient);

/// Coordinates of X ∈ sl(2,C) in the basis A = (i/2)(X+Y), B = (X-Y)/2,
/// C = (i/2)H dual to the coframe α, β, γ.
Eigen::Vector3cd sl2_frame_coordinates(const Eigen::Matrix2cd& x);

/// f*ω for f(z1,z2) = [[e^{z1}, z2], [0, e^{-z1}]] and ω = (i/2)Σ ξ∧ξ̄,
/// assembled from the left-invariant frame g^{-1} ∂g/∂z_j.
HermitianForm maurer_cartan_pullback(const CVector& z);

/// The two frame expansions g^{-1} ∂g/∂z_j (rows j) in coordinates (A, B, C).
Eigen::Matrix<Complex, 2, 3> maurer_cartan_frame(const CVector& z);

struct PsdReport {
    std::size_t samples = 0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double mean_min_eigenvalue = 0.0;
    std::size_t negative_count = 0;  // eigenvalues below -1e-10
    bool ok = true;
};

PsdReport psd_probe(const PullbackModel& model, std::size_t sample_count, double radius, std::uint64_t seed);

/// Uniform sample in the ball of C^m ≅ R^{2m}.
CVector sample_ball(int m, double radius, std::uint64_t seed, std::size_t index);

} // namespace growthlab::gallery
