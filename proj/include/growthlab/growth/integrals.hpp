#pragma once

// Ball and sphere integrals of a pullback metric.
//
//   vol(t)           = ∫_{B_t} f*ω_m
//   sphere_ball(t)   = 2∫_{B_t} Λ(i∂∂̄τ) f*ω_m − ∫_{B_t} i(∂̄τ−∂τ) ∧ d(f*ω_{m−1})
//   sphere_direct(t) = ∫_{S_t} |dτ| dσ,   area(t) = ∫_{S_t} dσ
//
// The kernels evaluate closed-form integrands in parallel; the reference
// namespace evaluates the same integrands through the generic form algebra,
// serially, and exists for testing and benchmarking.

#include "growthlab/gallery/model.hpp"
#include "growthlab/growth/quadrature.hpp"

namespace growthlab::growth {

using gallery::PullbackModel;

/// Standard errors are sample estimates for Monte Carlo rules and zero for
/// product rules.
struct BallIntegrals {
    double vol = 0.0;
    double sphere_ball = 0.0;
    double vol_stderr = 0.0;
    double sphere_ball_stderr = 0.0;
};

struct SphereIntegrals {
    double sphere_direct = 0.0;
    double area = 0.0;
    double sphere_direct_stderr = 0.0;
};

/// Caches the unit rules for one model and quadrature spec.
class GrowthIntegrator {
  public:
    GrowthIntegrator(PullbackModel model, const QuadratureSpec& spec);

    /// Throws std::invalid_argument for t <= 0 and std::logic_error when the
    /// model is not closed and has no derivative evaluator.
    BallIntegrals ball(double t) const;
    /// Throws std::invalid_argument when the model is not positive definite.
    SphereIntegrals sphere(double t) const;

    const PullbackModel& model() const { return model_; }
    const UnitRules& rules() const { return rules_; }

  private:
    PullbackModel model_;
    UnitRules rules_;
};

double vol_ball(const PullbackModel& model, double t, const QuadratureSpec& quad);
double sphere_integral_ball(const PullbackModel& model, double t, const QuadratureSpec& quad);
double sphere_integral_direct(const PullbackModel& model, double t, const QuadratureSpec& quad);

namespace kernels {

struct PointTerms {
    double density = 0.0;      // 2^m det h
    double sphere_ball = 0.0;  // 2Λ(I)·density minus the d-term density
};

/// Closed-form integrands at one point z (given as 2m real coordinates).
PointTerms ball_terms(const PullbackModel& model, const double* x);
/// |dτ|²·density / (2t) and |dτ|·density / (2t) at a point of S_t.
SphereIntegrals sphere_terms(const PullbackModel& model, const double* x, double t);

BallIntegrals ball(const PullbackModel& model, const UnitRules& rules, double t);
SphereIntegrals sphere(const PullbackModel& model, const UnitRules& rules, double t);

} // namespace kernels

namespace reference {

kernels::PointTerms ball_terms(const PullbackModel& model, const double* x);
SphereIntegrals sphere_terms(const PullbackModel& model, const double* x, double t);

BallIntegrals ball(const PullbackModel& model, const UnitRules& rules, double t);
SphereIntegrals sphere(const PullbackModel& model, const UnitRules& rules, double t);

} // namespace reference

} // namespace growthlab::growth
