#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/growth/integrals.hpp"

namespace growthlab::growth {

enum class Classification { subexponential, exponential, inconclusive };
std::string to_string(Classification c);

struct GrowthProfile {
    std::string model;
    std::vector<double> t;
    std::vector<double> vol;
    std::vector<double> sphere_ball;
    std::optional<std::vector<double>> sphere_direct;
    std::optional<std::vector<double>> area;  // A(S_t), direct path only
    /// 2∫_0^t A(S_s)^2 / sphere(s) · s ds by 4-point Gauss–Legendre on
    /// [0, t_1] and on every grid interval; direct path only.
    std::optional<std::vector<double>> hoelder_integral;
    std::vector<double> ratio_i;               // sphere_ball / (t vol)
    /// Relative tolerance of the two-path comparison per row: 1% for product
    /// rules, widened to four combined standard errors under Monte Carlo.
    std::vector<double> two_path_tolerance;
    std::vector<double> F;
    QuadratureSpec quad;
};

struct ProfileOptions {
    bool direct = true;  // sphere_direct and area when the model is PD
};

/// Evaluates every integral on the grid; sorts nothing, so the grid must be
/// strictly increasing and positive.
GrowthProfile build_profile(const PullbackModel& model, const std::vector<double>& grid,
                            const QuadratureSpec& quad, const ProfileOptions& options = {});

std::vector<double> linear_grid(double t_min, double t_max, int steps);

/// Cumulative ∫_0^b vol dt. Each interval uses the power law through its two
/// endpoint values (exact for monomials), falling back to the trapezoid rule
/// when a value is not positive; F(t_1) = vol(t_1) t_1 / (k+1) with k the
/// local exponent at the first interval.
std::vector<double> cumulative_integral(const std::vector<double>& t, const std::vector<double>& v);
GrowthProfile cumulative_F(GrowthProfile profile);

struct ConditionI {
    bool holds = false;
    double C1 = 0.0;
    double trend_slope = 0.0;
    double r0 = 1.0;
    std::size_t points = 0;
};

/// Tail window t >= r0 (at least 8 points): C1 = max ratio_i, slope of
/// log ratio_i against log t, holds iff slope <= 0.1.
ConditionI check_condition_i(const GrowthProfile& profile, double r0 = 1.0);

struct ConditionII {
    Classification classification = Classification::inconclusive;
    /// Exponential rate from log F = λ b + k log b + c on the tail window.
    double lambda = 0.0;
    double power = 0.0;  // k
    /// Plain least-squares slope of log F against b on the same window.
    double raw_slope = 0.0;
    bool log_f_over_b_decreasing = false;
    double window_start = 0.0;
    double window_end = 0.0;
    std::size_t points = 0;
    /// Witness C with C > 1/λ when the classification is exponential.
    std::optional<double> witness_C;

    std::optional<bool> holds() const;
};

/// Tail window [0.6 t_K, t_K] with at least 6 points. Exponential needs
/// λ >= 0.2 and λ times the window length >= 1; subexponential needs λ < 0.05
/// and log F / b decreasing; anything else is inconclusive.
ConditionII classify_condition_ii(const GrowthProfile& profile);

/// Ordinary least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

struct FiniteOrder {
    double order = 0.0;
    double residual = 0.0;  // RMS of the log-log fit residuals
    bool finite = false;
    double window_start = 0.0;
    double window_end = 0.0;
};

/// Fit of log vol against log t on [t_K/4, t_K]; finite when residual <= 0.05.
FiniteOrder finite_order_fit(const GrowthProfile& profile);

struct HoelderReport {
    std::vector<double> margin;  // (Vol − RHS) / Vol at each grid point
    double worst_margin = 0.0;
    bool holds = false;
    double epsilon = 1e-3;
};

/// Vol(B_r) >= 2∫_0^r A(S_t)^2 / sphere(t) · t dt − ε Vol on the grid. Uses
/// hoelder_integral when present, else integrates the grid series.
HoelderReport hoelder_chain_check(const GrowthProfile& profile, double epsilon = 1e-3);

struct InvariantViolation {
    std::string name;
    std::string detail;
};

/// vol >= 0 and nondecreasing (1e-3 relative), F nondecreasing and convex
/// (second differences >= −1e-6 F), two-path agreement within
/// two_path_tolerance.
std::vector<InvariantViolation> check_invariants(const GrowthProfile& profile);

struct ConvergenceReport {
    double t = 0.0;
    double base = 0.0;
    double refined = 0.0;
    double relative_change = 0.0;
    /// Tolerance actually applied: the requested one, widened under Monte
    /// Carlo to four combined standard errors.
    double tolerance = 0.0;
    bool converged = false;
};

/// Recomputes vol at t with doubled orders (GL) or 4x samples (MC).
ConvergenceReport check_convergence(const PullbackModel& model, double t, const QuadratureSpec& quad,
                                    double tolerance = 1e-3);

} // namespace growthlab::growth
