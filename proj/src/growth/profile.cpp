#include "growthlab/growth/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace growthlab::growth {

std::string to_string(Classification c)
{
    switch (c) {
    case Classification::subexponential:
        return "subexponential";
    case Classification::exponential:
        return "exponential";
    case Classification::inconclusive:
        break;
    }
    return "inconclusive";
}

namespace {

void require_increasing(const std::vector<double>& t)
{
    if (t.empty())
        throw std::invalid_argument("empty radius grid");
    if (!(t.front() > 0.0))
        throw std::invalid_argument("radius grid must be positive");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1]))
            throw std::invalid_argument("radius grid must be strictly increasing");
}

// Power-law integral of v over [a, b] through (a, va), (b, vb).
double power_law_interval(double a, double b, double va, double vb)
{
    if (!(va > 0.0) || !(vb > 0.0))
        return 0.5 * (va + vb) * (b - a);
    const double r = b / a;
    const double p = std::log(vb / va) / std::log(r);
    if (std::abs(p + 1.0) < 1e-12)
        return va * a * std::log(r);
    return va * a * std::expm1((p + 1.0) * std::log(r)) / (p + 1.0);
}

std::vector<std::size_t> window_indices(const std::vector<double>& t, double from)
{
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= from - 1e-12 * std::abs(from))
            idx.push_back(k);
    return idx;
}

} // namespace

std::vector<double> linear_grid(double t_min, double t_max, int steps)
{
    if (steps < 2)
        throw std::invalid_argument("grid needs at least two points");
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw std::invalid_argument("grid needs 0 < t_min < t_max");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k)
        g[k] = t_min + (t_max - t_min) * k / (steps - 1);
    g.back() = t_max;
    return g;
}

GrowthProfile build_profile(const PullbackModel& model, const std::vector<double>& grid,
                            const QuadratureSpec& quad, const ProfileOptions& options)
{
    require_increasing(grid);
    if (model.radius_cap && grid.back() > *model.radius_cap)
        throw std::invalid_argument("radius grid exceeds the cap of model " + model.name);
    const GrowthIntegrator integrator(model, quad);
    GrowthProfile p;
    p.model = model.name;
    p.quad = quad;
    p.t = grid;
    const bool direct = options.direct && model.pd_everywhere;
    if (direct) {
        p.sphere_direct.emplace();
        p.area.emplace();
        p.hoelder_integral.emplace();
    }
    std::vector<double> gx, gw;
    gauss_legendre(4, 0.0, 1.0, gx, gw);
    double hoelder = 0.0;
    double previous = 0.0;
    for (double t : grid) {
        const BallIntegrals b = integrator.ball(t);
        p.vol.push_back(b.vol);
        p.sphere_ball.push_back(b.sphere_ball);
        p.ratio_i.push_back(b.sphere_ball / (t * b.vol));
        if (direct) {
            const SphereIntegrals s = integrator.sphere(t);
            p.sphere_direct->push_back(s.sphere_direct);
            p.area->push_back(s.area);
            const double se = std::hypot(b.sphere_ball_stderr, s.sphere_direct_stderr) / std::abs(b.sphere_ball);
            p.two_path_tolerance.push_back(std::max(1e-2, 4.0 * se));
            for (std::size_t i = 0; i < gx.size(); ++i) {
                const double u = previous + (t - previous) * gx[i];
                const SphereIntegrals su = integrator.sphere(u);
                hoelder += (t - previous) * gw[i] * 2.0 * u * su.area * su.area / su.sphere_direct;
            }
            p.hoelder_integral->push_back(hoelder);
        }
        previous = t;
    }
    return cumulative_F(std::move(p));
}

std::vector<double> cumulative_integral(const std::vector<double>& t, const std::vector<double>& v)
{
    require_increasing(t);
    if (v.size() != t.size())
        throw std::invalid_argument("series length does not match the grid");
    std::vector<double> out(t.size());
    double seed = 0.5 * v[0] * t[0];
    if (t.size() > 1 && v[0] > 0.0 && v[1] > 0.0) {
        const double k = std::log(v[1] / v[0]) / std::log(t[1] / t[0]);
        if (k > -1.0)
            seed = v[0] * t[0] / (k + 1.0);
    }
    out[0] = seed;
    for (std::size_t k = 1; k < t.size(); ++k)
        out[k] = out[k - 1] + power_law_interval(t[k - 1], t[k], v[k - 1], v[k]);
    return out;
}

GrowthProfile cumulative_F(GrowthProfile profile)
{
    if (profile.vol.size() != profile.t.size())
        throw std::invalid_argument("vol series not populated");
    profile.F = cumulative_integral(profile.t, profile.vol);
    return profile;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    return sxy / sxx;
}

ConditionI check_condition_i(const GrowthProfile& profile, double r0)
{
    const auto idx = window_indices(profile.t, r0);
    if (idx.size() < 8)
        throw std::invalid_argument("condition (i) needs at least 8 grid points beyond r0");
    ConditionI out;
    out.r0 = r0;
    out.points = idx.size();
    std::vector<double> lx, ly;
    for (std::size_t k : idx) {
        const double r = profile.ratio_i[k];
        if (!(r > 0.0))
            throw std::domain_error("ratio_i must be positive for the trend fit");
        out.C1 = std::max(out.C1, r);
        lx.push_back(std::log(profile.t[k]));
        ly.push_back(std::log(r));
    }
    out.trend_slope = ls_slope(lx, ly);
    out.holds = out.trend_slope <= 0.1;
    return out;
}

std::optional<bool> ConditionII::holds() const
{
    switch (classification) {
    case Classification::subexponential:
        return true;
    case Classification::exponential:
        return false;
    case Classification::inconclusive:
        break;
    }
    return std::nullopt;
}

ConditionII classify_condition_ii(const GrowthProfile& profile)
{
    if (profile.F.size() != profile.t.size())
        throw std::invalid_argument("F not populated");
    const double tk = profile.t.back();
    const auto idx = window_indices(profile.t, 0.6 * tk);
    if (idx.size() < 6)
        throw std::invalid_argument("condition (ii) needs at least 6 points in [0.6 t_K, t_K]");
    ConditionII out;
    out.window_start = profile.t[idx.front()];
    out.window_end = tk;
    out.points = idx.size();

    std::vector<double> b, y;
    for (std::size_t k : idx) {
        if (!(profile.F[k] > 0.0))
            throw std::domain_error("F must be positive on the tail window");
        b.push_back(profile.t[k]);
        y.push_back(std::log(profile.F[k]));
    }
    out.raw_slope = ls_slope(b, y);

    const Eigen::Index n = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        design(k, 0) = b[k];
        design(k, 1) = std::log(b[k]);
        design(k, 2) = 1.0;
        rhs(k) = y[k];
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
    out.lambda = coef(0);
    out.power = coef(1);

    out.log_f_over_b_decreasing = true;
    for (std::size_t k = 1; k < b.size(); ++k)
        if (y[k] / b[k] >= y[k - 1] / b[k - 1])
            out.log_f_over_b_decreasing = false;

    if (out.lambda >= 0.2 && out.lambda * (out.window_end - out.window_start) >= 1.0) {
        out.classification = Classification::exponential;
        out.witness_C = out.lambda > 1.0 ? 1.0 : 2.0 / out.lambda;
    } else if (out.lambda < 0.05 && out.log_f_over_b_decreasing) {
        out.classification = Classification::subexponential;
    }
    return out;
}

FiniteOrder finite_order_fit(const GrowthProfile& profile)
{
    if (profile.t.empty() || profile.t.back() / profile.t.front() < 4.0)
        throw std::invalid_argument("finite-order fit needs t_K / t_1 >= 4");
    const double tk = profile.t.back();
    const auto idx = window_indices(profile.t, tk / 4.0);
    std::vector<double> lx, ly;
    for (std::size_t k : idx) {
        if (!(profile.vol[k] > 0.0))
            throw std::domain_error("vol must be positive for the finite-order fit");
        lx.push_back(std::log(profile.t[k]));
        ly.push_back(std::log(profile.vol[k]));
    }
    FiniteOrder out;
    out.window_start = profile.t[idx.front()];
    out.window_end = tk;
    if (lx.size() < 2)
        throw std::invalid_argument("finite-order fit needs at least two points in [t_K/4, t_K]");
    out.order = ls_slope(lx, ly);
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double ss = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        const double r = ly[k] - (my + out.order * (lx[k] - mx));
        ss += r * r;
    }
    out.residual = std::sqrt(ss / lx.size());
    out.finite = out.residual <= 0.05;
    return out;
}

HoelderReport hoelder_chain_check(const GrowthProfile& profile, double epsilon)
{
    if (!profile.area || !profile.sphere_direct)
        throw std::invalid_argument("Hoelder chain check needs the direct sphere path");
    std::vector<double> g(profile.t.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double a = (*profile.area)[k];
        g[k] = 2.0 * profile.t[k] * a * a / (*profile.sphere_direct)[k];
    }
    const std::vector<double> rhs =
        profile.hoelder_integral ? *profile.hoelder_integral : cumulative_integral(profile.t, g);
    HoelderReport out;
    out.epsilon = epsilon;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double m = (profile.vol[k] - rhs[k]) / profile.vol[k];
        out.margin.push_back(m);
        out.worst_margin = std::min(out.worst_margin, m);
    }
    out.holds = out.worst_margin >= -epsilon;
    return out;
}

std::vector<InvariantViolation> check_invariants(const GrowthProfile& p)
{
    std::vector<InvariantViolation> out;
    auto report = [&out](std::string name, std::size_t k, double t) {
        std::ostringstream os;
        os << "at t = " << t << " (row " << k + 1 << ")";
        out.push_back({std::move(name), os.str()});
    };
    for (std::size_t k = 0; k < p.t.size(); ++k) {
        if (!std::isfinite(p.vol[k]) || p.vol[k] < 0.0)
            report("vol nonnegative", k, p.t[k]);
        if (k > 0 && p.vol[k] < p.vol[k - 1] * (1.0 - 1e-3))
            report("vol nondecreasing", k, p.t[k]);
        if (k > 0 && p.F[k] < p.F[k - 1])
            report("F nondecreasing", k, p.t[k]);
        if (k > 0 && k + 1 < p.t.size()) {
            const double s0 = (p.F[k] - p.F[k - 1]) / (p.t[k] - p.t[k - 1]);
            const double s1 = (p.F[k + 1] - p.F[k]) / (p.t[k + 1] - p.t[k]);
            const double h = 0.5 * (p.t[k + 1] - p.t[k - 1]);
            if ((s1 - s0) * h < -1e-6 * p.F[k])
                report("F convex", k, p.t[k]);
        }
        if (p.sphere_direct) {
            const double d = (*p.sphere_direct)[k];
            const double tol = k < p.two_path_tolerance.size() ? p.two_path_tolerance[k] : 1e-2;
            if (std::abs(d - p.sphere_ball[k]) > tol * std::abs(p.sphere_ball[k]))
                report("sphere_direct agrees with sphere_ball", k, p.t[k]);
        }
    }
    return out;
}

ConvergenceReport check_convergence(const PullbackModel& model, double t, const QuadratureSpec& quad,
                                    double tolerance)
{
    ConvergenceReport out;
    out.t = t;
    const BallIntegrals base = GrowthIntegrator(model, quad).ball(t);
    const BallIntegrals refined = GrowthIntegrator(model, quad.refined()).ball(t);
    out.base = base.vol;
    out.refined = refined.vol;
    out.relative_change = std::abs(out.refined - out.base) / std::abs(out.refined);
    out.tolerance = std::max(tolerance, 4.0 * std::hypot(base.vol_stderr, refined.vol_stderr) / std::abs(out.refined));
    out.converged = out.relative_change < out.tolerance;
    return out;
}

} // namespace growthlab::growth
