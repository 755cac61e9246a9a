#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "growthlab/growth/integrals.hpp"

namespace growthlab::growth {

using forms::CMatrix;
using forms::Complex;
using forms::CVector;

namespace {

CVector point_of(int m, const double* x, double scale)
{
    CVector z(m);
    for (int j = 0; j < m; ++j)
        z(j) = Complex(scale * x[2 * j], scale * x[2 * j + 1]);
    return z;
}

void require_integrable(const PullbackModel& model)
{
    if (!model.closed() && !model.metric_derivative)
        throw std::logic_error("model " + model.name + " is not closed and supplies no derivative evaluator");
}

template <class Eval>
void evaluate_all(std::size_t n, std::vector<double>& a, std::vector<double>& b, Eval&& eval)
{
    a.resize(n);
    b.resize(n);
    std::atomic<bool> failed{false};
    std::string message;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        if (failed.load(std::memory_order_relaxed))
            continue;
        try {
            eval(i, a[i], b[i]);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                if (!failed.exchange(true))
                    message = e.what();
            }
        }
    }
    if (failed)
        throw std::runtime_error("integrand evaluation failed: " + message);
}

struct Sums {
    double value = 0.0;
    double stderr_ = 0.0;
};

// Σ v_i and, for equal-weight Monte Carlo rules, the standard error
// sqrt(N · sample variance of v).
Sums summarize(const std::vector<double>& v, bool monte_carlo)
{
    Sums out;
    out.value = pairwise_sum(v.data(), v.size());
    if (monte_carlo && v.size() > 1) {
        std::vector<double> sq(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            sq[i] = v[i] * v[i];
        const double n = static_cast<double>(v.size());
        const double mean = out.value / n;
        const double var = std::max(0.0, (pairwise_sum(sq.data(), sq.size()) / n - mean * mean) * n / (n - 1.0));
        out.stderr_ = std::sqrt(n * var);
    }
    return out;
}

} // namespace

namespace kernels {

namespace {

template <class Mat>
PointTerms ball_terms_impl(const PullbackModel& model, const CVector& z)
{
    const int m = static_cast<int>(z.size());
    const Mat h = model.metric(z);
    Eigen::PartialPivLU<Mat> lu(h);
    const Mat inv = lu.inverse();
    PointTerms out;
    out.density = std::ldexp(lu.determinant().real(), m);
    const double lambda = inv.trace().real();
    double dterm = 0.0;
    if (!model.closed()) {
        const auto dh = (*model.metric_derivative)(z);
        // i(∂̄τ−∂τ) ∧ d(f*ω_{m−1}) = 2 Re(T) f*ω_m with
        // T = −Σ_{l,p} z_p [ (h^{-1})_{pl} tr(h^{-1} ∂_l h) − (h^{-1} ∂_l h h^{-1})_{pl} ]
        Complex t1{};
        for (int l = 0; l < m; ++l) {
            const Mat hd = inv * Mat(dh[l]);
            const Complex tr = hd.trace();
            const Mat hdh = hd * inv;
            for (int p = 0; p < m; ++p)
                t1 -= z(p) * (inv(p, l) * tr - hdh(p, l));
        }
        dterm = 2.0 * t1.real() * out.density;
    }
    out.sphere_ball = 2.0 * lambda * out.density - dterm;
    return out;
}

} // namespace

PointTerms ball_terms(const PullbackModel& model, const double* x)
{
    const int m = model.domain_dim;
    const CVector z = point_of(m, x, 1.0);
    if (m == 2)
        return ball_terms_impl<Eigen::Matrix2cd>(model, z);
    return ball_terms_impl<CMatrix>(model, z);
}

SphereIntegrals sphere_terms(const PullbackModel& model, const double* x, double t)
{
    const int m = model.domain_dim;
    const CVector z = point_of(m, x, 1.0);
    const CMatrix h = model.metric(z);
    Eigen::LLT<CMatrix> llt(h);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric of model " + model.name + " is not positive definite on the sphere");
    const CMatrix l = llt.matrixL();
    const double det = std::pow(l.diagonal().real().prod(), 2);
    const double density = std::ldexp(det, m);
    // z^T h^{-1} z̄ = |L^{-1} z̄|^2
    const CVector y = llt.matrixL().solve(z.conjugate());
    const double dtau2 = 2.0 * y.squaredNorm();
    return {dtau2 * density / (2.0 * t), std::sqrt(dtau2) * density / (2.0 * t)};
}

BallIntegrals ball(const PullbackModel& model, const UnitRules& rules, double t)
{
    require_integrable(model);
    const PointRule& r = rules.ball;
    const int d = 2 * r.m;
    std::vector<double> vol, sph;
    evaluate_all(r.size(), vol, sph, [&](std::size_t i, double& a, double& b) {
        double x[2 * forms::kMaxDim];
        const double* u = r.point(i);
        for (int k = 0; k < d; ++k)
            x[k] = t * u[k];
        const PointTerms p = ball_terms(model, x);
        a = r.weights[i] * p.density;
        b = r.weights[i] * p.sphere_ball;
    });
    const double scale = std::pow(t, d);
    const bool mc = rules.spec.method == QuadMethod::monte_carlo;
    const Sums v = summarize(vol, mc);
    const Sums s = summarize(sph, mc);
    return {scale * v.value, scale * s.value, scale * v.stderr_, scale * s.stderr_};
}

SphereIntegrals sphere(const PullbackModel& model, const UnitRules& rules, double t)
{
    if (!model.pd_everywhere)
        throw std::invalid_argument("direct sphere integral needs a positive-definite model");
    const PointRule& r = rules.sphere;
    const int d = 2 * r.m;
    std::vector<double> direct, area;
    evaluate_all(r.size(), direct, area, [&](std::size_t i, double& a, double& b) {
        double x[2 * forms::kMaxDim];
        const double* u = r.point(i);
        for (int k = 0; k < d; ++k)
            x[k] = t * u[k];
        const SphereIntegrals s = sphere_terms(model, x, t);
        a = r.weights[i] * s.sphere_direct;
        b = r.weights[i] * s.area;
    });
    const double scale = std::pow(t, d - 1);
    const Sums s = summarize(direct, rules.spec.method == QuadMethod::monte_carlo);
    return {scale * s.value, scale * pairwise_sum(area.data(), area.size()), scale * s.stderr_};
}

} // namespace kernels

GrowthIntegrator::GrowthIntegrator(PullbackModel model, const QuadratureSpec& spec)
    : model_(std::move(model)), rules_(make_unit_rules(model_.domain_dim, spec))
{
}

BallIntegrals GrowthIntegrator::ball(double t) const
{
    if (!(t > 0.0))
        throw std::invalid_argument("radius must be positive");
    return kernels::ball(model_, rules_, t);
}

SphereIntegrals GrowthIntegrator::sphere(double t) const
{
    if (!(t > 0.0))
        throw std::invalid_argument("radius must be positive");
    return kernels::sphere(model_, rules_, t);
}

double vol_ball(const PullbackModel& model, double t, const QuadratureSpec& quad)
{
    return GrowthIntegrator(model, quad).ball(t).vol;
}

double sphere_integral_ball(const PullbackModel& model, double t, const QuadratureSpec& quad)
{
    return GrowthIntegrator(model, quad).ball(t).sphere_ball;
}

double sphere_integral_direct(const PullbackModel& model, double t, const QuadratureSpec& quad)
{
    return GrowthIntegrator(model, quad).sphere(t).sphere_direct;
}

} // namespace growthlab::growth
