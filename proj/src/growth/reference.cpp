#include <cmath>
#include <stdexcept>

#include "growthlab/growth/integrals.hpp"

namespace growthlab::growth::reference {

using forms::Complex;
using forms::CVector;
using forms::ExteriorForm;
using forms::HermitianForm;

namespace {

constexpr Complex I{0.0, 1.0};

CVector point_of(int m, const double* x)
{
    CVector z(m);
    for (int j = 0; j < m; ++j)
        z(j) = Complex(x[2 * j], x[2 * j + 1]);
    return z;
}

double real_density(const ExteriorForm& top)
{
    double scale = 1.0;
    for (const auto& term : top.terms())
        scale = std::max(scale, std::abs(term.coeff));
    return forms::top_density(top, 1e-9 * scale).value;
}

} // namespace

kernels::PointTerms ball_terms(const PullbackModel& model, const double* x)
{
    const int m = model.domain_dim;
    const CVector z = point_of(m, x);
    const HermitianForm g(model.metric(z));
    kernels::PointTerms out;
    out.density = real_density(forms::volume_form(g));

    // i∂∂̄τ = i Σ dz_j ∧ dz̄_j
    const ExteriorForm ddbar_tau = forms::euclidean(m).scaled(2.0).to_form();
    const double lambda = forms::trace_lambda(ddbar_tau, g).real();

    const auto dlower = model.d_lower_power_at(z);
    if (!dlower)
        throw std::logic_error("model " + model.name + " is not closed and supplies no derivative evaluator");
    const ExteriorForm one_form = (forms::delbar_tau(z) - forms::del_tau(z)) * I;
    const double dterm = dlower->is_zero() ? 0.0 : real_density(wedge(one_form, *dlower));
    out.sphere_ball = 2.0 * lambda * out.density - dterm;
    return out;
}

SphereIntegrals sphere_terms(const PullbackModel& model, const double* x, double t)
{
    const int m = model.domain_dim;
    const CVector z = point_of(m, x);
    const HermitianForm g(model.metric(z));
    const ExteriorForm dtau = forms::del_tau(z) + forms::delbar_tau(z);
    const ExteriorForm star = forms::hodge_star(dtau, g);
    const ExteriorForm drho = dtau * Complex(1.0 / (2.0 * t));
    const double norm = forms::covector_norm(dtau, g);
    SphereIntegrals out;
    out.sphere_direct = real_density(wedge(drho, star));
    out.area = real_density(wedge(drho, star * Complex(1.0 / norm)));
    return out;
}

BallIntegrals ball(const PullbackModel& model, const UnitRules& rules, double t)
{
    if (!(t > 0.0))
        throw std::invalid_argument("radius must be positive");
    const PointRule& r = rules.ball;
    const int d = 2 * r.m;
    std::vector<double> vol(r.size()), sph(r.size());
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double* u = r.point(i);
        for (int k = 0; k < d; ++k)
            x[k] = t * u[k];
        const auto p = ball_terms(model, x.data());
        vol[i] = r.weights[i] * p.density;
        sph[i] = r.weights[i] * p.sphere_ball;
    }
    const double scale = std::pow(t, d);
    return {scale * pairwise_sum(vol.data(), vol.size()), scale * pairwise_sum(sph.data(), sph.size())};
}

SphereIntegrals sphere(const PullbackModel& model, const UnitRules& rules, double t)
{
    if (!(t > 0.0))
        throw std::invalid_argument("radius must be positive");
    if (!model.pd_everywhere)
        throw std::invalid_argument("direct sphere integral needs a positive-definite model");
    const PointRule& r = rules.sphere;
    const int d = 2 * r.m;
    std::vector<double> direct(r.size()), area(r.size());
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double* u = r.point(i);
        for (int k = 0; k < d; ++k)
            x[k] = t * u[k];
        const auto s = sphere_terms(model, x.data(), t);
        direct[i] = r.weights[i] * s.sphere_direct;
        area[i] = r.weights[i] * s.area;
    }
    const double scale = std::pow(t, d - 1);
    return {scale * pairwise_sum(direct.data(), direct.size()), scale * pairwise_sum(area.data(), area.size())};
}

} // namespace growthlab::growth::reference
