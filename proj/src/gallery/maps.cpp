#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "growthlab/gallery/model.hpp"

namespace growthlab::gallery {

namespace {

constexpr Complex I{0.0, 1.0};

CVector evaluate_checked(const HolomorphicMapSpec& f, const CVector& z)
{
    CVector w;
    try {
        w = f.evaluate(z);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("evaluator failure at stencil point: ") + e.what());
    }
    if (w.size() != f.target_dim)
        throw std::runtime_error("evaluator returned a point of the wrong dimension");
    for (Eigen::Index a = 0; a < w.size(); ++a)
        if (!std::isfinite(w(a).real()) || !std::isfinite(w(a).imag()))
            throw std::runtime_error("evaluator failure at stencil point: non-finite value");
    return w;
}

// Fourth-order central difference of f along the real direction e at z.
CVector directional(const HolomorphicMapSpec& f, const CVector& z, const CVector& e, double h)
{
    const CVector p1 = evaluate_checked(f, z + h * e);
    const CVector m1 = evaluate_checked(f, z - h * e);
    const CVector p2 = evaluate_checked(f, z + 2.0 * h * e);
    const CVector m2 = evaluate_checked(f, z - 2.0 * h * e);
    return (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
}

struct Wirtinger {
    CMatrix holo;  // ∂f/∂z_j, rows j
    CMatrix anti;  // ∂f/∂z̄_j
};

Wirtinger finite_difference(const HolomorphicMapSpec& f, const CVector& z)
{
    const int m = f.domain_dim;
    if (z.size() != m)
        throw std::invalid_argument("point dimension does not match map domain");
    const double h = 1e-5 * (1.0 + z.norm());
    Wirtinger out{CMatrix(m, f.target_dim), CMatrix(m, f.target_dim)};
    for (int j = 0; j < m; ++j) {
        CVector e = CVector::Zero(m);
        e(j) = 1.0;
        const CVector dx = directional(f, z, e, h);
        e(j) = I;
        const CVector dy = directional(f, z, e, h);
        out.holo.row(j) = (0.5 * (dx - I * dy)).transpose();
        out.anti.row(j) = (0.5 * (dx + I * dy)).transpose();
    }
    return out;
}

} // namespace

CMatrix numeric_jacobian(const HolomorphicMapSpec& f, const CVector& z)
{
    if (f.mode == DerivativeMode::analytic && f.jacobian)
        return f.jacobian(z);
    return finite_difference(f, z).holo;
}

double cauchy_riemann_residual(const HolomorphicMapSpec& f, const CVector& z)
{
    const Wirtinger w = finite_difference(f, z);
    const double scale = std::max(1.0, w.holo.cwiseAbs().maxCoeff());
    return w.anti.cwiseAbs().maxCoeff() / scale;
}

HermitianForm pullback_metric(const CMatrix& jacobian, const HermitianForm& ambient)
{
    if (jacobian.cols() != ambient.dim())
        throw std::invalid_argument("Jacobian columns do not match the ambient metric dimension");
    CMatrix h = jacobian * ambient.matrix() * jacobian.adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    return HermitianForm(h);
}

Eigen::Vector3cd sl2_frame_coordinates(const Eigen::Matrix2cd& x)
{
    // X = -iA + B, Y = -iA - B, H = -2iC
    const Complex x11 = 0.5 * (x(0, 0) - x(1, 1));
    return {-I * (x(0, 1) + x(1, 0)), x(0, 1) - x(1, 0), -2.0 * I * x11};
}

Eigen::Matrix<Complex, 2, 3> maurer_cartan_frame(const CVector& z)
{
    if (z.size() != 2)
        throw std::invalid_argument("Maurer-Cartan pullback is defined on C^2");
    const Complex e = std::exp(z(0));
    Eigen::Matrix2cd ginv, d1, d2;
    ginv << 1.0 / e, -z(1), 0.0, e;
    d1 << e, 0.0, 0.0, -1.0 / e;
    d2 << 0.0, 1.0, 0.0, 0.0;
    Eigen::Matrix<Complex, 2, 3> out;
    out.row(0) = sl2_frame_coordinates(ginv * d1).transpose();
    out.row(1) = sl2_frame_coordinates(ginv * d2).transpose();
    return out;
}

HermitianForm maurer_cartan_pullback(const CVector& z)
{
    const auto frame = maurer_cartan_frame(z);
    CMatrix h = 0.5 * (frame * frame.adjoint());
    h = 0.5 * (h + h.adjoint()).eval();
    return HermitianForm(h);
}

CVector sample_ball(int m, double radius, std::uint64_t seed, std::size_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    CVector z(m);
    for (int j = 0; j < m; ++j)
        z(j) = Complex(normal(rng), normal(rng));
    const double r = radius * std::pow(uniform(rng), 1.0 / (2.0 * m));
    return z * (r / z.norm());
}

PsdReport psd_probe(const PullbackModel& model, std::size_t sample_count, double radius, std::uint64_t seed)
{
    if (sample_count == 0)
        throw std::invalid_argument("psd_probe needs at least one sample");
    PsdReport rep;
    rep.samples = sample_count;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    rep.max_eigenvalue = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const CVector z = sample_ball(model.domain_dim, radius, seed, s);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(model.metric(z), Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, ev.minCoeff());
        rep.max_eigenvalue = std::max(rep.max_eigenvalue, ev.maxCoeff());
        sum += ev.minCoeff();
        for (Eigen::Index k = 0; k < ev.size(); ++k)
            if (ev(k) < -1e-10)
                ++rep.negative_count;
    }
    rep.mean_min_eigenvalue = sum / static_cast<double>(sample_count);
    rep.ok = rep.negative_count == 0 && (!model.pd_everywhere || rep.min_eigenvalue > 0.0);
    return rep;
}

} // namespace growthlab::gallery
