#include "growthlab/forms/exterior.hpp"

#include <cmath>
#include <stdexcept>

namespace growthlab::forms {

namespace {

constexpr Complex kI{0.0, 1.0};

// Lower Cholesky factor of 2h; throws when h is not positive definite.
CMatrix cholesky_of_double(const HermitianForm& g)
{
    Eigen::LLT<CMatrix> llt(2.0 * g.matrix());
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric is not positive definite");
    return llt.matrixL();
}

// Euclidean real Hodge star on the real coframe stored as generators
// dx_1..dx_m (bits 0..m-1), dy_1..dy_m (bits m..2m-1).
ExteriorForm real_euclidean_star(const ExteriorForm& v)
{
    const int m = v.dim();
    const Mask full = (Mask{1} << (2 * m)) - 1;
    // dx1∧dy1∧...∧dxm∧dym = (-1)^{m(m-1)/2} (dx_1..dx_m ∧ dy_1..dy_m)
    const int orient = ((m * (m - 1) / 2) & 1) ? -1 : 1;
    ExteriorForm out(m);
    for (const auto& t : v.terms()) {
        const Mask rest = full & ~t.mask;
        const int sign = concat_sign(t.mask, rest) * orient;
        out.add_term(rest, t.coeff * static_cast<double>(sign));
    }
    return out;
}

} // namespace

std::string to_string(Definiteness d)
{
    switch (d) {
    case Definiteness::positive_definite: return "positive-definite";
    case Definiteness::positive_semidefinite: return "positive-semidefinite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::unknown: return "unknown";
    }
    return "unknown";
}

HermitianForm::HermitianForm(CMatrix h, Definiteness flag) : h_(std::move(h)), flag_(flag)
{
    if (h_.rows() != h_.cols() || h_.rows() == 0)
        throw std::invalid_argument("Hermitian matrix must be square and non-empty");
    const double scale = std::max(1.0, h_.cwiseAbs().maxCoeff());
    if ((h_ - h_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("matrix is not Hermitian");
}

double HermitianForm::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

HermitianForm HermitianForm::classified(double tol) const
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h_, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    Definiteness d = Definiteness::indefinite;
    if (lo > tol)
        d = Definiteness::positive_definite;
    else if (lo >= -tol)
        d = Definiteness::positive_semidefinite;
    return HermitianForm(h_, d);
}

ExteriorForm HermitianForm::to_form() const
{
    const int m = dim();
    ExteriorForm out(m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            out.add_term((Mask{1} << j) | (Mask{1} << (m + k)), kI * h_(j, k));
    return out;
}

HermitianForm euclidean(int m)
{
    return HermitianForm(CMatrix::Identity(m, m) * 0.5, Definiteness::positive_definite);
}

ExteriorForm dz(int m, int j) { return ExteriorForm::generator(m, j, Complex(1.0)); }
ExteriorForm dzbar(int m, int j) { return ExteriorForm::generator(m, m + j, Complex(1.0)); }

ExteriorForm del_tau(const CVector& z)
{
    const int m = static_cast<int>(z.size());
    ExteriorForm out(m);
    for (int j = 0; j < m; ++j)
        out.add_term(Mask{1} << j, std::conj(z(j)));
    return out;
}

ExteriorForm delbar_tau(const CVector& z)
{
    const int m = static_cast<int>(z.size());
    ExteriorForm out(m);
    for (int j = 0; j < m; ++j)
        out.add_term(Mask{1} << (m + j), z(j));
    return out;
}

CMatrix coefficient_matrix(const ExteriorForm& gamma)
{
    const int m = gamma.dim();
    CMatrix c = CMatrix::Zero(m, m);
    for (const auto& t : gamma.terms()) {
        const Mask hol = gamma.holo_part(t.mask);
        const Mask anti = gamma.anti_part(t.mask);
        if (popcount(hol) != 1 || popcount(anti) != 1)
            throw std::invalid_argument("form is not of pure bidegree (1,1)");
        c(std::countr_zero(hol), std::countr_zero(anti)) = t.coeff / kI;
    }
    return c;
}

Density top_density(const ExteriorForm& top, double imag_tolerance)
{
    const int m = top.dim();
    const Mask full = (Mask{1} << (2 * m)) - 1;
    if (!top.is_zero() && (top.terms().size() != 1 || top.terms().front().mask != full))
        throw std::invalid_argument("top_density expects an (m,m)-form");
    const Complex phi = top.coefficient(full);
    const double sign = ((m * (m - 1) / 2) & 1) ? -1.0 : 1.0;
    // i^{-m}
    Complex i_pow(1.0, 0.0);
    for (int k = 0; k < m; ++k)
        i_pow *= Complex(0.0, -1.0);
    const Complex d = phi * sign * i_pow * std::ldexp(1.0, m);
    const double scale = std::max(1.0, std::abs(d));
    if (std::abs(d.imag()) > imag_tolerance * scale)
        throw std::domain_error("density has a non-vanishing imaginary part");
    return Density{d.real(), m};
}

ExteriorForm hodge_star(const ExteriorForm& v, const HermitianForm& g)
{
    const int m = g.dim();
    if (v.dim() != m)
        throw std::invalid_argument("form and metric dimension mismatch");
    const CMatrix lower = cholesky_of_double(g);                    // 2h = L L*
    const CMatrix to_frame = lower.transpose().inverse();           // dz = N θ

    // dz_j -> Σ_a N_{ja} (dx'_a + i dy'_a), dz̄_j -> Σ_a conj(N_{ja}) (dx'_a - i dy'_a)
    std::vector<ExteriorForm> into_real(static_cast<std::size_t>(2 * m), ExteriorForm(m));
    for (int j = 0; j < m; ++j) {
        ExteriorForm hol(m), anti(m);
        for (int a = 0; a < m; ++a) {
            hol.add_term(Mask{1} << a, to_frame(j, a));
            hol.add_term(Mask{1} << (m + a), kI * to_frame(j, a));
            anti.add_term(Mask{1} << a, std::conj(to_frame(j, a)));
            anti.add_term(Mask{1} << (m + a), -kI * std::conj(to_frame(j, a)));
        }
        into_real[static_cast<std::size_t>(j)] = hol;
        into_real[static_cast<std::size_t>(m + j)] = anti;
    }
    // θ_a = Σ_j L_{ja} dz_j;  dx'_a = (θ_a + θ̄_a)/2,  dy'_a = (θ_a - θ̄_a)/(2i)
    std::vector<ExteriorForm> back(static_cast<std::size_t>(2 * m), ExteriorForm(m));
    for (int a = 0; a < m; ++a) {
        ExteriorForm x(m), y(m);
        for (int j = 0; j < m; ++j) {
            x.add_term(Mask{1} << j, 0.5 * lower(j, a));
            x.add_term(Mask{1} << (m + j), 0.5 * std::conj(lower(j, a)));
            y.add_term(Mask{1} << j, lower(j, a) / (2.0 * kI));
            y.add_term(Mask{1} << (m + j), -std::conj(lower(j, a)) / (2.0 * kI));
        }
        back[static_cast<std::size_t>(a)] = x;
        back[static_cast<std::size_t>(m + a)] = y;
    }
    const ExteriorForm real = v.substitute(into_real, m);
    return real_euclidean_star(real).substitute(back, m);
}

double covector_norm(const ExteriorForm& v, const HermitianForm& g)
{
    const int m = g.dim();
    if (v.is_zero())
        return 0.0;
    if (v.degree() != 1 || v.dim() != m)
        throw std::invalid_argument("covector_norm expects a 1-form on C^m");
    Eigen::LLT<CMatrix> llt(g.matrix());
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric is not positive definite");
    CVector a = CVector::Zero(m), b = CVector::Zero(m);
    for (const auto& t : v.terms()) {
        const int gidx = std::countr_zero(t.mask);
        if (gidx < m)
            a(gidx) = t.coeff;
        else
            b(gidx - m) = t.coeff;
    }
    // |v|^2 = a^T conj(h)^{-1} conj(a) + b^T h^{-1} conj(b)
    const CVector hinv_ca = llt.solve(a).conjugate();        // conj(h^{-1} a) = conj(h)^{-1} conj(a)
    const CVector hinv_cb = llt.solve(b.conjugate());
    const double n2 = (a.transpose() * hinv_ca).value().real() + (b.transpose() * hinv_cb).value().real();
    return std::sqrt(std::max(0.0, n2));
}

Complex trace_lambda(const ExteriorForm& gamma, const HermitianForm& g)
{
    Eigen::LLT<CMatrix> llt(g.matrix());
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric is not positive definite");
    if (gamma.is_zero())
        return {};
    if (gamma.dim() != g.dim())
        throw std::invalid_argument("form and metric dimension mismatch");
    return llt.solve(coefficient_matrix(gamma)).trace();
}

ExteriorForm volume_form(const HermitianForm& g)
{
    return power_over_factorial(g.to_form(), g.dim());
}

} // namespace growthlab::forms
