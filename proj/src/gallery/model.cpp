#include "growthlab/gallery/model.hpp"

#include <cmath>
#include <stdexcept>

namespace growthlab::gallery {

namespace {

constexpr Complex I{0.0, 1.0};

CMatrix sl2c_metric(const CVector& z)
{
    const double e = std::exp(-2.0 * z(0).real());
    CMatrix h(2, 2);
    h(0, 0) = std::norm(z(1)) * e + 2.0;
    h(0, 1) = z(1) * e;
    h(1, 0) = std::conj(z(1)) * e;
    h(1, 1) = e;
    return h;
}

std::vector<CMatrix> sl2c_metric_derivative(const CVector& z)
{
    const double e = std::exp(-2.0 * z(0).real());
    CMatrix d1(2, 2), d2(2, 2);
    d1(0, 0) = -std::norm(z(1)) * e;
    d1(0, 1) = -z(1) * e;
    d1(1, 0) = -std::conj(z(1)) * e;
    d1(1, 1) = -e;
    d2(0, 0) = std::conj(z(1)) * e;
    d2(0, 1) = e;
    d2(1, 0) = 0.0;
    d2(1, 1) = 0.0;
    return {d1, d2};
}

// Matrix entries of g ∈ SL(2,C) flattened row-major: (a, b, c, d).
CMatrix sl2c_ambient(const CVector& g)
{
    Eigen::Matrix2cd gm;
    gm << g(0), g(1), g(2), g(3);
    const Eigen::Matrix2cd ginv = gm.inverse();
    Eigen::Matrix<Complex, 3, 4> p;
    for (int a = 0; a < 4; ++a) {
        Eigen::Matrix2cd v = Eigen::Matrix2cd::Zero();
        v(a / 2, a % 2) = 1.0;
        p.col(a) = sl2_frame_coordinates(ginv * v);
    }
    return 0.5 * (p.transpose() * p.conjugate());
}

CMatrix fubini_study_metric(const CVector& w)
{
    const int n = static_cast<int>(w.size());
    const double s = 1.0 + w.squaredNorm();
    CMatrix h(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            h(j, k) = ((j == k ? s : 0.0) - std::conj(w(j)) * w(k)) / (s * s);
    return h;
}

HolomorphicMapSpec linear_embedding(int m, int n, int offset)
{
    HolomorphicMapSpec f;
    f.domain_dim = m;
    f.target_dim = n;
    f.evaluate = [m, n, offset](const CVector& z) {
        CVector w = CVector::Zero(n);
        w.segment(offset, m) = z;
        return w;
    };
    f.jacobian = [m, n, offset](const CVector&) {
        CMatrix j = CMatrix::Zero(m, n);
        j.block(0, offset, m, m) = CMatrix::Identity(m, m);
        return j;
    };
    f.mode = DerivativeMode::analytic;
    return f;
}

void require_n(const std::string& name, int n, int fixed)
{
    if (fixed > 0 && n != fixed)
        throw std::invalid_argument("model " + name + " requires n = " + std::to_string(fixed));
    if (n < 2)
        throw std::invalid_argument("model " + name + " requires n >= 2");
}

} // namespace

HermitianForm PullbackModel::metric_at(const CVector& z) const
{
    if (z.size() != domain_dim)
        throw std::invalid_argument("point dimension does not match model " + name);
    return HermitianForm(metric(z), pd_everywhere ? forms::Definiteness::positive_definite
                                                  : forms::Definiteness::unknown);
}

ExteriorForm exterior_derivative_of_metric(const std::vector<CMatrix>& dh)
{
    const int m = static_cast<int>(dh.size());
    ExteriorForm out(m);
    for (int l = 0; l < m; ++l) {
        // ∂_l h is not Hermitian in general
        ExteriorForm a(m), b(m);
        const CMatrix& c = dh[l];
        const CMatrix cbar = c.adjoint();
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                if (c(j, k) != Complex(0.0))
                    a += wedge(forms::dz(m, j), forms::dzbar(m, k)) * (I * c(j, k));
                if (cbar(j, k) != Complex(0.0))
                    b += wedge(forms::dz(m, j), forms::dzbar(m, k)) * (I * cbar(j, k));
            }
        out += wedge(forms::dz(m, l), a);
        out += wedge(forms::dzbar(m, l), b);
    }
    return out;
}

std::optional<ExteriorForm> PullbackModel::d_lower_power_at(const CVector& z) const
{
    const int m = domain_dim;
    if (closed_metric)
        return ExteriorForm(m);
    if (!metric_derivative)
        return std::nullopt;
    const ExteriorForm domega = exterior_derivative_of_metric((*metric_derivative)(z));
    if (m == 2)
        return domega;
    const ExteriorForm omega = HermitianForm(metric(z)).to_form();
    // d(ω^{m-1}/(m-1)!) = dω ∧ ω^{m-2}/(m-2)!
    return wedge(domega, forms::power_over_factorial(omega, m - 2));
}

PullbackModel PullbackModel::scaled(double a) const
{
    if (!(a > 0.0))
        throw std::invalid_argument("metric scale must be positive");
    PullbackModel out = *this;
    out.name = name;
    auto base = metric;
    out.metric = [base, a](const CVector& z) -> CMatrix { return base(z) * a; };
    if (metric_derivative) {
        auto d = *metric_derivative;
        out.metric_derivative = [d, a](const CVector& z) {
            auto v = d(z);
            for (auto& x : v)
                x *= a;
            return v;
        };
    }
    if (ambient_metric) {
        auto amb = *ambient_metric;
        out.ambient_metric = [amb, a](const CVector& w) -> CMatrix { return amb(w) * a; };
    }
    return out;
}

std::vector<std::string> gallery_names()
{
    return {"torus", "iwasawa", "nakamura", "sl2c", "fubini_study"};
}

PullbackModel gallery(const std::string& name, const ModelParams& params)
{
    const int n = params.n;
    PullbackModel model;
    model.name = name;

    if (name == "torus") {
        require_n(name, n, 0);
        const int m = n - 1;
        model.domain_dim = m;
        model.ambient_dim = n;
        model.metric = [m](const CVector&) -> CMatrix { return 0.5 * CMatrix::Identity(m, m); };
        model.pd_everywhere = true;
        model.closed_metric = true;
        model.map = linear_embedding(m, n, 0);
        model.ambient_metric = [n](const CVector&) -> CMatrix { return 0.5 * CMatrix::Identity(n, n); };
        model.reference_notes = "linear map C^{n-1} -> C^n, Euclidean beta: h = I/2";
    } else if (name == "iwasawa") {
        require_n(name, n, 3);
        model.domain_dim = 2;
        model.ambient_dim = 3;
        model.metric = [](const CVector& z) -> CMatrix {
            CMatrix h = CMatrix::Identity(2, 2);
            h(1, 1) = 1.0 + std::norm(z(0));
            return h;
        };
        model.metric_derivative = [](const CVector& z) {
            CMatrix d1 = CMatrix::Zero(2, 2);
            d1(1, 1) = std::conj(z(0));
            return std::vector<CMatrix>{d1, CMatrix::Zero(2, 2)};
        };
        model.pd_everywhere = true;
        model.map = linear_embedding(2, 3, 0);
        model.ambient_metric = [](const CVector& w) -> CMatrix {
            CMatrix h = CMatrix::Identity(3, 3);
            h(1, 1) = 1.0 + std::norm(w(0));
            h(1, 2) = -w(0);
            h(2, 1) = -std::conj(w(0));
            return h;
        };
        model.reference_notes = "Heisenberg group, omega_0 = i(a^a' + b^b' + g^g'), gamma = dz3 - z1 dz2; "
                                "f(z1,z2) = (z1,z2,0) gives h = diag(1, 1+|z1|^2)";
    } else if (name == "nakamura") {
        require_n(name, n, 3);
        model.domain_dim = 2;
        model.ambient_dim = 3;
        model.metric = [](const CVector&) -> CMatrix { return CMatrix::Identity(2, 2); };
        model.pd_everywhere = true;
        model.closed_metric = true;
        model.map = linear_embedding(2, 3, 1);
        model.ambient_metric = [](const CVector& w) -> CMatrix {
            const double e = std::exp(2.0 * w(0).real());
            CMatrix h = CMatrix::Identity(3, 3);
            h(1, 1) = 1.0 / e;
            h(2, 2) = e;
            return h;
        };
        model.reference_notes = "C x| C^2 with eta2 = e^{-z1} dz2, eta3 = e^{z1} dz3; "
                                "f(z2,z3) = (0,z2,z3) gives h = I";
    } else if (name == "sl2c") {
        require_n(name, n, 3);
        model.domain_dim = 2;
        model.ambient_dim = 3;
        model.metric = sl2c_metric;
        model.metric_derivative = sl2c_metric_derivative;
        model.pd_everywhere = true;
        HolomorphicMapSpec f;
        f.domain_dim = 2;
        f.target_dim = 4;
        f.evaluate = [](const CVector& z) {
            CVector g(4);
            g << std::exp(z(0)), z(1), 0.0, std::exp(-z(0));
            return g;
        };
        f.jacobian = [](const CVector& z) {
            CMatrix j = CMatrix::Zero(2, 4);
            j(0, 0) = std::exp(z(0));
            j(0, 3) = -std::exp(-z(0));
            j(1, 1) = 1.0;
            return j;
        };
        f.mode = DerivativeMode::analytic;
        model.map = f;
        model.ambient_metric = sl2c_ambient;
        model.radius_cap = 12.0;
        model.reference_notes = "f(z1,z2) = [[e^{z1}, z2], [0, e^{-z1}]] into SL(2,C) with "
                                "omega = (i/2)(a^a' + b^b' + g^g'); h11 = |z2|^2 e^{-2Re z1} + 2, "
                                "h12 = z2 e^{-2Re z1}, h22 = e^{-2Re z1}";
    } else if (name == "fubini_study") {
        require_n(name, n, 0);
        const int m = n - 1;
        model.domain_dim = m;
        model.ambient_dim = n;
        model.metric = [](const CVector& z) -> CMatrix { return fubini_study_metric(z); };
        model.pd_everywhere = true;
        model.closed_metric = true;
        model.map = linear_embedding(m, n, 0);
        model.ambient_metric = [](const CVector& w) -> CMatrix { return fubini_study_metric(w); };
        model.reference_notes = "z -> [1:z:0] in P^n, omega_FS = i ddbar log(1+|w|^2)";
    } else {
        throw std::invalid_argument("unknown model: " + name);
    }
    return model;
}

} // namespace growthlab::gallery
