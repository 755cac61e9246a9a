#include "growthlab/growth/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace growthlab::growth {

std::string to_string(QuadMethod m)
{
    return m == QuadMethod::gauss_legendre ? "gl" : "mc";
}

QuadMethod parse_quad_method(const std::string& s)
{
    if (s == "gl" || s == "gauss-legendre-product")
        return QuadMethod::gauss_legendre;
    if (s == "mc" || s == "monte-carlo")
        return QuadMethod::monte_carlo;
    throw std::invalid_argument("unknown quadrature method: " + s);
}

void QuadratureSpec::validate() const
{
    if (method == QuadMethod::gauss_legendre && (radial_order < 4 || angular_order < 4))
        throw std::invalid_argument("quadrature orders must be >= 4");
    if (method == QuadMethod::monte_carlo && sample_count < 10000)
        throw std::invalid_argument("Monte Carlo sample count must be >= 1e4");
}

QuadratureSpec QuadratureSpec::refined() const
{
    QuadratureSpec out = *this;
    out.radial_order *= 2;
    out.angular_order *= 2;
    out.sample_count *= 4;
    return out;
}

void gauss_legendre(int order, double a, double b, std::vector<double>& nodes, std::vector<double>& weights)
{
    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
    if (table == nullptr)
        throw std::runtime_error("failed to allocate Gauss-Legendre table");
    nodes.resize(static_cast<std::size_t>(order));
    weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i)
        gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &nodes[i], &weights[i], table);
    gsl_integration_glfixed_table_free(table);
}

double unit_sphere_area(int m)
{
    // 2 π^m / (m-1)!
    return 2.0 * std::pow(std::numbers::pi, m) / std::tgamma(static_cast<double>(m));
}

double unit_ball_volume(int m)
{
    return std::pow(std::numbers::pi, m) / std::tgamma(static_cast<double>(m) + 1.0);
}

double pairwise_sum(const double* values, std::size_t n)
{
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += values[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

namespace {

// Hyperspherical product rule on S^{d-1}, d = 2m: polar angles θ_1..θ_{d-2}
// with Jacobian Π sin^{d-1-k} θ_k, azimuth θ_{d-1} on [0, 2π).
PointRule sphere_product_rule(int m, int order)
{
    const int d = 2 * m;
    std::vector<double> gx, gw;
    gauss_legendre(order, 0.0, std::numbers::pi, gx, gw);
    const int naz = 2 * order;

    PointRule rule;
    rule.m = m;
    const int polar = d - 2;
    std::vector<int> idx(static_cast<std::size_t>(polar), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    while (true) {
        double w = 1.0;
        double radius = 1.0;  // product of sines so far
        for (int k = 0; k < polar; ++k) {
            const double th = gx[idx[k]];
            w *= gw[idx[k]] * std::pow(std::sin(th), d - 1 - (k + 1));
            x[k] = radius * std::cos(th);
            radius *= std::sin(th);
        }
        for (int a = 0; a < naz; ++a) {
            const double phi = 2.0 * std::numbers::pi * (a + 0.5) / naz;
            x[d - 2] = radius * std::cos(phi);
            x[d - 1] = radius * std::sin(phi);
            rule.coords.insert(rule.coords.end(), x.begin(), x.end());
            rule.weights.push_back(w * 2.0 * std::numbers::pi / naz);
        }
        int k = polar - 1;
        while (k >= 0 && ++idx[k] == order) {
            idx[k] = 0;
            --k;
        }
        if (k < 0)
            break;
    }
    return rule;
}

// Uniform points in the unit ball; chunks of 4096 samples draw from their own
// seeded stream, so the sequence does not depend on the thread layout.
std::vector<double> ball_samples(int m, std::uint64_t count, std::uint64_t seed)
{
    const int d = 2 * m;
    std::vector<double> out(static_cast<std::size_t>(count) * d);
    constexpr std::uint64_t chunk = 4096;
    const std::uint64_t chunks = (count + chunk - 1) / chunk;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const std::uint64_t end = std::min(count, (c + 1) * chunk);
        for (std::uint64_t i = c * chunk; i < end; ++i) {
            double* x = out.data() + i * d;
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (int k = 0; k < d; ++k) {
                    x[k] = normal(rng);
                    norm2 += x[k] * x[k];
                }
            } while (norm2 == 0.0);
            const double r = std::pow(uniform(rng), 1.0 / d) / std::sqrt(norm2);
            for (int k = 0; k < d; ++k)
                x[k] *= r;
        }
    }
    return out;
}

} // namespace

UnitRules make_unit_rules(int m, const QuadratureSpec& spec)
{
    spec.validate();
    if (m < 1)
        throw std::invalid_argument("domain dimension must be positive");
    const int d = 2 * m;
    UnitRules rules;
    rules.spec = spec;

    if (spec.method == QuadMethod::gauss_legendre) {
        rules.sphere = sphere_product_rule(m, spec.angular_order);
        std::vector<double> rx, rw;
        gauss_legendre(spec.radial_order, 0.0, 1.0, rx, rw);
        rules.ball.m = m;
        const std::size_t ns = rules.sphere.size();
        rules.ball.coords.reserve(rx.size() * ns * d);
        rules.ball.weights.reserve(rx.size() * ns);
        for (std::size_t r = 0; r < rx.size(); ++r) {
            const double jac = rw[r] * std::pow(rx[r], d - 1);
            for (std::size_t a = 0; a < ns; ++a) {
                const double* u = rules.sphere.point(a);
                for (int k = 0; k < d; ++k)
                    rules.ball.coords.push_back(rx[r] * u[k]);
                rules.ball.weights.push_back(jac * rules.sphere.weights[a]);
            }
        }
        return rules;
    }

    const std::uint64_t n = spec.sample_count;
    rules.ball.m = m;
    rules.ball.coords = ball_samples(m, n, spec.seed);
    rules.ball.weights.assign(static_cast<std::size_t>(n), unit_ball_volume(m) / static_cast<double>(n));
    rules.sphere.m = m;
    rules.sphere.coords = rules.ball.coords;
    for (std::uint64_t i = 0; i < n; ++i) {
        double* x = rules.sphere.coords.data() + i * d;
        double norm2 = 0.0;
        for (int k = 0; k < d; ++k)
            norm2 += x[k] * x[k];
        const double inv = 1.0 / std::sqrt(norm2);
        for (int k = 0; k < d; ++k)
            x[k] *= inv;
    }
    rules.sphere.weights.assign(static_cast<std::size_t>(n), unit_sphere_area(m) / static_cast<double>(n));
    return rules;
}

} // namespace growthlab::growth
