#pragma once

// Quadrature rules on the unit ball and unit sphere of C^m ≅ R^{2m}.
// Rules are built once and rescaled to radius t: a ball integral is
// t^{2m} Σ w_i f(t x_i), a sphere integral t^{2m-1} Σ w_i f(t u_i).

#include <cstdint>
#include <string>
#include <vector>

namespace growthlab::growth {

enum class QuadMethod { gauss_legendre, monte_carlo };

std::string to_string(QuadMethod m);
QuadMethod parse_quad_method(const std::string& s);

struct QuadratureSpec {
    QuadMethod method = QuadMethod::gauss_legendre;
    int radial_order = 32;
    /// Nodes per polar angle; the azimuth uses twice as many equispaced nodes.
    int angular_order = 16;
    std::uint64_t sample_count = 200000;
    std::uint64_t seed = 7;

    /// Throws std::invalid_argument unless orders >= 4 and sample_count >= 1e4.
    void validate() const;
    QuadratureSpec refined() const;
};

/// Points stored as 2m consecutive real coordinates (x_1, y_1, ..., x_m, y_m),
/// with z_j = x_j + i y_j.
struct PointRule {
    int m = 0;
    std::vector<double> coords;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    const double* point(std::size_t i) const { return coords.data() + 2 * static_cast<std::size_t>(m) * i; }
};

struct UnitRules {
    PointRule ball;
    PointRule sphere;
    QuadratureSpec spec;
};

UnitRules make_unit_rules(int m, const QuadratureSpec& spec);

/// Gauss–Legendre nodes and weights on [a, b].
void gauss_legendre(int order, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

double unit_sphere_area(int m);  // area of S^{2m-1}
double unit_ball_volume(int m);  // volume of B^{2m}

/// Pairwise (cascade) summation; result independent of thread count.
double pairwise_sum(const double* values, std::size_t n);

} // namespace growthlab::growth
