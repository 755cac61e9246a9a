#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "growthlab/growth/profile.hpp"

using namespace growthlab::growth;
using growthlab::gallery::gallery;

namespace {

constexpr double pi = std::numbers::pi;

QuadratureSpec gl(int radial, int angular)
{
    QuadratureSpec q;
    q.radial_order = radial;
    q.angular_order = angular;
    return q;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double iwasawa_vol(double r) { return 2.0 * pi * pi * std::pow(r, 4) + 2.0 * pi * pi / 3.0 * std::pow(r, 6); }

} // namespace

TEST_CASE("unit rules reproduce ball and sphere moments")
{
    const UnitRules r = make_unit_rules(2, gl(16, 12));
    double vol = 0.0, r2 = 0.0, area = 0.0;
    for (std::size_t i = 0; i < r.ball.size(); ++i) {
        const double* x = r.ball.point(i);
        vol += r.ball.weights[i];
        r2 += r.ball.weights[i] * (x[0] * x[0] + x[1] * x[1]);
    }
    for (double w : r.sphere.weights)
        area += w;
    CHECK(rel(vol, pi * pi / 2.0) < 1e-10);
    CHECK(rel(area, 2.0 * pi * pi) < 1e-10);
    CHECK(rel(r2, pi * pi / 6.0) < 1e-8);
    CHECK(unit_ball_volume(3) == doctest::Approx(pi * pi * pi / 6.0));
    CHECK(unit_sphere_area(3) == doctest::Approx(pi * pi * pi));
}

TEST_CASE("pairwise sum is exact on integers and order independent")
{
    std::vector<double> v(10007);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = static_cast<double>(i % 13);
    double plain = 0.0;
    for (double x : v)
        plain += x;
    CHECK(pairwise_sum(v.data(), v.size()) == plain);
    CHECK(pairwise_sum(v.data(), 0) == 0.0);
}

TEST_CASE("quadrature spec validation")
{
    CHECK_THROWS_AS(make_unit_rules(2, gl(3, 8)), std::invalid_argument);
    CHECK_THROWS_AS(make_unit_rules(2, gl(8, 3)), std::invalid_argument);
    QuadratureSpec mc;
    mc.method = QuadMethod::monte_carlo;
    mc.sample_count = 9999;
    CHECK_THROWS_AS(make_unit_rules(2, mc), std::invalid_argument);
    CHECK(parse_quad_method("mc") == QuadMethod::monte_carlo);
    CHECK(to_string(QuadMethod::gauss_legendre) == "gl");
    CHECK_THROWS_AS(parse_quad_method("simpson"), std::invalid_argument);
    const QuadratureSpec r = gl(16, 8).refined();
    CHECK(r.radial_order == 32);
    CHECK(r.angular_order == 16);
}

TEST_CASE("torus closed forms")
{
    const auto torus = gallery("torus");
    const GrowthIntegrator g(torus, gl(8, 6));
    for (double t : {0.5, 1.0, 2.0}) {
        const auto b = g.ball(t);
        const auto s = g.sphere(t);
        CHECK(rel(b.vol, pi * pi / 2.0 * std::pow(t, 4)) < 1e-6);
        CHECK(rel(b.sphere_ball, 4.0 * pi * pi * std::pow(t, 4)) < 1e-6);
        CHECK(rel(s.sphere_direct, 4.0 * pi * pi * std::pow(t, 4)) < 1e-6);
        CHECK(rel(s.area, 2.0 * pi * pi * std::pow(t, 3)) < 1e-6);
    }
}

TEST_CASE("iwasawa closed forms and the factor four")
{
    const auto iw = gallery("iwasawa");
    const GrowthIntegrator g(iw, gl(16, 8));
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
        const auto b = g.ball(r);
        CHECK(rel(b.vol, iwasawa_vol(r)) < 5e-3);
        CHECK(b.sphere_ball / b.vol == doctest::Approx(4.0).epsilon(1e-3));
        CHECK(rel(g.sphere(r).sphere_direct, b.sphere_ball) < 1e-2);
    }
}

TEST_CASE("kernel and reference paths agree pointwise")
{
    for (const char* name : {"torus", "iwasawa", "sl2c", "fubini_study", "nakamura"}) {
        const auto model = gallery(name);
        for (std::size_t k = 0; k < 20; ++k) {
            const auto z = growthlab::gallery::sample_ball(2, 2.0, 11, k);
            double x[4];
            for (int j = 0; j < 2; ++j) {
                x[2 * j] = z(j).real();
                x[2 * j + 1] = z(j).imag();
            }
            const auto a = kernels::ball_terms(model, x);
            const auto b = reference::ball_terms(model, x);
            CHECK(a.density == doctest::Approx(b.density).epsilon(1e-10));
            CHECK(a.sphere_ball == doctest::Approx(b.sphere_ball).epsilon(1e-9));
            const auto sa = kernels::sphere_terms(model, x, z.norm());
            const auto sb = reference::sphere_terms(model, x, z.norm());
            CHECK(sa.sphere_direct == doctest::Approx(sb.sphere_direct).epsilon(1e-9));
            CHECK(sa.area == doctest::Approx(sb.area).epsilon(1e-9));
        }
    }
}

TEST_CASE("kernel and reference integrals agree")
{
    const auto sl2 = gallery("sl2c");
    const UnitRules rules = make_unit_rules(2, gl(6, 4));
    const auto a = kernels::ball(sl2, rules, 1.5);
    const auto b = reference::ball(sl2, rules, 1.5);
    CHECK(a.vol == doctest::Approx(b.vol).epsilon(1e-11));
    CHECK(a.sphere_ball == doctest::Approx(b.sphere_ball).epsilon(1e-10));
    const auto sa = kernels::sphere(sl2, rules, 1.5);
    const auto sb = reference::sphere(sl2, rules, 1.5);
    CHECK(sa.sphere_direct == doctest::Approx(sb.sphere_direct).epsilon(1e-10));
}

TEST_CASE("two-path agreement on the positive-definite models")
{
    for (const char* name : {"torus", "iwasawa", "sl2c", "fubini_study", "nakamura"}) {
        const GrowthIntegrator g(gallery(name), gl(32, 16));
        for (double t : {0.5, 1.0, 3.0, 6.0}) {
            CAPTURE(name);
            CAPTURE(t);
            CHECK(rel(g.sphere(t).sphere_direct, g.ball(t).sphere_ball) < 1e-2);
        }
    }
}

TEST_CASE("sl2c volume beats the exponential lower bound shape")
{
    const GrowthIntegrator g(gallery("sl2c"), gl(32, 16));
    const double v6 = g.ball(6.0).vol, v8 = g.ball(8.0).vol;
    CHECK(std::log(v8 / v6) / 2.0 >= std::sqrt(2.0));
}

TEST_CASE("fubini_study sphere bound")
{
    const GrowthIntegrator g(gallery("fubini_study"), gl(32, 16));
    const auto b = g.ball(2.0);
    CHECK(b.sphere_ball <= 2.0 * 2.0 * 25.0 * b.vol);
}

TEST_CASE("integrator error cases")
{
    auto iw = gallery("iwasawa");
    const GrowthIntegrator g(iw, gl(8, 4));
    CHECK_THROWS_AS(g.ball(0.0), std::invalid_argument);
    CHECK_THROWS_AS(g.ball(-1.0), std::invalid_argument);
    iw.metric_derivative.reset();
    const GrowthIntegrator open(iw, gl(8, 4));
    CHECK_THROWS_AS(open.ball(1.0), std::logic_error);
    auto flat = gallery("torus");
    flat.pd_everywhere = false;
    CHECK_THROWS_AS(GrowthIntegrator(flat, gl(8, 4)).sphere(1.0), std::invalid_argument);
}

TEST_CASE("Monte Carlo rules are reproducible and close to the product rule")
{
    QuadratureSpec mc;
    mc.method = QuadMethod::monte_carlo;
    mc.sample_count = 50000;
    const auto iw = gallery("iwasawa");
    const auto a = GrowthIntegrator(iw, mc).ball(1.0);
    const auto b = GrowthIntegrator(iw, mc).ball(1.0);
    CHECK(a.vol == b.vol);
    CHECK(a.sphere_ball == b.sphere_ball);
    CHECK(a.vol_stderr > 0.0);
    CHECK(std::abs(a.vol - iwasawa_vol(1.0)) < 5.0 * a.vol_stderr);
    mc.seed = 8;
    CHECK(GrowthIntegrator(iw, mc).ball(1.0).vol != a.vol);
}

TEST_CASE("cumulative integral examples")
{
    const auto t = linear_grid(0.5, 10.0, 20);
    const std::vector<double> ones(t.size(), 1.0);
    const auto f = cumulative_integral(t, ones);
    for (std::size_t k = 0; k < t.size(); ++k)
        CHECK(f[k] == doctest::Approx(t[k]).epsilon(1e-12));

    std::vector<double> quartic;
    for (double x : t)
        quartic.push_back(pi * pi / 2.0 * std::pow(x, 4));
    const auto g = cumulative_integral(t, quartic);
    for (std::size_t k = 0; k < t.size(); ++k)
        CHECK(g[k] == doctest::Approx(pi * pi / 10.0 * std::pow(t[k], 5)).epsilon(1e-10));

    CHECK_THROWS_AS(cumulative_integral({1.0, 0.5}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(cumulative_integral({0.5, 1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_grid(0.0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(linear_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("profile analysis on the torus")
{
    const auto p = build_profile(gallery("torus"), linear_grid(0.5, 8.0, 24), gl(8, 6));
    REQUIRE(p.F.size() == 24);
    for (std::size_t k = 0; k < p.t.size(); ++k)
        CHECK(p.F[k] == doctest::Approx(pi * pi / 10.0 * std::pow(p.t[k], 5)).epsilon(1e-6));
    CHECK(check_invariants(p).empty());

    const auto c1 = check_condition_i(p);
    CHECK(c1.holds);
    CHECK(c1.trend_slope == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(c1.C1 == doctest::Approx(8.0 / p.t[std::size_t(c1.points == p.t.size() ? 0 : p.t.size() - c1.points)]).epsilon(1e-8));

    const auto c2 = classify_condition_ii(p);
    CHECK(c2.classification == Classification::subexponential);
    CHECK(c2.holds() == std::optional<bool>(true));
    CHECK(!c2.witness_C);

    const auto fo = finite_order_fit(p);
    CHECK(fo.order == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(fo.finite);

    const auto h = hoelder_chain_check(p);
    CHECK(h.holds);
    CHECK(std::abs(h.worst_margin) < 1e-6);
}

TEST_CASE("profile analysis on iwasawa")
{
    const auto p = build_profile(gallery("iwasawa"), linear_grid(0.25, 3.0, 24), gl(16, 8));
    CHECK(check_invariants(p).empty());
    for (double r : p.ratio_i)
        CHECK(r > 0.0);
    for (std::size_t k = 0; k < p.t.size(); ++k)
        CHECK(p.ratio_i[k] * p.t[k] == doctest::Approx(4.0).epsilon(1e-3));
    const auto c1 = check_condition_i(p);
    CHECK(c1.holds);
    CHECK(c1.C1 <= 4.0 * 1.001);
    const auto h = hoelder_chain_check(p);
    CHECK(h.holds);
    CHECK(h.worst_margin > 0.0);
}

TEST_CASE("exponential growth is classified with a witness")
{
    GrowthProfile p;
    p.t = linear_grid(1.0, 12.0, 45);
    for (double t : p.t)
        p.vol.push_back(std::exp(1.5 * t));
    p = cumulative_F(std::move(p));
    const auto c2 = classify_condition_ii(p);
    CHECK(c2.classification == Classification::exponential);
    CHECK(c2.lambda == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(c2.holds() == std::optional<bool>(false));
    REQUIRE(c2.witness_C);
    CHECK(*c2.witness_C > 1.0 / c2.lambda);

    for (std::size_t k = 0; k < p.t.size(); ++k)
        p.vol[k] = std::exp(0.1 * p.t[k]);
    p = cumulative_F(std::move(p));
    const auto slow = classify_condition_ii(p);
    CHECK(slow.classification == Classification::inconclusive);
    CHECK(!slow.holds());
}

TEST_CASE("a short tail window cannot certify exponential growth")
{
    const auto iw = build_profile(gallery("iwasawa"), linear_grid(0.25, 3.0, 24), gl(16, 8));
    const auto c2 = classify_condition_ii(iw);
    CHECK(c2.lambda >= 0.2);
    CHECK(c2.classification == Classification::inconclusive);

    GrowthProfile p;
    p.t = linear_grid(0.5, 3.0, 24);
    for (double t : p.t)
        p.vol.push_back(std::exp(0.5 * t));
    p = cumulative_F(std::move(p));
    CHECK(classify_condition_ii(p).classification == Classification::inconclusive);
    p.vol.clear();
    p.t = linear_grid(0.5, 12.0, 48);
    for (double t : p.t)
        p.vol.push_back(std::exp(0.5 * t));
    p = cumulative_F(std::move(p));
    CHECK(classify_condition_ii(p).classification == Classification::exponential);
}

TEST_CASE("analysis preconditions")
{
    const auto p = build_profile(gallery("torus"), linear_grid(0.6, 2.0, 8), gl(8, 4));
    CHECK_THROWS_AS(check_condition_i(p, 1.0), std::invalid_argument);
    CHECK_NOTHROW(check_condition_i(p, 0.6));
    CHECK_THROWS_AS(classify_condition_ii(p), std::invalid_argument);
    CHECK_THROWS_AS(finite_order_fit(p), std::invalid_argument);
    CHECK_THROWS_AS(build_profile(gallery("torus"), {1.0, 0.5}, gl(8, 4)), std::invalid_argument);
    CHECK_THROWS_AS(build_profile(gallery("sl2c"), {1.0, 13.0}, gl(8, 4)), std::invalid_argument);

    auto flat = gallery("torus");
    flat.pd_everywhere = false;
    const auto q = build_profile(flat, linear_grid(0.5, 2.0, 8), gl(8, 4));
    CHECK(!q.sphere_direct);
    CHECK_THROWS_AS(hoelder_chain_check(q), std::invalid_argument);
}

TEST_CASE("invariant checker reports violations by name")
{
    auto p = build_profile(gallery("torus"), linear_grid(0.5, 4.0, 10), gl(8, 4));
    p.vol[3] = -1.0;
    (*p.sphere_direct)[5] *= 1.5;
    const auto v = check_invariants(p);
    auto has = [&v](const std::string& n) {
        return std::any_of(v.begin(), v.end(), [&n](const InvariantViolation& x) { return x.name == n; });
    };
    CHECK(has("vol nonnegative"));
    CHECK(has("vol nondecreasing"));
    CHECK(has("sphere_direct agrees with sphere_ball"));
}

TEST_CASE("metric swap scales volumes and keeps classifications")
{
    const auto grid = linear_grid(0.5, 10.0, 32);
    for (const char* name : {"torus", "iwasawa", "sl2c"}) {
        const auto base_model = gallery(name);
        const auto base = build_profile(base_model, grid, gl(16, 8), {false});
        for (double a : {0.5, 2.0}) {
            CAPTURE(name);
            CAPTURE(a);
            const auto p = build_profile(base_model.scaled(a), grid, gl(16, 8), {false});
            for (std::size_t k = 0; k < grid.size(); ++k) {
                CHECK(p.vol[k] == doctest::Approx(a * a * base.vol[k]).epsilon(1e-10));
                CHECK(p.F[k] == doctest::Approx(a * a * base.F[k]).epsilon(1e-10));
            }
            CHECK(check_condition_i(p).holds == check_condition_i(base).holds);
            CHECK(classify_condition_ii(p).classification == classify_condition_ii(base).classification);
        }
    }
}

TEST_CASE("doubling the product orders changes vol by less than 0.1%")
{
    for (const char* name : {"torus", "iwasawa"})
        for (double t : {1.0, 2.0, 4.0}) {
            const auto c = check_convergence(gallery(name), t, gl(16, 8));
            CAPTURE(name);
            CAPTURE(t);
            CHECK(c.converged);
            CHECK(c.relative_change < 1e-3);
        }
}
