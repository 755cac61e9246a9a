#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace growthlab::forms;
using namespace testing_support;

namespace {

constexpr Complex I{0.0, 1.0};

Mask mask_of(int m, std::initializer_list<int> holo, std::initializer_list<int> anti)
{
    Mask out = 0;
    for (int j : holo)
        out |= Mask{1} << j;
    for (int k : anti)
        out |= Mask{1} << (m + k);
    return out;
}

} // namespace

TEST_CASE("wedge of a generator with itself vanishes")
{
    CHECK(wedge(dz(2, 0), dz(2, 0)).is_zero());
}

TEST_CASE("wedge reorders into holomorphic-first normal form")
{
    const int m = 2;
    const auto a = wedge(dz(m, 0), dzbar(m, 0));
    const auto b = wedge(dz(m, 1), dzbar(m, 1));
    const auto ab = wedge(a, b);
    REQUIRE(ab.terms().size() == 1);
    // dz1 dz̄1 dz2 dz̄2 = - dz1 dz2 dz̄1 dz̄2
    CHECK(ab.coefficient(mask_of(m, {0, 1}, {0, 1})) == Complex(-1.0));

    // (dz1∧dz̄2)∧(dz2∧dz̄1): generator sequence (0,3,1,2) has two inversions
    const auto c = wedge(wedge(dz(m, 0), dzbar(m, 1)), wedge(dz(m, 1), dzbar(m, 0)));
    CHECK(c.coefficient(mask_of(m, {0, 1}, {0, 1})) == Complex(1.0 * bubble_parity({0, 3, 1, 2})));
    CHECK(c.coefficient(mask_of(m, {0, 1}, {0, 1})) == Complex(1.0));
}

TEST_CASE("wedge agrees with the brute-force permutation oracle")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + trial % 2;
        const int k = 1 + trial % 3;
        const int l = 1 + (trial / 3) % 2;
        const auto a = random_form(m, k, rng);
        const auto b = random_form(m, l, rng);
        CHECK(max_abs_diff(wedge(a, b), brute_wedge(a, b)) < 1e-12);
    }
}

TEST_CASE("graded anticommutativity")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + trial % 3;
        const int k = 1 + trial % 3;
        const int l = 1 + (trial / 3) % 3;
        const auto a = random_form(m, k, rng);
        const auto b = random_form(m, l, rng);
        const double sign = ((k * l) & 1) ? -1.0 : 1.0;
        CHECK(max_abs_diff(wedge(a, b), wedge(b, a) * Complex(sign)) < 1e-12);
    }
}

TEST_CASE("wedge errors on dimension mismatch and saturates above top degree")
{
    CHECK_THROWS_AS(wedge(dz(2, 0), dz(3, 0)), std::invalid_argument);
    std::mt19937_64 rng(3);
    CHECK(wedge(random_form(2, 3, rng), random_form(2, 2, rng)).is_zero());
}

TEST_CASE("mixed total degree is rejected")
{
    ExteriorForm f = dz(2, 0);
    CHECK_THROWS_AS(f += wedge(dz(2, 0), dz(2, 1)), std::invalid_argument);
}

TEST_CASE("bidegree components")
{
    const int m = 2;
    const auto f = wedge(dz(m, 0), dz(m, 1)) + wedge(dz(m, 0), dzbar(m, 0));
    CHECK(f.bidegree_component(1, 1) == wedge(dz(m, 0), dzbar(m, 0)));
    CHECK(f.bidegree_component(2, 0) == wedge(dz(m, 0), dz(m, 1)));
    CHECK(f.bidegree_component(0, 2).is_zero());

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 4;
        const auto a = random_form(3, k, rng);
        ExteriorForm sum(3);
        for (int p = 0; p <= k; ++p)
            sum += a.bidegree_component(p, k - p);
        CHECK(max_abs_diff(sum, a) == 0.0);
        for (int p = 0; p <= k; ++p)
            CHECK(max_abs_diff(conj(a.bidegree_component(p, k - p)), conj(a).bidegree_component(k - p, p)) == 0.0);
    }
}

TEST_CASE("(2,2)-part of a squared real 2-form against term-by-term expansion")
{
    std::mt19937_64 rng(21);
    const int m = 3;
    const auto sigma = random_bidegree(m, 2, 0, rng);
    const auto omega = random_pd(m, rng).to_form();
    const auto alpha = sigma + conj(sigma) + omega;
    const auto sq = wedge(alpha, alpha).bidegree_component(2, 2);
    const auto expected = brute_wedge(omega, omega) + brute_wedge(sigma, conj(sigma)) * Complex(2.0);
    CHECK(max_abs_diff(sq, expected) < 1e-12);
}

TEST_CASE("power_over_factorial")
{
    const auto beta = euclidean(2).to_form();
    CHECK(top_density(power_over_factorial(beta, 2)).value == doctest::Approx(1.0).epsilon(1e-15));

    CMatrix rank1(2, 2);
    rank1 << 1.0, Complex(0.0, 2.0), Complex(0.0, -2.0), 4.0;
    CHECK(power_over_factorial(HermitianForm(rank1).to_form(), 2).is_zero());

    std::mt19937_64 rng(2);
    for (int m = 1; m <= 4; ++m) {
        const auto g = random_pd(m, rng);
        const double det = g.matrix().determinant().real();
        CHECK(top_density(volume_form(g)).value == doctest::Approx(std::ldexp(det, m)).epsilon(1e-12));
    }
}

TEST_CASE("top_density conventions")
{
    for (int m = 1; m <= 4; ++m)
        CHECK(top_density(volume_form(euclidean(m))).value == doctest::Approx(1.0).epsilon(1e-14));

    // Iwasawa pullback at z1 = 0: h = I, f*ω²/2! = dV0 = 4 dLeb
    CMatrix h = CMatrix::Identity(2, 2);
    CHECK(top_density(volume_form(HermitianForm(h))).value == doctest::Approx(4.0));
    CHECK(top_density(ExteriorForm(2)).value == 0.0);
    CHECK_THROWS_AS(top_density(dz(2, 0)), std::invalid_argument);
    const Mask full = (Mask{1} << 4) - 1;
    CHECK_THROWS_AS(top_density(ExteriorForm::monomial_mask(2, full, I)), std::domain_error);
}

TEST_CASE("covector norms")
{
    const auto beta = euclidean(2);
    CVector z(2);
    z << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const auto dtau = del_tau(z) + delbar_tau(z);
    CHECK(covector_norm(dtau, beta) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(covector_norm(dz(2, 0), beta) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(covector_norm(ExteriorForm(2), beta) == 0.0);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(1, 1) = 0.0;
    CHECK_THROWS(covector_norm(dz(2, 0), HermitianForm(bad)));
}

TEST_CASE("trace_lambda")
{
    std::mt19937_64 rng(4);
    for (int m = 1; m <= 4; ++m) {
        const auto g = random_pd(m, rng);
        CHECK(std::abs(trace_lambda(g.to_form(), g) - Complex(m)) < 1e-12);
    }
    // i∂∂̄τ against the Fubini–Study pullback at the origin (h = I, m = 2)
    CMatrix id = CMatrix::Identity(2, 2);
    const auto ddbar_tau = HermitianForm(id).to_form();
    CHECK(std::abs(trace_lambda(ddbar_tau, HermitianForm(id)) - Complex(2.0)) < 1e-14);
    // Iwasawa pullback with |z1|^2 = 1: h = diag(1, 2)
    CMatrix iw = CMatrix::Identity(2, 2);
    iw(1, 1) = 2.0;
    CHECK(std::abs(trace_lambda(ddbar_tau, HermitianForm(iw)) - Complex(1.5)) < 1e-14);
}

TEST_CASE("trace identity: γ ∧ g_{m-1} = Λ_g(γ) g_m")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + trial % 3;
        const auto g = random_pd(m, rng);
        const auto gamma = random_bidegree(m, 1, 1, rng);
        const auto lhs = wedge(gamma, power_over_factorial(g.to_form(), m - 1));
        const Complex lam = trace_lambda(gamma, g);
        const auto rhs = volume_form(g) * lam;
        CHECK(max_abs_diff(lhs, rhs) < 1e-10 * std::max(1.0, max_abs(rhs)));
    }
}

TEST_CASE("Hodge star of constants and the normalized dτ")
{
    std::mt19937_64 rng(8);
    for (int m = 1; m <= 3; ++m) {
        const auto g = random_pd(m, rng);
        const auto vol = volume_form(g);
        CHECK(max_abs_diff(hodge_star(ExteriorForm::scalar(m, 1.0), g), vol) < 1e-10 * max_abs(vol));
        CHECK(max_abs_diff(hodge_star(vol, g), ExteriorForm::scalar(m, 1.0)) < 1e-10);

        CVector z(m);
        for (int j = 0; j < m; ++j)
            z(j) = random_complex(rng);
        auto dtau = del_tau(z) + delbar_tau(z);
        dtau *= Complex(1.0 / covector_norm(dtau, g));
        CHECK(max_abs_diff(wedge(dtau, hodge_star(dtau, g)), vol) < 1e-10 * max_abs(vol));
    }
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 0) = -1.0;
    CHECK_THROWS_AS(hodge_star(dz(2, 0), HermitianForm(bad)), std::invalid_argument);
}

TEST_CASE("star-norm identity on 200 random forms")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + trial % 2;
        const int k = 1 + trial % 2;
        const auto g = random_pd(m, rng);
        const auto v = random_form(m, k, rng);
        const double vol = top_density(volume_form(g)).value;
        const double lhs = top_density(wedge(v, hodge_star(conj(v), g)), 1e-9).value;
        const double rhs = squared_norm(v, g) * vol;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("primitive-star formula on 200 random 1-forms")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + trial % 3;
        const auto g = random_pd(m, rng);
        const auto v10 = random_bidegree(m, 1, 0, rng);
        const auto v01 = random_bidegree(m, 0, 1, rng);
        const auto g_lower = power_over_factorial(g.to_form(), m - 1);
        // (-1)^{k(k+1)/2} i^{p-q} g_{m-1} ∧ v with k = 1
        const auto closed = wedge(g_lower, v10) * (-I) + wedge(g_lower, v01) * I;
        const auto star = hodge_star(v10 + v01, g);
        CHECK(max_abs_diff(star, closed) < 1e-10 * std::max(1.0, max_abs(closed)));
    }
}
