#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "growthlab/lie/certificates.hpp"

using namespace growthlab::lie;

namespace {

GQ q(long a, long b = 1) { return GQ(mpq_class(a, b)); }

InvariantForm gen(const InvariantComplex& cx, int k) { return InvariantForm::generator(cx.dim(), k); }
InvariantForm bar(const InvariantComplex& cx, int k) { return InvariantForm::generator_bar(cx.dim(), k); }

GQ small_gaussian(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    return GQ(mpq_class(d(rng)), mpq_class(d(rng)));
}

InvariantForm random_closed_real_2form(const InvariantComplex& cx, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    InvariantForm a(cx.dim());
    for (const auto& f : closed_real_forms(cx, 2))
        a += GQ(d(rng)) * f;
    return a;
}

InvariantForm random_real_1form(const InvariantComplex& cx, std::mt19937_64& rng)
{
    InvariantForm b(cx.dim());
    for (int k = 0; k < cx.dim(); ++k)
        b += small_gaussian(rng) * gen(cx, k);
    return realify(b);
}

// Jacobi identity from the dual bracket [e_i, e_j] = -Σ_k c^k_{ij} e_k.
bool bracket_jacobi(const ComplexLieAlgebra& g)
{
    const int n = g.dim();
    auto c = [&g](int k, int i, int j) -> GQ {
        if (i == j)
            return GQ();
        return i < j ? g.constant(k, i, j) : -g.constant(k, j, i);
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e)
                for (int out = 0; out < n; ++out) {
                    GQ sum;
                    for (int m = 0; m < n; ++m)
                        sum += c(m, a, b) * c(out, m, e) + c(m, b, e) * c(out, m, a) + c(m, e, a) * c(out, m, b);
                    if (!sum.is_zero())
                        return false;
                }
    return true;
}

} // namespace

TEST_CASE("Gaussian rationals")
{
    const GQ a = GQ::parse("1/2+3i");
    CHECK(a.re() == mpq_class(1, 2));
    CHECK(a.im() == 3);
    CHECK(GQ::parse("-i") == -GQ::i());
    CHECK(GQ::parse("-1/2-5/3i").to_string() == "-1/2-5/3i");
    CHECK(GQ::parse("4/6").to_string() == "2/3");
    CHECK(GQ::parse("2i").to_string() == "2i");
    CHECK((a * a.conj()).to_string() == "37/4");
    CHECK((a / a) == GQ(1));
    CHECK((GQ::i() * GQ::i()) == GQ(-1));
    CHECK_THROWS_AS(GQ(1) / GQ(), std::domain_error);
    CHECK_THROWS_AS(GQ::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(GQ::parse("1/0"), std::invalid_argument);
    CHECK(rationalize(0.333333333333) == mpq_class(1, 3));
    CHECK(rationalize(-2.5) == mpq_class(-5, 2));
}

TEST_CASE("exact matrices")
{
    ExactMatrix m(3, 3);
    long v[9] = {2, 1, 0, 1, 3, 1, 0, 1, 4};
    for (int k = 0; k < 9; ++k)
        m(k / 3, k % 3) = v[k];
    CHECK(m.rank() == 3);
    CHECK(m.determinant() == GQ(18));
    CHECK(m.hermitian_positive_definite());
    m(2, 2) = GQ(mpq_class(1, 5));
    CHECK(m.determinant() == GQ(2 * 3 * mpq_class(1, 5) - 2 - mpq_class(1, 5)));
    ExactMatrix s(2, 3);
    s(0, 0) = 1;
    s(0, 1) = GQ::i();
    s(1, 0) = 2;
    s(1, 1) = GQ(0, 2);
    CHECK(s.rank() == 1);
    const auto ns = s.nullspace();
    CHECK(ns.size() == 2);
    for (const auto& x : ns) {
        const auto y = s * ExactMatrix::from_columns({x}, 3);
        CHECK(y.is_zero());
    }
    CHECK(s.solve({GQ(1), GQ(2)}));
    CHECK(!s.solve({GQ(1), GQ(1)}));
    ExactMatrix h(2, 2);
    h(0, 0) = 1;
    h(1, 1) = 1;
    h(0, 1) = 2;
    h(1, 0) = 2;
    CHECK(!h.hermitian_positive_definite());
    h(0, 1) = GQ::i();
    CHECK(!h.is_hermitian());
}

TEST_CASE("structure equations of sl(2,C), Heisenberg and abelian algebras")
{
    const InvariantComplex sl2(builtin_algebra("sl2c"));
    const auto d = sl2.structure_equations();
    CHECK(d[0] == wedge(gen(sl2, 1), gen(sl2, 2)));
    CHECK(d[1] == wedge(gen(sl2, 2), gen(sl2, 0)));
    CHECK(d[2] == wedge(gen(sl2, 0), gen(sl2, 1)));
    CHECK(sl2.d(bar(sl2, 0)) == wedge(bar(sl2, 1), bar(sl2, 2)));

    const InvariantComplex h(builtin_algebra("heisenberg"));
    const auto dh = h.structure_equations();
    CHECK(dh[0].is_zero());
    CHECK(dh[1].is_zero());
    CHECK(dh[2] == -wedge(gen(h, 0), gen(h, 1)));

    const InvariantComplex t(builtin_algebra("abelian", 4));
    for (const auto& e : t.structure_equations())
        CHECK(e.is_zero());
    CHECK(sl2.to_string(d[0]) == "1 beta^gamma");
}

TEST_CASE("d squared vanishes on every builtin algebra")
{
    for (const auto& name : builtin_algebra_names()) {
        const InvariantComplex cx(builtin_algebra(name));
        CAPTURE(name);
        CHECK(check_jacobi(cx.algebra()).holds);
        CHECK(cx.bicomplex_identities_hold());
        for (int k = 0; k + 1 < 2 * cx.dim(); ++k)
            CHECK((cx.d_matrix(k + 1) * cx.d_matrix(k)).is_zero());
    }
}

TEST_CASE("Jacobi and d squared fail together under single perturbations")
{
    const auto base = builtin_algebra("sl2c");
    int broken = 0;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                ComplexLieAlgebra g = base;
                g.add_constant(k, i, j, 1);
                const bool jac = bracket_jacobi(g);
                const JacobiReport r = check_jacobi(g);
                CHECK(jac == r.holds);
                if (!r.holds) {
                    ++broken;
                    CHECK(r.message.find("triple") != std::string::npos);
                    CHECK_THROWS_AS(InvariantComplex{g}, JacobiError);
                }
            }
    CHECK(broken > 0);
}

TEST_CASE("degenerate balanced witness on sl(2,C)")
{
    const InvariantComplex cx(builtin_algebra("sl2c"));
    const InvariantForm omega = standard_metric(3);
    const ConeCertificate c = degenerate_balanced_witness(cx, omega);
    REQUIRE(c.issued);
    CHECK(c.residual == "0");
    const InvariantForm& gamma = *c.witness("Gamma");
    CHECK(cx.d(gamma) == power(omega, 2));
    InvariantForm expected(3);
    for (int k = 0; k < 3; ++k)
        expected += wedge(gen(cx, k), cx.d(bar(cx, k)));
    expected = q(1, 2) * expected;
    CHECK(cx.d(gamma - expected).is_zero());
    CHECK(cx.d(expected) == power(omega, 2));
    CHECK(reverify(c, cx));
    const auto j = to_json(c, cx);
    CHECK(j["kind"] == "degenerate-balanced-witness");
    CHECK(j["residual"] == "0");
}

TEST_CASE("degenerate balanced witness is infeasible on abelian and Heisenberg algebras")
{
    const InvariantComplex torus(builtin_algebra("abelian", 3));
    const auto t = degenerate_balanced_witness(torus, standard_metric(3));
    CHECK(!t.issued);
    CHECK(t.verdict == "not degenerate balanced");
    CHECK(reverify(t, torus));

    const InvariantComplex h(builtin_algebra("heisenberg"));
    const auto c = degenerate_balanced_witness(h, standard_metric(3));
    CHECK(!c.issued);
    CHECK(h.d(power(standard_metric(3), 2)).is_zero());
    CHECK(std::find(c.notes.begin(), c.notes.end(), "omega is balanced") != c.notes.end());
    CHECK(reverify(c, h));

    ExactMatrix bad(3, 3);
    bad(0, 0) = 1;
    bad(1, 1) = -1;
    bad(2, 2) = 1;
    CHECK_THROWS_AS(degenerate_balanced_witness(h, InvariantForm::hermitian(bad)), std::invalid_argument);
}

TEST_CASE("exact power witnesses")
{
    const InvariantComplex sl2(builtin_algebra("sl2c"));
    const auto db = degenerate_balanced_witness(sl2, standard_metric(3));
    const InvariantForm& beta = *db.witness("Gamma");
    const auto p1 = exact_power_witness(sl2, beta, 1);
    CHECK(p1.witness == beta);
    CHECK(p1.verified);
    const auto p2 = exact_power_witness(sl2, beta, 2);
    CHECK(p2.verified);
    CHECK(power(p2.alpha, 2).is_zero());

    std::mt19937_64 rng(3);
    const auto b1 = random_real_1form(sl2, rng);
    for (int p = 1; p <= 3; ++p)
        CHECK(exact_power_witness(sl2, b1, p).verified);

    const InvariantComplex t(builtin_algebra("abelian", 3));
    const auto pt = exact_power_witness(t, random_real_1form(t, rng), 2);
    CHECK(pt.alpha.is_zero());
    CHECK(pt.verified);
    CHECK_THROWS_AS(exact_power_witness(t, pt.alpha, 0), std::invalid_argument);
}

TEST_CASE("product witnesses")
{
    const InvariantComplex sl2(builtin_algebra("sl2c"));
    const InvariantForm w = standard_metric(3);
    const InvariantForm gamma = *degenerate_balanced_witness(sl2, w).witness("Gamma");

    const auto both = product_witness({&sl2, w, gamma}, {&sl2, w, gamma});
    CHECK(both.variant == "binomial");
    CHECK(both.certificate.issued);
    const InvariantComplex prod(both.algebra);
    CHECK(prod.d(*both.certificate.witness("Gamma")) == power(*both.certificate.witness("omega"), 5));

    const InvariantComplex line(builtin_algebra("abelian", 1));
    const auto mixed = product_witness({&sl2, w, gamma}, {&line, standard_metric(1), std::nullopt});
    CHECK(!mixed.certificate.issued);
    CHECK(mixed.certificate.verdict == "not degenerate balanced");

    const InvariantComplex t2(builtin_algebra("abelian", 2));
    const auto flat = product_witness({&t2, standard_metric(2), std::nullopt}, {&t2, standard_metric(2), std::nullopt});
    CHECK(!flat.certificate.issued);

    const InvariantComplex h(builtin_algebra("heisenberg"));
    CHECK_THROWS_AS(product_witness({&h, standard_metric(3), std::nullopt}, {&t2, standard_metric(2), std::nullopt}),
                    std::invalid_argument);
}

TEST_CASE("invariant Bott-Chern and Aeppli dimensions")
{
    const InvariantComplex t2(builtin_algebra("abelian", 2));
    const auto d11 = cohomology_dims(t2, 1, 1);
    CHECK(d11.bott_chern == 4);
    CHECK(d11.aeppli == 4);
    for (const auto& name : builtin_algebra_names()) {
        const InvariantComplex cx(builtin_algebra(name));
        CHECK(cohomology_dims(cx, 0, 0).bott_chern == 1);
    }
    const InvariantComplex sl2(builtin_algebra("sl2c"));
    std::vector<int> perm{0, 1, 2};
    std::vector<CohomologyDims> seen;
    do {
        const InvariantComplex cx(sl2.algebra().permuted(perm));
        for (int p = 0; p <= 3; ++p)
            for (int qq = 0; qq <= 3; ++qq) {
                const auto a = cohomology_dims(cx, p, qq);
                const auto b = cohomology_dims(sl2, p, qq);
                CHECK(a.bott_chern == b.bott_chern);
                CHECK(a.aeppli == b.aeppli);
            }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("P map is well defined on classes")
{
    std::mt19937_64 rng(2024);
    for (const char* name : {"abelian", "heisenberg", "sl2c"}) {
        const InvariantComplex cx(builtin_algebra(name));
        const AeppliSpace space = aeppli_space(cx, 2, 2);
        CAPTURE(name);
        CHECK(p_map(cx, space, InvariantForm(3)).coordinates ==
              std::vector<GQ>(space.complement.size(), GQ()));
        for (int trial = 0; trial < 50; ++trial) {
            const InvariantForm alpha = random_closed_real_2form(cx, rng);
            const InvariantForm beta = random_real_1form(cx, rng);
            const AeppliClass a = p_map(cx, space, alpha);
            const AeppliClass b = p_map(cx, space, alpha + cx.d(beta));
            CHECK(a == b);
            CHECK(p_map(cx, space, -alpha) == a);
        }
    }
    const InvariantComplex cx(builtin_algebra("sl2c"));
    CHECK_THROWS_AS(p_map(cx, standard_metric(3)), std::invalid_argument);
}

TEST_CASE("associated matrix of a power is the transposed adjugate")
{
    std::mt19937_64 rng(9);
    for (int n : {2, 3, 4}) {
        const InvariantComplex cx(builtin_algebra("abelian", n));
        for (int trial = 0; trial < 5; ++trial) {
            ExactMatrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a(i, j) = small_gaussian(rng);
            ExactMatrix h = a * a.adjoint() + ExactMatrix::identity(n);
            const ExactMatrix m = associated_matrix(cx, power(InvariantForm::hermitian(h), n - 1));
            GQ fact = 1;
            for (int k = 2; k < n; ++k)
                fact *= GQ(k);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    ExactMatrix minor(n - 1, n - 1);
                    for (int r = 0, rr = 0; r < n; ++r) {
                        if (r == k)
                            continue;
                        for (int c = 0, cc = 0; c < n; ++c) {
                            if (c == j)
                                continue;
                            minor(rr, cc++) = h(r, c);
                        }
                        ++rr;
                    }
                    const GQ cof = ((j + k) % 2 ? GQ(-1) : GQ(1)) * minor.determinant();
                    // adj(h)_{jk} = cof_{kj}; M = (n-1)! adj(h)^T, so M_{jk} = (n-1)! cof_{jk}
                    ExactMatrix minor2(n - 1, n - 1);
                    for (int r = 0, rr = 0; r < n; ++r) {
                        if (r == j)
                            continue;
                        for (int c = 0, cc = 0; c < n; ++c) {
                            if (c == k)
                                continue;
                            minor2(rr, cc++) = h(r, c);
                        }
                        ++rr;
                    }
                    const GQ cof_jk = ((j + k) % 2 ? GQ(-1) : GQ(1)) * minor2.determinant();
                    CHECK(m(j, k) == fact * cof_jk);
                    (void)cof;
                }
            CHECK(m.hermitian_positive_definite());
        }
    }
}

TEST_CASE("Gauduchon certificates")
{
    const InvariantComplex sl2(builtin_algebra("sl2c"));
    const auto c = certify_gauduchon(sl2, power(standard_metric(3), 2));
    CHECK(c.issued);
    CHECK(c.margin);
    CHECK(reverify(c, sl2));

    const InvariantComplex h(builtin_algebra("heisenberg"));
    CHECK(certify_gauduchon(h, power(standard_metric(3), 2)).issued);

    ExactMatrix ind(3, 3);
    ind(0, 0) = 1;
    ind(1, 1) = 1;
    ind(2, 2) = -1;
    const InvariantForm bad = power(InvariantForm::hermitian(ind), 2);
    const auto nc = certify_gauduchon(h, bad);
    CHECK(!nc.issued);
    CHECK(nc.verdict == "not certified");
    CHECK(reverify(nc, h));

    const auto sg = certify_strongly_gauduchon(sl2, standard_metric(3));
    CHECK(sg.issued);
    CHECK(reverify(sg, sl2));
}

TEST_CASE("Hermitian-symplectic positivity")
{
    const InvariantComplex t(builtin_algebra("abelian", 3));
    const InvariantForm w = standard_metric(3);
    const auto k = hs_positivity_check(t, w);
    CHECK(k.issued);
    CHECK(*k.witness("Omega") == power(w, 2));
    CHECK(reverify(k, t));

    const InvariantForm sigma = wedge(gen(t, 0), gen(t, 1));
    double last = 2.0;
    for (long num : {1, 2, 4, 8}) {
        const auto c = hs_positivity_check(t, w + q(num, 16) * realify(sigma));
        CHECK(c.issued);
        REQUIRE(c.margin);
        CHECK(*c.margin < last);
        last = *c.margin;
    }

    ExactMatrix ind(3, 3);
    ind(0, 0) = 1;
    ind(1, 1) = -1;
    ind(2, 2) = 1;
    const auto nc = hs_positivity_check(t, InvariantForm::hermitian(ind));
    CHECK(!nc.issued);

    const InvariantComplex sl2(builtin_algebra("sl2c"));
    CHECK_THROWS_AS(hs_positivity_check(sl2, standard_metric(3)), std::invalid_argument);
}

TEST_CASE("divisorially Kaehler search")
{
    const InvariantComplex t(builtin_algebra("abelian", 3));
    const auto kt = dk_membership_search(t, standard_metric(3));
    CHECK(kt.certificate.issued);
    CHECK(reverify(kt.certificate, t));

    std::mt19937_64 rng(77);
    const InvariantComplex sl2(builtin_algebra("sl2c"));
    for (int trial = 0; trial < 3; ++trial) {
        const InvariantForm alpha = random_closed_real_2form(sl2, rng);
        const auto r = dk_membership_search(sl2, alpha);
        CHECK(r.certificate.issued);
        CHECK(r.optimum > 0.0);
        CHECK(reverify(r.certificate, sl2));
        const auto j = to_json(r.certificate, sl2);
        CHECK(j["kind"] == "dk-member");
        CHECK(j["witnesses"].contains("u"));
    }
    CHECK_THROWS_AS(dk_membership_search(sl2, standard_metric(3)), std::invalid_argument);
}

TEST_CASE("search agrees with a grid oracle on the torus (2,0)+(0,2) family")
{
    const InvariantComplex t(builtin_algebra("abelian", 3));
    const InvariantForm alpha = realify(wedge(gen(t, 0), gen(t, 1)));
    const InvariantForm sq = power(alpha, 2).bidegree_component(2, 2);
    CHECK(sq == q(2) * wedge(wedge(gen(t, 0), gen(t, 1)), wedge(bar(t, 0), bar(t, 1))));
    const DkFamily f = dk_family(t, alpha);
    double grid_best = -1e300;
    const auto np = static_cast<Eigen::Index>(f.parameters());
    for (int s = 0; s < 200; ++s) {
        Eigen::VectorXd x(np);
        for (Eigen::Index r = 0; r < np; ++r)
            x(r) = -2.0 + 4.0 * ((s * 7919 + r * 104729) % 200) / 199.0;
        grid_best = std::max(grid_best, f.min_eigenvalue(x));
    }
    const auto r = dk_membership_search(t, alpha);
    CHECK(r.optimum >= grid_best - 1e-9);
    CHECK(r.optimum == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!r.certificate.issued);
    CHECK(r.certificate.verdict == "not certified");
}

TEST_CASE("minimal eigenvalue is concave along the search family")
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (const char* name : {"sl2c", "heisenberg"}) {
        const InvariantComplex cx(builtin_algebra(name));
        const DkFamily f = dk_family(cx, random_closed_real_2form(cx, rng));
        const auto np = static_cast<Eigen::Index>(f.parameters());
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXd a(np), b(np);
            for (Eigen::Index r = 0; r < np; ++r) {
                a(r) = nd(rng);
                b(r) = nd(rng);
            }
            const double mid = f.min_eigenvalue(0.5 * (a + b));
            CHECK(mid >= 0.5 * (f.min_eigenvalue(a) + f.min_eigenvalue(b)) - 1e-12);
        }
    }
}

TEST_CASE("structure file parsing and diagnostics")
{
    const std::string good = R"({
  "dim": 3,
  "labels": ["alpha", "beta", "gamma"],
  "constants": [
    [1, 2, 3, "1", "0"],
    [2, 3, 1, 1, 0],
    [3, 1, 2, 1]
  ]
})";
    const auto g = parse_structure_json(good);
    CHECK(g.constant(0, 1, 2) == GQ(1));
    CHECK(g.constant(1, 0, 2) == GQ(-1));
    CHECK(g.constant(2, 0, 1) == GQ(1));
    const auto sl2 = builtin_algebra("sl2c");
    CHECK(g.to_json() == sl2.to_json());

    try {
        parse_structure_json("{\n  \"dim\": 3,\n  \"constants\": [\n    [1, 2, 3, 1, 0],\n    [2, 3, 4, 1, 0]\n  ]\n}");
        FAIL("expected a StructureError");
    } catch (const StructureError& e) {
        CHECK(e.line() == 5);
        CHECK(e.field() == "constants[1].j");
    }
    try {
        parse_structure_json("{\n  \"dim\": 3,\n  \"constants\": [\n    [1, 2, 3, 1, 0],,\n  ]\n}");
        FAIL("expected a StructureError");
    } catch (const StructureError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_structure_json("{\"constants\": []}"), StructureError);
    CHECK_THROWS_AS(parse_structure_json("{\"dim\": 2, \"constants\": [[1, 1, 1, 1]]}"), StructureError);
    CHECK_THROWS_AS(parse_structure_json("{\"dim\": 2, \"constants\": [[1, 1, 2, \"a\"]]}"), StructureError);
    CHECK_THROWS_AS(load_structure_file("/nonexistent/file.json"), StructureError);
}
