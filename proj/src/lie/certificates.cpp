#include "growthlab/lie/certificates.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace growthlab::lie {

std::string to_string(CertificateKind k)
{
    switch (k) {
    case CertificateKind::gauduchon_member:
        return "gauduchon-member";
    case CertificateKind::strongly_gauduchon:
        return "strongly-gauduchon";
    case CertificateKind::degenerate_balanced_witness:
        return "degenerate-balanced-witness";
    case CertificateKind::dk_member:
        return "dk-member";
    case CertificateKind::hs_positive:
        break;
    }
    return "hs-positive";
}

const InvariantForm* ConeCertificate::witness(const std::string& name) const
{
    for (const auto& [n, f] : witnesses)
        if (n == name)
            return &f;
    return nullptr;
}

namespace {

const char* kReference = "standard diagonal metric (i/2) sum_k xi^k ^ bar(xi^k)";

std::string decimal(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

void require_closed_real_2form(const InvariantComplex& cx, const InvariantForm& a, const char* what)
{
    if (a.dim() != cx.dim())
        throw std::invalid_argument(std::string(what) + " has the wrong dimension");
    if (!a.is_zero() && a.degree() != 2)
        throw std::invalid_argument(std::string(what) + " is not a 2-form");
    if (!a.is_real())
        throw std::invalid_argument(std::string(what) + " is not real");
    if (!cx.d(a).is_zero())
        throw std::invalid_argument(std::string(what) + " is not closed");
}

mpz_class binomial(int n, int k)
{
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Mask hat(int n, int j) { return ((Mask{1} << n) - 1) & ~(Mask{1} << j); }

// Sign and i-power normalization of the associated matrix.
GQ associated_scale(int n)
{
    GQ ip = 1;
    for (int k = 0; k < n - 1; ++k)
        ip *= GQ::i();
    const int s = ((n - 1) * (n - 2) / 2) % 2 == 0 ? 1 : -1;
    return GQ(1) / (GQ(s) * ip);
}

struct Positivity {
    bool hermitian = false;
    bool positive = false;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

Positivity positivity(const ExactMatrix& m)
{
    Positivity out;
    out.hermitian = m.is_hermitian();
    if (!out.hermitian)
        return out;
    out.positive = m.hermitian_positive_definite();
    const auto [lo, hi] = eigen_range(m.to_complex());
    out.lambda_min = lo;
    out.lambda_max = hi;
    return out;
}

std::optional<double> relative_margin(const Positivity& p)
{
    if (!p.hermitian || p.lambda_max <= 0.0)
        return std::nullopt;
    return p.lambda_min / p.lambda_max;
}

} // namespace

ExactMatrix metric_matrix(const InvariantForm& omega)
{
    const int n = omega.dim();
    ExactMatrix h(n, n);
    const GQ minus_i = -GQ::i();
    const InvariantForm part = omega.bidegree_component(1, 1);
    for (const auto& [m, c] : part.terms()) {
        const int j = std::countr_zero(m);
        const int k = std::countr_zero(m >> n);
        h(j, k) = c * minus_i;
    }
    return h;
}

ExactMatrix associated_matrix(const InvariantComplex& cx, const InvariantForm& big_omega)
{
    const int n = cx.dim();
    if (n < 2)
        throw std::invalid_argument("associated matrix needs dimension >= 2");
    if (!(big_omega.bidegree_component(n - 1, n - 1) == big_omega))
        throw std::invalid_argument("form is not of bidegree (n-1, n-1)");
    const GQ scale = associated_scale(n);
    ExactMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const GQ c = big_omega.coefficient(hat(n, j) | (hat(n, k) << n));
            m(j, k) = ((j + k) % 2 == 0 ? c : -c) * scale;
        }
    return m;
}

std::pair<double, double> eigen_range(const Eigen::MatrixXcd& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

ConeCertificate degenerate_balanced_witness(const InvariantComplex& cx, const InvariantForm& omega)
{
    const int n = cx.dim();
    if (n < 2)
        throw std::invalid_argument("degenerate balanced witness needs dimension >= 2");
    if (!(omega.bidegree_component(1, 1) == omega) || !omega.is_real() ||
        !metric_matrix(omega).hermitian_positive_definite())
        throw std::invalid_argument("omega must be a real positive-definite (1,1)-form");
    ConeCertificate out;
    out.kind = CertificateKind::degenerate_balanced_witness;
    const InvariantForm target = power(omega, n - 1);
    const bool balanced = cx.d(target).is_zero();
    const ExactMatrix d = cx.d_matrix(2 * n - 3);
    const auto rhs_basis = cx.total_basis(2 * n - 2);
    const auto sol = d.solve(cx.coordinates(target, rhs_basis));
    out.witnesses.emplace_back("omega", omega);
    out.witnesses.emplace_back("omega_power", target);
    if (!sol) {
        out.issued = false;
        out.verdict = "not degenerate balanced";
        const std::size_t r = d.rank();
        out.notes.push_back("rank d = " + std::to_string(r) + ", rank [d | omega^(n-1)] = " + std::to_string(r + 1));
        out.notes.push_back(balanced ? "omega is balanced" : "omega is not balanced");
        return out;
    }
    InvariantForm gamma = cx.from_coordinates(*sol, cx.total_basis(2 * n - 3));
    gamma = GQ(mpq_class(1, 2)) * realify(gamma);
    out.issued = cx.d(gamma) == target;
    out.verdict = out.issued ? "degenerate balanced" : "verification failed";
    out.residual = out.issued ? "0" : "nonzero";
    out.witnesses.emplace_back("Gamma", gamma);
    return out;
}

PowerWitness exact_power_witness(const InvariantComplex& cx, const InvariantForm& beta, int p)
{
    if (p < 1)
        throw std::invalid_argument("power must be >= 1");
    PowerWitness out;
    out.alpha = cx.d(beta);
    out.witness = wedge(beta, power(out.alpha, p - 1));
    out.verified = cx.d(out.witness) == power(out.alpha, p);
    return out;
}

ProductWitness product_witness(const FactorData& a, const FactorData& b)
{
    for (const FactorData* f : {&a, &b}) {
        if (f->complex == nullptr)
            throw std::invalid_argument("factor without a complex");
        const InvariantComplex& cx = *f->complex;
        if (f->gamma) {
            if (!(cx.d(*f->gamma) == power(f->omega, cx.dim() - 1)))
                throw std::invalid_argument("factor potential does not satisfy dGamma = omega^(n-1)");
        } else if (!cx.d(f->omega).is_zero()) {
            throw std::invalid_argument("factor needs a potential for omega^(n-1) or a closed omega");
        }
    }
    const int n1 = a.complex->dim(), n2 = b.complex->dim(), big = n1 + n2;
    ProductWitness out{direct_sum(a.complex->algebra(), b.complex->algebra()), {}, {}};
    const InvariantComplex cx(out.algebra);
    const InvariantForm w1 = embed(a.omega, big, 0), w2 = embed(b.omega, big, n1);
    const InvariantForm omega = w1 + w2;
    const InvariantForm target = power(omega, big - 1);

    ConeCertificate& cert = out.certificate;
    cert.kind = CertificateKind::degenerate_balanced_witness;
    cert.witnesses.emplace_back("omega", omega);
    cert.witnesses.emplace_back("omega_power", target);

    const GQ c1(mpq_class(binomial(big - 1, n1 - 1)));
    const GQ c2(mpq_class(binomial(big - 1, n1)));
    std::optional<InvariantForm> p1, p2;
    if (a.gamma)
        p1 = c1 * wedge(embed(*a.gamma, big, 0), power(w2, n2));
    if (b.gamma)
        p2 = c2 * wedge(power(w1, n1), embed(*b.gamma, big, n1));
    if (p1 && p2) {
        out.variant = "binomial";
    } else if (p1 && !b.gamma) {
        // ω₁^{n₁} ∧ ω₂^{n₂-1} with dω₂ = 0 needs a potential of ω₁^{n₁}.
        const InvariantComplex& f = *a.complex;
        const auto theta = f.d_matrix(2 * n1 - 1).solve(f.coordinates(power(a.omega, n1), f.total_basis(2 * n1)));
        if (theta) {
            const InvariantForm t = f.from_coordinates(*theta, f.total_basis(2 * n1 - 1));
            p2 = c2 * wedge(embed(t, big, 0), power(w2, n2 - 1));
            out.variant = "kaehler-factor";
        } else {
            cert.notes.push_back("omega_1^n1 is not exact on the first factor");
        }
    } else if (p2 && !a.gamma) {
        const InvariantComplex& f = *b.complex;
        const auto theta = f.d_matrix(2 * n2 - 1).solve(f.coordinates(power(b.omega, n2), f.total_basis(2 * n2)));
        if (theta) {
            const InvariantForm t = f.from_coordinates(*theta, f.total_basis(2 * n2 - 1));
            p1 = c1 * wedge(power(w1, n1 - 1), embed(t, big, n1));
            out.variant = "kaehler-factor";
        } else {
            cert.notes.push_back("omega_2^n2 is not exact on the second factor");
        }
    }
    if (p1 && p2) {
        const InvariantForm potential = *p1 + *p2;
        cert.issued = cx.d(potential) == target;
        cert.verdict = cert.issued ? "degenerate balanced" : "verification failed";
        cert.residual = cert.issued ? "0" : "nonzero";
        cert.witnesses.emplace_back("Gamma", potential);
        return out;
    }
    out.variant = "direct-solve";
    const ExactMatrix d = cx.d_matrix(2 * big - 3);
    const auto sol = d.solve(cx.coordinates(target, cx.total_basis(2 * big - 2)));
    if (!sol) {
        cert.issued = false;
        cert.verdict = "not degenerate balanced";
        const std::size_t r = d.rank();
        cert.notes.push_back("rank d = " + std::to_string(r) + ", rank [d | omega^(N-1)] = " + std::to_string(r + 1));
        return out;
    }
    const InvariantForm gamma =
        GQ(mpq_class(1, 2)) * realify(cx.from_coordinates(*sol, cx.total_basis(2 * big - 3)));
    cert.issued = cx.d(gamma) == target;
    cert.verdict = cert.issued ? "degenerate balanced" : "verification failed";
    cert.witnesses.emplace_back("Gamma", gamma);
    return out;
}

CohomologyDims cohomology_dims(const InvariantComplex& cx, int p, int q)
{
    const std::size_t dim = cx.basis(p, q).size();
    CohomologyDims out;
    const std::size_t closed = dim - ExactMatrix::vcat(cx.del_matrix(p, q), cx.del_bar_matrix(p, q)).rank();
    const std::size_t exact_bc = (p >= 1 && q >= 1) ? cx.del_del_bar_matrix(p - 1, q - 1).rank() : 0;
    out.bott_chern = closed - exact_bc;

    const std::size_t ddbar_closed = dim - cx.del_del_bar_matrix(p, q).rank();
    ExactMatrix images(dim, 0);
    if (p >= 1)
        images = ExactMatrix::hcat(images, cx.del_matrix(p - 1, q));
    if (q >= 1)
        images = ExactMatrix::hcat(images, cx.del_bar_matrix(p, q - 1));
    out.aeppli = ddbar_closed - images.rank();
    return out;
}

AeppliSpace aeppli_space(const InvariantComplex& cx, int p, int q)
{
    AeppliSpace s;
    s.p = p;
    s.q = q;
    s.basis = cx.basis(p, q);
    const std::size_t dim = s.basis.size();
    ExactMatrix images(dim, 0);
    if (p >= 1)
        images = ExactMatrix::hcat(images, cx.del_matrix(p - 1, q));
    if (q >= 1)
        images = ExactMatrix::hcat(images, cx.del_bar_matrix(p, q - 1));
    std::vector<std::size_t> piv;
    images.rref(&piv);
    std::vector<std::vector<GQ>> cols;
    for (std::size_t c : piv)
        cols.push_back(images.column(c));
    s.image_rank = cols.size();
    const auto kernel = cx.del_del_bar_matrix(p, q).nullspace();
    std::vector<std::vector<GQ>> all = cols;
    all.insert(all.end(), kernel.begin(), kernel.end());
    ExactMatrix::from_columns(all, dim).rref(&piv);
    for (std::size_t c : piv)
        if (c >= s.image_rank)
            s.complement.push_back(all[c]);
    std::vector<std::vector<GQ>> combined = cols;
    combined.insert(combined.end(), s.complement.begin(), s.complement.end());
    s.combined = ExactMatrix::from_columns(combined, dim);
    return s;
}

AeppliClass aeppli_class(const InvariantComplex& cx, const AeppliSpace& space, const InvariantForm& rep)
{
    if (!cx.del(cx.del_bar(rep)).is_zero())
        throw std::invalid_argument("representative is not ddbar-closed");
    const auto x = space.combined.solve(cx.coordinates(rep, space.basis));
    if (!x)
        throw std::logic_error("ddbar-closed form outside the Aeppli decomposition");
    AeppliClass out;
    out.p = space.p;
    out.q = space.q;
    out.coordinates.assign(x->begin() + static_cast<std::ptrdiff_t>(space.image_rank), x->end());
    out.representative = rep;
    return out;
}

AeppliClass p_map(const InvariantComplex& cx, const AeppliSpace& space, const InvariantForm& alpha)
{
    require_closed_real_2form(cx, alpha, "alpha");
    const int n = cx.dim();
    const InvariantForm rep = power(alpha, n - 1).bidegree_component(n - 1, n - 1);
    return aeppli_class(cx, space, rep);
}

AeppliClass p_map(const InvariantComplex& cx, const InvariantForm& alpha)
{
    return p_map(cx, aeppli_space(cx, cx.dim() - 1, cx.dim() - 1), alpha);
}

ConeCertificate certify_gauduchon(const InvariantComplex& cx, const InvariantForm& big_omega)
{
    ConeCertificate out;
    out.kind = CertificateKind::gauduchon_member;
    out.witnesses.emplace_back("Omega", big_omega);
    out.notes.push_back(std::string("positivity relative to the ") + kReference);
    if (!big_omega.is_real()) {
        out.verdict = "not certified";
        out.notes.push_back("Omega is not real");
        return out;
    }
    const Positivity pos = positivity(associated_matrix(cx, big_omega));
    out.margin = relative_margin(pos);
    const bool closed = cx.del(cx.del_bar(big_omega)).is_zero();
    out.issued = pos.positive && closed;
    out.verdict = out.issued ? "certified" : "not certified";
    if (!pos.positive)
        out.notes.push_back("associated matrix is not positive definite");
    if (!closed)
        out.notes.push_back("ddbar Omega != 0");
    return out;
}

ConeCertificate certify_strongly_gauduchon(const InvariantComplex& cx, const InvariantForm& omega)
{
    const int n = cx.dim();
    ConeCertificate out;
    out.kind = CertificateKind::strongly_gauduchon;
    out.witnesses.emplace_back("omega", omega);
    const InvariantForm target = cx.del(power(omega, n - 1));
    const auto sol = cx.del_bar_matrix(n, n - 2).solve(cx.coordinates(target, cx.basis(n, n - 1)));
    if (!sol) {
        out.verdict = "not strongly Gauduchon";
        return out;
    }
    const InvariantForm theta = cx.from_coordinates(*sol, cx.basis(n, n - 2));
    out.issued = cx.del_bar(theta) == target;
    out.verdict = out.issued ? "strongly Gauduchon" : "verification failed";
    out.witnesses.emplace_back("Theta", theta);
    return out;
}

ConeCertificate hs_positivity_check(const InvariantComplex& cx, const InvariantForm& omega_tilde)
{
    require_closed_real_2form(cx, omega_tilde, "omega_tilde");
    const int n = cx.dim();
    ConeCertificate out;
    out.kind = CertificateKind::hs_positive;
    out.witnesses.emplace_back("omega_tilde", omega_tilde);
    out.notes.push_back(std::string("positivity relative to the ") + kReference);
    if (!metric_matrix(omega_tilde).hermitian_positive_definite()) {
        out.verdict = "not certified";
        out.notes.push_back("(1,1) part is not positive definite");
        return out;
    }
    const InvariantForm big = power(omega_tilde, n - 1).bidegree_component(n - 1, n - 1);
    const ConeCertificate g = certify_gauduchon(cx, big);
    out.witnesses.emplace_back("Omega", big);
    out.issued = g.issued;
    out.margin = g.margin;
    out.verdict = g.issued ? "certified" : "not certified";
    for (std::size_t k = 1; k < g.notes.size(); ++k)
        out.notes.push_back(g.notes[k]);
    return out;
}

Eigen::MatrixXcd DkFamily::at(const Eigen::VectorXd& x) const
{
    Eigen::MatrixXcd m = m0;
    for (std::size_t r = 0; r < generators.size(); ++r)
        m += x(static_cast<Eigen::Index>(r)) * generators[r];
    return m;
}

double DkFamily::min_eigenvalue(const Eigen::VectorXd& x) const { return eigen_range(at(x)).first; }

DkFamily dk_family(const InvariantComplex& cx, const InvariantForm& alpha)
{
    require_closed_real_2form(cx, alpha, "alpha");
    const int n = cx.dim();
    DkFamily f;
    f.omega0 = power(alpha, n - 1).bidegree_component(n - 1, n - 1);
    f.m0 = associated_matrix(cx, f.omega0).to_complex();
    if (n >= 2)
        f.u_basis = cx.basis(n - 2, n - 1);
    for (Mask m : f.u_basis) {
        InvariantForm e(n);
        e.add_term(m, 1);
        const InvariantForm de = cx.del(e);
        f.generators.push_back(associated_matrix(cx, realify(de)).to_complex());
        f.generators.push_back(associated_matrix(cx, realify(GQ::i() * de)).to_complex());
    }
    return f;
}

DkSearchResult dk_membership_search(const InvariantComplex& cx, const InvariantForm& alpha,
                                    const DkSearchOptions& options)
{
    const DkFamily f = dk_family(cx, alpha);
    const auto np = static_cast<Eigen::Index>(f.parameters());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(np);
    DkSearchResult out;
    out.argmax = x;
    out.optimum = f.min_eigenvalue(x);
    for (int k = 1; k <= options.iterations; ++k) {
        out.iterations = k;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f.at(x));
        const Eigen::VectorXcd v = es.eigenvectors().col(0);
        Eigen::VectorXd g(np);
        for (Eigen::Index r = 0; r < np; ++r)
            g(r) = (v.adjoint() * f.generators[static_cast<std::size_t>(r)] * v)(0).real();
        const double gn = g.norm();
        if (gn < options.tolerance)
            break;
        x += g / (gn * k);
        const double lam = f.min_eigenvalue(x);
        if (lam > out.optimum) {
            out.optimum = lam;
            out.argmax = x;
        }
    }

    ConeCertificate& c = out.certificate;
    c.kind = CertificateKind::dk_member;
    c.witnesses.emplace_back("alpha", alpha);
    c.witnesses.emplace_back("Omega0", f.omega0);
    c.notes.push_back(std::string("positivity relative to the ") + kReference);
    c.notes.push_back("search over invariant representatives only");
    if (!(out.optimum > options.tolerance)) {
        c.verdict = "not certified";
        c.residual = decimal(options.tolerance);
        return out;
    }
    InvariantForm u(cx.dim());
    for (std::size_t r = 0; r < f.u_basis.size(); ++r) {
        const mpq_class re = rationalize(out.argmax(2 * r), options.max_denominator);
        const mpq_class im = rationalize(out.argmax(2 * r + 1), options.max_denominator);
        u.add_term(f.u_basis[r], GQ(re, im));
    }
    const InvariantForm du = cx.del(u);
    const InvariantForm big = f.omega0 + du + du.conj();
    const Positivity pos = positivity(associated_matrix(cx, big));
    c.witnesses.emplace_back("u", u);
    c.witnesses.emplace_back("Omega", big);
    c.margin = relative_margin(pos);
    c.issued = pos.positive && cx.del(cx.del_bar(big)).is_zero();
    c.verdict = c.issued ? "certified" : "not certified";
    c.residual = decimal(std::abs(pos.lambda_min - f.min_eigenvalue(out.argmax)));
    if (!c.issued)
        c.notes.push_back("rationalized optimum failed exact re-verification");
    return out;
}

nlohmann::json to_json(const ConeCertificate& c, const InvariantComplex& cx)
{
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [name, form] : c.witnesses) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, coeff] : form.terms())
            terms.push_back({{"basis", cx.label(m)}, {"re", coeff.re().get_str()}, {"im", coeff.im().get_str()}});
        w[name] = terms;
    }
    nlohmann::json j = {{"kind", to_string(c.kind)},
                        {"issued", c.issued},
                        {"verdict", c.verdict},
                        {"residual", c.residual},
                        {"witnesses", w},
                        {"notes", c.notes}};
    j["margin"] = c.margin ? nlohmann::json(*c.margin) : nlohmann::json(nullptr);
    return j;
}

bool reverify(const ConeCertificate& c, const InvariantComplex& cx)
{
    const int n = cx.dim();
    auto get = [&c](const char* name) -> const InvariantForm& {
        const InvariantForm* f = c.witness(name);
        if (f == nullptr)
            throw std::invalid_argument(std::string("certificate lacks witness ") + name);
        return *f;
    };
    switch (c.kind) {
    case CertificateKind::degenerate_balanced_witness: {
        const InvariantForm& target = get("omega_power");
        if (!(power(get("omega"), n - 1) == target))
            return false;
        if (c.issued)
            return cx.d(get("Gamma")) == target;
        return !cx.d_matrix(2 * n - 3).solve(cx.coordinates(target, cx.total_basis(2 * n - 2)));
    }
    case CertificateKind::strongly_gauduchon:
        if (c.issued)
            return cx.del_bar(get("Theta")) == cx.del(power(get("omega"), n - 1));
        return !certify_strongly_gauduchon(cx, get("omega")).issued;
    case CertificateKind::gauduchon_member:
        return certify_gauduchon(cx, get("Omega")).issued == c.issued;
    case CertificateKind::hs_positive:
        return hs_positivity_check(cx, get("omega_tilde")).issued == c.issued;
    case CertificateKind::dk_member: {
        const InvariantForm& alpha = get("alpha");
        const InvariantForm omega0 = power(alpha, n - 1).bidegree_component(n - 1, n - 1);
        if (!(omega0 == get("Omega0")))
            return false;
        if (!c.issued)
            return true;
        const InvariantForm du = cx.del(get("u"));
        const InvariantForm& big = get("Omega");
        if (!(omega0 + du + du.conj() == big))
            return false;
        const ExactMatrix m = associated_matrix(cx, big);
        if (!m.hermitian_positive_definite() || !cx.del(cx.del_bar(big)).is_zero())
            return false;
        if (c.margin) {
            const auto [lo, hi] = eigen_range(m.to_complex());
            return std::abs(lo / hi - *c.margin) <= 1e-9;
        }
        return true;
    }
    }
    return false;
}

} // namespace growthlab::lie
