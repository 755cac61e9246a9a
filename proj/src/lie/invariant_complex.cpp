#include "growthlab/lie/invariant_complex.hpp"

#include <bit>
#include <sstream>

namespace growthlab::lie {

namespace {

// Sign of a ∧ b for disjoint monomials, as the parity of inversions.
int wedge_sign(Mask a, Mask b)
{
    int inv = 0;
    for (Mask rest = b; rest != 0; rest &= rest - 1) {
        const int y = std::countr_zero(rest);
        inv += std::popcount(a >> (y + 1));
    }
    return (inv & 1) ? -1 : 1;
}

void combinations(int n, int k, int start, Mask current, std::vector<Mask>& out)
{
    if (k == 0) {
        out.push_back(current);
        return;
    }
    for (int i = start; i <= n - k; ++i)
        combinations(n, k - 1, i + 1, current | (Mask{1} << i), out);
}

std::vector<Mask> subsets(int n, int k)
{
    std::vector<Mask> out;
    combinations(n, k, 0, 0, out);
    return out;
}

enum class Part { both, holomorphic, antiholomorphic };

// d of each generator as (mask, coefficient) lists.
std::vector<std::vector<std::pair<Mask, GQ>>> generator_differentials(const ComplexLieAlgebra& g)
{
    const int n = g.dim();
    std::vector<std::vector<std::pair<Mask, GQ>>> out(2 * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const GQ& c = g.constant(k, i, j);
                if (c.is_zero())
                    continue;
                out[k].emplace_back((Mask{1} << i) | (Mask{1} << j), c);
                out[n + k].emplace_back((Mask{1} << (n + i)) | (Mask{1} << (n + j)), c.conj());
            }
    return out;
}

InvariantForm differentiate(const ComplexLieAlgebra& g, const InvariantForm& a, Part part)
{
    const int n = g.dim();
    if (a.dim() != n)
        throw std::invalid_argument("form and algebra dimensions differ");
    const auto dgen = generator_differentials(g);
    InvariantForm out(n);
    for (const auto& [m, c] : a.terms()) {
        int s = 0;
        for (Mask rest = m; rest != 0; rest &= rest - 1, ++s) {
            const int bit = std::countr_zero(rest);
            const bool holo = bit < n;
            if ((part == Part::holomorphic && !holo) || (part == Part::antiholomorphic && holo))
                continue;
            const Mask gbit = Mask{1} << bit;
            const Mask prefix = m & (gbit - 1);
            const Mask suffix = m & ~(gbit | (gbit - 1));
            for (const auto& [pm, pc] : dgen[bit]) {
                if ((pm & (prefix | suffix)) != 0)
                    continue;
                const int sign = ((s & 1) ? -1 : 1) * wedge_sign(prefix, pm) * wedge_sign(prefix | pm, suffix);
                out.add_term(prefix | pm | suffix, GQ(sign) * c * pc);
            }
        }
    }
    return out;
}

} // namespace

InvariantForm InvariantForm::constant(int n, const GQ& c)
{
    InvariantForm f(n);
    f.add_term(0, c);
    return f;
}

InvariantForm InvariantForm::generator(int n, int k)
{
    InvariantForm f(n);
    f.add_term(Mask{1} << k, 1);
    return f;
}

InvariantForm InvariantForm::generator_bar(int n, int k)
{
    InvariantForm f(n);
    f.add_term(Mask{1} << (n + k), 1);
    return f;
}

InvariantForm InvariantForm::hermitian(const ExactMatrix& h)
{
    const int n = static_cast<int>(h.rows());
    if (h.cols() != h.rows())
        throw std::invalid_argument("metric matrix must be square");
    InvariantForm f(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (!h(j, k).is_zero())
                f.add_term((Mask{1} << j) | (Mask{1} << (n + k)), GQ::i() * h(j, k));
    return f;
}

GQ InvariantForm::coefficient(Mask m) const
{
    const auto it = terms_.find(m);
    return it == terms_.end() ? GQ() : it->second;
}

int InvariantForm::degree() const
{
    int deg = -1;
    for (const auto& [m, c] : terms_) {
        const int d = std::popcount(m);
        if (deg >= 0 && d != deg)
            return -1;
        deg = d;
    }
    return deg;
}

void InvariantForm::add_term(Mask m, const GQ& c)
{
    if (n_ <= 0 || m >> (2 * n_) != 0)
        throw std::out_of_range("monomial outside the exterior algebra");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

InvariantForm InvariantForm::bidegree_component(int p, int q) const
{
    InvariantForm out(n_);
    for (const auto& [m, c] : terms_)
        if (holomorphic_degree(m, n_) == p && antiholomorphic_degree(m, n_) == q)
            out.terms_.emplace(m, c);
    return out;
}

InvariantForm InvariantForm::conj() const
{
    InvariantForm out(n_);
    const Mask low = (Mask{1} << n_) - 1;
    for (const auto& [m, c] : terms_) {
        const Mask i = m & low, j = m >> n_;
        const int sign = (std::popcount(i) * std::popcount(j)) & 1 ? -1 : 1;
        out.terms_.emplace(j | (i << n_), sign > 0 ? c.conj() : -c.conj());
    }
    return out;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o)
{
    if (o.n_ != n_)
        throw std::invalid_argument("form dimension mismatch");
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o)
{
    if (o.n_ != n_)
        throw std::invalid_argument("form dimension mismatch");
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

InvariantForm operator-(const InvariantForm& a) { return GQ(-1) * a; }

InvariantForm operator*(const GQ& c, const InvariantForm& a)
{
    InvariantForm out(a.n_);
    if (c.is_zero())
        return out;
    for (const auto& [m, x] : a.terms_)
        out.terms_.emplace(m, c * x);
    return out;
}

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b)
{
    if (a.n_ != b.n_)
        throw std::invalid_argument("form dimension mismatch");
    InvariantForm out(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            if ((ma & mb) != 0)
                continue;
            const GQ c = ca * cb;
            out.add_term(ma | mb, wedge_sign(ma, mb) > 0 ? c : -c);
        }
    return out;
}

InvariantForm power(const InvariantForm& a, int p)
{
    if (p < 0)
        throw std::invalid_argument("negative power");
    InvariantForm out = InvariantForm::constant(a.dim(), 1);
    for (int k = 0; k < p; ++k)
        out = wedge(out, a);
    return out;
}

InvariantForm realify(const InvariantForm& a) { return a + a.conj(); }

InvariantForm standard_metric(int n)
{
    ExactMatrix h(n, n);
    for (int k = 0; k < n; ++k)
        h(k, k) = GQ(mpq_class(1, 2));
    return InvariantForm::hermitian(h);
}

InvariantForm embed(const InvariantForm& a, int n, int offset)
{
    const int na = a.dim();
    if (offset < 0 || offset + na > n)
        throw std::invalid_argument("factor does not fit in the direct sum");
    const Mask low = (Mask{1} << na) - 1;
    InvariantForm out(n);
    for (const auto& [m, c] : a.terms()) {
        const Mask hol = (m & low) << offset;
        const Mask anti = ((m >> na) << offset) << n;
        out.add_term(hol | anti, c);
    }
    return out;
}

int holomorphic_degree(Mask m, int n) { return std::popcount(m & ((Mask{1} << n) - 1)); }
int antiholomorphic_degree(Mask m, int n) { return std::popcount(m >> n); }

InvariantForm exterior_d(const ComplexLieAlgebra& g, const InvariantForm& a)
{
    return differentiate(g, a, Part::both);
}

InvariantForm del(const ComplexLieAlgebra& g, const InvariantForm& a)
{
    return differentiate(g, a, Part::holomorphic);
}

InvariantForm del_bar(const ComplexLieAlgebra& g, const InvariantForm& a)
{
    return differentiate(g, a, Part::antiholomorphic);
}

InvariantComplex::InvariantComplex(ComplexLieAlgebra algebra) : algebra_(std::move(algebra))
{
    const JacobiReport j = check_jacobi(algebra_);
    if (!j.holds)
        throw JacobiError(j);
    const int n = dim();
    bases_.resize(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int p = 0; p <= n; ++p) {
        const auto hol = subsets(n, p);
        for (int q = 0; q <= n; ++q) {
            const auto anti = subsets(n, q);
            auto& b = bases_[p * (n + 1) + q];
            for (Mask i : hol)
                for (Mask j : anti)
                    b.push_back(i | (j << n));
        }
    }
}

const std::vector<Mask>& InvariantComplex::basis(int p, int q) const
{
    const int n = dim();
    if (p < 0 || q < 0 || p > n || q > n)
        throw std::out_of_range("bidegree out of range");
    return bases_[p * (n + 1) + q];
}

std::vector<Mask> InvariantComplex::total_basis(int k) const
{
    std::vector<Mask> out;
    for (int p = std::min(k, dim()); p >= 0 && k - p <= dim(); --p) {
        const auto& b = basis(p, k - p);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

std::vector<InvariantForm> InvariantComplex::structure_equations() const
{
    std::vector<InvariantForm> out;
    for (int k = 0; k < dim(); ++k)
        out.push_back(d(InvariantForm::generator(dim(), k)));
    return out;
}

namespace {

template <class Op>
ExactMatrix operator_matrix(const InvariantComplex& cx, const std::vector<Mask>& from, const std::vector<Mask>& to,
                            Op op)
{
    std::map<Mask, std::size_t> row;
    for (std::size_t i = 0; i < to.size(); ++i)
        row[to[i]] = i;
    ExactMatrix m(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
        InvariantForm e(cx.dim());
        e.add_term(from[j], 1);
        const InvariantForm image = op(e);
        for (const auto& [mask, c] : image.terms()) {
            const auto it = row.find(mask);
            if (it == row.end())
                throw std::logic_error("operator image outside the target bidegree");
            m(it->second, j) = c;
        }
    }
    return m;
}

std::vector<Mask> basis_or_empty(const InvariantComplex& cx, int p, int q)
{
    if (p < 0 || q < 0 || p > cx.dim() || q > cx.dim())
        return {};
    return cx.basis(p, q);
}

} // namespace

ExactMatrix InvariantComplex::del_matrix(int p, int q) const
{
    return operator_matrix(*this, basis(p, q), basis_or_empty(*this, p + 1, q),
                           [this](const InvariantForm& e) { return del(e); });
}

ExactMatrix InvariantComplex::del_bar_matrix(int p, int q) const
{
    return operator_matrix(*this, basis(p, q), basis_or_empty(*this, p, q + 1),
                           [this](const InvariantForm& e) { return del_bar(e); });
}

ExactMatrix InvariantComplex::del_del_bar_matrix(int p, int q) const
{
    return operator_matrix(*this, basis(p, q), basis_or_empty(*this, p + 1, q + 1),
                           [this](const InvariantForm& e) { return del(del_bar(e)); });
}

ExactMatrix InvariantComplex::d_matrix(int k) const
{
    return operator_matrix(*this, total_basis(k), total_basis(k + 1), [this](const InvariantForm& e) { return d(e); });
}

std::vector<GQ> InvariantComplex::coordinates(const InvariantForm& a, const std::vector<Mask>& basis) const
{
    std::map<Mask, std::size_t> row;
    for (std::size_t i = 0; i < basis.size(); ++i)
        row[basis[i]] = i;
    std::vector<GQ> x(basis.size());
    for (const auto& [m, c] : a.terms()) {
        const auto it = row.find(m);
        if (it == row.end())
            throw std::invalid_argument("form has a term outside the requested basis");
        x[it->second] = c;
    }
    return x;
}

InvariantForm InvariantComplex::from_coordinates(const std::vector<GQ>& x, const std::vector<Mask>& basis) const
{
    if (x.size() != basis.size())
        throw std::invalid_argument("coordinate vector length mismatch");
    InvariantForm f(dim());
    for (std::size_t i = 0; i < x.size(); ++i)
        f.add_term(basis[i], x[i]);
    return f;
}

bool InvariantComplex::bicomplex_identities_hold() const
{
    const int n = dim();
    for (Mask m = 0; m < (Mask{1} << (2 * n)); ++m) {
        InvariantForm e(n);
        e.add_term(m, 1);
        if (!del(del(e)).is_zero() || !del_bar(del_bar(e)).is_zero() ||
            !(del(del_bar(e)) + del_bar(del(e))).is_zero() || !d(d(e)).is_zero())
            return false;
    }
    return true;
}

std::string InvariantComplex::label(Mask m) const
{
    const int n = dim();
    const auto& l = algebra_.labels();
    std::string out;
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        if (!out.empty())
            out += "^";
        out += b < n ? l[b] : "bar(" + l[b - n] + ")";
    }
    return out.empty() ? "1" : out;
}

std::string InvariantComplex::to_string(const InvariantForm& a) const
{
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        if (!first)
            os << " + ";
        first = false;
        const std::string coeff = c.to_string();
        os << (c.is_real() ? coeff : "(" + coeff + ")") << " " << label(m);
    }
    return os.str();
}

InvariantComplex build_complex(const ComplexLieAlgebra& algebra) { return InvariantComplex(algebra); }

std::vector<InvariantForm> closed_real_forms(const InvariantComplex& cx, int k)
{
    const auto basis = cx.total_basis(k);
    std::vector<InvariantForm> out;
    for (const auto& v : cx.d_matrix(k).nullspace()) {
        const InvariantForm f = cx.from_coordinates(v, basis);
        for (const InvariantForm& r : {realify(f), realify(GQ::i() * f)})
            if (!r.is_zero())
                out.push_back(r);
    }
    return out;
}

} // namespace growthlab::lie
