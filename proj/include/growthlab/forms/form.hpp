#pragma once

// Sparse exterior algebra over 2m generators split into m "holomorphic" and m
// "anti-holomorphic" ones. A basis monomial is a bitmask: bit j (j < m) is
// dz_{j+1}, bit m+j is dz̄_{j+1}. Monomials are always stored in generator
// order, so dz_I ∧ dz̄_J with I and J increasing is the normal form.
//
// The same template backs the pointwise double-precision forms and the exact
// Gaussian-rational forms of the invariant complex.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace growthlab::forms {

using Mask = std::uint32_t;

inline constexpr int kMaxDim = 15;

inline int popcount(Mask m) { return std::popcount(m); }

/// Sign of a ∧ b for generator sets a, b (disjoint) after sorting the
/// concatenation into increasing generator order.
inline int concat_sign(Mask a, Mask b)
{
    int inversions = 0;
    while (b != 0) {
        const int g = std::countr_zero(b);
        b &= b - 1;
        const Mask above = (g >= 31) ? 0u : (a & ~((Mask{2} << g) - 1));
        inversions += popcount(above);
    }
    return (inversions & 1) ? -1 : 1;
}

template <class Scalar>
class BasicForm {
  public:
    struct Term {
        Mask mask;
        Scalar coeff;
    };

    BasicForm() = default;
    explicit BasicForm(int dim) : dim_(dim)
    {
        if (dim < 1 || dim > kMaxDim)
            throw std::invalid_argument("form dimension out of range");
    }

    static BasicForm scalar(int dim, const Scalar& c)
    {
        BasicForm f(dim);
        f.add_term(0, c);
        return f;
    }

    /// dz_{holo} ∧ dz̄_{anti} scaled by c; holo/anti are m-bit masks.
    static BasicForm monomial(int dim, Mask holo, Mask anti, const Scalar& c)
    {
        BasicForm f(dim);
        f.add_term(holo | (anti << dim), c);
        return f;
    }

    /// Single generator g in [0, 2m).
    static BasicForm generator(int dim, int g, const Scalar& c)
    {
        BasicForm f(dim);
        f.add_term(Mask{1} << g, c);
        return f;
    }

    int dim() const { return dim_; }
    Mask holo_bits() const { return (Mask{1} << dim_) - 1; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero form.
    int degree() const { return terms_.empty() ? -1 : popcount(terms_.front().mask); }

    Mask holo_part(Mask m) const { return m & holo_bits(); }
    Mask anti_part(Mask m) const { return m >> dim_; }

    Scalar coefficient(Mask m) const
    {
        auto it = find(m);
        return it == terms_.end() ? Scalar{} : it->coeff;
    }

    /// Adds c to the coefficient of monomial m, keeping the invariants.
    void add_term(Mask m, const Scalar& c)
    {
        if (c == Scalar{})
            return;
        if (!terms_.empty() && popcount(m) != degree())
            throw std::invalid_argument("mixed total degree in form");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, Mask key) { return t.mask < key; });
        if (it != terms_.end() && it->mask == m) {
            it->coeff = it->coeff + c;
            if (it->coeff == Scalar{})
                terms_.erase(it);
        } else {
            terms_.insert(it, Term{m, c});
        }
    }

    BasicForm& operator+=(const BasicForm& o)
    {
        check_dim(o);
        if (terms_.empty()) {
            terms_ = o.terms_;
            return *this;
        }
        if (!o.terms_.empty() && o.degree() != degree())
            throw std::invalid_argument("adding forms of different degree");
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->mask < b->mask)) {
                out.push_back(*a++);
            } else if (a == terms_.end() || b->mask < a->mask) {
                out.push_back(*b++);
            } else {
                Scalar s = a->coeff + b->coeff;
                if (!(s == Scalar{}))
                    out.push_back(Term{a->mask, s});
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    BasicForm& operator-=(const BasicForm& o) { return *this += o * Scalar(-1); }

    BasicForm& operator*=(const Scalar& s)
    {
        if (s == Scalar{}) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_)
            t.coeff = t.coeff * s;
        return *this;
    }

    friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
    friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
    friend BasicForm operator*(BasicForm a, const Scalar& s) { return a *= s; }
    friend BasicForm operator*(const Scalar& s, BasicForm a) { return a *= s; }
    friend BasicForm operator-(BasicForm a) { return a *= Scalar(-1); }

    friend bool operator==(const BasicForm& a, const BasicForm& b)
    {
        if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size())
            return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mask != b.terms_[i].mask || !(a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }

    /// Sub-sum with |I| = p and |J| = q.
    BasicForm bidegree_component(int p, int q) const
    {
        BasicForm out(dim_);
        for (const auto& t : terms_)
            if (popcount(holo_part(t.mask)) == p && popcount(anti_part(t.mask)) == q)
                out.terms_.push_back(t);
        return out;
    }

    /// Complex conjugate: dz_I ∧ dz̄_J -> conj(c) dz̄_I ∧ dz_J, renormalized.
    template <class ConjFn>
    BasicForm conjugate(ConjFn conj) const
    {
        BasicForm out(dim_);
        for (const auto& t : terms_) {
            const Mask i = holo_part(t.mask);
            const Mask j = anti_part(t.mask);
            const int sign = ((popcount(i) * popcount(j)) & 1) ? -1 : 1;
            Scalar c = conj(t.coeff);
            if (sign < 0)
                c = c * Scalar(-1);
            out.add_term(j | (i << dim_), c);
        }
        return out;
    }

    friend BasicForm wedge(const BasicForm& a, const BasicForm& b)
    {
        a.check_dim(b);
        BasicForm out(a.dim_);
        if (a.is_zero() || b.is_zero())
            return out;
        std::vector<Term> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                if (ta.mask & tb.mask)
                    continue;
                Scalar c = ta.coeff * tb.coeff;
                if (concat_sign(ta.mask, tb.mask) < 0)
                    c = c * Scalar(-1);
                acc.push_back(Term{ta.mask | tb.mask, c});
            }
        out.assign_unsorted(std::move(acc));
        return out;
    }

    /// Image under the algebra map sending generator g to images[g] (1-forms
    /// in a possibly different algebra of dimension target_dim).
    template <class Target>
    Target substitute(const std::vector<Target>& images, int target_dim) const
    {
        Target out(target_dim);
        for (const auto& t : terms_) {
            Target prod = Target::scalar(target_dim, typename Target::ScalarType(1));
            Mask m = t.mask;
            while (m != 0) {
                const int g = std::countr_zero(m);
                m &= m - 1;
                prod = wedge(prod, images.at(static_cast<std::size_t>(g)));
                if (prod.is_zero())
                    break;
            }
            out += prod * convert_scalar<typename Target::ScalarType>(t.coeff);
        }
        return out;
    }

    /// Antiderivation extending generator g -> images[g] (images of degree 2),
    /// e.g. the exterior derivative of the invariant complex.
    BasicForm antiderivation(const std::vector<BasicForm>& images) const
    {
        BasicForm out(dim_);
        for (const auto& t : terms_) {
            Mask m = t.mask;
            Mask before = 0;
            int position = 0;
            while (m != 0) {
                const int g = std::countr_zero(m);
                m &= m - 1;
                const auto& img = images.at(static_cast<std::size_t>(g));
                if (!img.is_zero()) {
                    BasicForm left = BasicForm::monomial_mask(dim_, before, t.coeff);
                    BasicForm right = BasicForm::monomial_mask(dim_, m, Scalar(1));
                    BasicForm piece = wedge(wedge(left, img), right);
                    if (position & 1)
                        piece *= Scalar(-1);
                    out += piece;
                }
                before |= Mask{1} << g;
                ++position;
            }
        }
        return out;
    }

    static BasicForm monomial_mask(int dim, Mask m, const Scalar& c)
    {
        BasicForm f(dim);
        f.add_term(m, c);
        return f;
    }

    using ScalarType = Scalar;

  private:
    template <class To, class From>
    static To convert_scalar(const From& v)
    {
        return To(v);
    }

    void check_dim(const BasicForm& o) const
    {
        if (o.dim_ != dim_)
            throw std::invalid_argument("form dimension mismatch");
    }

    typename std::vector<Term>::const_iterator find(Mask m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, Mask key) { return t.mask < key; });
        return (it != terms_.end() && it->mask == m) ? it : terms_.end();
    }

    void assign_unsorted(std::vector<Term> acc)
    {
        std::sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return x.mask < y.mask; });
        terms_.clear();
        for (std::size_t i = 0; i < acc.size();) {
            Scalar s = acc[i].coeff;
            std::size_t j = i + 1;
            for (; j < acc.size() && acc[j].mask == acc[i].mask; ++j)
                s = s + acc[j].coeff;
            if (!(s == Scalar{}))
                terms_.push_back(Term{acc[i].mask, s});
            i = j;
        }
    }

    int dim_ = 1;
    std::vector<Term> terms_;
};

/// a^p / p! by repeated wedge; p! is divided out one factor at a time.
template <class Scalar>
BasicForm<Scalar> power_over_factorial(const BasicForm<Scalar>& a, int p)
{
    if (p < 0)
        throw std::invalid_argument("negative power");
    BasicForm<Scalar> acc = BasicForm<Scalar>::scalar(a.dim(), Scalar(1));
    for (int k = 1; k <= p; ++k) {
        acc = wedge(acc, a);
        acc *= Scalar(1) / Scalar(k);
        if (acc.is_zero())
            break;
    }
    return acc;
}

template <class Scalar>
BasicForm<Scalar> power(const BasicForm<Scalar>& a, int p)
{
    BasicForm<Scalar> acc = BasicForm<Scalar>::scalar(a.dim(), Scalar(1));
    for (int k = 0; k < p && !acc.is_zero(); ++k)
        acc = wedge(acc, a);
    return acc;
}

} // namespace growthlab::forms
