#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "growthlab/forms/exterior.hpp"

namespace testing_support {

using namespace growthlab::forms;

inline Complex random_complex(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

inline HermitianForm random_pd(int m, std::mt19937_64& rng)
{
    CMatrix a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = random_complex(rng);
    CMatrix h = a * a.adjoint() + 0.3 * CMatrix::Identity(m, m);
    h = 0.5 * (h + h.adjoint()).eval();
    return HermitianForm(h, Definiteness::positive_definite);
}

/// Random form of total degree k with every monomial populated.
inline ExteriorForm random_form(int m, int k, std::mt19937_64& rng)
{
    ExteriorForm f(m);
    const Mask limit = Mask{1} << (2 * m);
    for (Mask mask = 0; mask < limit; ++mask)
        if (popcount(mask) == k)
            f.add_term(mask, random_complex(rng));
    return f;
}

inline ExteriorForm random_bidegree(int m, int p, int q, std::mt19937_64& rng)
{
    return random_form(m, p + q, rng).bidegree_component(p, q);
}

/// Parity of the permutation that sorts seq, by explicit bubble sort.
inline int bubble_parity(std::vector<int> seq)
{
    int swaps = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
            if (seq[j] > seq[j + 1]) {
                std::swap(seq[j], seq[j + 1]);
                ++swaps;
            }
    return (swaps & 1) ? -1 : 1;
}

/// Wedge computed term by term from generator sequences (independent of
/// the bitmask sign routine).
inline ExteriorForm brute_wedge(const ExteriorForm& a, const ExteriorForm& b)
{
    ExteriorForm out(a.dim());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            if (ta.mask & tb.mask)
                continue;
            std::vector<int> seq;
            for (int g = 0; g < 32; ++g)
                if (ta.mask & (Mask{1} << g))
                    seq.push_back(g);
            for (int g = 0; g < 32; ++g)
                if (tb.mask & (Mask{1} << g))
                    seq.push_back(g);
            out.add_term(ta.mask | tb.mask, ta.coeff * tb.coeff * static_cast<double>(bubble_parity(seq)));
        }
    return out;
}

inline double max_abs_diff(const ExteriorForm& a, const ExteriorForm& b)
{
    const ExteriorForm d = a - b;
    double worst = 0.0;
    for (const auto& t : d.terms())
        worst = std::max(worst, std::abs(t.coeff));
    return worst;
}

inline double max_abs(const ExteriorForm& a)
{
    double worst = 0.0;
    for (const auto& t : a.terms())
        worst = std::max(worst, std::abs(t.coeff));
    return worst;
}

// Hermitian pairing of 1-forms by polarization of covector_norm.
inline Complex pair_1forms(const ExteriorForm& u, const ExteriorForm& w, const HermitianForm& g)
{
    Complex out{};
    Complex ik{1.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        out += ik * std::pow(covector_norm(u + w * ik, g), 2);
        ik *= Complex(0.0, 1.0);
    }
    return out / 4.0;
}

// |v|^2 for forms of degree 1 or 2 from Gram determinants of generator pairings.
inline double squared_norm(const ExteriorForm& v, const HermitianForm& g)
{
    const int m = v.dim();
    auto gen = [m](int idx) { return ExteriorForm::generator(m, idx, Complex(1.0)); };
    Complex total{};
    for (const auto& s : v.terms())
        for (const auto& t : v.terms()) {
            std::vector<int> a, b;
            for (int idx = 0; idx < 2 * m; ++idx) {
                if (s.mask & (Mask{1} << idx))
                    a.push_back(idx);
                if (t.mask & (Mask{1} << idx))
                    b.push_back(idx);
            }
            Complex gram;
            if (a.size() == 1) {
                gram = pair_1forms(gen(a[0]), gen(b[0]), g);
            } else {
                gram = pair_1forms(gen(a[0]), gen(b[0]), g) * pair_1forms(gen(a[1]), gen(b[1]), g) -
                       pair_1forms(gen(a[0]), gen(b[1]), g) * pair_1forms(gen(a[1]), gen(b[0]), g);
            }
            total += s.coeff * std::conj(t.coeff) * gram;
        }
    return total.real();
}

} // namespace testing_support
