#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace growthlab::lie {

/// a + b i with a, b exact rationals.
class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    /// Accepts "p", "p/q", and an optional imaginary part: "1/2+3i", "-i", "2i".
    static GaussianRational parse(const std::string& text);
    static GaussianRational i() { return {0, 1}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    /// Throws std::domain_error on division by zero.
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "3/4", "-i", "1/2-5/3i"
    std::string to_string() const;

  private:
    mpq_class re_{0};
    mpq_class im_{0};
};

using GQ = GaussianRational;

/// Nearest fraction with denominator at most max_den (continued fractions).
mpq_class rationalize(double x, long max_den = 1000000);

} // namespace growthlab::lie
