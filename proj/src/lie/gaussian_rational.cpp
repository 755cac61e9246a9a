#include "growthlab/lie/gaussian_rational.hpp"

#include <cmath>
#include <stdexcept>

namespace growthlab::lie {

namespace {

mpq_class parse_rational(const std::string& s, const std::string& whole)
{
    if (s.empty() || s == "+")
        return 1;
    if (s == "-")
        return -1;
    std::string t = s[0] == '+' ? s.substr(1) : s;
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw std::invalid_argument("not a Gaussian rational: '" + whole + "'");
    if (t.find('/') != std::string::npos && mpz_class(q.get_den()) == 0)
        throw std::invalid_argument("zero denominator in '" + whole + "'");
    q.canonicalize();
    return q;
}

} // namespace

GaussianRational GaussianRational::parse(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty Gaussian rational");
    if (s.find_first_not_of("0123456789+-/i") != std::string::npos)
        throw std::invalid_argument("not a Gaussian rational: '" + text + "'");
    if (s.back() != 'i')
        return {parse_rational(s, text), 0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    if (split == std::string::npos)
        return {0, parse_rational(s, text)};
    return {parse_rational(s.substr(0, split), text), parse_rational(s.substr(split), text)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    const mpq_class n = o.norm2();
    if (sgn(n) == 0)
        throw std::domain_error("division by zero Gaussian rational");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

std::string GaussianRational::to_string() const
{
    if (sgn(im_) == 0)
        return re_.get_str();
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = im_.get_str() + "i";
    if (sgn(re_) == 0)
        return imag;
    return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
}

mpq_class rationalize(double x, long max_den)
{
    if (!std::isfinite(x))
        throw std::domain_error("cannot rationalize a non-finite value");
    const bool neg = x < 0;
    double r = std::abs(x);
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        const mpz_class ai(a);
        const mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den)
            break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = r - a;
        if (frac < 1e-15)
            break;
        r = 1.0 / frac;
    }
    if (q1 == 0)
        return 0;
    mpq_class out(neg ? mpz_class(-p1) : p1, q1);
    out.canonicalize();
    return out;
}

} // namespace growthlab::lie
