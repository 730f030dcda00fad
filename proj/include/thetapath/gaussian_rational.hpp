#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace thetapath {

/// An element of Q[i]: real and imaginary parts are arbitrary-precision
/// rationals, always kept in lowest terms.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(implicit)
    GaussianRational(int re) : re_(re) {}   // NOLINT(implicit)
    GaussianRational(mpq_class re, mpq_class im = 0);
    GaussianRational(long num, long den) : re_(num, den) { re_.canonicalize(); }

    /// Exact conversion; every finite double is a dyadic rational.
    static GaussianRational from_double(double re, double im = 0.0);
    static GaussianRational from_complex(std::complex<double> z) { return from_double(z.real(), z.imag()); }
    /// Parses "a/b+c/d*i", "a/b", "c/d*i" and integer forms.
    static GaussianRational parse(const std::string& text);

    const mpq_class& real() const noexcept { return re_; }
    const mpq_class& imag() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Canonical "a/b+c/d*i" form used in JSON records.
    std::string to_string() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    /// Throws DomainError on division by zero.
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }

}  // namespace thetapath
