#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include "thetapath/gaussian_rational.hpp"

namespace thetapath {

using Complex = std::complex<double>;

/// Coefficient-field traits. Two fields are supported: the exact Gaussian
/// rationals and complex doubles. The field is a template parameter of every
/// polynomial-valued type, so mixing fields is a compile-time error.
template <class S>
struct FieldTraits;

template <>
struct FieldTraits<GaussianRational> {
    static constexpr bool exact = true;
    static constexpr std::string_view tag = "exact";
    static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
    static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
    static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
};

template <>
struct FieldTraits<Complex> {
    static constexpr bool exact = false;
    static constexpr std::string_view tag = "float";
    static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex to_complex(const Complex& x) { return x; }
};

template <class S>
concept Field = requires { FieldTraits<S>::exact; };

template <class S>
inline constexpr bool is_exact_field_v = FieldTraits<S>::exact;

}  // namespace thetapath
