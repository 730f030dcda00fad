#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "thetapath/errors.hpp"
#include "thetapath/field.hpp"

namespace thetapath {

/// Dense univariate polynomial in θ. `coeffs()[k]` multiplies θ^k.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and `degree()` returns -1 for it.
template <Field S>
class Poly {
public:
    using Scalar = S;

    Poly() = default;
    Poly(S constant) : coeffs_{std::move(constant)} { trim(); }  // NOLINT(implicit)
    Poly(std::initializer_list<S> coeffs) : coeffs_(coeffs) { trim(); }
    explicit Poly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// θ
    static Poly identity() { return Poly({S(0), S(1)}); }
    /// a + bθ
    static Poly linear(S a, S b) { return Poly({std::move(a), std::move(b)}); }

    const std::vector<S>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    S coeff(int k) const { return (k >= 0 && k <= degree()) ? coeffs_[k] : S(0); }
    const S& leading() const {
        if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    /// Horner evaluation.
    S operator()(const S& theta) const {
        S acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= theta;
            acc += *it;
        }
        return acc;
    }

    /// Polynomial whose coefficients are the conjugates of this one's; equals
    /// the pointwise conjugate for real θ.
    Poly conj() const {
        std::vector<S> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(FieldTraits<S>::conj(c));
        return Poly(std::move(out));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        const S lead = leading();
        std::vector<S> out = coeffs_;
        for (auto& c : out) c /= lead;
        return Poly(std::move(out));
    }

    Poly operator-() const {
        std::vector<S> out = coeffs_;
        for (auto& c : out) c = -c;
        return Poly(std::move(out));
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const S& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const S& s) { return a *= s; }
    friend Poly operator*(const S& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<S> out(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (FieldTraits<S>::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(out));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim() {
        while (!coeffs_.empty() && FieldTraits<S>::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<S> coeffs_;
};

using ExactPoly = Poly<GaussianRational>;
using FloatPoly = Poly<Complex>;

/// Vector whose entries are polynomials in θ.
template <Field S>
using PolyVector = std::vector<Poly<S>>;

template <Field S>
Poly<S> poly_add(const Poly<S>& a, const Poly<S>& b) {
    return a + b;
}

template <Field S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b) {
    return a * b;
}

template <Field S>
S poly_eval(const Poly<S>& p, const S& theta) {
    return p(theta);
}

/// Quotient and remainder of polynomial long division. Throws DomainError
/// when dividing by the zero polynomial.
template <Field S>
std::pair<Poly<S>, Poly<S>> poly_divmod(const Poly<S>& a, const Poly<S>& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly<S>(), a};
    std::vector<S> rem = a.coeffs();
    std::vector<S> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), S(0));
    const S& lead = b.leading();
    const auto& bc = b.coeffs();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        const std::size_t top = static_cast<std::size_t>(k + b.degree());
        if (FieldTraits<S>::is_zero(rem[top])) continue;
        S q = rem[top] / lead;
        for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= q * bc[j];
        rem[top] = S(0);
        quot[static_cast<std::size_t>(k)] = std::move(q);
    }
    return {Poly<S>(std::move(quot)), Poly<S>(std::move(rem))};
}

/// Monic greatest common divisor (Euclid). Exact field only; gcd(0, 0) = 0.
template <Field S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
    if constexpr (!is_exact_field_v<S>) {
        throw UnsupportedOperation("poly_gcd is only defined over the exact field");
    } else {
        while (!b.is_zero()) {
            Poly<S> r = poly_divmod(a, b).second;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }
}

/// Inner product Σ conj(u_i)·v_i of polynomial vectors, valid as a
/// polynomial identity for real θ.
template <Field S>
Poly<S> inner(const PolyVector<S>& u, const PolyVector<S>& v) {
    if (u.size() != v.size()) throw UsageError("inner product of vectors with different lengths");
    Poly<S> acc;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i].conj() * v[i];
    return acc;
}

template <Field S>
int max_degree(const PolyVector<S>& v) {
    int d = -1;
    for (const auto& p : v) d = std::max(d, p.degree());
    return d;
}

/// p(a·θ + b), used to move float fits between a scaled variable and θ.
template <Field S>
Poly<S> substitute_affine(const Poly<S>& p, const S& a, const S& b) {
    const Poly<S> x = Poly<S>::linear(b, a);
    Poly<S> acc;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + Poly<S>(*it);
    return acc;
}

/// Ratio num/den with a declared degree bound (k1, k2).
template <Field S>
struct RationalFn {
    Poly<S> num;
    Poly<S> den;
    int k1 = 0;
    int k2 = 0;

    /// Throws PoleError at a root of the denominator.
    S operator()(const S& theta) const {
        const S d = den(theta);
        if (FieldTraits<S>::is_zero(d)) throw PoleError("evaluation at a pole of the rational function");
        return num(theta) / d;
    }

    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num == b.num && a.den == b.den; }
};

using ExactRational = RationalFn<GaussianRational>;
using FloatRational = RationalFn<Complex>;

/// Normal form of num/den. Exact field: the gcd is divided out and the
/// denominator made monic. Float field: the denominator is made monic, no
/// cancellation is attempted. The degree bound is set to the actual degrees.
template <Field S>
RationalFn<S> rational_simplify(const Poly<S>& num, const Poly<S>& den) {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    Poly<S> n = num;
    Poly<S> d = den;
    if constexpr (is_exact_field_v<S>) {
        const Poly<S> g = poly_gcd(n, d);
        if (g.degree() > 0) {
            n = poly_divmod(n, g).first;
            d = poly_divmod(d, g).first;
        }
    }
    const S lead = d.leading();
    for (auto* p : {&n, &d}) {
        std::vector<S> c = p->coeffs();
        for (auto& x : c) x /= lead;
        *p = Poly<S>(std::move(c));
    }
    const int k1 = std::max(n.degree(), 0);
    const int k2 = d.degree();
    return {std::move(n), std::move(d), k1, k2};
}

template <Field S>
S rational_eval(const RationalFn<S>& f, const S& theta) {
    return f(theta);
}

}  // namespace thetapath
