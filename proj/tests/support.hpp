#pragma once

#include <vector>

#include "thetapath/interp.hpp"
#include "thetapath/poly.hpp"
#include "thetapath/rng.hpp"

namespace thetapath::testing {

/// Random exact polynomial of exactly the given degree.
inline ExactPoly random_exact_poly(int degree, Rng& rng, bool complex = true) {
    std::vector<GaussianRational> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = random_small_rational(rng, complex);
    while (c.back().is_zero()) c.back() = random_small_rational(rng, complex);
    return ExactPoly(std::move(c));
}

/// Distinct small rationals k/7 + offset for sample points.
inline GaussianRational grid_point(long k) { return GaussianRational(3 * k + 1, 7); }

inline ComplexMatrix random_complex(int n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    return m;
}

}  // namespace thetapath::testing
