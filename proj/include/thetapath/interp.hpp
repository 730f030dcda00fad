#pragma once

#include <vector>

#include "thetapath/linalg.hpp"
#include "thetapath/poly.hpp"
#include "thetapath/rng.hpp"

namespace thetapath {

template <Field S>
struct SamplePoint {
    S theta;
    S value;
};

/// Samples (θ_i, f_i) with pairwise distinct θ_i.
template <Field S>
class SampleSet {
public:
    SampleSet() = default;
    /// Throws UsageError on repeated θ values.
    explicit SampleSet(std::vector<SamplePoint<S>> points) : points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (points_[i].theta == points_[j].theta) throw UsageError("sample thetas must be pairwise distinct");
    }

    const std::vector<SamplePoint<S>>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const SamplePoint<S>& operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<SamplePoint<S>> points_;
};

using ExactSamples = SampleSet<GaussianRational>;
using FloatSamples = SampleSet<Complex>;

/// Exact rational interpolation: the unique F = N/D with deg N ≤ k1,
/// deg D ≤ k2 through every sample, from the homogeneous linear system
/// N(θ_i) − f_i D(θ_i) = 0. Needs at least k1+k2+1 samples.
///
/// Throws UsageError for too few samples, RankDeficiencyError when no
/// solution has a nonzero denominator, InconsistencyError when no rational
/// of that degree passes through all samples.
ExactRational fit_rational(const ExactSamples& samples, int k1, int k2);

/// Linearized least-squares rational fit in the scaled variable
/// x = (θ − center) / half_width, which keeps the monomial basis well
/// conditioned on the sampled interval.
struct LsqRationalFit {
    FloatRational in_x;
    double center = 0.0;
    double half_width = 1.0;

    Complex operator()(double theta) const { return in_x(Complex((theta - center) / half_width, 0.0)); }
    /// The same function re-expanded in powers of θ.
    FloatRational in_theta() const;
};

struct LsqOptions {
    double trim_fraction = 0.0;  ///< fraction of samples dropped, worst leave-one-out error first
    int reweight_iterations = 2; ///< Sanathanan–Koerner denominator reweighting passes
};

LsqRationalFit fit_rational_lsq(const FloatSamples& samples, int k1, int k2, const LsqOptions& opts = {});

/// Float-field overload of fit_rational: least squares, returned in powers of θ.
FloatRational fit_rational(const FloatSamples& samples, int k1, int k2);

struct BWResult {
    ExactRational f;
    std::vector<std::size_t> error_locations;
};

/// Berlekamp–Welch decoding for rational functions: recovers F of degree
/// (k1, k2) from n ≥ k1+k2+2t+1 samples of which at most t are wrong.
///
/// With an error polynomial E (deg ≤ t, vanishing at the bad samples) every
/// sample satisfies (E·N)(θ_i) = f_i (E·D)(θ_i), a homogeneous linear system
/// in the coefficients of P = E·N and Q = E·D. Any nonzero solution gives
/// P/Q = F. Throws TooManyErrors when the reduced quotient exceeds (k1, k2)
/// or disagrees with more than t samples, InfeasibleError when the system
/// has only the zero solution.
BWResult bw_rational(const ExactSamples& samples, int k1, int k2, int t);

/// Reduced quotient P/Q for every basis vector of the decoding system's
/// nullspace (vectors with Q ≡ 0 are skipped).
std::vector<ExactRational> bw_candidate_quotients(const ExactSamples& samples, int k1, int k2, int t);

/// Random Gaussian rational with small numerators (|a| ≤ 9) and
/// denominators (1..9); real-valued unless `complex` is set.
GaussianRational random_small_rational(Rng& rng, bool complex = false);

/// Random F = N/D of exact degree (k1, k2) with monic D, N and D coprime,
/// and D(1) ≠ 0.
ExactRational random_exact_rational(int k1, int k2, Rng& rng);

/// F(θ); throws PoleError at a pole.
template <Field S>
S extrapolate(const RationalFn<S>& f, const S& theta) {
    return f(theta);
}

}  // namespace thetapath
