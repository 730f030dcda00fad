#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetapath/linalg.hpp"
#include "thetapath/rng.hpp"

namespace thetapath {

struct GaussianSpec {
    int n = 1;
    int beta = 2;  ///< 1 real, 2 complex
    std::uint64_t seed = 0;
};

/// β=1: i.i.d. N(0,1) real entries. β=2: real and imaginary parts each
/// i.i.d. N(0,1).
ComplexMatrix sample_gaussian(int n, int beta, Rng& rng);
ComplexMatrix sample_gaussian(const GaussianSpec& spec);

/// Positive-diagonal QR unitary of a Gaussian matrix.
UnitaryMatrix haar_unitary(int n, int beta, Rng& rng);

/// Positive-diagonal QR unitary of (1−θ)X + θ·1 with X Gaussian. Reduces to
/// haar_unitary at θ=0 (same draws) and returns the identity at θ=1.
UnitaryMatrix theta_deformed_unitary(int n, double theta, Rng& rng, int beta = 2);
/// Same, for an already drawn X.
UnitaryMatrix theta_deformed_unitary(const ComplexMatrix& x, double theta);

/// Scalar statistics of a unitary used for histogram TVD estimates.
enum class Statistic {
    EigenAngles,  ///< all eigenvalue angles, pooled, range [−π, π)
    AbsU11Sq,     ///< |u_11|², range [0, 1]
    ReTrace,      ///< Re tr U, range [−n, n]
};

std::string to_string(Statistic s);
/// Accepts "eigenangle", "abs-u11-sq", "re-trace". Throws UsageError.
Statistic parse_statistic(const std::string& name);
std::vector<double> statistic_values(const ComplexMatrix& u, Statistic s);
/// Natural range [lo, hi] of the statistic for n×n unitaries.
std::pair<double, double> statistic_range(Statistic s, int n);

struct EnsembleHistogram {
    std::string statistic_name;
    std::vector<double> bin_edges;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    /// `bins` uniform bins over [lo, hi].
    static EnsembleHistogram uniform(std::string name, double lo, double hi, int bins);
    int bins() const noexcept { return static_cast<int>(counts.size()); }
    /// Values outside the edges are clamped into the first / last bin.
    void add(double value);
    /// Associative merge of two histograms with identical binning.
    void merge(const EnsembleHistogram& other);
};

/// ½ Σ |c1/N1 − c2/N2|. Throws UsageError on mismatched binning.
double tvd_estimate(const EnsembleHistogram& h1, const EnsembleHistogram& h2);

/// 3·√(bins/samples), the multinomial sampling-noise scale of tvd_estimate.
double tvd_noise_bound(int bins, std::int64_t samples);

struct EnsembleOptions {
    int n = 2;
    int beta = 2;
    Statistic statistic = Statistic::EigenAngles;
    int bins = 20;
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t stream_offset = 0;  ///< chunk c draws from stream stream_offset + c
};

/// Histogram of the statistic over `samples` θ-deformed unitaries (Haar at
/// θ=0). Draws are split into fixed-size chunks with one RNG stream per
/// chunk, so the result does not depend on the thread count.
EnsembleHistogram deformed_ensemble_histogram(const EnsembleOptions& opts, double theta);

/// TVD estimate between the statistic histograms of {U_i} and {V·U_i} for
/// fresh Haar draws U_i.
double translation_invariance_check(int n, const UnitaryMatrix& v, std::int64_t samples, Rng& rng,
                                    Statistic statistic = Statistic::EigenAngles, int bins = 20);

}  // namespace thetapath
