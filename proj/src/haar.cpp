#include "thetapath/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetapath/parallel.hpp"

namespace thetapath {

namespace {

constexpr std::int64_t kChunk = 1024;

void check_size(int n, int beta) {
    if (n < 1) throw UsageError("matrix size must be at least 1");
    if (beta != 1 && beta != 2) throw UsageError("beta must be 1 or 2");
}

}  // namespace

ComplexMatrix sample_gaussian(int n, int beta, Rng& rng) {
    check_size(n, beta);
    ComplexMatrix x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = (beta == 2) ? rng.normal() : 0.0;
            x(i, j) = Complex(re, im);
        }
    return x;
}

ComplexMatrix sample_gaussian(const GaussianSpec& spec) {
    Rng rng(spec.seed);
    return sample_gaussian(spec.n, spec.beta, rng);
}

UnitaryMatrix haar_unitary(int n, int beta, Rng& rng) {
    return standard_qr(sample_gaussian(n, beta, rng)).u;
}

UnitaryMatrix theta_deformed_unitary(const ComplexMatrix& x, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("theta must lie in [0, 1]");
    if (theta == 0.0) return standard_qr(x).u;
    const auto n = x.rows();
    return standard_qr((1.0 - theta) * x + theta * ComplexMatrix::Identity(n, n)).u;
}

UnitaryMatrix theta_deformed_unitary(int n, double theta, Rng& rng, int beta) {
    return theta_deformed_unitary(sample_gaussian(n, beta, rng), theta);
}

std::string to_string(Statistic s) {
    switch (s) {
        case Statistic::EigenAngles: return "eigenangle";
        case Statistic::AbsU11Sq: return "abs-u11-sq";
        case Statistic::ReTrace: return "re-trace";
    }
    return "unknown";
}

Statistic parse_statistic(const std::string& name) {
    if (name == "eigenangle") return Statistic::EigenAngles;
    if (name == "abs-u11-sq") return Statistic::AbsU11Sq;
    if (name == "re-trace") return Statistic::ReTrace;
    throw UsageError("unknown statistic '" + name + "'");
}

std::vector<double> statistic_values(const ComplexMatrix& u, Statistic s) {
    switch (s) {
        case Statistic::EigenAngles: {
            Eigen::ComplexEigenSolver<ComplexMatrix> es(u, false);
            std::vector<double> out;
            out.reserve(static_cast<std::size_t>(u.rows()));
            for (Eigen::Index k = 0; k < u.rows(); ++k) {
                double a = std::arg(es.eigenvalues()(k));
                if (a >= std::numbers::pi) a -= 2.0 * std::numbers::pi;
                out.push_back(a);
            }
            std::sort(out.begin(), out.end());
            return out;
        }
        case Statistic::AbsU11Sq: return {std::norm(u(0, 0))};
        case Statistic::ReTrace: return {u.trace().real()};
    }
    return {};
}

std::pair<double, double> statistic_range(Statistic s, int n) {
    switch (s) {
        case Statistic::EigenAngles: return {-std::numbers::pi, std::numbers::pi};
        case Statistic::AbsU11Sq: return {0.0, 1.0};
        case Statistic::ReTrace: return {-static_cast<double>(n), static_cast<double>(n)};
    }
    return {0.0, 1.0};
}

EnsembleHistogram EnsembleHistogram::uniform(std::string name, double lo, double hi, int bins) {
    if (bins < 1 || !(hi > lo)) throw UsageError("histogram needs at least one bin over a non-empty range");
    EnsembleHistogram h;
    h.statistic_name = std::move(name);
    h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int k = 0; k <= bins; ++k) h.bin_edges[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / bins;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    return h;
}

void EnsembleHistogram::add(double value) {
    const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), value);
    auto k = static_cast<std::ptrdiff_t>(it - bin_edges.begin()) - 1;
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(counts.size()) - 1);
    ++counts[static_cast<std::size_t>(k)];
    ++total;
}

void EnsembleHistogram::merge(const EnsembleHistogram& other) {
    if (other.statistic_name != statistic_name || other.bin_edges != bin_edges)
        throw UsageError("cannot merge histograms with different binning");
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += other.counts[k];
    total += other.total;
}

double tvd_estimate(const EnsembleHistogram& h1, const EnsembleHistogram& h2) {
    if (h1.statistic_name != h2.statistic_name || h1.bin_edges != h2.bin_edges)
        throw UsageError("tvd_estimate needs histograms with identical statistic and bin edges");
    if (h1.total <= 0 || h2.total <= 0) throw UsageError("tvd_estimate on an empty histogram");
    double acc = 0.0;
    for (std::size_t k = 0; k < h1.counts.size(); ++k)
        acc += std::abs(static_cast<double>(h1.counts[k]) / static_cast<double>(h1.total) -
                        static_cast<double>(h2.counts[k]) / static_cast<double>(h2.total));
    return 0.5 * acc;
}

double tvd_noise_bound(int bins, std::int64_t samples) {
    return 3.0 * std::sqrt(static_cast<double>(bins) / static_cast<double>(samples));
}

EnsembleHistogram deformed_ensemble_histogram(const EnsembleOptions& opts, double theta) {
    check_size(opts.n, opts.beta);
    if (opts.samples < 1) throw UsageError("need at least one sample");
    const auto [lo, hi] = statistic_range(opts.statistic, opts.n);
    const std::string name = to_string(opts.statistic);
    const auto chunks = static_cast<std::size_t>((opts.samples + kChunk - 1) / kChunk);
    std::vector<EnsembleHistogram> parts(chunks, EnsembleHistogram::uniform(name, lo, hi, opts.bins));
    parallel_for(chunks, opts.threads, [&](std::size_t c) {
        Rng rng(opts.seed, opts.stream_offset + c);
        const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
        const std::int64_t end = std::min(opts.samples, begin + kChunk);
        for (std::int64_t s = begin; s < end; ++s) {
            const UnitaryMatrix u = theta_deformed_unitary(opts.n, theta, rng, opts.beta);
            for (double v : statistic_values(u, opts.statistic)) parts[c].add(v);
        }
    });
    EnsembleHistogram out = EnsembleHistogram::uniform(name, lo, hi, opts.bins);
    for (const auto& p : parts) out.merge(p);
    return out;
}

double translation_invariance_check(int n, const UnitaryMatrix& v, std::int64_t samples, Rng& rng,
                                    Statistic statistic, int bins) {
    if (v.size() != n) throw UsageError("V has the wrong size");
    const auto [lo, hi] = statistic_range(statistic, n);
    auto plain = EnsembleHistogram::uniform(to_string(statistic), lo, hi, bins);
    auto shifted = plain;
    for (std::int64_t s = 0; s < samples; ++s) {
        const UnitaryMatrix u = haar_unitary(n, 2, rng);
        for (double x : statistic_values(u, statistic)) plain.add(x);
        for (double x : statistic_values(v.matrix() * u.matrix(), statistic)) shifted.add(x);
    }
    return tvd_estimate(plain, shifted);
}

}  // namespace thetapath
