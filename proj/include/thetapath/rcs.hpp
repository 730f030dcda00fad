#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetapath/circuit.hpp"
#include "thetapath/interp.hpp"

namespace thetapath {

enum class FitMode {
    ExactFit,       ///< exact rational interpolation (provably rational inputs only)
    BwDecode,       ///< exact Berlekamp–Welch decoding with budget t = corrupt_count
    FloatLeastSquares,  ///< least-squares fits with held-out degree selection
};

std::string to_string(FitMode mode);
/// "exact-fit", "bw-decode", "float-least-squares". Throws UsageError.
FitMode parse_fit_mode(const std::string& name);

struct PipelineConfig {
    int n_qubits = 2;
    int m_gates = 1;
    int theta_count = 0;      ///< 0 picks k1+k2+2t+1 for exact modes, 300 for least squares
    double theta_lo = 0.05;
    double theta_hi = 0.95;
    int k1 = 2;
    int k2 = 2;
    int corrupt_count = 0;
    double corrupt_magnitude = 0.1;
    std::uint64_t seed = 0;
    FitMode mode = FitMode::ExactFit;
    int max_degree = -1;      ///< least-squares probe cap; -1 picks min(2·m·27, 120, what the points allow)
    double trim_fraction = 0.0;
    unsigned threads = 1;

    /// Effective number of θ points after defaults.
    int resolved_theta_count() const;
};

struct PipelineSample {
    double theta = 0.0;
    double p0 = 0.0;  ///< value handed to the fitter (after any corruption)
    bool corrupted = false;
};

struct ProbeRow {
    int degree = 0;
    double heldout_residual = 0.0;  ///< this degree alone
    double best_residual = 0.0;     ///< best over degrees ≤ this one
};

struct ProbeResult {
    int degree = 0;          ///< smallest qualifying degree, or max_degree + 1 if none
    double residual = 0.0;   ///< residual at `degree`, or the best residual seen
    int best_degree = 0;     ///< degree of the best held-out fit
    std::vector<ProbeRow> table;
    LsqRationalFit best_fit;
};

struct PipelineReport {
    double recovered_p0_at_1 = 0.0;
    double direct_p0 = 0.0;
    double abs_error = 0.0;
    int fitted_k1 = 0;
    int fitted_k2 = 0;
    double heldout_max_residual = 0.0;
    std::vector<std::size_t> corruptions_planted;
    std::vector<std::size_t> corruptions_detected;
    std::int64_t runtime_ms = 0;

    std::vector<PipelineSample> samples;
    std::vector<ProbeRow> probe;  ///< filled in least-squares mode

    /// Equality over every field except runtime_ms.
    bool same_result(const PipelineReport& o) const;
};

inline constexpr double kProbeTolerance = 1e-6;

/// `count` pairwise distinct θ drawn uniformly from (lo, hi), sorted.
std::vector<double> draw_thetas(int count, double lo, double hi, Rng& rng);

/// Sorted θ are split alternately into fit and held-out halves. For each
/// symmetric degree d = 0..max_degree a least-squares rational fit is made on
/// the fit half and scored by its max residual on the held-out half. The
/// smallest d whose best-so-far residual is ≤ 1e-6 is returned. Throws
/// UsageError if either half has fewer than 2·max_degree+1 points.
ProbeResult probe_degrees(const std::vector<double>& thetas, const std::vector<double>& values, int max_degree,
                          double trim_fraction = 0.0);

/// probe_degrees on p₀(θ) of the scrambled circuit.
ProbeResult minimal_degree_probe(const ScrambledCircuit& sc, int max_degree, const std::vector<double>& thetas,
                                 unsigned threads = 1);

/// Builds the brickwork stand-in circuit, scrambles it, samples p₀(θ_i),
/// plants corruptions, fits / decodes per mode and extrapolates to θ = 1.
///
/// Exact modes refuse circuits with more than one gate, whose p₀(θ) is not
/// known to be rational. Errors carry the failing stage in their message.
PipelineReport run_pipeline(const PipelineConfig& config);

/// One bw-decode run per t. Single-gate configs use the circuit's exact p₀(θ);
/// multi-gate configs use a seeded synthetic rational of degree (k1, k2)
/// standing in for p₀, whose value at θ=1 plays the role of direct_p0.
std::vector<PipelineReport> corruption_sweep(const PipelineConfig& config, const std::vector<int>& t_values);

/// Default cap of the degree probe for m gates.
int default_max_degree(int m_gates);

}  // namespace thetapath
