#include "thetapath/rcs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "thetapath/parallel.hpp"

namespace thetapath {

namespace {

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e);
    }
}

std::vector<std::size_t> pick_indices(std::size_t count, std::size_t n, Rng& rng) {
    if (count > n) throw UsageError("more corruptions than samples");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
        std::swap(idx[k], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

void check_config(const PipelineConfig& c) {
    if (c.n_qubits < 1 || c.m_gates < 1) throw UsageError("need at least one qubit and one gate");
    if (c.n_qubits > 20) throw ResourceError("statevector simulation limited to 20 qubits");
    if (!(c.theta_lo > 0.0 && c.theta_hi < 1.0 && c.theta_lo < c.theta_hi))
        throw UsageError("theta range must be a non-empty subinterval of (0, 1)");
    if (c.corrupt_count < 0) throw UsageError("corrupt count must be non-negative");
    if (c.mode != FitMode::FloatLeastSquares) {
        if (c.k1 < 0 || c.k2 < 0) throw UsageError("degree bounds must be non-negative");
        if (c.resolved_theta_count() <= c.k1 + c.k2 + 2 * c.corrupt_count)
            throw UsageError("theta_count must exceed k1 + k2 + 2 * corrupt_count");
    }
}

double direct_p0(const Circuit& base) { return std::norm(simulate(base)[0]); }

/// Exact samples of a provably rational p₀ stand-in, corrupted as configured,
/// then fitted or decoded.
PipelineReport run_exact(const PipelineConfig& c, const ExactRational& truth, double direct,
                         const std::function<double(double)>& numeric_check) {
    PipelineReport report;
    Rng theta_rng(c.seed, 2);
    Rng corrupt_rng(c.seed, 3);
    const std::vector<double> thetas = stage("sample", [&] {
        return draw_thetas(c.resolved_theta_count(), c.theta_lo, c.theta_hi, theta_rng);
    });
    report.corruptions_planted = pick_indices(static_cast<std::size_t>(c.corrupt_count), thetas.size(), corrupt_rng);

    std::vector<SamplePoint<GaussianRational>> pts;
    const GaussianRational bump = GaussianRational::from_double(c.corrupt_magnitude);
    std::set<std::size_t> planted(report.corruptions_planted.begin(), report.corruptions_planted.end());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const GaussianRational th = GaussianRational::from_double(thetas[i]);
        GaussianRational v = stage("sample", [&] { return truth(th); });
        const bool bad = planted.count(i) > 0;
        if (bad) v += bump;
        report.samples.push_back({thetas[i], v.real().get_d(), bad});
        pts.push_back({th, std::move(v)});
    }
    const ExactSamples samples(std::move(pts));

    ExactRational f;
    if (c.mode == FitMode::ExactFit) {
        f = stage("fit", [&] { return fit_rational(samples, c.k1, c.k2); });
    } else {
        BWResult r = stage("decode", [&] { return bw_rational(samples, c.k1, c.k2, c.corrupt_count); });
        report.corruptions_detected = r.error_locations;
        f = std::move(r.f);
    }
    const GaussianRational at_one = stage("extrapolate", [&] { return extrapolate(f, GaussianRational(1)); });

    report.recovered_p0_at_1 = at_one.real().get_d();
    report.direct_p0 = direct;
    report.abs_error = std::abs(report.recovered_p0_at_1 - report.direct_p0);
    report.fitted_k1 = f.num.degree() < 0 ? 0 : f.num.degree();
    report.fitted_k2 = f.den.degree();

    // cross-check the recovered function against independent numeric values
    Rng check_rng(c.seed, 4);
    double worst = 0.0;
    for (double th : draw_thetas(16, c.theta_lo, c.theta_hi, check_rng)) {
        const double fitted = f(GaussianRational::from_double(th)).real().get_d();
        worst = std::max(worst, std::abs(fitted - numeric_check(th)));
    }
    report.heldout_max_residual = worst;
    return report;
}

PipelineReport run_least_squares(const PipelineConfig& c, const ScrambledCircuit& sc) {
    PipelineReport report;
    Rng theta_rng(c.seed, 2);
    Rng corrupt_rng(c.seed, 3);
    const int count = c.resolved_theta_count();
    const std::vector<double> thetas = stage("sample", [&] { return draw_thetas(count, c.theta_lo, c.theta_hi, theta_rng); });
    report.corruptions_planted = pick_indices(static_cast<std::size_t>(c.corrupt_count), thetas.size(), corrupt_rng);

    std::vector<double> values(thetas.size());
    stage("sample", [&] {
        parallel_for(thetas.size(), c.threads, [&](std::size_t i) { values[i] = p0_theta(sc, thetas[i]); });
        return 0;
    });
    for (std::size_t i : report.corruptions_planted) values[i] += c.corrupt_magnitude;
    std::set<std::size_t> planted(report.corruptions_planted.begin(), report.corruptions_planted.end());
    for (std::size_t i = 0; i < thetas.size(); ++i) report.samples.push_back({thetas[i], values[i], planted.count(i) > 0});

    const int half = count / 2;
    int max_degree = c.max_degree;
    if (max_degree < 0) max_degree = std::min(default_max_degree(c.m_gates), std::max(0, (half - 1) / 2));
    const ProbeResult probe = stage("fit", [&] { return probe_degrees(thetas, values, max_degree, c.trim_fraction); });

    // the degree is chosen on held-out data, then refitted on every sample
    const LsqRationalFit fit = stage("fit", [&] {
        std::vector<SamplePoint<Complex>> all;
        for (std::size_t i = 0; i < thetas.size(); ++i) all.push_back({Complex(thetas[i], 0.0), Complex(values[i], 0.0)});
        LsqOptions opts;
        opts.trim_fraction = c.trim_fraction;
        return fit_rational_lsq(FloatSamples(std::move(all)), probe.best_degree, probe.best_degree, opts);
    });

    report.probe = probe.table;
    report.fitted_k1 = probe.best_degree;
    report.fitted_k2 = probe.best_degree;
    report.heldout_max_residual = probe.residual;
    report.recovered_p0_at_1 = stage("extrapolate", [&] { return fit(1.0).real(); });
    report.direct_p0 = direct_p0(sc.base);
    report.abs_error = std::abs(report.recovered_p0_at_1 - report.direct_p0);
    const double detect = 0.5 * std::abs(c.corrupt_magnitude);
    for (std::size_t i = 0; i < thetas.size(); ++i)
        if (detect > 0.0 && std::abs(fit(thetas[i]).real() - values[i]) > detect)
            report.corruptions_detected.push_back(i);
    return report;
}

template <class Clock>
std::int64_t elapsed_ms(typename Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(FitMode mode) {
    switch (mode) {
        case FitMode::ExactFit: return "exact-fit";
        case FitMode::BwDecode: return "bw-decode";
        case FitMode::FloatLeastSquares: return "float-least-squares";
    }
    return "unknown";
}

FitMode parse_fit_mode(const std::string& name) {
    if (name == "exact-fit") return FitMode::ExactFit;
    if (name == "bw-decode") return FitMode::BwDecode;
    if (name == "float-least-squares") return FitMode::FloatLeastSquares;
    throw UsageError("unknown mode '" + name + "'");
}

int PipelineConfig::resolved_theta_count() const {
    if (theta_count > 0) return theta_count;
    if (mode == FitMode::FloatLeastSquares) return 300;
    return k1 + k2 + 2 * corrupt_count + 1;
}

bool PipelineReport::same_result(const PipelineReport& o) const {
    auto same_samples = [&] {
        if (samples.size() != o.samples.size()) return false;
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (samples[i].theta != o.samples[i].theta || samples[i].p0 != o.samples[i].p0 ||
                samples[i].corrupted != o.samples[i].corrupted)
                return false;
        return true;
    };
    auto same_probe = [&] {
        if (probe.size() != o.probe.size()) return false;
        for (std::size_t i = 0; i < probe.size(); ++i)
            if (probe[i].degree != o.probe[i].degree || probe[i].heldout_residual != o.probe[i].heldout_residual)
                return false;
        return true;
    };
    return recovered_p0_at_1 == o.recovered_p0_at_1 && direct_p0 == o.direct_p0 && abs_error == o.abs_error &&
           fitted_k1 == o.fitted_k1 && fitted_k2 == o.fitted_k2 && heldout_max_residual == o.heldout_max_residual &&
           corruptions_planted == o.corruptions_planted && corruptions_detected == o.corruptions_detected &&
           same_samples() && same_probe();
}

std::vector<double> draw_thetas(int count, double lo, double hi, Rng& rng) {
    if (count < 1) throw UsageError("need at least one theta");
    std::set<double> seen;
    std::vector<double> out;
    while (static_cast<int>(out.size()) < count) {
        const double th = rng.uniform(lo, hi);
        if (th <= lo || th >= hi || !seen.insert(th).second) continue;
        out.push_back(th);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int default_max_degree(int m_gates) { return std::min(2 * m_gates * 27, 120); }

ProbeResult probe_degrees(const std::vector<double>& thetas, const std::vector<double>& values, int max_degree,
                          double trim_fraction) {
    if (thetas.size() != values.size()) throw UsageError("thetas and values differ in length");
    if (max_degree < 0) throw UsageError("max degree must be non-negative");
    std::vector<std::size_t> order(thetas.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return thetas[a] < thetas[b]; });

    std::vector<SamplePoint<Complex>> fit_pts;
    std::vector<std::pair<double, double>> held;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        if (k % 2 == 0)
            fit_pts.push_back({Complex(thetas[i], 0.0), Complex(values[i], 0.0)});
        else
            held.emplace_back(thetas[i], values[i]);
    }
    const std::size_t need = static_cast<std::size_t>(2 * max_degree + 1);
    if (fit_pts.size() < need || held.size() < need)
        throw UsageError("degree probe up to " + std::to_string(max_degree) + " needs " + std::to_string(need) +
                         " fit and held-out points, have " + std::to_string(fit_pts.size()) + " and " +
                         std::to_string(held.size()));
    const FloatSamples fit_set(std::move(fit_pts));

    ProbeResult result;
    result.degree = max_degree + 1;
    result.residual = INFINITY;
    bool found = false;
    double best = INFINITY;
    for (int d = 0; d <= max_degree; ++d) {
        double residual = INFINITY;
        LsqRationalFit fit;
        try {
            LsqOptions opts;
            opts.trim_fraction = trim_fraction;
            fit = fit_rational_lsq(fit_set, d, d, opts);
            residual = 0.0;
            for (const auto& [th, v] : held) {
                const double r = std::abs(fit(th) - Complex(v, 0.0));
                residual = std::isfinite(r) ? std::max(residual, r) : INFINITY;
            }
        } catch (const DecodeError&) {
            residual = INFINITY;
        } catch (const PoleError&) {
            residual = INFINITY;
        }
        if (residual < best) {
            best = residual;
            result.best_degree = d;
            result.best_fit = fit;
        }
        result.table.push_back({d, residual, best});
        if (best <= kProbeTolerance) {
            result.degree = d;
            result.residual = best;
            found = true;
            break;
        }
    }
    if (!found) result.residual = best;
    if (!std::isfinite(best)) throw DecodeError("no degree produced a usable least-squares fit");
    return result;
}

ProbeResult minimal_degree_probe(const ScrambledCircuit& sc, int max_degree, const std::vector<double>& thetas,
                                 unsigned threads) {
    std::vector<double> values(thetas.size());
    parallel_for(thetas.size(), threads, [&](std::size_t i) { values[i] = p0_theta(sc, thetas[i]); });
    return probe_degrees(thetas, values, max_degree);
}

PipelineReport run_pipeline(const PipelineConfig& config) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    check_config(config);
    if (config.mode != FitMode::FloatLeastSquares && config.m_gates != 1)
        throw ValidationError("exact modes need a single-gate circuit: p0(theta) is only known to be rational for m = 1");

    const Circuit base = stage("build", [&] { return brickwork_circuit(config.n_qubits, config.m_gates, config.seed); });
    const ScrambledCircuit sc = stage("scramble", [&] { return scramble(base, config.seed); });

    PipelineReport report;
    if (config.mode == FitMode::FloatLeastSquares) {
        report = run_least_squares(config, sc);
    } else {
        const ExactRational truth = stage("symbolic", [&] { return p0_symbolic_single_gate(sc); });
        report = run_exact(config, truth, direct_p0(base), [&](double th) { return p0_theta(sc, th); });
    }
    report.runtime_ms = elapsed_ms<Clock>(start);
    return report;
}

std::vector<PipelineReport> corruption_sweep(const PipelineConfig& config, const std::vector<int>& t_values) {
    using Clock = std::chrono::steady_clock;
    std::vector<PipelineReport> out;
    for (int t : t_values) {
        PipelineConfig c = config;
        c.mode = FitMode::BwDecode;
        c.corrupt_count = t;
        check_config(c);
        const auto start = Clock::now();
        PipelineReport r;
        if (c.m_gates == 1) {
            r = run_pipeline(c);
        } else {
            Rng rng(c.seed, 5);
            const ExactRational truth = random_exact_rational(c.k1, c.k2, rng);
            const double direct = truth(GaussianRational(1)).real().get_d();
            r = run_exact(c, truth, direct, [&](double th) { return truth(GaussianRational::from_double(th)).real().get_d(); });
        }
        r.runtime_ms = elapsed_ms<Clock>(start);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace thetapath
