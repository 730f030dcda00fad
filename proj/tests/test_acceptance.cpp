#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

#include "thetapath/circuit.hpp"
#include "thetapath/haar.hpp"
#include "thetapath/interp.hpp"
#include "thetapath/linalg.hpp"
#include "thetapath/rcs.hpp"

using namespace thetapath;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ExactMatrix random_exact(int n, Rng& rng) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_small_rational(rng, true);
    return m;
}

bool same_function(const ExactRational& a, const ExactRational& b) { return a.num * b.den == b.num * a.den; }

std::vector<GaussianRational> safe_points(const ExactRational& f, std::size_t n, int start) {
    std::vector<GaussianRational> out;
    for (int k = start; out.size() < n; ++k) {
        const GaussianRational t(mpq_class(3 * k + 1, 7));
        if (!f.den(t).is_zero()) out.push_back(t);
    }
    return out;
}

Outcome degree_audit() {
    const auto start = Clock::now();
    Rng rng(1001);
    bool within = true;
    bool n2_exact = true;
    std::vector<int> worst(4, 0);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const PolyMatrix pm = modified_qr_pencil(random_exact(n, rng), random_exact(n, rng));
            int bound = 1;
            for (int k = 0; k < n; ++k) {
                const int d = max_degree(pm.columns[static_cast<std::size_t>(k)]);
                within = within && d <= bound;
                if (n == 4) worst[static_cast<std::size_t>(k)] = std::max(worst[static_cast<std::size_t>(k)], d);
                if (n == 2 && k == 1) n2_exact = n2_exact && d == 3;
                bound *= 3;
            }
        }
    }
    const double secs = seconds_since(start);
    const int d4 = worst[3];
    return {within && n2_exact && secs < 60.0,
            fmt("80 pencils in %.1fs; degrees within 3^(k-1): %s; N=2 degree exactly 3: %s; N=4 max column "
                "degrees %d,%d,%d,%d; last column %d vs 27 = 3^3 and the alternative count 28 = 3^3+1: %s",
                secs, within ? "yes" : "no", n2_exact ? "yes" : "no", worst[0], worst[1], worst[2], worst[3], d4,
                d4 == 27 ? "matches 27, the count 28 is one above every observed degree"
                         : (d4 == 28 ? "matches 28" : "matches neither"))};
}

Outcome bw_trials() {
    const auto start = Clock::now();
    Rng rng(1002);
    int ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k1 = static_cast<int>(rng.below(9));
        const int k2 = static_cast<int>(rng.below(9));
        const int t = static_cast<int>(rng.below(4));
        const ExactRational f = random_exact_rational(k1, k2, rng);
        std::vector<SamplePoint<GaussianRational>> pts;
        for (const auto& th : safe_points(f, static_cast<std::size_t>(k1 + k2 + 2 * t + 1), trial))
            pts.push_back({th, f(th)});
        std::set<std::size_t> planted;
        while (planted.size() < static_cast<std::size_t>(t)) planted.insert(rng.below(pts.size()));
        for (std::size_t i : planted) {
            GaussianRational delta;
            do delta = random_small_rational(rng, true);
            while (delta.is_zero());
            pts[i].value += delta;
        }
        const BWResult r = bw_rational(ExactSamples(pts), k1, k2, t);
        if (same_function(r.f, f) && r.error_locations == std::vector<std::size_t>(planted.begin(), planted.end())) ++ok;
    }
    const double secs = seconds_since(start);
    return {ok == 100 && secs < 30.0, fmt("%d/100 exact recoveries with all corruptions located in %.2fs", ok, secs)};
}

Outcome plain_fit() {
    Rng rng(1003);
    int ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k1 = static_cast<int>(rng.below(7));
        const int k2 = static_cast<int>(rng.below(7));
        const ExactRational f = random_exact_rational(k1, k2, rng);
        std::vector<SamplePoint<GaussianRational>> pts;
        for (const auto& th : safe_points(f, static_cast<std::size_t>(k1 + k2 + 1), trial)) pts.push_back({th, f(th)});
        if (same_function(fit_rational(ExactSamples(pts), k1, k2), f)) ++ok;
    }
    return {ok == 100, fmt("%d/100 exact recoveries from k1+k2+1 points", ok)};
}

Outcome paths() {
    Rng rng(1004);
    double defect = 0.0;
    double endpoint = 0.0;
    for (int pair = 0; pair < 10; ++pair) {
        const UnitaryMatrix u1 = haar_unitary(4, 2, rng);
        const UnitaryMatrix u2 = haar_unitary(4, 2, rng);
        for (auto path : {&geodesic_path, &power_path, &pencil_qr_path, &multiplicative_path}) {
            for (int i = 0; i <= 20; ++i) {
                const UnitaryMatrix u = path(u1, u2, i / 20.0);
                defect = std::max(defect, unitarity_defect(u.matrix()));
                if (i == 0) endpoint = std::max(endpoint, (u.matrix() - u1.matrix()).cwiseAbs().maxCoeff());
                if (i == 20) endpoint = std::max(endpoint, (u.matrix() - u2.matrix()).cwiseAbs().maxCoeff());
            }
        }
    }
    return {defect <= 1e-10 && endpoint <= 1e-9,
            fmt("max unitarity defect %.2e, max endpoint error %.2e over 10 pairs x 4 paths x 21 thetas", defect, endpoint)};
}

Outcome simulator() {
    Rng rng(1005);
    double amp_err = 0.0;
    double norm_err = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const int m = 1 + static_cast<int>(rng.below(4));
        std::vector<Gate> gates;
        for (int j = 0; j < m; ++j) {
            if (n == 1 || rng.below(2) == 0) {
                gates.emplace_back(std::vector<int>{static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))},
                                   haar_unitary(2, 2, rng));
            } else {
                const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
                if (b >= a) ++b;
                gates.emplace_back(std::vector<int>{a, b}, haar_unitary(4, 2, rng));
            }
        }
        const Circuit c(n, std::move(gates));
        const StateVector s = simulate(c);
        double total = 0.0;
        for (std::size_t y = 0; y < (std::size_t{1} << n); ++y) {
            Bitstring bits;
            for (int q = n - 1; q >= 0; --q) bits.push_back(((y >> q) & 1u) ? '1' : '0');
            amp_err = std::max(amp_err, std::abs(feynman_amplitude(c, bits) - s[y]));
            total += p_y(c, bits);
        }
        norm_err = std::max(norm_err, std::abs(total - 1.0));
    }
    return {amp_err <= 1e-10 && norm_err <= 1e-10,
            fmt("50 circuits: max amplitude gap %.2e, max normalization error %.2e", amp_err, norm_err)};
}

Outcome scramble_endpoints() {
    bool exact = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Circuit base = brickwork_circuit(3, 4, seed);
        const Circuit c1 = evaluate_scrambled(scramble(base, seed + 500), 1.0);
        for (std::size_t j = 0; j < base.size(); ++j)
            exact = exact && c1.gates[j].matrix.matrix() == base.gates[j].matrix.matrix();
    }
    const Circuit single(1, {Gate({0}, UnitaryMatrix(brickwork_circuit(1, 1, 7).gates[0].matrix))});
    EnsembleHistogram h = EnsembleHistogram::uniform("eigenangle", -std::numbers::pi, std::numbers::pi, 20);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const Circuit c = evaluate_scrambled(scramble(single, seed), 0.0);
        for (double a : statistic_values(c.gates[0].matrix.matrix(), Statistic::EigenAngles)) h.add(a);
    }
    const double p = 1.0 / h.bins();
    const double expect = static_cast<double>(h.total) * p;
    const double sigma = std::sqrt(static_cast<double>(h.total) * p * (1.0 - p));
    double worst = 0.0;
    for (auto count : h.counts) worst = std::max(worst, std::abs(static_cast<double>(count) - expect) / sigma);
    return {exact && worst <= 4.0,
            fmt("C(1) equals base entrywise: %s; theta=0 eigenangle histogram of 10^4 gates, worst bin %.2f sigma",
                exact ? "yes" : "no", worst)};
}

Outcome deformation_trend() {
    const std::vector<double> thetas{0.02, 0.05, 0.1, 0.2};
    EnsembleOptions base{2, 2, Statistic::EigenAngles, 20, 10000, 7000, 4};
    const EnsembleHistogram haar = deformed_ensemble_histogram(base, 0.0);
    EnsembleOptions floor_opts = base;
    floor_opts.seed = 7001;
    const double floor = tvd_estimate(haar, deformed_ensemble_histogram(floor_opts, 0.0));
    const double bound = tvd_noise_bound(20, 10000);

    std::vector<double> tvd;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        EnsembleOptions o = base;
        o.seed = 7002 + i;
        tvd.push_back(tvd_estimate(haar, deformed_ensemble_histogram(o, thetas[i])));
    }
    int decreases = 0;
    int violations = 0;
    for (std::size_t i = 1; i < tvd.size(); ++i) {
        if (tvd[i] < tvd[i - 1]) ++decreases;
        if (tvd[i] < tvd[i - 1] - bound) ++violations;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    double sxe = 0.0;
    for (std::size_t i = 0; i < tvd.size(); ++i) {
        sxy += thetas[i] * tvd[i];
        sxx += thetas[i] * thetas[i];
        sxe += thetas[i] * (tvd[i] - floor);
    }
    const double slope = sxy / sxx;
    const double excess_slope = sxe / sxx;
    return {violations <= 1 && slope > 0.0 && excess_slope > 0.0,
            fmt("tvd %.4f %.4f %.4f %.4f at theta 0.02 0.05 0.1 0.2 (haar-vs-haar floor %.4f, noise bound %.4f); "
                "decreases %d, noise-bound violations %d; slope %.4f, slope above floor %.4f",
                tvd[0], tvd[1], tvd[2], tvd[3], floor, bound, decreases, violations, slope, excess_slope)};
}

Outcome provable_pipeline() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        PipelineConfig c;
        c.n_qubits = 2;
        c.m_gates = 1;
        c.k1 = 2;
        c.k2 = 2;
        c.seed = seed;
        c.mode = FitMode::ExactFit;
        worst = std::max(worst, run_pipeline(c).abs_error);
    }
    const double secs = seconds_since(start);
    return {worst <= 1e-10 && secs < 10.0, fmt("50 runs, max |recovered - direct| %.2e in %.2fs", worst, secs)};
}

Outcome multi_gate_probe() {
    const auto start = Clock::now();
    bool all_ok = true;
    std::string detail;
    for (int m : {2, 3, 5}) {
        int good = 0;
        int min_d = 1 << 30;
        int max_d = 0;
        double worst_res = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            PipelineConfig c;
            c.n_qubits = 3;
            c.m_gates = m;
            c.mode = FitMode::FloatLeastSquares;
            c.seed = seed;
            c.threads = 4;
            const PipelineReport r = run_pipeline(c);
            if (r.probe.empty()) throw std::runtime_error("probe table missing");
            if (seed == 0) {
                std::printf("    m=%d seed 0 probe table (degree: held-out residual / best so far):", m);
                for (const auto& row : r.probe)
                    std::printf(" %d:%.1e/%.1e", row.degree, row.heldout_residual, row.best_residual);
                std::printf("\n");
            }
            good += r.abs_error <= 1e-3 ? 1 : 0;
            min_d = std::min(min_d, r.fitted_k1);
            max_d = std::max(max_d, r.fitted_k1);
            worst_res = std::max(worst_res, r.heldout_max_residual);
        }
        all_ok = all_ok && good >= 16;
        detail += fmt("m=%d %d/20 within 1e-3 (degrees %d..%d vs bound 2m*27=%d, worst held-out %.1e); ", m, good,
                      min_d, max_d, 2 * m * 27, worst_res);
    }
    detail += fmt("%.1fs", seconds_since(start));
    return {all_ok, detail};
}

}  // namespace

int main() {
    report(1, "degree audit", degree_audit);
    report(2, "rational Berlekamp-Welch", bw_trials);
    report(3, "plain rational fit", plain_fit);
    report(4, "path constructors", paths);
    report(5, "simulator cross-check", simulator);
    report(6, "scramble endpoints", scramble_endpoints);
    report(7, "theta-deformation trend", deformation_trend);
    report(8, "pipeline, single gate", provable_pipeline);
    report(9, "pipeline, multi gate", multi_gate_probe);
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
