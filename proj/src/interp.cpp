#include "thetapath/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thetapath {

namespace {

/// Rows [θ^0 .. θ^a, −f θ^0 .. −f θ^b] of the linearized rational system.
ExactMatrix rational_system(const ExactSamples& samples, int num_degree, int den_degree) {
    const auto rows = static_cast<Eigen::Index>(samples.size());
    const Eigen::Index cols = num_degree + den_degree + 2;
    ExactMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& pt = samples[static_cast<std::size_t>(i)];
        GaussianRational power(1);
        const GaussianRational neg = -pt.value;
        for (int j = 0; j <= std::max(num_degree, den_degree); ++j) {
            if (j <= num_degree) m(i, j) = power;
            if (j <= den_degree) m(i, num_degree + 1 + j) = neg * power;
            power *= pt.theta;
        }
    }
    return m;
}

std::pair<ExactPoly, ExactPoly> split(const ExactVector& v, int num_degree, int den_degree) {
    std::vector<GaussianRational> n(v.data(), v.data() + num_degree + 1);
    std::vector<GaussianRational> d(v.data() + num_degree + 1, v.data() + num_degree + den_degree + 2);
    return {ExactPoly(std::move(n)), ExactPoly(std::move(d))};
}

bool agrees(const ExactRational& f, const SamplePoint<GaussianRational>& pt) {
    const GaussianRational d = f.den(pt.theta);
    if (d.is_zero()) return false;
    return f.num(pt.theta) / d == pt.value;
}

void check_degrees(int k1, int k2) {
    if (k1 < 0 || k2 < 0) throw UsageError("degree bounds must be non-negative");
}

}  // namespace

ExactRational fit_rational(const ExactSamples& samples, int k1, int k2) {
    check_degrees(k1, k2);
    if (samples.size() < static_cast<std::size_t>(k1 + k2 + 1))
        throw UsageError("fit_rational needs at least k1+k2+1 = " + std::to_string(k1 + k2 + 1) + " samples");
    const auto basis = exact_nullspace(rational_system(samples, k1, k2));
    if (basis.empty()) throw InconsistencyError("no rational function of degree (" + std::to_string(k1) + "," +
                                                std::to_string(k2) + ") fits the samples");
    // last free variable set to 1; earlier basis vectors only if that one has D ≡ 0
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
        auto [num, den] = split(*it, k1, k2);
        if (den.is_zero()) continue;
        ExactRational f = rational_simplify(num, den);
        for (const auto& pt : samples.points())
            if (!agrees(f, pt))
                throw InconsistencyError("fitted rational function misses a sample (pole or inconsistent data)");
        f.k1 = k1;
        f.k2 = k2;
        return f;
    }
    throw RankDeficiencyError("every solution of the interpolation system has a zero denominator");
}

std::vector<ExactRational> bw_candidate_quotients(const ExactSamples& samples, int k1, int k2, int t) {
    check_degrees(k1, k2);
    if (t < 0) throw UsageError("error budget must be non-negative");
    std::vector<ExactRational> out;
    for (const auto& v : exact_nullspace(rational_system(samples, k1 + t, k2 + t))) {
        auto [num, den] = split(v, k1 + t, k2 + t);
        if (den.is_zero()) continue;
        out.push_back(rational_simplify(num, den));
    }
    return out;
}

BWResult bw_rational(const ExactSamples& samples, int k1, int k2, int t) {
    check_degrees(k1, k2);
    if (t < 0) throw UsageError("error budget must be non-negative");
    if (samples.size() < static_cast<std::size_t>(k1 + k2 + 2 * t + 1))
        throw UsageError("bw_rational needs n >= k1+k2+2t+1 = " + std::to_string(k1 + k2 + 2 * t + 1) + " samples");
    const auto basis = exact_nullspace(rational_system(samples, k1 + t, k2 + t));
    if (basis.empty()) throw InfeasibleError("decoding system has only the zero solution");

    const ExactVector* chosen = nullptr;
    for (auto it = basis.rbegin(); it != basis.rend() && chosen == nullptr; ++it)
        if (!split(*it, k1 + t, k2 + t).second.is_zero()) chosen = &*it;
    if (chosen == nullptr) throw InfeasibleError("decoding system admits no nonzero denominator");

    auto [num, den] = split(*chosen, k1 + t, k2 + t);
    ExactRational f = rational_simplify(num, den);
    if (f.num.degree() > k1 || f.den.degree() > k2)
        throw TooManyErrors("quotient has degree (" + std::to_string(f.num.degree()) + "," +
                            std::to_string(f.den.degree()) + "), exceeding the bound: too many errors");
    f.k1 = k1;
    f.k2 = k2;

    BWResult result{std::move(f), {}};
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (!agrees(result.f, samples[i])) result.error_locations.push_back(i);
    if (result.error_locations.size() > static_cast<std::size_t>(t))
        throw TooManyErrors("recovered function disagrees with " + std::to_string(result.error_locations.size()) +
                            " samples, more than the budget " + std::to_string(t));
    return result;
}

FloatRational LsqRationalFit::in_theta() const {
    // x = (θ − c)/h = (1/h)·θ − c/h
    const Complex a(1.0 / half_width, 0.0);
    const Complex b(-center / half_width, 0.0);
    const FloatPoly num = substitute_affine(in_x.num, a, b);
    const FloatPoly den = substitute_affine(in_x.den, a, b);
    FloatRational f = rational_simplify(num, den);
    f.k1 = in_x.k1;
    f.k2 = in_x.k2;
    return f;
}

namespace {

LsqRationalFit solve_lsq(const std::vector<SamplePoint<Complex>>& pts, int k1, int k2, double center,
                         double half_width, int reweight_iterations) {
    const auto rows = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index cols = k1 + k2 + 2;
    Eigen::VectorXd x(rows);
    for (Eigen::Index i = 0; i < rows; ++i) x(i) = (pts[static_cast<std::size_t>(i)].theta.real() - center) / half_width;

    Eigen::VectorXd weight = Eigen::VectorXd::Ones(rows);
    FloatPoly num;
    FloatPoly den;
    for (int pass = 0; pass <= reweight_iterations; ++pass) {
        ComplexMatrix a(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const Complex f = pts[static_cast<std::size_t>(i)].value;
            double power = 1.0;
            for (int j = 0; j <= std::max(k1, k2); ++j) {
                if (j <= k1) a(i, j) = weight(i) * power;
                if (j <= k2) a(i, k1 + 1 + j) = -weight(i) * f * power;
                power *= x(i);
            }
        }
        // column scaling so every basis function has unit norm
        Eigen::VectorXd scale(cols);
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double nrm = a.col(j).norm();
            scale(j) = (nrm > 0.0) ? 1.0 / nrm : 1.0;
            a.col(j) *= scale(j);
        }
        Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
        ComplexVector v = svd.matrixV().col(cols - 1);
        for (Eigen::Index j = 0; j < cols; ++j) v(j) *= scale(j);

        num = FloatPoly(std::vector<Complex>(v.data(), v.data() + k1 + 1));
        den = FloatPoly(std::vector<Complex>(v.data() + k1 + 1, v.data() + cols));
        if (den.is_zero()) throw RankDeficiencyError("least-squares fit produced a zero denominator");
        if (pass < reweight_iterations) {
            for (Eigen::Index i = 0; i < rows; ++i) {
                const double d = std::abs(den(Complex(x(i), 0.0)));
                weight(i) = (d > 0.0) ? 1.0 / d : 1.0;
            }
            weight /= weight.maxCoeff();
        }
    }
    LsqRationalFit fit{rational_simplify(num, den), center, half_width};
    fit.in_x.k1 = k1;
    fit.in_x.k2 = k2;
    return fit;
}

}  // namespace

LsqRationalFit fit_rational_lsq(const FloatSamples& samples, int k1, int k2, const LsqOptions& opts) {
    check_degrees(k1, k2);
    if (samples.size() < static_cast<std::size_t>(k1 + k2 + 1))
        throw UsageError("least-squares fit needs at least k1+k2+1 samples");
    if (!(opts.trim_fraction >= 0.0 && opts.trim_fraction < 1.0)) throw UsageError("trim fraction must be in [0, 1)");
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& pt : samples.points()) {
        if (pt.theta.imag() != 0.0) throw UsageError("least-squares fit expects real sample points");
        lo = std::min(lo, pt.theta.real());
        hi = std::max(hi, pt.theta.real());
    }
    const double center = 0.5 * (lo + hi);
    const double half_width = (hi > lo) ? 0.5 * (hi - lo) : 1.0;

    std::vector<SamplePoint<Complex>> pts = samples.points();
    const auto drop = static_cast<std::size_t>(std::floor(opts.trim_fraction * static_cast<double>(pts.size())));
    const auto needed = static_cast<std::size_t>(k1 + k2 + 2);
    // greedy trimming by leave-one-out prediction error
    for (std::size_t round = 0; round < drop && pts.size() > needed; ++round) {
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<SamplePoint<Complex>> rest = pts;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            double err = INFINITY;
            try {
                const LsqRationalFit loo = solve_lsq(rest, k1, k2, center, half_width, opts.reweight_iterations);
                const Complex x((pts[i].theta.real() - center) / half_width, 0.0);
                const Complex d = loo.in_x.den(x);
                if (std::abs(d) > 0.0) err = std::abs(loo.in_x.num(x) / d - pts[i].value);
            } catch (const RankDeficiencyError&) {
            }
            if (err > worst_err) {
                worst_err = err;
                worst = i;
            }
        }
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    LsqRationalFit fit = solve_lsq(pts, k1, k2, center, half_width, opts.reweight_iterations);
    return fit;
}

GaussianRational random_small_rational(Rng& rng, bool complex) {
    auto part = [&rng] {
        const long num = static_cast<long>(rng.below(19)) - 9;
        const long den = static_cast<long>(rng.below(9)) + 1;
        return mpq_class(num, den);
    };
    mpq_class re = part();
    mpq_class im = complex ? part() : mpq_class(0);
    re.canonicalize();
    im.canonicalize();
    return {re, im};
}

ExactRational random_exact_rational(int k1, int k2, Rng& rng) {
    check_degrees(k1, k2);
    for (;;) {
        std::vector<GaussianRational> n(static_cast<std::size_t>(k1) + 1);
        std::vector<GaussianRational> d(static_cast<std::size_t>(k2) + 1);
        for (auto& c : n) c = random_small_rational(rng);
        for (auto& c : d) c = random_small_rational(rng);
        d.back() = GaussianRational(1);
        if (n.back().is_zero()) continue;
        const ExactPoly num(std::move(n));
        const ExactPoly den(std::move(d));
        if (poly_gcd(num, den).degree() > 0) continue;
        if (den(GaussianRational(1)).is_zero()) continue;
        return {num, den, k1, k2};
    }
}

FloatRational fit_rational(const FloatSamples& samples, int k1, int k2) {
    return fit_rational_lsq(samples, k1, k2).in_theta();
}

}  // namespace thetapath
