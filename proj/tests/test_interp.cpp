#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "thetapath/interp.hpp"

using namespace thetapath;
using thetapath::testing::grid_point;

namespace {

GaussianRational q(long n, long d = 1) { return GaussianRational(mpq_class(n, d)); }

ExactSamples sample(const ExactRational& f, const std::vector<GaussianRational>& thetas) {
    std::vector<SamplePoint<GaussianRational>> pts;
    for (const auto& t : thetas) pts.push_back({t, f(t)});
    return ExactSamples(std::move(pts));
}

/// n distinct rational points avoiding the poles of f.
std::vector<GaussianRational> safe_points(const ExactRational& f, std::size_t n, int start = 0) {
    std::vector<GaussianRational> out;
    for (int k = start; out.size() < n; ++k) {
        const GaussianRational t = grid_point(k);
        if (!f.den(t).is_zero()) out.push_back(t);
    }
    return out;
}

bool same_function(const ExactRational& a, const ExactRational& b) { return a.num * b.den == b.num * a.den; }

}  // namespace

TEST_CASE("fit_rational examples") {
    SUBCASE("1/(1+theta)") {
        const ExactRational f{ExactPoly(q(1)), ExactPoly::linear(q(1), q(1)), 0, 1};
        const ExactRational g = fit_rational(sample(f, {q(0), q(1), q(2), q(3)}), 0, 1);
        CHECK(g.num == ExactPoly(q(1)));
        CHECK(g.den == ExactPoly::linear(q(1), q(1)));
    }
    SUBCASE("constant") {
        std::vector<SamplePoint<GaussianRational>> pts{{q(0), q(5)}, {q(1), q(5)}, {q(4), q(5)}};
        const ExactRational g = fit_rational(ExactSamples(pts), 0, 0);
        CHECK(g.num == ExactPoly(q(5)));
        CHECK(g.den == ExactPoly(q(1)));
    }
    SUBCASE("random (3,2) rational from six samples") {
        Rng rng(51);
        const ExactRational f = random_exact_rational(3, 2, rng);
        const ExactRational g = fit_rational(sample(f, safe_points(f, 6)), 3, 2);
        for (const auto& t : safe_points(f, 10, 40)) CHECK(g(t) == f(t));
    }
    SUBCASE("errors") {
        std::vector<SamplePoint<GaussianRational>> pts{{q(0), q(1)}, {q(1), q(2)}};
        CHECK_THROWS_AS(fit_rational(ExactSamples(pts), 1, 1), UsageError);
        CHECK_THROWS_AS(fit_rational(ExactSamples(pts), -1, 0), UsageError);
        std::vector<SamplePoint<GaussianRational>> bad{{q(0), q(1)}, {q(1), q(2)}, {q(2), q(7)}};
        CHECK_THROWS_AS(fit_rational(ExactSamples(bad), 1, 0), InconsistencyError);
        CHECK_THROWS_AS(ExactSamples({{q(0), q(1)}, {q(0), q(2)}}), UsageError);
    }
}

TEST_CASE("fit_rational recovers 100 random rationals from the minimal point count") {
    Rng rng(52);
    int recovered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k1 = static_cast<int>(rng.below(7));
        const int k2 = static_cast<int>(rng.below(7));
        const ExactRational f = random_exact_rational(k1, k2, rng);
        const ExactRational g = fit_rational(sample(f, safe_points(f, static_cast<std::size_t>(k1 + k2 + 1))), k1, k2);
        recovered += same_function(f, g) ? 1 : 0;
    }
    CHECK(recovered == 100);
}

TEST_CASE("bw_rational examples") {
    SUBCASE("clean samples with a spare budget") {
        const ExactRational f{ExactPoly::linear(q(1), q(1)), ExactPoly::linear(q(2), q(1)), 1, 1};
        const BWResult r = bw_rational(sample(f, safe_points(f, 5)), 1, 1, 1);
        CHECK(same_function(r.f, f));
        CHECK(r.f.num == f.num);
        CHECK(r.f.den == f.den);
        CHECK(r.error_locations.empty());
    }
    SUBCASE("one corruption located") {
        const ExactRational f{ExactPoly(q(1)), ExactPoly::linear(q(1), q(1)), 0, 1};
        std::vector<SamplePoint<GaussianRational>> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({q(i), f(q(i))});
        pts[3].value += q(1, 2);
        const BWResult r = bw_rational(ExactSamples(pts), 0, 1, 1);
        CHECK(same_function(r.f, f));
        CHECK(r.error_locations == std::vector<std::size_t>{3});
    }
    SUBCASE("too many errors is reported, never silently wrong") {
        const ExactRational f{ExactPoly(q(1)), ExactPoly::linear(q(1), q(1)), 0, 1};
        std::vector<SamplePoint<GaussianRational>> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({q(i), f(q(i))});
        pts[1].value += q(3);
        pts[4].value += q(5);
        try {
            const BWResult r = bw_rational(ExactSamples(pts), 0, 1, 1);
            CHECK(r.error_locations.size() <= 1);
            CHECK(!same_function(r.f, f));
        } catch (const DecodeError&) {
            CHECK(true);
        }
    }
    SUBCASE("too few points") {
        const ExactRational f{ExactPoly(q(1)), ExactPoly::linear(q(1), q(1)), 0, 1};
        CHECK_THROWS_AS(bw_rational(sample(f, safe_points(f, 3)), 0, 1, 1), UsageError);
    }
}

TEST_CASE("bw_rational on 100 random corrupted trials") {
    Rng rng(53);
    int recovered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k1 = static_cast<int>(rng.below(9));
        const int k2 = static_cast<int>(rng.below(9));
        const int t = static_cast<int>(rng.below(4));
        const ExactRational f = random_exact_rational(k1, k2, rng);
        const auto thetas = safe_points(f, static_cast<std::size_t>(k1 + k2 + 2 * t + 1), static_cast<int>(rng.below(20)));
        std::vector<SamplePoint<GaussianRational>> pts;
        for (const auto& th : thetas) pts.push_back({th, f(th)});
        std::set<std::size_t> planted;
        while (planted.size() < static_cast<std::size_t>(t)) planted.insert(rng.below(pts.size()));
        for (std::size_t i : planted) {
            GaussianRational delta;
            do delta = random_small_rational(rng, true);
            while (delta.is_zero());
            pts[i].value += delta;
        }
        const BWResult r = bw_rational(ExactSamples(pts), k1, k2, t);
        const std::vector<std::size_t> expect(planted.begin(), planted.end());
        recovered += (same_function(r.f, f) && r.error_locations == expect) ? 1 : 0;
    }
    CHECK(recovered == 100);
}

TEST_CASE("all BW nullspace quotients agree") {
    Rng rng(54);
    int multi = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const ExactRational f = random_exact_rational(2, 2, rng);
        std::vector<SamplePoint<GaussianRational>> pts;
        for (const auto& th : safe_points(f, 11)) pts.push_back({th, f(th)});
        pts[2].value += q(1);
        const auto quotients = bw_candidate_quotients(ExactSamples(pts), 2, 2, 3);
        if (quotients.size() > 1) ++multi;
        for (const auto& g : quotients) CHECK(same_function(g, f));
    }
    CHECK(multi > 0);
}

TEST_CASE("bw_rational with zero corruptions agrees with fit_rational") {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const ExactRational f = random_exact_rational(3, 3, rng);
        const ExactSamples s = sample(f, safe_points(f, 7));
        const ExactRational a = fit_rational(s, 3, 3);
        const BWResult b = bw_rational(s, 3, 3, 0);
        CHECK(a.num == b.f.num);
        CHECK(a.den == b.f.den);
    }
}

TEST_CASE("extrapolate") {
    const ExactRational f{ExactPoly::linear(q(1), q(1)), ExactPoly(q(1)), 1, 0};
    CHECK(extrapolate(f, q(1)) == q(2));
    const ExactRational pole{ExactPoly(q(1)), ExactPoly::linear(q(-1), q(1)), 0, 1};
    CHECK_THROWS_AS(extrapolate(pole, q(1)), PoleError);
    Rng rng(56);
    const ExactRational g = random_exact_rational(2, 3, rng);
    const ExactRational fit = fit_rational(sample(g, safe_points(g, 6)), 2, 3);
    CHECK(extrapolate(fit, q(1)) == g(q(1)));
}

TEST_CASE("least-squares fit") {
    // a (3,3) rational without poles near the sampled window
    Rng rng(57);
    ExactRational f = random_exact_rational(3, 3, rng);
    for (;;) {
        double m = INFINITY;
        for (int i = 0; i <= 100; ++i)
            m = std::min(m, std::sqrt(f.den(GaussianRational::from_double(i / 100.0)).norm().get_d()));
        if (m > 0.5) break;
        f = random_exact_rational(3, 3, rng);
    }
    std::vector<SamplePoint<Complex>> pts;
    for (int i = 0; i < 60; ++i) {
        const double th = 0.05 + 0.9 * i / 59.0;
        const GaussianRational d = f.den(GaussianRational::from_double(th));
        if (d.norm() < mpq_class(1, 100)) continue;
        pts.push_back({Complex(th, 0.0), f(GaussianRational::from_double(th)).to_complex()});
    }
    const LsqRationalFit fit = fit_rational_lsq(FloatSamples(pts), 3, 3);
    for (const auto& p : pts) CHECK(std::abs(fit(p.theta.real()) - p.value) <= 1e-8);
    const FloatRational in_theta = fit.in_theta();
    CHECK(std::abs(in_theta(Complex(0.5)) - fit(0.5)) <= 1e-8);

    SUBCASE("trimming removes a planted outlier") {
        auto bad = pts;
        bad[10].value += 0.5;
        LsqOptions opts;
        opts.trim_fraction = 0.05;
        const LsqRationalFit trimmed = fit_rational_lsq(FloatSamples(bad), 3, 3, opts);
        CHECK(std::abs(trimmed(bad[20].theta.real()) - bad[20].value) <= 1e-6);
    }
}
