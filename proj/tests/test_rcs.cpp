#include <doctest.h>

#include <cmath>

#include "thetapath/rcs.hpp"

using namespace thetapath;

namespace {

PipelineConfig single_gate(std::uint64_t seed, FitMode mode = FitMode::ExactFit) {
    PipelineConfig c;
    c.n_qubits = 2;
    c.m_gates = 1;
    c.k1 = 2;
    c.k2 = 2;
    c.seed = seed;
    c.mode = mode;
    return c;
}

}  // namespace

TEST_CASE("single-gate pipeline is exact") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PipelineReport r = run_pipeline(single_gate(seed));
        CHECK(r.abs_error <= 1e-12);
        CHECK(r.fitted_k1 <= 2);
        CHECK(r.fitted_k2 <= 2);
        CHECK(r.heldout_max_residual <= 1e-12);
        CHECK(r.samples.size() == 5);
    }
}

TEST_CASE("bw-decode without corruptions matches exact-fit") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PipelineReport a = run_pipeline(single_gate(seed));
        PipelineReport b = run_pipeline(single_gate(seed, FitMode::BwDecode));
        CHECK(a.same_result(b));
    }
}

TEST_CASE("bw-decode locates corruptions on a single-gate circuit") {
    PipelineConfig c = single_gate(7, FitMode::BwDecode);
    c.corrupt_count = 2;
    const PipelineReport r = run_pipeline(c);
    CHECK(r.samples.size() == 9);
    CHECK(r.corruptions_planted.size() == 2);
    CHECK(r.corruptions_detected == r.corruptions_planted);
    CHECK(r.abs_error <= 1e-12);
}

TEST_CASE("pipeline determinism") {
    PipelineConfig c = single_gate(11, FitMode::BwDecode);
    c.corrupt_count = 1;
    CHECK(run_pipeline(c).same_result(run_pipeline(c)));
    PipelineConfig f;
    f.n_qubits = 3;
    f.m_gates = 2;
    f.mode = FitMode::FloatLeastSquares;
    f.seed = 12;
    f.threads = 1;
    const PipelineReport a = run_pipeline(f);
    f.threads = 3;
    CHECK(a.same_result(run_pipeline(f)));
}

TEST_CASE("config validation") {
    PipelineConfig c = single_gate(1);
    c.m_gates = 2;
    CHECK_THROWS_AS(run_pipeline(c), ValidationError);
    c = single_gate(1);
    c.theta_count = 5;
    c.corrupt_count = 1;
    CHECK_THROWS_AS(run_pipeline(c), UsageError);
    c = single_gate(1);
    c.theta_lo = 0.5;
    c.theta_hi = 0.4;
    CHECK_THROWS_AS(run_pipeline(c), UsageError);
    c = single_gate(1);
    c.k1 = -1;
    CHECK_THROWS_AS(run_pipeline(c), UsageError);
    CHECK_THROWS_AS(parse_fit_mode("magic"), UsageError);
    CHECK(parse_fit_mode(to_string(FitMode::BwDecode)) == FitMode::BwDecode);
}

TEST_CASE("draw_thetas") {
    Rng rng(13);
    const auto t = draw_thetas(50, 0.05, 0.95, rng);
    CHECK(t.size() == 50);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t[i] > 0.05);
        CHECK(t[i] < 0.95);
        if (i > 0) CHECK(t[i] > t[i - 1]);
    }
}

TEST_CASE("degree probe") {
    SUBCASE("single gate needs at most degree two") {
        const ScrambledCircuit sc = scramble(brickwork_circuit(2, 1, 14), 14);
        Rng rng(15);
        const ProbeResult p = minimal_degree_probe(sc, 4, draw_thetas(40, 0.05, 0.95, rng));
        CHECK(p.degree <= 2);
        CHECK(p.residual <= kProbeTolerance);
    }
    SUBCASE("constant p0 gives degree zero") {
        const Circuit ids(2, {Gate({0, 1}, UnitaryMatrix::identity(4))});
        ScrambledCircuit sc{ids, {ComplexMatrix::Identity(4, 4)}, 0};
        Rng rng(16);
        const ProbeResult p = minimal_degree_probe(sc, 3, draw_thetas(20, 0.05, 0.95, rng));
        CHECK(p.degree == 0);
        CHECK(p.table.size() == 1);
    }
    SUBCASE("best-so-far residual is nonincreasing") {
        const ScrambledCircuit sc = scramble(brickwork_circuit(3, 3, 17), 17);
        Rng rng(18);
        const ProbeResult p = minimal_degree_probe(sc, 12, draw_thetas(60, 0.05, 0.95, rng));
        for (std::size_t i = 1; i < p.table.size(); ++i)
            CHECK(p.table[i].best_residual <= p.table[i - 1].best_residual + 1e-12);
        CHECK(p.table.back().best_residual == p.residual);
    }
    SUBCASE("too few points") {
        const ScrambledCircuit sc = scramble(brickwork_circuit(2, 1, 19), 19);
        Rng rng(20);
        CHECK_THROWS_AS(minimal_degree_probe(sc, 10, draw_thetas(10, 0.05, 0.95, rng)), UsageError);
    }
}

TEST_CASE("corruption sweep") {
    SUBCASE("synthetic (6,6) rational, t = 3, 19 points") {
        PipelineConfig c;
        c.n_qubits = 3;
        c.m_gates = 3;
        c.k1 = 6;
        c.k2 = 6;
        c.theta_count = 19;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            c.seed = seed;
            const auto reports = corruption_sweep(c, {0, 1, 2, 3});
            REQUIRE(reports.size() == 4);
            for (const auto& r : reports) {
                CHECK(r.abs_error <= 1e-12);
                CHECK(r.corruptions_detected == r.corruptions_planted);
            }
            CHECK(reports[3].corruptions_planted.size() == 3);
        }
    }
    SUBCASE("t = 0 matches exact-fit on a single gate") {
        const PipelineConfig c = single_gate(21);
        const auto reports = corruption_sweep(c, {0});
        CHECK(reports[0].same_result(run_pipeline(c)));
    }
    SUBCASE("budget exceeded") {
        PipelineConfig c;
        c.m_gates = 3;
        c.n_qubits = 3;
        c.k1 = 6;
        c.k2 = 6;
        c.theta_count = 19;
        CHECK_THROWS_AS(corruption_sweep(c, {4}), UsageError);
    }
}

TEST_CASE("least-squares pipeline on a multi-gate circuit reports its probe") {
    PipelineConfig c;
    c.n_qubits = 3;
    c.m_gates = 2;
    c.mode = FitMode::FloatLeastSquares;
    c.seed = 22;
    const PipelineReport r = run_pipeline(c);
    CHECK(!r.probe.empty());
    CHECK(r.samples.size() == 300);
    CHECK(std::isfinite(r.recovered_p0_at_1));
    CHECK(r.abs_error == std::abs(r.recovered_p0_at_1 - r.direct_p0));
}
