#include <doctest.h>

#include "support.hpp"
#include "thetapath/haar.hpp"
#include "thetapath/io.hpp"

using namespace thetapath;
using io::json;

TEST_CASE("polynomial and rational round trips") {
    Rng rng(81);
    const ExactPoly p = testing::random_exact_poly(5, rng);
    CHECK(io::exact_poly_from_json(io::to_json(p)) == p);
    const ExactRational f = random_exact_rational(3, 2, rng);
    const ExactRational g = io::exact_rational_from_json(io::to_json(f));
    CHECK(g.num == f.num);
    CHECK(g.den == f.den);
    CHECK(g.k1 == 3);
    CHECK(g.k2 == 2);
    const FloatPoly q(std::vector<Complex>{{0.1, -2.0}, {3.0, 0.25}});
    CHECK(io::float_poly_from_json(io::to_json(q)) == q);
    CHECK(io::to_json(GaussianRational::parse("1/2-3*i")) == "1/2-3*i");
    CHECK_THROWS_AS(io::exact_poly_from_json(json::array({"1/0"})), ValidationError);
}

TEST_CASE("matrix round trip") {
    Rng rng(82);
    const ComplexMatrix m = testing::random_complex(3, rng);
    CHECK(io::matrix_from_json(io::to_json(m)) == m);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[[1,0]],[[1,0],[0,0]]]")), ValidationError);
}

TEST_CASE("circuit round trip and validation") {
    const Circuit c = brickwork_circuit(3, 3, 83);
    const Circuit back = io::circuit_from_json(io::to_json(c));
    REQUIRE(back.size() == c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        CHECK(back.gates[j].targets == c.gates[j].targets);
        CHECK(back.gates[j].matrix.matrix() == c.gates[j].matrix.matrix());
    }
    const json nested = json::parse(R"({"n_qubits": 1, "gates": [{"targets": [0], "matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]}]})");
    CHECK(io::circuit_from_json(nested).gates[0].matrix.matrix()(0, 1) == Complex(1.0));
    const json bad = json::parse(R"({"n_qubits": 1, "gates": [{"targets": [0], "matrix": [[2,0],[0,0],[0,0],[1,0]]}]})");
    CHECK_THROWS_AS(io::circuit_from_json(bad), ValidationError);
    CHECK_NOTHROW(io::circuit_from_json(bad, 5.0));
    CHECK_THROWS_AS(io::circuit_from_json(json::parse(R"({"gates": []})")), ValidationError);
    const json out_of_range = json::parse(R"({"n_qubits": 1, "gates": [{"targets": [3], "matrix": [[1,0],[0,0],[0,0],[1,0]]}]})");
    CHECK_THROWS_AS(io::circuit_from_json(out_of_range), ValidationError);
}

TEST_CASE("pipeline report json") {
    PipelineReport r;
    r.recovered_p0_at_1 = 0.25;
    r.direct_p0 = 0.25;
    r.fitted_k1 = 2;
    r.fitted_k2 = 1;
    r.runtime_ms = 99;
    r.corruptions_planted = {1, 4};
    const json j = io::to_json(r);
    CHECK(j.at("fitted_degree") == json::array({2, 1}));
    CHECK(j.at("corruptions_planted") == json::array({1, 4}));
    CHECK(!j.contains("runtime_ms"));
}
