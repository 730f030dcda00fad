#pragma once

#include <string>

#include <json.hpp>

#include "thetapath/circuit.hpp"
#include "thetapath/interp.hpp"
#include "thetapath/linalg.hpp"
#include "thetapath/rcs.hpp"

namespace thetapath::io {

using nlohmann::json;

/// Exact coefficients serialize as "a/b+c/d*i" strings, float coefficients
/// as [re, im] decimal pairs.
json to_json(const GaussianRational& c);
json to_json(const Complex& c);

template <Field S>
json to_json(const Poly<S>& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

template <Field S>
json to_json(const RationalFn<S>& f) {
    return json{{"num", to_json(f.num)}, {"den", to_json(f.den)}, {"degree_bound", {f.k1, f.k2}}};
}

ExactPoly exact_poly_from_json(const json& j);
FloatPoly float_poly_from_json(const json& j);
ExactRational exact_rational_from_json(const json& j);

/// Nested rows of [re, im] pairs.
json to_json(const ComplexMatrix& m);
/// Accepts nested rows of [re, im] pairs; throws ValidationError on ragged input.
ComplexMatrix matrix_from_json(const json& j);

/// Columns as arrays of coefficient-string polynomials, plus norm_sq.
json to_json(const PolyMatrix& pm);

/// {n_qubits, gates: [{targets, matrix: [[re, im], …]}]}, matrix flat and row-major.
json to_json(const Circuit& c);
/// Also accepts nested-row matrices. Gate matrices are checked for unitarity
/// with `tol`; failures throw ValidationError.
Circuit circuit_from_json(const json& j, double tol = kDefaultUnitarityTol);

/// Report fields except runtime (which lives in the experiment record) and
/// the per-sample rows (which go to CSV).
json to_json(const PipelineReport& r);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace thetapath::io
