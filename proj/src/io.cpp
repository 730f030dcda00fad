#include "thetapath/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace thetapath::io {

json to_json(const GaussianRational& c) { return c.to_string(); }

json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

namespace {

Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ExactPoly exact_poly_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("polynomial must be an array of coefficients");
    std::vector<GaussianRational> c;
    for (const auto& e : j) {
        if (!e.is_string()) throw ValidationError("exact coefficients must be strings");
        try {
            c.push_back(GaussianRational::parse(e.get<std::string>()));
        } catch (const Error& err) {
            throw ValidationError(err.what());
        }
    }
    return ExactPoly(std::move(c));
}

FloatPoly float_poly_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("polynomial must be an array of coefficients");
    std::vector<Complex> c;
    for (const auto& e : j) {
        if (e.is_string()) throw ValidationError("float polynomial given exact coefficient strings");
        c.push_back(complex_from_json(e));
    }
    return FloatPoly(std::move(c));
}

ExactRational exact_rational_from_json(const json& j) {
    ExactRational f{exact_poly_from_json(j.at("num")), exact_poly_from_json(j.at("den")), 0, 0};
    if (f.den.is_zero()) throw DomainError("rational function with zero denominator");
    const auto& b = j.at("degree_bound");
    f.k1 = b.at(0).get<int>();
    f.k2 = b.at(1).get<int>();
    return f;
}

json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError("matrix must be nested rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ValidationError("ragged matrix rows");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

json to_json(const PolyMatrix& pm) {
    json cols = json::array();
    for (const auto& col : pm.columns) {
        json c = json::array();
        for (const auto& p : col) c.push_back(to_json(p));
        cols.push_back(std::move(c));
    }
    json norms = json::array();
    for (const auto& p : pm.norm_sq) norms.push_back(to_json(p));
    return json{{"columns", std::move(cols)}, {"norm_sq", std::move(norms)}};
}

json to_json(const Circuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) {
        json flat = json::array();
        const ComplexMatrix& m = g.matrix.matrix();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index k = 0; k < m.cols(); ++k) flat.push_back(to_json(m(i, k)));
        gates.push_back(json{{"targets", g.targets}, {"matrix", std::move(flat)}});
    }
    return json{{"n_qubits", c.n_qubits}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const json& j, double tol) {
    try {
        const int n = j.at("n_qubits").get<int>();
        std::vector<Gate> gates;
        for (const auto& g : j.at("gates")) {
            auto targets = g.at("targets").get<std::vector<int>>();
            const json& mj = g.at("matrix");
            ComplexMatrix m;
            if (!mj.empty() && mj[0].is_array() && !mj[0].empty() && mj[0][0].is_array()) {
                m = matrix_from_json(mj);
            } else {
                const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(mj.size()))));
                if (dim * dim != static_cast<Eigen::Index>(mj.size())) throw ValidationError("gate matrix is not square");
                m.resize(dim, dim);
                for (Eigen::Index i = 0; i < dim; ++i)
                    for (Eigen::Index k = 0; k < dim; ++k) m(i, k) = complex_from_json(mj[static_cast<std::size_t>(i * dim + k)]);
            }
            gates.emplace_back(std::move(targets), UnitaryMatrix(std::move(m), tol));
        }
        return Circuit(n, std::move(gates));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed circuit file: ") + e.what());
    } catch (const UsageError& e) {
        throw ValidationError(std::string("invalid circuit: ") + e.what());
    }
}

json to_json(const PipelineReport& r) {
    json probe = json::array();
    for (const auto& row : r.probe)
        probe.push_back(json{{"degree", row.degree}, {"heldout_residual", row.heldout_residual},
                             {"best_residual", row.best_residual}});
    return json{{"recovered_p0_at_1", r.recovered_p0_at_1},
                {"direct_p0", r.direct_p0},
                {"abs_error", r.abs_error},
                {"fitted_degree", {r.fitted_k1, r.fitted_k2}},
                {"heldout_max_residual", r.heldout_max_residual},
                {"corruptions_planted", r.corruptions_planted},
                {"corruptions_detected", r.corruptions_detected},
                {"probe", std::move(probe)}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
}

}  // namespace thetapath::io
