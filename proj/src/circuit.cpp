#include "thetapath/circuit.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "thetapath/haar.hpp"

namespace thetapath {

namespace {

std::size_t bit_mask(int qubit, int n) { return std::size_t{1} << static_cast<unsigned>(n - 1 - qubit); }

/// Local gate index of a global basis index.
std::size_t local_index(std::size_t global, const std::vector<int>& targets, int n) {
    std::size_t out = 0;
    for (int q : targets) out = (out << 1) | ((global & bit_mask(q, n)) ? 1u : 0u);
    return out;
}

/// Global index with the targeted bits replaced by the bits of `local`.
std::size_t with_local(std::size_t global, const std::vector<int>& targets, std::size_t local, int n) {
    const std::size_t k = targets.size();
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t mask = bit_mask(targets[t], n);
        const bool bit = (local >> (k - 1 - t)) & 1u;
        global = bit ? (global | mask) : (global & ~mask);
    }
    return global;
}

}  // namespace

Gate::Gate(std::vector<int> targets_, UnitaryMatrix matrix_) : targets(std::move(targets_)), matrix(std::move(matrix_)) {
    if (targets.empty() || targets.size() > 2) throw UsageError("gates act on one or two qubits");
    if (targets.size() == 2 && targets[0] == targets[1]) throw UsageError("gate targets must be distinct");
    if (matrix.size() != (Eigen::Index{1} << targets.size()))
        throw UsageError("gate matrix size does not match its target count");
}

Circuit::Circuit(int n_qubits_, std::vector<Gate> gates_) : n_qubits(n_qubits_), gates(std::move(gates_)) {
    if (n_qubits < 1 || n_qubits > 30) throw UsageError("qubit count must be in [1, 30]");
    if (gates.empty()) throw UsageError("a circuit needs at least one gate");
    for (const auto& g : gates)
        for (int q : g.targets)
            if (q < 0 || q >= n_qubits) throw UsageError("gate target out of range");
}

std::size_t basis_index(const Bitstring& y, int n_qubits) {
    if (static_cast<int>(y.size()) != n_qubits) throw UsageError("bitstring length must equal the qubit count");
    std::size_t idx = 0;
    for (char c : y) {
        if (c != '0' && c != '1') throw UsageError("bitstring may only contain 0 and 1");
        idx = (idx << 1) | static_cast<std::size_t>(c == '1');
    }
    return idx;
}

StateVector::StateVector(int n_qubits) : n_(n_qubits), amp_(ComplexVector::Zero(Eigen::Index{1} << n_qubits)) {
    amp_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, ComplexVector amplitudes) : n_(n_qubits), amp_(std::move(amplitudes)) {
    if (amp_.size() != (Eigen::Index{1} << n_)) throw UsageError("state vector has the wrong length");
    if (std::abs(amp_.squaredNorm() - 1.0) > 1e-10) throw ValidationError("state vector is not normalized");
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    for (int q : gate.targets)
        if (q < 0 || q >= state.n_) throw UsageError("gate target out of range for this state");
    const ComplexMatrix& u = gate.matrix.matrix();
    const auto dim = static_cast<std::size_t>(u.rows());
    StateVector out = state;
    out.amp_.setZero();
    const auto total = static_cast<std::size_t>(state.amp_.size());
    for (std::size_t g = 0; g < total; ++g) {
        if (local_index(g, gate.targets, state.n_) != 0) continue;  // visit each target subspace once
        for (std::size_t col = 0; col < dim; ++col) {
            const Complex a = state.amp_(static_cast<Eigen::Index>(with_local(g, gate.targets, col, state.n_)));
            if (a == Complex(0.0, 0.0)) continue;
            for (std::size_t row = 0; row < dim; ++row)
                out.amp_(static_cast<Eigen::Index>(with_local(g, gate.targets, row, state.n_))) +=
                    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * a;
        }
    }
    return out;
}

StateVector simulate(const Circuit& circuit) {
    StateVector s(circuit.n_qubits);
    for (const auto& g : circuit.gates) s = apply_gate(s, g);
    return s;
}

Complex amplitude(const Circuit& circuit, const Bitstring& y) {
    const std::size_t idx = basis_index(y, circuit.n_qubits);
    return simulate(circuit)[idx];
}

Complex feynman_amplitude(const Circuit& circuit, const Bitstring& y) {
    if (circuit.n_qubits > kFeynmanMaxQubits || circuit.size() > kFeynmanMaxGates)
        throw ResourceError("path sum limited to 12 qubits and 8 gates");
    const std::size_t target = basis_index(y, circuit.n_qubits);
    const int n = circuit.n_qubits;

    // depth-first over y_1 … y_m; each layer only varies the gate's target bits
    std::function<Complex(std::size_t, std::size_t)> sum = [&](std::size_t layer, std::size_t prev) -> Complex {
        if (layer == circuit.size()) return prev == target ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        const Gate& g = circuit.gates[layer];
        const ComplexMatrix& u = g.matrix.matrix();
        const std::size_t in = local_index(prev, g.targets, n);
        Complex acc(0.0, 0.0);
        for (Eigen::Index out = 0; out < u.rows(); ++out) {
            const Complex w = u(out, static_cast<Eigen::Index>(in));
            if (w == Complex(0.0, 0.0)) continue;
            acc += w * sum(layer + 1, with_local(prev, g.targets, static_cast<std::size_t>(out), n));
        }
        return acc;
    };
    return sum(0, 0);
}

double p_y(const Circuit& circuit, const Bitstring& y) {
    const double direct = std::norm(amplitude(circuit, y));
    std::vector<Gate> gates = circuit.gates;
    ComplexMatrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    for (int q = 0; q < circuit.n_qubits; ++q)
        if (y[static_cast<std::size_t>(q)] == '1') gates.emplace_back(std::vector<int>{q}, UnitaryMatrix(x));
    const Circuit hidden(circuit.n_qubits, std::move(gates));
    const double via_flips = std::norm(amplitude(hidden, Bitstring(static_cast<std::size_t>(circuit.n_qubits), '0')));
    if (std::abs(direct - via_flips) > 1e-12) throw ValidationError("bit-flip hiding identity violated");
    return direct;
}

ScrambledCircuit scramble(const Circuit& circuit, std::uint64_t seed) {
    Rng rng(seed, 1);
    std::vector<ComplexMatrix> pencils;
    pencils.reserve(circuit.size());
    for (const auto& g : circuit.gates) pencils.push_back(sample_gaussian(static_cast<int>(g.matrix.size()), 2, rng));
    return {circuit, std::move(pencils), seed};
}

Circuit evaluate_scrambled(const ScrambledCircuit& sc, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("theta must lie in [0, 1]");
    std::vector<Gate> gates;
    gates.reserve(sc.base.size());
    for (std::size_t j = 0; j < sc.base.size(); ++j) {
        const Gate& g = sc.base.gates[j];
        try {
            const UnitaryMatrix deform = theta_deformed_unitary(sc.pencils[j], theta);
            gates.emplace_back(g.targets, UnitaryMatrix(g.matrix.matrix() * deform.matrix()));
        } catch (const DegeneracyError&) {
            throw DegeneracyError("pencil of gate " + std::to_string(j) + " is singular at theta", static_cast<int>(j));
        }
    }
    return Circuit(sc.base.n_qubits, std::move(gates));
}

double p0_theta(const ScrambledCircuit& sc, double theta) {
    const Circuit c = evaluate_scrambled(sc, theta);
    return std::norm(simulate(c)[0]);
}

ExactRational p0_symbolic_single_gate(const ScrambledCircuit& sc) {
    if (sc.base.size() != 1) throw UsageError("symbolic p0 is only available for single-gate circuits");
    const ComplexMatrix& gate = sc.base.gates[0].matrix.matrix();
    const ComplexMatrix& x = sc.pencils[0];
    const Eigen::Index dim = gate.rows();

    PolyVector<GaussianRational> z1(static_cast<std::size_t>(dim));
    ExactPoly s;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const GaussianRational a = GaussianRational::from_complex(x(k, 0));
        const GaussianRational e = (k == 0) ? GaussianRational(1) : GaussianRational(0);
        z1[static_cast<std::size_t>(k)] = ExactPoly::linear(a, e - a);
        s += GaussianRational::from_complex(gate(0, k)) * z1[static_cast<std::size_t>(k)];
    }
    ExactRational f = rational_simplify(s.conj() * s, inner(z1, z1));
    f.k1 = 2;
    f.k2 = 2;
    return f;
}

Circuit brickwork_circuit(int n_qubits, int m_gates, std::uint64_t seed) {
    if (n_qubits < 1) throw UsageError("need at least one qubit");
    if (m_gates < 1) throw UsageError("need at least one gate");
    Rng rng(seed, 0);
    std::vector<Gate> gates;
    if (n_qubits == 1) {
        for (int j = 0; j < m_gates; ++j) gates.emplace_back(std::vector<int>{0}, haar_unitary(2, 2, rng));
        return Circuit(1, std::move(gates));
    }
    std::vector<std::pair<int, int>> order;
    for (int q = 0; q + 1 < n_qubits; q += 2) order.emplace_back(q, q + 1);
    for (int q = 1; q + 1 < n_qubits; q += 2) order.emplace_back(q, q + 1);
    for (int j = 0; j < m_gates; ++j) {
        const auto [a, b] = order[static_cast<std::size_t>(j) % order.size()];
        gates.emplace_back(std::vector<int>{a, b}, haar_unitary(4, 2, rng));
    }
    return Circuit(n_qubits, std::move(gates));
}

}  // namespace thetapath
