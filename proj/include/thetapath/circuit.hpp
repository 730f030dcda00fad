#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetapath/linalg.hpp"
#include "thetapath/rng.hpp"

namespace thetapath {

/// A 1- or 2-qubit gate. For two targets {a, b} the local basis index is
/// 2·bit_a + bit_b.
struct Gate {
    std::vector<int> targets;
    UnitaryMatrix matrix;

    Gate(std::vector<int> targets_, UnitaryMatrix matrix_);
};

/// Gates in application order: gates[0] acts first on |0…0⟩.
struct Circuit {
    int n_qubits = 1;
    std::vector<Gate> gates;

    Circuit(int n_qubits_, std::vector<Gate> gates_);
    std::size_t size() const noexcept { return gates.size(); }
};

/// Computational basis label; character q is the value of qubit q, and
/// qubit 0 is the most significant bit of the amplitude index.
using Bitstring = std::string;

std::size_t basis_index(const Bitstring& y, int n_qubits);

/// Pure n-qubit state, 2^n amplitudes.
class StateVector {
public:
    /// |0…0⟩
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, ComplexVector amplitudes);

    int n_qubits() const noexcept { return n_; }
    const ComplexVector& amplitudes() const noexcept { return amp_; }
    Complex operator[](std::size_t i) const { return amp_(static_cast<Eigen::Index>(i)); }
    double norm() const { return amp_.norm(); }

    friend StateVector apply_gate(const StateVector& state, const Gate& gate);

private:
    int n_;
    ComplexVector amp_;
};

/// Applies 1 ⊗ U on the targeted qubits.
StateVector apply_gate(const StateVector& state, const Gate& gate);

/// ⟨y|C|0ⁿ⟩ by statevector simulation.
Complex amplitude(const Circuit& circuit, const Bitstring& y);

/// Final state C|0ⁿ⟩.
StateVector simulate(const Circuit& circuit);

inline constexpr int kFeynmanMaxQubits = 12;
inline constexpr std::size_t kFeynmanMaxGates = 8;

/// ⟨y|C|0ⁿ⟩ as an explicit sum over intermediate basis strings. Only the
/// targeted bits of each gate may change between layers, so the sum runs over
/// at most 4^m paths. Throws ResourceError beyond 12 qubits or 8 gates.
Complex feynman_amplitude(const Circuit& circuit, const Bitstring& y);

/// |⟨y|C|0ⁿ⟩|². Also computes p₀ of C followed by X gates at the 1-positions
/// of y and throws if the two disagree by more than 1e-12.
double p_y(const Circuit& circuit, const Bitstring& y);

/// Circuit with each gate right-multiplied by the θ-deformed Haar gate
/// G_j(θ), the unitary QR factor of (1−θ)X_j + θ·1.
struct ScrambledCircuit {
    Circuit base;
    std::vector<ComplexMatrix> pencils;  ///< X_j, one per gate
    std::uint64_t seed = 0;
};

/// One complex Gaussian X_j per gate, drawn from stream 1 of the seed.
ScrambledCircuit scramble(const Circuit& circuit, std::uint64_t seed);

/// Gate j becomes base_j · G_j(θ). Throws DegeneracyError naming the gate.
Circuit evaluate_scrambled(const ScrambledCircuit& sc, double theta);

/// |⟨0ⁿ|C(θ)|0ⁿ⟩|²
double p0_theta(const ScrambledCircuit& sc, double theta);

/// For a single-gate scrambled circuit, p₀(θ) as an exact rational function:
/// only the first column z_1(θ) = (1−θ)x_1 + θe_1 of the pencil reaches
/// |0…0⟩, so p₀ = |c·z_1|² / ‖z_1‖² with c the first row of the base gate.
/// Throws UsageError when the circuit has more than one gate.
ExactRational p0_symbolic_single_gate(const ScrambledCircuit& sc);

/// Deterministic stand-in for a worst-case circuit: seeded Haar 2-qubit gates
/// on a line, brickwork order (0,1),(2,3),… then (1,2),(3,4),…, truncated
/// to m gates. A single qubit gets 1-qubit gates.
Circuit brickwork_circuit(int n_qubits, int m_gates, std::uint64_t seed);

}  // namespace thetapath
