#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qite/pauli.hpp"

namespace qite {

using Complex = std::complex<double>;

/// Default cap on simulated qubits; 2^24 amplitudes is 256 MiB.
inline constexpr std::size_t kDefaultQubitBudget = 24;

/// Dense amplitude vector over 2^n basis states, qubit 0 least significant.
/// Pauli-Y acts as Y|0> = i|1>, Y|1> = -i|0>, so Y|+> = -i|->.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>. Throws ResourceError above `qubit_budget`.
  explicit StateVector(std::size_t num_qubits, std::size_t qubit_budget = kDefaultQubitBudget);
  explicit StateVector(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }

  double norm() const;
  void normalize();
  /// <this|other>.
  Complex inner(const StateVector& other) const;

  /// In place: |psi> <- P|psi>.
  void apply_pauli(const PauliString& string);
  /// In place: |psi> <- exp(-i angle P)|psi> = cos(angle)|psi> - i sin(angle) P|psi>.
  void rotate(const PauliString& string, double angle);

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// |+>^n.
StateVector init_plus_state(std::size_t num_qubits, std::size_t qubit_budget = kDefaultQubitBudget);

StateVector apply_pauli_rotation(StateVector state, const PauliString& string, double angle);

/// Diagonal of a Z-only operator tabulated over the computational basis.
class DiagonalOperator {
 public:
  /// Throws std::invalid_argument if `sum` has X or Y letters.
  explicit DiagonalOperator(const WeightedPauliSum& sum);

  std::size_t num_qubits() const { return num_qubits_; }
  std::span<const double> values() const { return values_; }

  double expectation(const StateVector& state) const;
  /// In place multiplication by the diagonal.
  void apply(StateVector& state) const;

 private:
  std::size_t num_qubits_;
  std::vector<double> values_;
};

/// <psi|O|psi>. Diagonal sums use basis probabilities; anything else goes
/// through explicit string application.
double expectation(const StateVector& state, const WeightedPauliSum& observable);

/// Normalized exp(-tau H)|+>^n for diagonal H, shifted by the minimum energy
/// before exponentiation.
StateVector exact_qite_state(const WeightedPauliSum& hamiltonian, double tau,
                             std::size_t qubit_budget = kDefaultQubitBudget);

class Ansatz;

/// d/d theta_index of U(theta)|base_input>: the gates after `index` applied to
/// -i sigma_index U_index ... U_0 |base_input>. Not normalized.
StateVector derivative_state(const Ansatz& ansatz, std::span<const double> params,
                             std::size_t index, const StateVector& base_input);

}  // namespace qite
