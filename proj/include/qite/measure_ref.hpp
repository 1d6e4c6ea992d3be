#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qite/ising.hpp"
#include "qite/pauli.hpp"
#include "qite/statevector.hpp"

namespace qite {

/// Step-by-step imaginary-time evolution in which each slice is replaced by a
/// fitted unitary exp(-i sum_I a_I sigma_I), emitted as a product of Pauli
/// rotations. Reference for circuit depth and for merging into one layer.

struct RotationGate {
  PauliString generator;
  double angle;  // exp(-i angle generator)
  std::size_t layer;
};

struct MeasureFitOptions {
  /// Gauss-Newton refinements after the linearized solve.
  std::size_t refinements = 3;
  double rcond = 1e-8;
};

/// Angles a_I minimising || normalize(exp(-dtau term)|psi>) - exp(-i sum_I a_I sigma_I)|psi> ||.
/// The angles already include the slice length, so for the two-qubit chain
/// |a_I| = arctan(tanh dtau) / 2. `term` must be diagonal.
std::vector<double> fit_step_coefficients(const StateVector& state, const WeightedPauliSum& term,
                                          const std::vector<PauliString>& pool, double dtau,
                                          const MeasureFitOptions& options = {});

/// exp(-i sum_I a_I sigma_I)|psi> by a truncated Taylor series.
StateVector apply_generator_exponential(const StateVector& state, const std::vector<PauliString>& pool,
                                        const std::vector<double>& angles);

struct MeasureCircuitOptions {
  /// 0 uses {Z_iY_j, Y_iZ_j} per bond. r > 0 uses every odd-Y string on the
  /// sites within Manhattan distance r of the bond.
  std::size_t pool_radius = 0;
  MeasureFitOptions fit;
  std::size_t qubit_budget = kDefaultQubitBudget;
};

struct MeasureCircuit {
  std::size_t num_qubits = 0;
  std::size_t num_layers = 0;
  std::vector<RotationGate> gates;
};

/// Pool of generators used for one Hamiltonian term.
std::vector<PauliString> measure_pool(const IsingSpec& spec, const PauliString& term, std::size_t radius);

/// tau / dtau slices; each slice Trotterizes H over its terms and fits every
/// factor on the state produced so far.
MeasureCircuit build_measure_circuit(const IsingSpec& spec, double tau, double dtau,
                                     const MeasureCircuitOptions& options = {});

StateVector run_circuit(const std::vector<RotationGate>& gates, const StateVector& input);

/// Moves each rotation backwards through the gates it commutes with and fuses
/// it with an earlier rotation on the same string by adding angles.
std::vector<RotationGate> merge_commuting_rotations(const std::vector<RotationGate>& gates);

/// "layer k: STRING -> param m (angle)" per gate.
std::string dump_circuit(const std::vector<RotationGate>& gates);

}  // namespace qite
