#include "qite/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qite/ansatz.hpp"
#include "qite/errors.hpp"

namespace qite {

namespace {

void check_budget(std::size_t num_qubits, std::size_t budget) {
  if (num_qubits > budget) {
    throw ResourceError("statevector of " + std::to_string(num_qubits) + " qubits exceeds the budget of " +
                        std::to_string(budget) + " qubits");
  }
}

// i^k for k in 0..3.
Complex i_power(std::size_t k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

double parity_sign(std::uint64_t bits) { return std::popcount(bits) % 2 ? -1.0 : 1.0; }

void require_width(const StateVector& state, const PauliString& string) {
  if (string.size() != state.num_qubits()) {
    throw std::invalid_argument("Pauli string acts on " + std::to_string(string.size()) +
                                " qubits but the state has " + std::to_string(state.num_qubits()));
  }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::size_t qubit_budget) : num_qubits_(num_qubits) {
  check_budget(num_qubits, qubit_budget);
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0, 0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (Complex& a : amplitudes_) a /= n;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("state dimension mismatch");
  Complex sum{0, 0};
  for (std::size_t s = 0; s < amplitudes_.size(); ++s) sum += std::conj(amplitudes_[s]) * other.amplitudes_[s];
  return sum;
}

void StateVector::apply_pauli(const PauliString& string) {
  require_width(*this, string);
  const std::uint64_t x = string.x_mask();
  const std::uint64_t z = string.z_mask();
  const Complex y_phase = i_power(string.y_count());
  // P|s> = i^{#Y} (-1)^{popcount(s & z)} |s ^ x>.
  if (x == 0) {
    for (std::size_t s = 0; s < amplitudes_.size(); ++s) amplitudes_[s] *= y_phase * parity_sign(s & z);
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (std::bit_width(x) - 1);
  for (std::size_t s = 0; s < amplitudes_.size(); ++s) {
    if (s & pivot) continue;
    const std::size_t t = s ^ x;
    const Complex from_s = y_phase * parity_sign(s & z) * amplitudes_[s];
    const Complex from_t = y_phase * parity_sign(t & z) * amplitudes_[t];
    amplitudes_[t] = from_s;
    amplitudes_[s] = from_t;
  }
}

void StateVector::rotate(const PauliString& string, double angle) {
  require_width(*this, string);
  if (angle == 0.0) return;
  const double c = std::cos(angle);
  const Complex minus_i_sin{0.0, -std::sin(angle)};
  const std::uint64_t x = string.x_mask();
  const std::uint64_t z = string.z_mask();
  const Complex y_phase = i_power(string.y_count());
  if (x == 0) {
    for (std::size_t s = 0; s < amplitudes_.size(); ++s) {
      amplitudes_[s] *= c + minus_i_sin * y_phase * parity_sign(s & z);
    }
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (std::bit_width(x) - 1);
  for (std::size_t s = 0; s < amplitudes_.size(); ++s) {
    if (s & pivot) continue;
    const std::size_t t = s ^ x;
    const Complex a_s = amplitudes_[s];
    const Complex a_t = amplitudes_[t];
    // (P psi)[s] = phase(t) psi[t], (P psi)[t] = phase(s) psi[s].
    amplitudes_[s] = c * a_s + minus_i_sin * y_phase * parity_sign(t & z) * a_t;
    amplitudes_[t] = c * a_t + minus_i_sin * y_phase * parity_sign(s & z) * a_s;
  }
}

StateVector init_plus_state(std::size_t num_qubits, std::size_t qubit_budget) {
  if (num_qubits == 0) throw std::invalid_argument("need at least one qubit");
  check_budget(num_qubits, qubit_budget);
  const std::size_t dim = std::size_t{1} << num_qubits;
  return StateVector(std::vector<Complex>(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0}));
}

StateVector apply_pauli_rotation(StateVector state, const PauliString& string, double angle) {
  state.rotate(string, angle);
  return state;
}

DiagonalOperator::DiagonalOperator(const WeightedPauliSum& sum) : num_qubits_(sum.num_qubits()) {
  if (!sum.is_diagonal()) throw std::invalid_argument("operator is not diagonal in the Z basis");
  values_.assign(std::size_t{1} << num_qubits_, 0.0);
  for (const auto& [string, coeff] : sum.terms()) {
    const std::uint64_t z = string.z_mask();
    for (std::size_t s = 0; s < values_.size(); ++s) values_[s] += coeff * parity_sign(s & z);
  }
}

double DiagonalOperator::expectation(const StateVector& state) const {
  if (state.dimension() != values_.size()) throw std::invalid_argument("state dimension mismatch");
  const auto amps = state.amplitudes();
  double sum = 0.0;
  for (std::size_t s = 0; s < values_.size(); ++s) sum += std::norm(amps[s]) * values_[s];
  return sum;
}

void DiagonalOperator::apply(StateVector& state) const {
  if (state.dimension() != values_.size()) throw std::invalid_argument("state dimension mismatch");
  auto amps = state.amplitudes();
  for (std::size_t s = 0; s < values_.size(); ++s) amps[s] *= values_[s];
}

double expectation(const StateVector& state, const WeightedPauliSum& observable) {
  if (observable.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("observable and state sizes differ");
  }
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (const auto& [string, coeff] : observable.terms()) {
    if (string.is_diagonal()) {
      const std::uint64_t z = string.z_mask();
      double term = 0.0;
      for (std::size_t s = 0; s < amps.size(); ++s) term += std::norm(amps[s]) * parity_sign(s & z);
      total += coeff * term;
    } else {
      StateVector applied = state;
      applied.apply_pauli(string);
      total += coeff * state.inner(applied).real();
    }
  }
  return total;
}

StateVector exact_qite_state(const WeightedPauliSum& hamiltonian, double tau, std::size_t qubit_budget) {
  if (tau < 0.0) throw std::invalid_argument("imaginary time must be nonnegative");
  check_budget(hamiltonian.num_qubits(), qubit_budget);
  const DiagonalOperator energies(hamiltonian);
  const auto e = energies.values();
  const double e_min = *std::min_element(e.begin(), e.end());
  std::vector<Complex> amps(e.size());
  for (std::size_t s = 0; s < e.size(); ++s) amps[s] = std::exp(-tau * (e[s] - e_min));
  StateVector state(std::move(amps));
  state.normalize();
  return state;
}

StateVector derivative_state(const Ansatz& ansatz, std::span<const double> params, std::size_t index,
                             const StateVector& base_input) {
  if (index >= ansatz.num_params()) throw std::out_of_range("parameter index out of range");
  if (params.size() != ansatz.num_params()) throw std::invalid_argument("parameter vector has wrong length");
  StateVector state = base_input;
  ansatz.apply_range(state, params, 0, index + 1);
  // d/dtheta exp(-i theta P) = -i P exp(-i theta P); P commutes with its own gate.
  state.apply_pauli(ansatz.gates()[index].generator);
  for (Complex& a : state.amplitudes()) a *= Complex{0.0, -1.0};
  ansatz.apply_range(state, params, index + 1, ansatz.num_params());
  return state;
}

}  // namespace qite
