#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qite/ising.hpp"
#include "qite/pauli.hpp"
#include "qite/statevector.hpp"

namespace qite {

struct AnsatzGate {
  PauliString generator;
  std::size_t param;
  std::size_t layer;
};

/// U(theta) = U_{N-1}(theta_{N-1}) ... U_0(theta_0) with U_k = exp(-i theta_k sigma_k).
/// Gate k carries parameter k, so theta = 0 is the identity circuit.
class Ansatz {
 public:
  Ansatz() = default;
  /// One inner vector per layer; gates are applied in the order given.
  Ansatz(std::size_t num_qubits, const std::vector<std::vector<PauliString>>& layers);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_params() const { return gates_.size(); }
  std::size_t num_layers() const { return layer_boundaries_.empty() ? 0 : layer_boundaries_.size() - 1; }
  const std::vector<AnsatzGate>& gates() const { return gates_; }
  /// Gate offsets of each layer start, followed by num_params().
  const std::vector<std::size_t>& layer_boundaries() const { return layer_boundaries_; }

  /// Applies gates [begin, end) to `state` in place.
  void apply_range(StateVector& state, std::span<const double> params, std::size_t begin,
                   std::size_t end) const;
  StateVector prepare(std::span<const double> params, const StateVector& input) const;

  /// One line per gate: "layer k: STRING -> param m".
  std::string dump() const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<AnsatzGate> gates_;
  std::vector<std::size_t> layer_boundaries_;
};

/// {Z_i Y_j, Y_i Z_j} on an n-qubit register.
std::vector<PauliString> relevant_strings_for_bond(std::size_t num_qubits, SiteIndex i, SiteIndex j);

/// Generator strings attached to one bond. The k-th string of every bond forms
/// sub-layer k of each layer.
using BondGenerator = std::function<std::vector<PauliString>(std::size_t num_qubits, SiteIndex i, SiteIndex j)>;

/// Layered ansatz over the Hamiltonian's bond set: nearest-neighbour pairs for
/// alpha = infinity, all pairs otherwise. Each layer is a Z_iY_j sub-layer
/// followed by a Y_iZ_j sub-layer, bonds in canonical pair order.
Ansatz build_ansatz(const IsingSpec& spec, std::size_t layers,
                    const BondGenerator& generator = relevant_strings_for_bond);

struct PruneOptions {
  std::size_t probe_steps = 25;
  double dtau = 0.002;
  double threshold = 1e-12;
  double rcond = 1e-8;
};

/// Drops generators with an even number of Y letters, then runs a short
/// variational probe from |+>^n and drops parameters whose |theta| and
/// |theta_dot| both stay strictly below the threshold. Gate order is kept and
/// parameters are renumbered.
Ansatz prune_irrelevant(const Ansatz& ansatz, const WeightedPauliSum& hamiltonian,
                        const PruneOptions& options = {});

struct TransitionLayerBounds {
  double lower;
  double upper;
};

/// D N_d / (2G) <= L* <= D N_d / 2.
TransitionLayerBounds estimate_transition_layers(double dimension, double side_length,
                                                 double gates_per_step);

}  // namespace qite
