#include "qite/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qite/evolver.hpp"

namespace qite {

Ansatz::Ansatz(std::size_t num_qubits, const std::vector<std::vector<PauliString>>& layers)
    : num_qubits_(num_qubits) {
  layer_boundaries_.push_back(0);
  for (std::size_t layer = 0; layer < layers.size(); ++layer) {
    for (const PauliString& s : layers[layer]) {
      if (s.size() != num_qubits) throw std::invalid_argument("ansatz gate acts on the wrong number of qubits");
      if (s.is_identity()) throw std::invalid_argument("identity generator in ansatz");
      gates_.push_back({s, gates_.size(), layer});
    }
    layer_boundaries_.push_back(gates_.size());
  }
}

void Ansatz::apply_range(StateVector& state, std::span<const double> params, std::size_t begin,
                         std::size_t end) const {
  if (params.size() != gates_.size()) throw std::invalid_argument("parameter vector has wrong length");
  for (std::size_t k = begin; k < end; ++k) state.rotate(gates_[k].generator, params[gates_[k].param]);
}

StateVector Ansatz::prepare(std::span<const double> params, const StateVector& input) const {
  StateVector state = input;
  apply_range(state, params, 0, gates_.size());
  return state;
}

std::string Ansatz::dump() const {
  std::ostringstream out;
  for (const AnsatzGate& g : gates_) {
    out << "layer " << g.layer << ": " << g.generator.to_string() << " -> param " << g.param << '\n';
  }
  return out.str();
}

std::vector<PauliString> relevant_strings_for_bond(std::size_t num_qubits, SiteIndex i, SiteIndex j) {
  if (i == j) throw std::invalid_argument("bond needs two distinct sites");
  if (i >= num_qubits || j >= num_qubits) throw std::out_of_range("bond site out of range");
  PauliString zy(num_qubits);
  zy.set(i, Pauli::Z);
  zy.set(j, Pauli::Y);
  PauliString yz(num_qubits);
  yz.set(i, Pauli::Y);
  yz.set(j, Pauli::Z);
  return {zy, yz};
}

Ansatz build_ansatz(const IsingSpec& spec, std::size_t layers, const BondGenerator& generator) {
  spec.validate();
  if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
  const std::size_t n = spec.num_qubits();
  const std::vector<SitePair> pairs = enumerate_pairs(spec.lattice, spec.pair_mode());

  std::vector<std::vector<PauliString>> per_bond;
  per_bond.reserve(pairs.size());
  std::size_t sublayers = 0;
  for (const SitePair& p : pairs) {
    per_bond.push_back(generator(n, p.i, p.j));
    sublayers = std::max(sublayers, per_bond.back().size());
  }

  std::vector<PauliString> one_layer;
  for (std::size_t k = 0; k < sublayers; ++k) {
    for (const auto& strings : per_bond) {
      if (k < strings.size()) one_layer.push_back(strings[k]);
    }
  }
  return Ansatz(n, std::vector<std::vector<PauliString>>(layers, one_layer));
}

Ansatz prune_irrelevant(const Ansatz& ansatz, const WeightedPauliSum& hamiltonian, const PruneOptions& options) {
  if (options.probe_steps < 1) throw std::invalid_argument("probe needs at least one step");
  const std::size_t layers = ansatz.num_layers();

  // Real Hamiltonian and real input keep exp(-i theta P) real only for odd-Y P.
  std::vector<std::vector<PauliString>> odd(layers);
  for (const AnsatzGate& g : ansatz.gates()) {
    if (g.generator.has_odd_y_parity()) odd[g.layer].push_back(g.generator);
  }
  Ansatz candidate(ansatz.num_qubits(), odd);
  if (candidate.num_params() == 0) return candidate;

  EvolverConfig config;
  config.dtau = options.dtau;
  config.tau_max = options.dtau * static_cast<double>(options.probe_steps);
  config.rcond = options.rcond;
  QiteEvolver probe(candidate, hamiltonian, config);

  std::vector<double> peak(candidate.num_params(), 0.0);
  for (std::size_t step = 0; step <= options.probe_steps; ++step) {
    const std::span<const double> theta = probe.params();
    for (std::size_t k = 0; k < peak.size(); ++k) peak[k] = std::max(peak[k], std::abs(theta[k]));
    if (step == options.probe_steps) break;
    const ThetaDot rate = probe.step();
    for (std::size_t k = 0; k < peak.size(); ++k) {
      peak[k] = std::max(peak[k], std::abs(rate.value(static_cast<Eigen::Index>(k))));
    }
  }

  std::vector<std::vector<PauliString>> kept(layers);
  for (const AnsatzGate& g : candidate.gates()) {
    if (!(peak[g.param] < options.threshold)) kept[g.layer].push_back(g.generator);
  }
  return Ansatz(ansatz.num_qubits(), kept);
}

TransitionLayerBounds estimate_transition_layers(double dimension, double side_length, double gates_per_step) {
  if (!(dimension > 0.0) || !(side_length > 0.0) || !(gates_per_step > 0.0)) {
    throw std::invalid_argument("transition-layer inputs must be positive");
  }
  const double upper = dimension * side_length / 2.0;
  return {upper / gates_per_step, upper};
}

}  // namespace qite
