#include "qite/ising.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qite {

void IsingSpec::validate() const {
  if (std::isnan(alpha) || alpha <= 0.0) throw std::invalid_argument("interaction range alpha must be positive");
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument("coupling J must be positive and finite");
  }
  if (!std::isfinite(field)) throw std::invalid_argument("field h must be finite");
  if (lattice.volume() < 2) throw std::invalid_argument("Ising model needs at least two sites");
}

std::string IsingSpec::describe() const {
  std::ostringstream out;
  out << lattice.to_string() << " J=" << coupling << " alpha=";
  if (nearest_neighbor()) out << "inf";
  else out << alpha;
  if (field != 0.0) out << " h=" << field;
  return out.str();
}

double parse_alpha(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") {
    return std::numeric_limits<double>::infinity();
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse alpha '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("cannot parse alpha '" + text + "'");
  if (!(value > 0.0)) throw std::invalid_argument("alpha must be positive");
  return value;
}

WeightedPauliSum build_hamiltonian(const IsingSpec& spec) {
  spec.validate();
  const std::size_t n = spec.num_qubits();
  WeightedPauliSum h(n);
  for (const SitePair& pair : enumerate_pairs(spec.lattice, spec.pair_mode())) {
    PauliString zz(n);
    zz.set(pair.i, Pauli::Z);
    zz.set(pair.j, Pauli::Z);
    double weight = spec.coupling / std::pow(static_cast<double>(pair.distance), spec.alpha);
    if (spec.nearest_neighbor()) {
      weight = spec.coupling;
      if (spec.bond_counting == BondCounting::kTorusEdges) {
        weight *= static_cast<double>(pair.edge_multiplicity);
      }
    }
    h.add(zz, -weight);
  }
  if (spec.field != 0.0) {
    for (std::size_t q = 0; q < n; ++q) {
      PauliString z(n);
      z.set(q, Pauli::Z);
      h.add(z, -spec.field);
    }
  }
  h.canonicalize();
  return h;
}

WeightedPauliSum total_magnetization(std::size_t num_qubits) {
  WeightedPauliSum m(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) {
    PauliString z(num_qubits);
    z.set(q, Pauli::Z);
    m.add(z, 1.0);
  }
  return m;
}

Observables build_observables(const WeightedPauliSum& hamiltonian) {
  WeightedPauliSum mag = total_magnetization(hamiltonian.num_qubits());
  WeightedPauliSum h2 = multiply_sums(hamiltonian, hamiltonian);
  WeightedPauliSum m2 = multiply_sums(mag, mag);
  return {hamiltonian, std::move(h2), std::move(mag), std::move(m2)};
}

Observables build_observables(const IsingSpec& spec) {
  return build_observables(build_hamiltonian(spec));
}

}  // namespace qite
