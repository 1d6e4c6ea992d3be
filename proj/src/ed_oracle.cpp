#include "qite/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qite/errors.hpp"
#include "qite/statevector.hpp"

namespace qite {

GibbsEnsemble::GibbsEnsemble(const WeightedPauliSum& hamiltonian) : num_sites_(hamiltonian.num_qubits()) {
  if (num_sites_ > kEnumerationBudget) {
    throw ResourceError("enumeration over " + std::to_string(num_sites_) + " sites exceeds the budget of " +
                        std::to_string(kEnumerationBudget));
  }
  const DiagonalOperator diag(hamiltonian);
  energies_.assign(diag.values().begin(), diag.values().end());
}

GibbsSums GibbsEnsemble::at(double beta) const {
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  // Shift by max(-beta E) so every weight is <= 1.
  double shift = -std::numeric_limits<double>::infinity();
  for (double e : energies_) shift = std::max(shift, -beta * e);

  const double n = static_cast<double>(num_sites_);
  double z = 0.0, e1 = 0.0, e2 = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t s = 0; s < energies_.size(); ++s) {
    const double w = std::exp(-beta * energies_[s] - shift);
    const double e = energies_[s];
    // Bit value b encodes Z eigenvalue (-1)^b.
    const double m = n - 2.0 * std::popcount(s);
    z += w;
    e1 += w * e;
    e2 += w * e * e;
    m1 += w * m;
    m2 += w * m * m;
  }
  GibbsSums out;
  out.log_partition = std::log(z) + shift;
  out.partition = std::exp(out.log_partition);
  out.energy = e1 / z;
  out.energy_sq = e2 / z;
  out.magnetization = m1 / z;
  out.magnetization_sq = m2 / z;
  return out;
}

GibbsSums gibbs_sums(const WeightedPauliSum& hamiltonian, double beta, std::size_t volume) {
  if (volume != hamiltonian.num_qubits()) throw std::invalid_argument("volume must match the qubit count");
  return GibbsEnsemble(hamiltonian).at(beta);
}

std::vector<ThermoPoint> reference_curve(const IsingSpec& spec, std::span<const double> k_grid) {
  const GibbsEnsemble ensemble(build_hamiltonian(spec));
  std::vector<ThermoPoint> curve;
  curve.reserve(k_grid.size());
  for (double k : k_grid) {
    if (k < 0.0) throw std::invalid_argument("K grid must be nonnegative");
    const double beta = k / spec.coupling;
    const GibbsSums g = ensemble.at(beta);
    curve.push_back(thermo_from_expectations(g.energy, g.energy_sq, g.magnetization, g.magnetization_sq, beta,
                                             spec.coupling, spec.num_qubits()));
  }
  return curve;
}

}  // namespace qite
