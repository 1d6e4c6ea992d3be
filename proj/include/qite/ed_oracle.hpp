#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qite/ising.hpp"
#include "qite/thermo.hpp"

namespace qite {

inline constexpr std::size_t kEnumerationBudget = 24;

struct GibbsSums {
  double partition = 0.0;      // Z_beta = sum_s exp(-beta E(s))
  double log_partition = 0.0;  // ln Z_beta, finite even when Z_beta overflows
  double energy = 0.0;         // <H>
  double energy_sq = 0.0;      // <H^2>
  double magnetization = 0.0;  // <Z_tot>
  double magnetization_sq = 0.0;
};

/// Exact Boltzmann sums over all 2^n spin configurations of a diagonal
/// Hamiltonian. Configuration energies are tabulated once.
class GibbsEnsemble {
 public:
  /// Throws std::invalid_argument for non-diagonal H, ResourceError above the
  /// enumeration budget.
  explicit GibbsEnsemble(const WeightedPauliSum& hamiltonian);

  std::size_t num_sites() const { return num_sites_; }
  std::span<const double> energies() const { return energies_; }
  GibbsSums at(double beta) const;

 private:
  std::size_t num_sites_;
  std::vector<double> energies_;
};

GibbsSums gibbs_sums(const WeightedPauliSum& hamiltonian, double beta, std::size_t volume);

/// One ThermoPoint per K, at beta = K / J.
std::vector<ThermoPoint> reference_curve(const IsingSpec& spec, std::span<const double> k_grid);

}  // namespace qite
