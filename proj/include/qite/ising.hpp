#pragma once

#include <limits>
#include <string>

#include "qite/lattice.hpp"
#include "qite/pauli.hpp"

namespace qite {

/// How nearest-neighbour bonds are weighted on axes of length 2, where a site's
/// +1 and -1 neighbours coincide.
enum class BondCounting {
  /// One coupling per periodic lattice edge: a pair joined by two edges gets
  /// -2J. This keeps 2D|L| bonds on every lattice.
  kTorusEdges,
  /// One coupling per unordered site pair, whatever the geometry.
  kDistinctPairs,
};

/// H = -sum_{i>j} J / r_ij^alpha Z_i Z_j - h sum_i Z_i on a periodic lattice.
/// alpha = infinity selects the nearest-neighbour model.
struct IsingSpec {
  Lattice lattice{{2}};
  double coupling = 1.0;
  double alpha = std::numeric_limits<double>::infinity();
  double field = 0.0;
  BondCounting bond_counting = BondCounting::kTorusEdges;

  bool nearest_neighbor() const { return alpha == std::numeric_limits<double>::infinity(); }
  std::size_t num_qubits() const { return lattice.volume(); }
  PairMode pair_mode() const {
    return nearest_neighbor() ? PairMode::kNearestNeighbor : PairMode::kAllPairs;
  }

  /// Throws std::invalid_argument on alpha <= 0, NaN alpha, or J <= 0.
  void validate() const;
  std::string describe() const;
};

/// Parses "inf", "infinity" or a positive real.
double parse_alpha(const std::string& text);

WeightedPauliSum build_hamiltonian(const IsingSpec& spec);

/// Sum_i Z_i over all sites.
WeightedPauliSum total_magnetization(std::size_t num_qubits);

struct Observables {
  WeightedPauliSum hamiltonian;
  WeightedPauliSum hamiltonian_sq;
  WeightedPauliSum magnetization;
  WeightedPauliSum magnetization_sq;
};

Observables build_observables(const IsingSpec& spec);
Observables build_observables(const WeightedPauliSum& hamiltonian);

}  // namespace qite
