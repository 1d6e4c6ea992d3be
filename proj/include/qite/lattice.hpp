#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qite {

using SiteIndex = std::size_t;
using Coords = std::vector<std::size_t>;

/// Periodic D-dimensional square lattice. Sites are flattened row-major with
/// dimension 1 varying fastest.
class Lattice {
 public:
  explicit Lattice(std::vector<std::size_t> dims);

  /// Parses "3x3", "2x2x2", "4".
  static Lattice parse(const std::string& text);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dimension() const { return dims_.size(); }
  std::size_t volume() const { return volume_; }

  std::string to_string() const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t volume_;
};

Coords site_to_coords(const Lattice& lattice, SiteIndex index);
SiteIndex coords_to_site(const Lattice& lattice, std::span<const std::size_t> coords);

/// r_ij = sum_d min(|r_d^i - r_d^j|, N_d - |r_d^i - r_d^j|).
std::size_t manhattan_distance_pbc(const Lattice& lattice, SiteIndex i, SiteIndex j);

/// Largest periodic Manhattan distance on the lattice, sum_d floor(N_d / 2).
std::size_t max_distance(const Lattice& lattice);

enum class PairMode { kAllPairs, kNearestNeighbor };

struct SitePair {
  SiteIndex i;  // i > j
  SiteIndex j;
  std::size_t distance;
  // Number of periodic lattice edges joining i and j. Only differs from 1 for
  // nearest neighbours along an axis of length 2, where the +1 and -1 hops
  // land on the same site.
  std::size_t edge_multiplicity;
};

/// Unordered site pairs (i > j), each exactly once, sorted by (j, i).
std::vector<SitePair> enumerate_pairs(const Lattice& lattice, PairMode mode);

}  // namespace qite
