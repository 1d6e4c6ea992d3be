#include "qite/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qite {

Lattice::Lattice(std::vector<std::size_t> dims) : dims_(std::move(dims)), volume_(1) {
  if (dims_.empty()) throw std::invalid_argument("lattice needs at least one dimension");
  for (std::size_t n : dims_) {
    if (n == 0) throw std::invalid_argument("lattice dimensions must be positive");
    volume_ *= n;
  }
}

Lattice Lattice::parse(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, 'x')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw std::invalid_argument("malformed lattice dims '" + text + "'");
    }
    dims.push_back(std::stoul(part));
  }
  if (dims.empty() || text.back() == 'x') {
    throw std::invalid_argument("malformed lattice dims '" + text + "'");
  }
  return Lattice(std::move(dims));
}

std::string Lattice::to_string() const {
  std::string out;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (d) out += 'x';
    out += std::to_string(dims_[d]);
  }
  return out;
}

Coords site_to_coords(const Lattice& lattice, SiteIndex index) {
  if (index >= lattice.volume()) throw std::out_of_range("site index out of range");
  Coords coords(lattice.dimension());
  for (std::size_t d = 0; d < lattice.dimension(); ++d) {
    coords[d] = index % lattice.dims()[d];
    index /= lattice.dims()[d];
  }
  return coords;
}

SiteIndex coords_to_site(const Lattice& lattice, std::span<const std::size_t> coords) {
  if (coords.size() != lattice.dimension()) {
    throw std::invalid_argument("coordinate rank does not match lattice dimension");
  }
  SiteIndex index = 0;
  for (std::size_t d = lattice.dimension(); d-- > 0;) {
    if (coords[d] >= lattice.dims()[d]) throw std::out_of_range("coordinate out of range");
    index = index * lattice.dims()[d] + coords[d];
  }
  return index;
}

std::size_t manhattan_distance_pbc(const Lattice& lattice, SiteIndex i, SiteIndex j) {
  const Coords a = site_to_coords(lattice, i);
  const Coords b = site_to_coords(lattice, j);
  std::size_t r = 0;
  for (std::size_t d = 0; d < lattice.dimension(); ++d) {
    const std::size_t delta = a[d] > b[d] ? a[d] - b[d] : b[d] - a[d];
    r += std::min(delta, lattice.dims()[d] - delta);
  }
  return r;
}

std::size_t max_distance(const Lattice& lattice) {
  std::size_t r = 0;
  for (std::size_t n : lattice.dims()) r += n / 2;
  return r;
}

namespace {

std::size_t edge_multiplicity(const Lattice& lattice, SiteIndex i, SiteIndex j) {
  const Coords a = site_to_coords(lattice, i);
  const Coords b = site_to_coords(lattice, j);
  for (std::size_t d = 0; d < lattice.dimension(); ++d) {
    if (a[d] != b[d]) return lattice.dims()[d] == 2 ? 2 : 1;
  }
  return 1;
}

}  // namespace

std::vector<SitePair> enumerate_pairs(const Lattice& lattice, PairMode mode) {
  const std::size_t n = lattice.volume();
  std::vector<SitePair> pairs;
  for (SiteIndex j = 0; j < n; ++j) {
    for (SiteIndex i = j + 1; i < n; ++i) {
      const std::size_t r = manhattan_distance_pbc(lattice, i, j);
      if (mode == PairMode::kNearestNeighbor && r != 1) continue;
      const std::size_t mult = r == 1 ? edge_multiplicity(lattice, i, j) : 1;
      pairs.push_back({i, j, r, mult});
    }
  }
  return pairs;
}

}  // namespace qite
