#include "qite/pauli.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qite {

namespace {

// kTable[a][b] = (phase power, result) for the single-qubit product a*b.
struct LetterProduct {
  int phase_power;
  Pauli result;
};

constexpr std::array<std::array<LetterProduct, 4>, 4> kTable = {{
    // I * {I, X, Y, Z}
    {{{0, Pauli::I}, {0, Pauli::X}, {0, Pauli::Y}, {0, Pauli::Z}}},
    // X * {I, X, Y, Z}: XY = iZ, XZ = -iY
    {{{0, Pauli::X}, {0, Pauli::I}, {1, Pauli::Z}, {3, Pauli::Y}}},
    // Y * {I, X, Y, Z}: YX = -iZ, YZ = iX
    {{{0, Pauli::Y}, {3, Pauli::Z}, {0, Pauli::I}, {1, Pauli::X}}},
    // Z * {I, X, Y, Z}: ZX = iY, ZY = -iX
    {{{0, Pauli::Z}, {1, Pauli::Y}, {3, Pauli::X}, {0, Pauli::I}}},
}};

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli string length mismatch");
}

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(std::size_t num_qubits) : letters_(num_qubits, Pauli::I) {
  if (num_qubits > kMaxQubits) throw std::invalid_argument("Pauli string longer than 64 qubits");
}

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
  if (letters_.size() > kMaxQubits) throw std::invalid_argument("Pauli string longer than 64 qubits");
  refresh_masks();
}

PauliString PauliString::from_label(std::string_view label, std::size_t num_qubits) {
  PauliString out(num_qubits);
  if (label == "I") return out;
  std::size_t pos = 0;
  while (pos < label.size()) {
    Pauli p;
    switch (label[pos]) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default: throw std::invalid_argument("bad Pauli letter in '" + std::string(label) + "'");
    }
    ++pos;
    std::size_t end = pos;
    while (end < label.size() && std::isdigit(static_cast<unsigned char>(label[end]))) ++end;
    if (end == pos) throw std::invalid_argument("missing qubit index in '" + std::string(label) + "'");
    const std::size_t qubit = std::stoul(std::string(label.substr(pos, end - pos)));
    if (qubit >= num_qubits) throw std::out_of_range("qubit index out of range in Pauli label");
    out.set(qubit, p);
    pos = end;
  }
  return out;
}

void PauliString::set(std::size_t qubit, Pauli p) {
  letters_.at(qubit) = p;
  refresh_masks();
}

void PauliString::refresh_masks() {
  x_mask_ = 0;
  z_mask_ = 0;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    const Pauli p = letters_[q];
    if (p == Pauli::X || p == Pauli::Y) x_mask_ |= std::uint64_t{1} << q;
    if (p == Pauli::Z || p == Pauli::Y) z_mask_ |= std::uint64_t{1} << q;
  }
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] != Pauli::I) out.push_back(q);
  }
  return out;
}

std::size_t PauliString::y_count() const {
  return static_cast<std::size_t>(std::popcount(x_mask_ & z_mask_));
}

std::string PauliString::to_string() const {
  std::string out;
  for (std::size_t q = letters_.size(); q-- > 0;) {
    if (letters_[q] == Pauli::I) continue;
    out += pauli_char(letters_[q]);
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

std::complex<double> PauliProduct::phase() const {
  static constexpr std::array<std::complex<double>, 4> kPowers = {
      std::complex<double>{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[static_cast<std::size_t>(phase_power & 3)];
}

PauliProduct multiply_strings(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::vector<Pauli> letters(a.size());
  int power = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const LetterProduct lp = kTable[static_cast<int>(a[q])][static_cast<int>(b[q])];
    power += lp.phase_power;
    letters[q] = lp.result;
  }
  return {power & 3, PauliString(std::move(letters))};
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  // Letters anticommute exactly when both are non-identity and differ.
  const std::uint64_t anti = (a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask());
  return std::popcount(anti) % 2 == 0;
}

void WeightedPauliSum::add(const PauliString& string, double coefficient) {
  if (string.size() != num_qubits_) throw std::invalid_argument("term acts on wrong number of qubits");
  terms_[string] += coefficient;
}

void WeightedPauliSum::canonicalize() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kZeroTolerance; });
}

double WeightedPauliSum::coefficient(const PauliString& string) const {
  const auto it = terms_.find(string);
  return it == terms_.end() ? 0.0 : it->second;
}

double WeightedPauliSum::l1_norm() const {
  double total = 0.0;
  for (const auto& [s, c] : terms_) total += std::abs(c);
  return total;
}

bool WeightedPauliSum::is_diagonal() const {
  for (const auto& [s, c] : terms_) {
    if (!s.is_diagonal()) return false;
  }
  return true;
}

WeightedPauliSum& WeightedPauliSum::operator+=(const WeightedPauliSum& other) {
  for (const auto& [s, c] : other.terms_) add(s, c);
  canonicalize();
  return *this;
}

WeightedPauliSum WeightedPauliSum::scaled(double factor) const {
  WeightedPauliSum out(num_qubits_);
  for (const auto& [s, c] : terms_) out.add(s, factor * c);
  out.canonicalize();
  return out;
}

std::string WeightedPauliSum::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    out << std::abs(c) << "*" << s.to_string();
    first = false;
  }
  return first ? "0" : out.str();
}

WeightedPauliSum multiply_sums(const WeightedPauliSum& a, const WeightedPauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("Pauli sum size mismatch");
  WeightedPauliSum out(a.num_qubits());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      const PauliProduct p = multiply_strings(sa, sb);
      if (p.phase_power % 2 != 0) {
        throw std::invalid_argument("product of " + sa.to_string() + " and " + sb.to_string() +
                                    " has an imaginary phase");
      }
      out.add(p.product, (p.phase_power == 0 ? 1.0 : -1.0) * ca * cb);
    }
  }
  out.canonicalize();
  return out;
}

}  // namespace qite
