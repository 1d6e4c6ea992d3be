#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qite {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// Tensor product of single-qubit Pauli letters, one per qubit. Qubit 0 is the
/// least significant bit of a computational-basis index. Limited to 64 qubits
/// so that the X/Z bit masks fit a machine word.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);
  explicit PauliString(std::vector<Pauli> letters);

  /// Parses the subscript form used in logs, e.g. "Z1Y0" or "Z2I1Y0". "I"
  /// alone is the identity.
  static PauliString from_label(std::string_view label, std::size_t num_qubits);

  std::size_t size() const { return letters_.size(); }
  Pauli operator[](std::size_t qubit) const { return letters_[qubit]; }
  const std::vector<Pauli>& letters() const { return letters_; }
  void set(std::size_t qubit, Pauli p);

  std::vector<std::size_t> support() const;
  bool is_identity() const { return (x_mask_ | z_mask_) == 0; }
  /// Only I and Z letters.
  bool is_diagonal() const { return x_mask_ == 0; }
  std::size_t y_count() const;
  bool has_odd_y_parity() const { return y_count() % 2 == 1; }

  /// Bit q set when letter q is X or Y.
  std::uint64_t x_mask() const { return x_mask_; }
  /// Bit q set when letter q is Z or Y.
  std::uint64_t z_mask() const { return z_mask_; }

  /// "Z1Y0" style: non-identity letters, highest qubit first.
  std::string to_string() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return a.letters_ < b.letters_;
  }

 private:
  void refresh_masks();

  std::vector<Pauli> letters_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
};

/// a * b = i^phase_power * product.
struct PauliProduct {
  int phase_power = 0;  // 0..3
  PauliString product;

  std::complex<double> phase() const;
};

PauliProduct multiply_strings(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

/// Real-weighted sum of Pauli strings over a fixed number of qubits.
class WeightedPauliSum {
 public:
  static constexpr double kZeroTolerance = 1e-14;

  explicit WeightedPauliSum(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  const std::map<PauliString, double>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Accumulates into an existing term. Does not canonicalize.
  void add(const PauliString& string, double coefficient);
  /// Drops terms with |c| below kZeroTolerance.
  void canonicalize();

  double coefficient(const PauliString& string) const;
  double l1_norm() const;
  bool is_diagonal() const;

  WeightedPauliSum& operator+=(const WeightedPauliSum& other);
  WeightedPauliSum scaled(double factor) const;

  std::string to_string() const;

 private:
  std::size_t num_qubits_;
  std::map<PauliString, double> terms_;
};

/// Canonicalized product. Throws std::invalid_argument if any pair of terms
/// multiplies to a non-real phase.
WeightedPauliSum multiply_sums(const WeightedPauliSum& a, const WeightedPauliSum& b);

}  // namespace qite
