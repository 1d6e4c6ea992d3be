#include <doctest.h>

#include <random>
#include <stdexcept>

#include "dense.hpp"
#include "qite/pauli.hpp"

using namespace qite;

namespace {

PauliString ps(const char* label, std::size_t n) { return PauliString::from_label(label, n); }

}  // namespace

TEST_CASE("labels") {
  const PauliString zy = ps("Z1Y0", 2);
  CHECK(zy[0] == Pauli::Y);
  CHECK(zy[1] == Pauli::Z);
  CHECK(zy.to_string() == "Z1Y0");
  CHECK(ps("Z2Y0", 3).to_string() == "Z2Y0");
  CHECK(ps("I", 3).is_identity());
  CHECK(PauliString(4).to_string() == "I");
  CHECK(ps("Z3Z0", 4).is_diagonal());
  CHECK_FALSE(zy.is_diagonal());
  CHECK(zy.y_count() == 1);
  CHECK(zy.has_odd_y_parity());
  CHECK_FALSE(ps("Y1Y0", 2).has_odd_y_parity());
  CHECK(zy.support() == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(ps("Z2", 2), std::out_of_range);
  CHECK_THROWS_AS(ps("Q0", 2), std::invalid_argument);
}

TEST_CASE("single products") {
  const auto zz = multiply_strings(ps("Z0", 1), ps("Z0", 1));
  CHECK(zz.phase() == std::complex<double>(1, 0));
  CHECK(zz.product.is_identity());

  const auto zy = multiply_strings(ps("Z0", 1), ps("Y0", 1));
  CHECK(zy.phase() == std::complex<double>(0, -1));
  CHECK(zy.product == ps("X0", 1));

  const auto ladder = multiply_strings(ps("Z1Y0", 2), ps("Y1Z0", 2));
  CHECK(ladder.phase() == std::complex<double>(1, 0));
  CHECK(ladder.product == ps("X1X0", 2));

  CHECK_THROWS_AS(multiply_strings(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST_CASE("commutation") {
  CHECK(commutes(ps("Z1Y0", 2), ps("Y1Z0", 2)));
  CHECK_FALSE(commutes(ps("Z0", 1), ps("X0", 1)));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const PauliString s = dense::random_string(5, rng);
    CHECK(commutes(s, s));
  }
}

TEST_CASE("property: string products match dense matrices") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 4;
    const PauliString a = dense::random_string(n, rng);
    const PauliString b = dense::random_string(n, rng);
    const PauliProduct p = multiply_strings(a, b);
    const dense::Matrix expect = dense::string_matrix(a) * dense::string_matrix(b);
    const dense::Matrix got = p.phase() * dense::string_matrix(p.product);
    REQUIRE((expect - got).norm() < 1e-12);

    const dense::Matrix ab = dense::string_matrix(a) * dense::string_matrix(b);
    const dense::Matrix ba = dense::string_matrix(b) * dense::string_matrix(a);
    REQUIRE(commutes(a, b) == ((ab - ba).norm() < 1e-12));
    // y parity of the product follows the matrix: Y-odd strings are imaginary
    const bool imaginary = got.imag().norm() > 1e-12 && got.real().norm() < 1e-12;
    const bool product_imaginary = (p.phase_power % 2 == 1) != p.product.has_odd_y_parity();
    REQUIRE(imaginary == product_imaginary);
  }
}

TEST_CASE("property: string multiplication is associative") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + k % 6;
    const PauliString a = dense::random_string(n, rng);
    const PauliString b = dense::random_string(n, rng);
    const PauliString c = dense::random_string(n, rng);
    const PauliProduct ab = multiply_strings(a, b);
    const PauliProduct left = multiply_strings(ab.product, c);
    const PauliProduct bc = multiply_strings(b, c);
    const PauliProduct right = multiply_strings(a, bc.product);
    REQUIRE(left.product == right.product);
    REQUIRE(ab.phase() * left.phase() == bc.phase() * right.phase());
  }
}

TEST_CASE("weighted sums") {
  WeightedPauliSum h(2);
  h.add(ps("Z1Z0", 2), -1.0);
  const WeightedPauliSum h2 = multiply_sums(h, h);
  CHECK(h2.size() == 1);
  CHECK(h2.coefficient(PauliString(2)) == doctest::Approx(1.0));

  WeightedPauliSum m(2);
  m.add(ps("Z1", 2), 1.0);
  m.add(ps("Z0", 2), 1.0);
  const WeightedPauliSum m2 = multiply_sums(m, m);
  CHECK(m2.size() == 2);
  CHECK(m2.coefficient(PauliString(2)) == doctest::Approx(2.0));
  CHECK(m2.coefficient(ps("Z1Z0", 2)) == doctest::Approx(2.0));

  WeightedPauliSum cancel(2);
  cancel.add(ps("X0", 2), 0.5);
  cancel.add(ps("X0", 2), -0.5);
  cancel.canonicalize();
  CHECK(cancel.empty());
  CHECK(cancel.to_string() == "0");

  CHECK(m.l1_norm() == doctest::Approx(2.0));
  CHECK(m.is_diagonal());
  CHECK(m.scaled(-2.0).coefficient(ps("Z0", 2)) == doctest::Approx(-2.0));

  WeightedPauliSum y(1);
  y.add(ps("Y0", 1), 1.0);
  WeightedPauliSum z(1);
  z.add(ps("Z0", 1), 1.0);
  CHECK_THROWS_AS(multiply_sums(y, z), std::invalid_argument);
}

TEST_CASE("property: sum products match dense matrices") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 4;
    WeightedPauliSum a(n), b(n);
    for (int t = 0; t < 4; ++t) {
      PauliString s = dense::random_string(n, rng);
      PauliString u = dense::random_string(n, rng);
      // keep X/Y letters out so products stay real
      for (std::size_t q = 0; q < n; ++q) {
        if (s[q] != Pauli::Z) s.set(q, Pauli::I);
        if (u[q] != Pauli::Z) u.set(q, Pauli::I);
      }
      a.add(s, coeff(rng));
      b.add(u, coeff(rng));
    }
    const WeightedPauliSum ab = multiply_sums(a, b);
    REQUIRE((dense::sum_matrix(ab) - dense::sum_matrix(a) * dense::sum_matrix(b)).norm() < 1e-12);
  }
}
