#include "qite/measure_ref.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qite/ansatz.hpp"
#include "qite/errors.hpp"
#include "qite/evolver.hpp"

namespace qite {

namespace {

constexpr std::size_t kMaxPoolSupport = 6;

bool mutually_commuting(const std::vector<PauliString>& pool) {
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      if (!commutes(pool[a], pool[b])) return false;
    }
  }
  return true;
}

Eigen::VectorXcd as_eigen(const StateVector& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
}

// Minimal-norm least-squares solution of J a ~ b for real a.
std::vector<double> real_least_squares(const std::vector<Eigen::VectorXcd>& columns, const Eigen::VectorXcd& b,
                                       double rcond) {
  const auto n = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd normal(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = columns[i].dot(b).real();
    for (Eigen::Index j = i; j < n; ++j) {
      normal(i, j) = normal(j, i) = columns[i].dot(columns[j]).real();
    }
  }
  const ThetaDot sol = solve_theta_dot(normal, rhs, rcond);
  return {sol.value.data(), sol.value.data() + sol.value.size()};
}

}  // namespace

StateVector apply_generator_exponential(const StateVector& state, const std::vector<PauliString>& pool,
                                        const std::vector<double>& angles) {
  if (pool.size() != angles.size()) throw std::invalid_argument("pool and angle counts differ");
  double bound = 0.0;
  for (double a : angles) bound += std::abs(a);
  const auto slices = static_cast<std::size_t>(std::ceil(bound / 0.5)) + 1;
  const double scale = 1.0 / static_cast<double>(slices);

  StateVector current = state;
  for (std::size_t slice = 0; slice < slices; ++slice) {
    StateVector term = current;
    StateVector sum = current;
    for (int k = 1; k < 64; ++k) {
      std::vector<Complex> next(term.dimension(), Complex{0, 0});
      for (std::size_t p = 0; p < pool.size(); ++p) {
        if (angles[p] == 0.0) continue;
        StateVector applied = term;
        applied.apply_pauli(pool[p]);
        const Complex factor = Complex{0.0, -angles[p] * scale / k};
        const auto amps = applied.amplitudes();
        for (std::size_t s = 0; s < next.size(); ++s) next[s] += factor * amps[s];
      }
      term = StateVector(std::move(next));
      double size = 0.0;
      auto out = sum.amplitudes();
      const auto add = term.amplitudes();
      for (std::size_t s = 0; s < out.size(); ++s) {
        out[s] += add[s];
        size += std::norm(add[s]);
      }
      if (size < 1e-36) break;
    }
    current = std::move(sum);
  }
  return current;
}

std::vector<double> fit_step_coefficients(const StateVector& state, const WeightedPauliSum& term,
                                          const std::vector<PauliString>& pool, double dtau,
                                          const MeasureFitOptions& options) {
  if (pool.empty()) throw std::invalid_argument("generator pool is empty");
  if (dtau < 0.0) throw std::invalid_argument("dtau must be nonnegative");
  std::vector<double> angles(pool.size(), 0.0);
  if (dtau == 0.0) return angles;

  const DiagonalOperator diag(term);
  const auto values = diag.values();
  const double v_min = *std::min_element(values.begin(), values.end());
  StateVector target = state;
  {
    auto amps = target.amplitudes();
    for (std::size_t s = 0; s < amps.size(); ++s) amps[s] *= std::exp(-dtau * (values[s] - v_min));
    target.normalize();
  }
  const Eigen::VectorXcd t = as_eigen(target);

  // Linearized: exp(-iA)|psi> ~ |psi> - i A |psi>.
  std::vector<Eigen::VectorXcd> columns;
  columns.reserve(pool.size());
  for (const PauliString& p : pool) {
    StateVector c = state;
    c.apply_pauli(p);
    columns.push_back(Complex{0.0, -1.0} * as_eigen(c));
  }
  angles = real_least_squares(columns, t - as_eigen(state), options.rcond);

  const bool commuting = mutually_commuting(pool);
  for (std::size_t iter = 0; iter < options.refinements; ++iter) {
    const StateVector evolved = apply_generator_exponential(state, pool, angles);
    const Eigen::VectorXcd residual = as_eigen(evolved) - t;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (commuting) {
        StateVector c = evolved;
        c.apply_pauli(pool[p]);
        columns[p] = Complex{0.0, -1.0} * as_eigen(c);
      } else {
        constexpr double h = 1e-6;
        std::vector<double> up = angles, down = angles;
        up[p] += h;
        down[p] -= h;
        columns[p] = (as_eigen(apply_generator_exponential(state, pool, up)) -
                      as_eigen(apply_generator_exponential(state, pool, down))) /
                     (2.0 * h);
      }
    }
    const std::vector<double> delta = real_least_squares(columns, -residual, options.rcond);
    double step = 0.0;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      angles[p] += delta[p];
      step = std::max(step, std::abs(delta[p]));
    }
    if (step < 1e-16) break;
  }
  return angles;
}

std::vector<PauliString> measure_pool(const IsingSpec& spec, const PauliString& term, std::size_t radius) {
  const std::size_t n = spec.num_qubits();
  const std::vector<std::size_t> support = term.support();
  if (support.empty()) throw std::invalid_argument("identity term has no generator pool");
  if (radius == 0 && support.size() == 2) return relevant_strings_for_bond(n, support[1], support[0]);

  std::set<std::size_t> sites(support.begin(), support.end());
  if (radius > 0) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t q : support) {
        if (manhattan_distance_pbc(spec.lattice, s, q) <= radius) sites.insert(s);
      }
    }
  }
  if (sites.size() > kMaxPoolSupport) {
    throw ResourceError("generator pool support of " + std::to_string(sites.size()) + " sites exceeds " +
                        std::to_string(kMaxPoolSupport));
  }
  const std::vector<std::size_t> region(sites.begin(), sites.end());
  std::vector<PauliString> pool;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < region.size(); ++k) combos *= 4;
  for (std::size_t code = 1; code < combos; ++code) {
    PauliString s(n);
    std::size_t rest = code;
    for (std::size_t q : region) {
      s.set(q, static_cast<Pauli>(rest % 4));
      rest /= 4;
    }
    if (s.has_odd_y_parity()) pool.push_back(s);
  }
  return pool;
}

MeasureCircuit build_measure_circuit(const IsingSpec& spec, double tau, double dtau,
                                     const MeasureCircuitOptions& options) {
  if (!(dtau > 0.0)) throw std::invalid_argument("dtau must be positive");
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  const double ratio = tau / dtau;
  const double slices = std::round(ratio);
  if (std::abs(ratio - slices) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("tau / dtau must be an integer");
  }

  const WeightedPauliSum h = build_hamiltonian(spec);
  std::vector<std::pair<WeightedPauliSum, std::vector<PauliString>>> factors;
  for (const auto& [string, coeff] : h.terms()) {
    if (string.is_identity()) continue;
    WeightedPauliSum single(h.num_qubits());
    single.add(string, coeff);
    factors.emplace_back(std::move(single), measure_pool(spec, string, options.pool_radius));
  }

  MeasureCircuit circuit;
  circuit.num_qubits = spec.num_qubits();
  circuit.num_layers = static_cast<std::size_t>(slices);
  StateVector state = init_plus_state(spec.num_qubits(), options.qubit_budget);
  for (std::size_t layer = 0; layer < circuit.num_layers; ++layer) {
    for (const auto& [term, pool] : factors) {
      const std::vector<double> angles = fit_step_coefficients(state, term, pool, dtau, options.fit);
      for (std::size_t p = 0; p < pool.size(); ++p) {
        circuit.gates.push_back({pool[p], angles[p], layer});
        state.rotate(pool[p], angles[p]);
      }
    }
  }
  return circuit;
}

StateVector run_circuit(const std::vector<RotationGate>& gates, const StateVector& input) {
  StateVector state = input;
  for (const RotationGate& g : gates) state.rotate(g.generator, g.angle);
  return state;
}

std::vector<RotationGate> merge_commuting_rotations(const std::vector<RotationGate>& gates) {
  std::vector<RotationGate> out;
  for (const RotationGate& g : gates) {
    bool merged = false;
    for (std::size_t k = out.size(); k-- > 0;) {
      if (out[k].generator == g.generator) {
        out[k].angle += g.angle;
        merged = true;
        break;
      }
      if (!commutes(out[k].generator, g.generator)) break;
    }
    if (!merged) out.push_back(g);
  }
  return out;
}

std::string dump_circuit(const std::vector<RotationGate>& gates) {
  std::ostringstream out;
  out.precision(12);
  for (std::size_t k = 0; k < gates.size(); ++k) {
    out << "layer " << gates[k].layer << ": " << gates[k].generator.to_string() << " -> param " << k << " ("
        << gates[k].angle << ")\n";
  }
  return out.str();
}

}  // namespace qite
