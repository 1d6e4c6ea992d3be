#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qite/ansatz.hpp"
#include "qite/ising.hpp"
#include "qite/statevector.hpp"
#include "qite/thermo.hpp"

namespace qite {

struct EvolverConfig {
  double dtau = 0.002;
  double tau_max = 0.5;
  /// Eigenvalues of M below rcond * max|lambda| are discarded.
  double rcond = 1e-8;
  std::size_t record_stride = 1;
  bool compute_residual = false;
  std::size_t qubit_budget = kDefaultQubitBudget;

  void validate() const;
  /// Euler steps taken: floor(tau_max / dtau), tolerant of round-off.
  std::size_t num_steps() const;
};

/// The variational state and all its parameter derivatives at one theta.
struct TangentSpace {
  StateVector state;
  std::vector<StateVector> derivatives;
};

TangentSpace compute_tangent_space(const Ansatz& ansatz, std::span<const double> params,
                                   const StateVector& input);

/// M_{mu nu} = 2 Re <d_mu phi | d_nu phi>.
Eigen::MatrixXd assemble_M(const TangentSpace& tangent);
/// Evaluated on |+>^n.
Eigen::MatrixXd assemble_M(const Ansatz& ansatz, std::span<const double> params);

/// V_mu = -2 Re <d_mu phi | H | phi>.
Eigen::VectorXd assemble_V(const TangentSpace& tangent, const StateVector& h_phi);
Eigen::VectorXd assemble_V(const Ansatz& ansatz, std::span<const double> params,
                           const WeightedPauliSum& hamiltonian);

struct ThetaDot {
  Eigen::VectorXd value;
  std::size_t rank = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// Every eigenvalue fell below the cutoff; value is zero.
  bool degenerate = false;
};

/// Minimal-norm solution of M theta_dot = V through the symmetric
/// eigendecomposition of M.
ThetaDot solve_theta_dot(const Eigen::MatrixXd& M, const Eigen::VectorXd& V, double rcond);

inline constexpr std::size_t kResidualQubitLimit = 10;

/// Frobenius norm of sum_mu theta_dot_mu d(rho)/d(theta_mu) - Lv(rho) with
/// rho = |phi><phi| and Lv(rho) = -{H, rho} + 2 tr(rho H) rho, built as dense
/// matrices on |+>^n inputs. ResourceError above kResidualQubitLimit qubits.
double mclachlan_residual(const Ansatz& ansatz, std::span<const double> params,
                          std::span<const double> theta_dot, const WeightedPauliSum& hamiltonian);
double mclachlan_residual(const TangentSpace& tangent, std::span<const double> theta_dot,
                          const WeightedPauliSum& hamiltonian);

/// H|psi> for an arbitrary real-weighted Pauli sum.
StateVector apply_operator(const WeightedPauliSum& op, const StateVector& state);

/// Euler integration of theta along the McLachlan flow, starting from
/// theta = 0 on |+>^n.
class QiteEvolver {
 public:
  QiteEvolver(Ansatz ansatz, WeightedPauliSum hamiltonian, EvolverConfig config);

  const Ansatz& ansatz() const { return ansatz_; }
  const EvolverConfig& config() const { return config_; }
  std::span<const double> params() const { return params_; }
  double tau() const { return static_cast<double>(steps_taken_) * config_.dtau; }

  /// Current variational state and derivatives.
  const TangentSpace& tangent() const { return tangent_; }
  /// Solves for theta_dot at the current parameters without moving.
  ThetaDot velocity() const;
  /// Advances theta by dtau * theta_dot. Throws NumericalError on a
  /// non-finite update.
  ThetaDot step();
  /// Advances theta by dtau * rate.value for a rate computed at the current
  /// parameters.
  void advance(const ThetaDot& rate);

 private:
  void refresh();

  Ansatz ansatz_;
  WeightedPauliSum hamiltonian_;
  std::optional<DiagonalOperator> diagonal_;
  EvolverConfig config_;
  StateVector input_;
  std::vector<double> params_;
  TangentSpace tangent_;
  std::size_t steps_taken_ = 0;
};

struct EvolutionTrace {
  std::vector<double> taus;
  std::vector<std::vector<double>> thetas;
  std::vector<ThermoPoint> thermo;
  std::vector<std::optional<double>> residuals;
  /// Smallest eigenvalue of M at every Euler step (not only recorded ones).
  std::vector<double> m_min_eigenvalues;
  std::size_t degenerate_steps = 0;
};

EvolutionTrace evolve(const Ansatz& ansatz, const IsingSpec& spec, const EvolverConfig& config);

/// CSV with header tau,K,E,E2,M,M2,Cv,chi,residual.
std::string trace_to_csv(const EvolutionTrace& trace);

}  // namespace qite
