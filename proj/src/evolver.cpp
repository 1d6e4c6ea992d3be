#include "qite/evolver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qite/csv.hpp"
#include "qite/errors.hpp"

namespace qite {

void EvolverConfig::validate() const {
  if (!(dtau > 0.0) || !std::isfinite(dtau)) throw std::invalid_argument("dtau must be positive");
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw std::invalid_argument("tau_max must be nonnegative");
  if (tau_max > 0.0 && dtau > tau_max) throw std::invalid_argument("dtau must not exceed tau_max");
  if (!(rcond > 0.0 && rcond < 1.0)) throw std::invalid_argument("rcond must lie in (0, 1)");
  if (record_stride == 0) throw std::invalid_argument("record stride must be positive");
}

std::size_t EvolverConfig::num_steps() const {
  return static_cast<std::size_t>(std::floor(tau_max / dtau + 1e-9));
}

StateVector apply_operator(const WeightedPauliSum& op, const StateVector& state) {
  if (op.num_qubits() != state.num_qubits()) throw std::invalid_argument("operator and state sizes differ");
  std::vector<Complex> out(state.dimension(), Complex{0, 0});
  for (const auto& [string, coeff] : op.terms()) {
    StateVector term = state;
    term.apply_pauli(string);
    const auto amps = term.amplitudes();
    for (std::size_t s = 0; s < out.size(); ++s) out[s] += coeff * amps[s];
  }
  return StateVector(std::move(out));
}

TangentSpace compute_tangent_space(const Ansatz& ansatz, std::span<const double> params,
                                   const StateVector& input) {
  if (params.size() != ansatz.num_params()) throw std::invalid_argument("parameter vector has wrong length");
  const std::size_t n = ansatz.num_params();
  TangentSpace out;
  out.derivatives.reserve(n);
  StateVector forward = input;
  for (std::size_t mu = 0; mu < n; ++mu) {
    ansatz.apply_range(forward, params, mu, mu + 1);
    StateVector d = forward;
    d.apply_pauli(ansatz.gates()[mu].generator);
    for (Complex& a : d.amplitudes()) a = Complex{a.imag(), -a.real()};  // times -i
    ansatz.apply_range(d, params, mu + 1, n);
    out.derivatives.push_back(std::move(d));
  }
  out.state = std::move(forward);
  return out;
}

Eigen::MatrixXd assemble_M(const TangentSpace& tangent) {
  const auto n = static_cast<Eigen::Index>(tangent.derivatives.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    for (Eigen::Index nu = mu; nu < n; ++nu) {
      const double value = 2.0 * tangent.derivatives[mu].inner(tangent.derivatives[nu]).real();
      m(mu, nu) = value;
      m(nu, mu) = value;
    }
  }
  return m;
}

Eigen::MatrixXd assemble_M(const Ansatz& ansatz, std::span<const double> params) {
  return assemble_M(compute_tangent_space(ansatz, params, init_plus_state(ansatz.num_qubits())));
}

Eigen::VectorXd assemble_V(const TangentSpace& tangent, const StateVector& h_phi) {
  const auto n = static_cast<Eigen::Index>(tangent.derivatives.size());
  Eigen::VectorXd v(n);
  for (Eigen::Index mu = 0; mu < n; ++mu) v(mu) = -2.0 * tangent.derivatives[mu].inner(h_phi).real();
  return v;
}

Eigen::VectorXd assemble_V(const Ansatz& ansatz, std::span<const double> params,
                           const WeightedPauliSum& hamiltonian) {
  const TangentSpace tangent = compute_tangent_space(ansatz, params, init_plus_state(ansatz.num_qubits()));
  return assemble_V(tangent, apply_operator(hamiltonian, tangent.state));
}

ThetaDot solve_theta_dot(const Eigen::MatrixXd& M, const Eigen::VectorXd& V, double rcond) {
  if (M.rows() != M.cols() || M.rows() != V.size()) throw std::invalid_argument("M and V shapes disagree");
  ThetaDot out;
  out.value = Eigen::VectorXd::Zero(V.size());
  if (V.size() == 0) {
    out.degenerate = true;
    return out;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition of M failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  out.min_eigenvalue = lambda.minCoeff();
  out.max_eigenvalue = lambda.maxCoeff();
  const double scale = lambda.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) {
    out.degenerate = true;
    return out;
  }
  const Eigen::VectorXd projected = eig.eigenvectors().transpose() * V;
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(V.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) > rcond * scale) {
      weights(k) = projected(k) / lambda(k);
      ++out.rank;
    }
  }
  out.value = eig.eigenvectors() * weights;
  out.degenerate = out.rank == 0;
  return out;
}

double mclachlan_residual(const TangentSpace& tangent, std::span<const double> theta_dot,
                          const WeightedPauliSum& hamiltonian) {
  const std::size_t nq = tangent.state.num_qubits();
  if (nq > kResidualQubitLimit) {
    throw ResourceError("McLachlan residual needs a dense density matrix; " + std::to_string(nq) +
                        " qubits exceeds the limit of " + std::to_string(kResidualQubitLimit));
  }
  if (theta_dot.size() != tangent.derivatives.size()) throw std::invalid_argument("theta_dot has wrong length");
  const auto dim = static_cast<Eigen::Index>(tangent.state.dimension());
  const auto as_vector = [dim](const StateVector& s) {
    return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), dim);
  };
  const Eigen::VectorXcd phi = as_vector(tangent.state);
  const Eigen::MatrixXcd rho = phi * phi.adjoint();

  Eigen::MatrixXcd drho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t mu = 0; mu < theta_dot.size(); ++mu) {
    if (theta_dot[mu] == 0.0) continue;
    const Eigen::VectorXcd d = as_vector(tangent.derivatives[mu]);
    drho += theta_dot[mu] * (d * phi.adjoint() + phi * d.adjoint());
  }

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector basis(nq);
    basis.amplitudes()[0] = 0.0;
    basis.amplitudes()[static_cast<std::size_t>(col)] = 1.0;
    h.col(col) = as_vector(apply_operator(hamiltonian, basis));
  }
  const Complex energy = (rho * h).trace();
  const Eigen::MatrixXcd liouville = -(h * rho + rho * h) + 2.0 * energy * rho;
  return (drho - liouville).norm();
}

double mclachlan_residual(const Ansatz& ansatz, std::span<const double> params,
                          std::span<const double> theta_dot, const WeightedPauliSum& hamiltonian) {
  if (ansatz.num_qubits() > kResidualQubitLimit) {
    throw ResourceError("McLachlan residual limited to " + std::to_string(kResidualQubitLimit) + " qubits");
  }
  return mclachlan_residual(compute_tangent_space(ansatz, params, init_plus_state(ansatz.num_qubits())),
                            theta_dot, hamiltonian);
}

QiteEvolver::QiteEvolver(Ansatz ansatz, WeightedPauliSum hamiltonian, EvolverConfig config)
    : ansatz_(std::move(ansatz)), hamiltonian_(std::move(hamiltonian)), config_(config) {
  config_.validate();
  if (hamiltonian_.num_qubits() != ansatz_.num_qubits()) {
    throw std::invalid_argument("ansatz and Hamiltonian act on different registers");
  }
  input_ = init_plus_state(ansatz_.num_qubits(), config_.qubit_budget);
  if (hamiltonian_.is_diagonal()) diagonal_.emplace(hamiltonian_);
  params_.assign(ansatz_.num_params(), 0.0);
  refresh();
}

void QiteEvolver::refresh() { tangent_ = compute_tangent_space(ansatz_, params_, input_); }

ThetaDot QiteEvolver::velocity() const {
  StateVector h_phi = tangent_.state;
  if (diagonal_) diagonal_->apply(h_phi);
  else h_phi = apply_operator(hamiltonian_, tangent_.state);
  return solve_theta_dot(assemble_M(tangent_), assemble_V(tangent_, h_phi), config_.rcond);
}

ThetaDot QiteEvolver::step() {
  ThetaDot rate = velocity();
  advance(rate);
  return rate;
}

void QiteEvolver::advance(const ThetaDot& rate) {
  if (rate.value.size() != static_cast<Eigen::Index>(params_.size())) {
    throw std::invalid_argument("rate has wrong length");
  }
  if (!rate.value.allFinite()) {
    throw NumericalError("non-finite theta_dot at tau = " + std::to_string(tau()) +
                         "; M is too ill-conditioned for rcond = " + std::to_string(config_.rcond));
  }
  for (std::size_t k = 0; k < params_.size(); ++k) {
    params_[k] += config_.dtau * rate.value(static_cast<Eigen::Index>(k));
  }
  ++steps_taken_;
  refresh();
}

EvolutionTrace evolve(const Ansatz& ansatz, const IsingSpec& spec, const EvolverConfig& config) {
  config.validate();
  // Observable tables are as large as the state; fail before building them.
  if (spec.num_qubits() > config.qubit_budget) {
    throw ResourceError("statevector of " + std::to_string(spec.num_qubits()) + " qubits exceeds the budget of " +
                        std::to_string(config.qubit_budget) + " qubits");
  }
  const Observables observables = build_observables(spec);
  const DiagonalObservables diag(observables);
  QiteEvolver evolver(ansatz, observables.hamiltonian, config);
  const std::size_t steps = config.num_steps();

  EvolutionTrace trace;
  for (std::size_t k = 0; k <= steps; ++k) {
    const bool record = k % config.record_stride == 0;
    const double tau = static_cast<double>(k) * config.dtau;
    std::optional<ThetaDot> rate;
    if (k < steps || (record && config.compute_residual)) rate = evolver.velocity();

    if (record) {
      trace.taus.push_back(tau);
      trace.thetas.emplace_back(evolver.params().begin(), evolver.params().end());
      trace.thermo.push_back(
          measure_thermal_point(evolver.tangent().state, diag, 2.0 * tau, spec.coupling, spec.num_qubits()));
      if (config.compute_residual) {
        const std::vector<double> td(rate->value.data(), rate->value.data() + rate->value.size());
        trace.residuals.emplace_back(mclachlan_residual(evolver.tangent(), td, observables.hamiltonian));
      } else {
        trace.residuals.emplace_back(std::nullopt);
      }
    }
    if (k == steps) break;

    evolver.advance(*rate);
    trace.m_min_eigenvalues.push_back(rate->min_eigenvalue);
    if (rate->degenerate) ++trace.degenerate_steps;
  }
  return trace;
}

std::string trace_to_csv(const EvolutionTrace& trace) {
  std::string out = "tau,K,E,E2,M,M2,Cv,chi,residual\n";
  for (std::size_t r = 0; r < trace.taus.size(); ++r) {
    const ThermoPoint& p = trace.thermo[r];
    const std::vector<std::string> cells = {
        csv::number(trace.taus[r]), csv::number(p.K),    csv::number(p.E),   csv::number(p.E2),
        csv::number(p.Mag),         csv::number(p.Mag2), csv::number(p.Cv),  csv::number(p.chi),
        trace.residuals[r] ? csv::number(*trace.residuals[r]) : std::string()};
    out += csv::row(cells);
  }
  return out;
}

}  // namespace qite
