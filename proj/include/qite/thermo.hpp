#pragma once

#include <cstddef>

#include "qite/ising.hpp"
#include "qite/statevector.hpp"

namespace qite {

/// Thermodynamics at one temperature, k_B = 1.
struct ThermoPoint {
  double K = 0.0;     // J * beta
  double E = 0.0;     // <H>
  double E2 = 0.0;    // <H^2>
  double Mag = 0.0;   // <Z_tot>
  double Mag2 = 0.0;  // <Z_tot^2>
  double Cv = 0.0;    // beta^2 (<H^2> - <H>^2) / |L|
  double chi = 0.0;   // beta (<Z_tot^2> - <Z_tot>^2) / |L|
};

ThermoPoint thermo_from_expectations(double E, double E2, double Mag, double Mag2, double beta,
                                     double coupling, std::size_t volume);

/// The four observables tabulated once for repeated measurement.
class DiagonalObservables {
 public:
  explicit DiagonalObservables(const Observables& observables);

  const DiagonalOperator& hamiltonian() const { return h_; }
  const DiagonalOperator& hamiltonian_sq() const { return h2_; }
  const DiagonalOperator& magnetization() const { return m_; }
  const DiagonalOperator& magnetization_sq() const { return m2_; }

 private:
  DiagonalOperator h_, h2_, m_, m2_;
};

/// `state` is expected to be the imaginary-time state at tau = beta / 2.
ThermoPoint measure_thermal_point(const StateVector& state, const DiagonalObservables& observables,
                                  double beta, double coupling, std::size_t volume);
ThermoPoint measure_thermal_point(const StateVector& state, const Observables& observables, double beta,
                                  double coupling, std::size_t volume);

}  // namespace qite
