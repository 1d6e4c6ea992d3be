#include "qite/thermo.hpp"

#include <stdexcept>

namespace qite {

ThermoPoint thermo_from_expectations(double E, double E2, double Mag, double Mag2, double beta,
                                     double coupling, std::size_t volume) {
  if (volume == 0) throw std::invalid_argument("volume must be positive");
  if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
  const double sites = static_cast<double>(volume);
  ThermoPoint p;
  p.K = coupling * beta;
  p.E = E;
  p.E2 = E2;
  p.Mag = Mag;
  p.Mag2 = Mag2;
  p.Cv = beta * beta * (E2 - E * E) / sites;
  p.chi = beta * (Mag2 - Mag * Mag) / sites;
  return p;
}

DiagonalObservables::DiagonalObservables(const Observables& observables)
    : h_(observables.hamiltonian),
      h2_(observables.hamiltonian_sq),
      m_(observables.magnetization),
      m2_(observables.magnetization_sq) {}

ThermoPoint measure_thermal_point(const StateVector& state, const DiagonalObservables& observables,
                                  double beta, double coupling, std::size_t volume) {
  return thermo_from_expectations(observables.hamiltonian().expectation(state),
                                  observables.hamiltonian_sq().expectation(state),
                                  observables.magnetization().expectation(state),
                                  observables.magnetization_sq().expectation(state), beta, coupling, volume);
}

ThermoPoint measure_thermal_point(const StateVector& state, const Observables& observables, double beta,
                                  double coupling, std::size_t volume) {
  return thermo_from_expectations(expectation(state, observables.hamiltonian),
                                  expectation(state, observables.hamiltonian_sq),
                                  expectation(state, observables.magnetization),
                                  expectation(state, observables.magnetization_sq), beta, coupling, volume);
}

}  // namespace qite
