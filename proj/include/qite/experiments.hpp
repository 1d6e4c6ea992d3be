#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qite/evolver.hpp"
#include "qite/ising.hpp"
#include "qite/thermo.hpp"

namespace qite {

struct ExperimentConfig {
  std::string dims = "3x3";
  double alpha = std::numeric_limits<double>::infinity();
  double coupling = 1.0;
  BondCounting bond_counting = BondCounting::kTorusEdges;
  std::size_t layers = 2;
  double dtau = 0.002;
  double k_max = 1.0;
  double rcond = 1e-8;
  /// Spacing of recorded K values; must be a multiple of 2 J dtau.
  double grid_step = 0.02;

  IsingSpec spec() const;
  /// Checks the grid step against the Euler step and derives the stride.
  EvolverConfig evolver() const;
  /// Lattice, model and grid only; the QITE stride is checked by evolver().
  void validate() const;
};

/// 0, step, 2 step, ... up to k_max inclusive.
std::vector<double> uniform_k_grid(double k_max, double step);

struct SweepResult {
  std::vector<double> k_grid;
  std::vector<ThermoPoint> qite;
  std::vector<ThermoPoint> ed;
  std::size_t num_params = 0;
};

/// QITE trace and exact curve on the same K grid.
SweepResult sweep(const ExperimentConfig& config);
std::string sweep_to_csv(const SweepResult& result);

/// (1 / |K_max - K_min|) * integral |Cv - Cv_ED| dK by the trapezoidal rule.
double average_cv_error(std::span<const double> k_grid, std::span<const ThermoPoint> qite,
                        std::span<const ThermoPoint> ed);

struct LayerScanRow {
  std::size_t layers;
  std::size_t num_params;
  double cv_error;
};

std::vector<LayerScanRow> layer_scan(const ExperimentConfig& config, std::span<const std::size_t> layer_list);
std::string layer_scan_to_csv(std::span<const LayerScanRow> rows);

struct PeakLocation {
  double K;
  std::size_t index;
  /// Maximum sits on the first or last grid point; K is the raw argmax.
  bool at_boundary;
};

/// Parabola through the largest Cv sample and its two neighbours.
PeakLocation peak_locate(std::span<const ThermoPoint> curve);
PeakLocation peak_locate(std::span<const double> k, std::span<const double> values);

struct AlphaScanEntry {
  double alpha;
  SweepResult curves;  // qite empty when QITE was not requested
  PeakLocation ed_peak;
  std::optional<PeakLocation> qite_peak;
};

std::vector<AlphaScanEntry> alpha_scan(const ExperimentConfig& config, std::span<const double> alphas,
                                       bool run_qite);
std::string alpha_scan_to_csv(std::span<const AlphaScanEntry> entries);

enum class CostMode { kPaper, kDual };

/// Orders of magnitude of the NNIM run time, arbitrary units.
struct CostEstimate {
  double steps;
  double expectations;
  double gates;
  double time;
  // time ~ D^time_d_exponent * N_d^time_nd_exponent
  double time_d_exponent;
  double time_nd_exponent;
  double expectations_d_exponent;
  double expectations_nd_exponent;
};

CostEstimate cost_estimate(double dimension, double side_length, CostMode mode);
std::string cost_to_csv(double dimension, double side_length, CostMode mode, const CostEstimate& cost);

/// gnuplot script plotting Cv and chi columns of a sweep CSV.
std::string gnuplot_script(const std::string& csv_path);

}  // namespace qite
