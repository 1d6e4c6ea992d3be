#include "qite/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qite/ansatz.hpp"
#include "qite/csv.hpp"
#include "qite/ed_oracle.hpp"

namespace qite {

IsingSpec ExperimentConfig::spec() const {
  IsingSpec s;
  s.lattice = Lattice::parse(dims);
  s.coupling = coupling;
  s.alpha = alpha;
  s.bond_counting = bond_counting;
  s.validate();
  return s;
}

void ExperimentConfig::validate() const {
  spec();
  if (layers < 1) throw std::invalid_argument("layers must be at least 1");
  if (!(k_max >= 0.0)) throw std::invalid_argument("kmax must be nonnegative");
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");
}

EvolverConfig ExperimentConfig::evolver() const {
  EvolverConfig cfg;
  cfg.dtau = dtau;
  cfg.tau_max = k_max / (2.0 * coupling);
  cfg.rcond = rcond;
  if (!(dtau > 0.0)) throw std::invalid_argument("dtau must be positive");
  // K advances by 2 J dtau per Euler step.
  const double stride = grid_step / (2.0 * coupling * dtau);
  const double rounded = std::round(stride);
  if (rounded < 1.0 || std::abs(stride - rounded) > 1e-6 * stride) {
    throw std::invalid_argument("grid step " + csv::number(grid_step) + " is not a multiple of 2*J*dtau = " +
                                csv::number(2.0 * coupling * dtau));
  }
  cfg.record_stride = static_cast<std::size_t>(rounded);
  return cfg;
}

std::vector<double> uniform_k_grid(double k_max, double step) {
  if (!(step > 0.0) || k_max < 0.0) throw std::invalid_argument("bad K grid");
  const auto count = static_cast<std::size_t>(std::floor(k_max / step + 1e-9));
  std::vector<double> grid(count + 1);
  for (std::size_t k = 0; k <= count; ++k) grid[k] = static_cast<double>(k) * step;
  return grid;
}

SweepResult sweep(const ExperimentConfig& config) {
  config.validate();
  const EvolverConfig evolver = config.evolver();
  evolver.validate();
  const IsingSpec spec = config.spec();
  const Ansatz ansatz = build_ansatz(spec, config.layers);
  const EvolutionTrace trace = evolve(ansatz, spec, evolver);
  SweepResult out;
  out.num_params = ansatz.num_params();
  out.qite = trace.thermo;
  for (const ThermoPoint& p : trace.thermo) out.k_grid.push_back(p.K);
  out.ed = reference_curve(spec, out.k_grid);
  return out;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string out =
      "K,E_qite,E2_qite,M_qite,M2_qite,Cv_qite,chi_qite,E_ed,E2_ed,M_ed,M2_ed,Cv_ed,chi_ed\n";
  for (std::size_t r = 0; r < result.k_grid.size(); ++r) {
    std::vector<std::string> cells = {csv::number(result.k_grid[r])};
    for (const ThermoPoint* p : {&result.qite[r], &result.ed[r]}) {
      for (double v : {p->E, p->E2, p->Mag, p->Mag2, p->Cv, p->chi}) cells.push_back(csv::number(v));
    }
    out += csv::row(cells);
  }
  return out;
}

double average_cv_error(std::span<const double> k_grid, std::span<const ThermoPoint> qite,
                        std::span<const ThermoPoint> ed) {
  if (k_grid.size() != qite.size() || k_grid.size() != ed.size()) {
    throw std::invalid_argument("curves are on different grids");
  }
  if (k_grid.size() < 2) throw std::invalid_argument("need at least two grid points");
  double integral = 0.0;
  for (std::size_t k = 1; k < k_grid.size(); ++k) {
    const double left = std::abs(qite[k - 1].Cv - ed[k - 1].Cv);
    const double right = std::abs(qite[k].Cv - ed[k].Cv);
    integral += 0.5 * (left + right) * (k_grid[k] - k_grid[k - 1]);
  }
  return integral / std::abs(k_grid.back() - k_grid.front());
}

std::vector<LayerScanRow> layer_scan(const ExperimentConfig& config, std::span<const std::size_t> layer_list) {
  std::vector<LayerScanRow> rows;
  for (std::size_t layers : layer_list) {
    if (layers < 1) throw std::invalid_argument("layer counts must be at least 1");
    ExperimentConfig cfg = config;
    cfg.layers = layers;
    const SweepResult r = sweep(cfg);
    rows.push_back({layers, r.num_params, average_cv_error(r.k_grid, r.qite, r.ed)});
  }
  return rows;
}

std::string layer_scan_to_csv(std::span<const LayerScanRow> rows) {
  std::string out = "L,N,dCv\n";
  for (const LayerScanRow& r : rows) {
    const std::vector<std::string> cells = {std::to_string(r.layers), std::to_string(r.num_params),
                                            csv::number(r.cv_error)};
    out += csv::row(cells);
  }
  return out;
}

PeakLocation peak_locate(std::span<const double> k, std::span<const double> values) {
  if (k.size() != values.size()) throw std::invalid_argument("K and value counts differ");
  if (k.size() < 5) throw std::invalid_argument("peak location needs at least 5 grid points");
  const auto top = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  if (top == 0 || top + 1 == values.size()) return {k[top], top, true};
  const double y0 = values[top - 1], y1 = values[top], y2 = values[top + 1];
  const double curvature = y0 - 2.0 * y1 + y2;
  if (curvature == 0.0) return {k[top], top, false};
  // Vertex of the parabola through three points on a possibly uneven grid.
  const double x0 = k[top - 1], x1 = k[top], x2 = k[top + 1];
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  return {x1 - 0.5 * num / den, top, false};
}

PeakLocation peak_locate(std::span<const ThermoPoint> curve) {
  std::vector<double> k, cv;
  for (const ThermoPoint& p : curve) {
    k.push_back(p.K);
    cv.push_back(p.Cv);
  }
  return peak_locate(k, cv);
}

std::vector<AlphaScanEntry> alpha_scan(const ExperimentConfig& config, std::span<const double> alphas,
                                       bool run_qite) {
  std::vector<AlphaScanEntry> out;
  for (double alpha : alphas) {
    ExperimentConfig cfg = config;
    cfg.alpha = alpha;
    AlphaScanEntry entry{alpha, {}, {}, std::nullopt};
    if (run_qite) {
      entry.curves = sweep(cfg);
      entry.qite_peak = peak_locate(entry.curves.qite);
    } else {
      cfg.validate();
      entry.curves.k_grid = uniform_k_grid(cfg.k_max, cfg.grid_step);
      entry.curves.ed = reference_curve(cfg.spec(), entry.curves.k_grid);
    }
    entry.ed_peak = peak_locate(entry.curves.ed);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string alpha_scan_to_csv(std::span<const AlphaScanEntry> entries) {
  std::string out = "alpha,K,Cv_qite,chi_qite,Cv_ed,chi_ed\n";
  for (const AlphaScanEntry& e : entries) {
    const std::string alpha = std::isinf(e.alpha) ? "inf" : csv::number(e.alpha);
    for (std::size_t r = 0; r < e.curves.k_grid.size(); ++r) {
      const bool has_qite = r < e.curves.qite.size();
      const std::vector<std::string> cells = {
          alpha,
          csv::number(e.curves.k_grid[r]),
          has_qite ? csv::number(e.curves.qite[r].Cv) : std::string(),
          has_qite ? csv::number(e.curves.qite[r].chi) : std::string(),
          csv::number(e.curves.ed[r].Cv),
          csv::number(e.curves.ed[r].chi)};
      out += csv::row(cells);
    }
  }
  return out;
}

CostEstimate cost_estimate(double dimension, double side_length, CostMode mode) {
  if (!(dimension > 0.0) || !(side_length > 0.0)) throw std::invalid_argument("cost inputs must be positive");
  const double D = dimension;
  // N = 2 D |L| L with |L| = N_d^D and L ~ D N_d, so N ~ D^2 N_d^(D+1).
  const double gates_d = 2.0, gates_nd = D + 1.0;
  const double exp_d = mode == CostMode::kPaper ? 2.0 * gates_d : gates_d;
  const double exp_nd = mode == CostMode::kPaper ? 2.0 * gates_nd : gates_nd;
  CostEstimate c;
  c.steps = 1.0;
  c.gates = std::pow(D, gates_d) * std::pow(side_length, gates_nd);
  c.expectations = std::pow(D, exp_d) * std::pow(side_length, exp_nd);
  c.expectations_d_exponent = exp_d;
  c.expectations_nd_exponent = exp_nd;
  c.time_d_exponent = exp_d + gates_d;
  c.time_nd_exponent = exp_nd + gates_nd;
  c.time = c.steps * c.expectations * c.gates;
  return c;
}

std::string cost_to_csv(double dimension, double side_length, CostMode mode, const CostEstimate& cost) {
  std::string out = "mode,D,N_d,steps,expectations,gates,time,time_D_exponent,time_Nd_exponent\n";
  const std::vector<std::string> cells = {mode == CostMode::kPaper ? "paper" : "dual",
                                          csv::number(dimension),
                                          csv::number(side_length),
                                          csv::number(cost.steps),
                                          csv::number(cost.expectations),
                                          csv::number(cost.gates),
                                          csv::number(cost.time),
                                          csv::number(cost.time_d_exponent),
                                          csv::number(cost.time_nd_exponent)};
  out += csv::row(cells);
  return out;
}

std::string gnuplot_script(const std::string& csv_path) {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'K'\n"
         "set multiplot layout 1,2\n"
         "set ylabel 'C_v'\n"
         "plot '" + csv_path + "' using 1:6 with points, '' using 1:12 with lines\n"
         "set ylabel 'chi'\n"
         "plot '" + csv_path + "' using 1:7 with points, '' using 1:13 with lines\n"
         "unset multiplot\n";
}

}  // namespace qite
