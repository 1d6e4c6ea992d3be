// Command-line driver for thermal-state sweeps, layer scans and peak finding.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qite/csv.hpp"
#include "qite/ed_oracle.hpp"
#include "qite/errors.hpp"
#include "qite/experiments.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumerical = 4;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << text;
}

std::vector<double> parse_alpha_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const std::string& s : items) out.push_back(qite::parse_alpha(s));
  return out;
}

std::string peak_row(const std::string& source, const qite::ExperimentConfig& cfg, const qite::PeakLocation& p) {
  const std::string alpha = std::isinf(cfg.alpha) ? "inf" : qite::csv::number(cfg.alpha);
  const std::vector<std::string> cells = {source, cfg.dims, alpha, qite::csv::number(p.K),
                                          p.at_boundary ? "1" : "0"};
  return qite::csv::row(cells);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QITE-ansatz thermal states of the periodic Ising model"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  qite::ExperimentConfig cfg;
  std::string alpha_text = "inf";
  std::string bonds = "torus";
  std::string out_path;
  std::string plot_path;

  app.add_option("--dims", cfg.dims, "Lattice extents, e.g. 3x3")->capture_default_str();
  app.add_option("--alpha", alpha_text, "Power-law exponent, or inf for nearest neighbours")->capture_default_str();
  app.add_option("--coupling", cfg.coupling, "J > 0")->capture_default_str();
  app.add_option("--layers", cfg.layers, "Ansatz layers L")->capture_default_str();
  app.add_option("--dtau", cfg.dtau, "Euler step in tau")->capture_default_str();
  app.add_option("--kmax", cfg.k_max, "Largest K = 2 tau J")->capture_default_str();
  app.add_option("--rcond", cfg.rcond, "Relative eigenvalue cutoff for M")->capture_default_str();
  app.add_option("--grid-step", cfg.grid_step, "K spacing of recorded rows")->capture_default_str();
  app.add_option("--bonds", bonds, "Nearest-neighbour bonds on length-2 axes: torus or pairs")
      ->check(CLI::IsMember({"torus", "pairs"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Output CSV (stdout when omitted)");

  auto* sweep_cmd = app.add_subcommand("sweep", "QITE and exact curves on one K grid");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--plot", plot_path, "Also write a gnuplot script for the CSV");

  std::vector<std::size_t> layer_list = {1, 2, 3, 4};
  auto* layers_cmd = app.add_subcommand("layers", "Average Cv error against the number of layers");
  layers_cmd->fallthrough();
  layers_cmd->add_option("--layer-list", layer_list, "Layer counts to scan")->delimiter(',')->capture_default_str();

  std::vector<std::string> alpha_items = {"1", "2", "3", "inf"};
  bool with_qite = false;
  auto* alpha_cmd = app.add_subcommand("alpha-scan", "Curves and peaks for several exponents");
  alpha_cmd->fallthrough();
  alpha_cmd->add_option("--alphas", alpha_items, "Exponents to scan")->delimiter(',')->capture_default_str();
  alpha_cmd->add_flag("--qite", with_qite, "Run QITE as well as the exact curves");

  std::string peak_source = "ed";
  auto* peak_cmd = app.add_subcommand("peak", "Position of the Cv maximum");
  peak_cmd->fallthrough();
  peak_cmd->add_option("--source", peak_source, "ed, qite or both")
      ->check(CLI::IsMember({"ed", "qite", "both"}))
      ->capture_default_str();

  double cost_d = 2.0, cost_nd = 3.0;
  std::string cost_mode = "paper";
  auto* cost_cmd = app.add_subcommand("cost", "Run-time order estimate for the nearest-neighbour model");
  cost_cmd->fallthrough();
  cost_cmd->add_option("--dimension", cost_d, "Lattice dimension D")->capture_default_str();
  cost_cmd->add_option("--side", cost_nd, "Side length N_d")->capture_default_str();
  cost_cmd->add_option("--mode", cost_mode, "paper or dual")
      ->check(CLI::IsMember({"paper", "dual"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    cfg.alpha = qite::parse_alpha(alpha_text);
    cfg.bond_counting = bonds == "pairs" ? qite::BondCounting::kDistinctPairs : qite::BondCounting::kTorusEdges;

    if (*sweep_cmd) {
      const qite::SweepResult r = qite::sweep(cfg);
      emit(qite::sweep_to_csv(r), out_path);
      if (!plot_path.empty()) emit(qite::gnuplot_script(out_path.empty() ? "sweep.csv" : out_path), plot_path);
    } else if (*layers_cmd) {
      const auto rows = qite::layer_scan(cfg, layer_list);
      emit(qite::layer_scan_to_csv(rows), out_path);
    } else if (*alpha_cmd) {
      const auto entries = qite::alpha_scan(cfg, parse_alpha_list(alpha_items), with_qite);
      emit(qite::alpha_scan_to_csv(entries), out_path);
      for (const auto& e : entries) {
        std::cerr << "alpha " << (std::isinf(e.alpha) ? std::string("inf") : qite::csv::number(e.alpha))
                  << ": ED K_peak " << qite::csv::number(e.ed_peak.K) << (e.ed_peak.at_boundary ? " (boundary)" : "");
        if (e.qite_peak) {
          std::cerr << ", QITE K_peak " << qite::csv::number(e.qite_peak->K)
                    << (e.qite_peak->at_boundary ? " (boundary)" : "");
        }
        std::cerr << '\n';
      }
    } else if (*peak_cmd) {
      std::string text = "source,dims,alpha,K_peak,boundary\n";
      if (peak_source == "ed" || peak_source == "both") {
        cfg.validate();
        const auto grid = qite::uniform_k_grid(cfg.k_max, cfg.grid_step);
        text += peak_row("ed", cfg, qite::peak_locate(qite::reference_curve(cfg.spec(), grid)));
      }
      if (peak_source == "qite" || peak_source == "both") {
        text += peak_row("qite", cfg, qite::peak_locate(qite::sweep(cfg).qite));
      }
      emit(text, out_path);
    } else if (*cost_cmd) {
      const auto mode = cost_mode == "dual" ? qite::CostMode::kDual : qite::CostMode::kPaper;
      emit(qite::cost_to_csv(cost_d, cost_nd, mode, qite::cost_estimate(cost_d, cost_nd, mode)), out_path);
    }
  } catch (const qite::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const qite::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
