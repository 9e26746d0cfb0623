// Copyright 2026 The lossywalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lossywalk/run.hpp"

namespace {

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative quantum walks on a lossy bipartite lattice"};
  app.require_subcommand(1);

  // Flag values; only flags the user actually passed override the config file.
  int L = 0, origin = 0, workers = 0;
  double v = 0.0, r = 0.0, gamma = 0.0, stop_norm = 0.0, dt = 0.0, t_max = 0.0;
  std::string v_grid, output, format, config_path;
  int edge_cells = 0;
  double weight_threshold = 0.0, gap_factor = 0.0;

  auto* opt_L = app.add_option("--L", L, "number of unit cells");
  auto* opt_v = app.add_option("--v", v, "intracell hopping");
  auto* opt_r = app.add_option("--r", r, "intercell hopping amplitude");
  auto* opt_gamma = app.add_option("--gamma", gamma, "loss rate on B sites");
  auto* opt_origin = app.add_option("--origin", origin, "initial unit cell (1-based)");
  auto* opt_stop = app.add_option("--stop-norm", stop_norm, "stop once norm^2 falls below this");
  auto* opt_dt = app.add_option("--dt", dt, "integrator time step");
  auto* opt_tmax = app.add_option("--t-max", t_max, "hard cap on the integration time");
  auto* opt_grid = app.add_option("--v-grid", v_grid, "scan grid start:stop:step");
  auto* opt_output = app.add_option("--output", output, "output file (or directory for figures)");
  auto* opt_format =
      app.add_option("--format", format, "output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* opt_workers = app.add_option("--workers", workers, "concurrent sweep workers");
  auto* opt_config = app.add_option("--config", config_path, "JSON config file");
  auto* opt_edge_cells = app.add_option("--edge-cells", edge_cells, "edge window width (cells)");
  auto* opt_weight = app.add_option("--weight-threshold", weight_threshold,
                                    "edge-state population threshold");
  auto* opt_gap = app.add_option("--gap-factor", gap_factor, "edge-state spectral gap factor");

  auto* simulate = app.add_subcommand("simulate", "decay-probability distribution of one run");
  auto* spectrum = app.add_subcommand("spectrum", "open-boundary spectrum and edge census");
  auto* winding = app.add_subcommand("winding", "Bloch and non-Bloch winding numbers");
  auto* sweep = app.add_subcommand("sweep", "joined observables over a v grid");
  auto* figures = app.add_subcommand("figures", "write the bundled reproduction datasets");
  for (auto* sub : {simulate, spectrum, winding, sweep, figures}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  lossywalk::RunConfig config;
  config.workers = default_workers();
  if (simulate->parsed()) config.command = lossywalk::Command::Simulate;
  if (spectrum->parsed()) config.command = lossywalk::Command::Spectrum;
  if (winding->parsed()) config.command = lossywalk::Command::Winding;
  if (sweep->parsed()) config.command = lossywalk::Command::Sweep;
  if (figures->parsed()) config.command = lossywalk::Command::Figures;

  try {
    if (opt_config->count()) lossywalk::apply_config_file(config, config_path);

    if (opt_L->count()) config.params.L = L;
    if (opt_v->count()) config.params.v = v;
    if (opt_r->count()) config.params.r = r;
    if (opt_gamma->count()) config.params.gamma = gamma;
    if (opt_origin->count()) config.params.origin = origin;
    if (opt_stop->count()) config.evolve.stop_norm = stop_norm;
    if (opt_dt->count()) config.evolve.dt = dt;
    if (opt_tmax->count()) config.evolve.t_max = t_max;
    if (opt_grid->count()) {
      config.v_grid = lossywalk::VGrid::parse(v_grid);
      config.has_v_grid = true;
    }
    if (opt_output->count()) config.output_path = output;
    if (opt_format->count())
      config.format = format == "json" ? lossywalk::OutputFormat::Json
                                       : lossywalk::OutputFormat::Csv;
    if (opt_workers->count()) config.workers = workers;
    if (opt_edge_cells->count()) config.edge.edge_cells = edge_cells;
    if (opt_weight->count()) config.edge.weight_threshold = weight_threshold;
    if (opt_gap->count()) config.edge.gap_factor = gap_factor;
  } catch (const lossywalk::Error& error) {
    std::cerr << nlohmann::json{{"error", error.code()}, {"message", error.what()}}.dump()
              << '\n';
    return 1;
  }

  return lossywalk::run(config, std::cout, std::cerr);
}
