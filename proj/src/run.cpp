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

#include "lossywalk/run.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "lossywalk/dynamics.hpp"
#include "lossywalk/topology.hpp"

namespace lossywalk {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::filesystem::path sidecar_path(const std::filesystem::path& output) {
  if (output.has_extension())
    return output.parent_path() / (output.stem().string() + ".errors" + output.extension().string());
  return output.string() + ".errors.csv";
}

void write_error_sidecar(const std::filesystem::path& path, const std::vector<SweepError>& errors) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "v,stage,code,message\n";
  for (const auto& error : errors) {
    std::string message = error.message;
    for (char& c : message)
      if (c == '"') c = '\'';
    out << format_double(error.v) << ',' << error.stage << ',' << error.code << ",\"" << message
        << "\"\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<double> grid_or_single(const RunConfig& config) {
  if (config.has_v_grid) return config.v_grid.values();
  return {config.params.v};
}

Table decay_table(const DecayRecord& record) {
  Table table;
  table.columns = {"m", "P"};
  for (std::size_t m = 0; m < record.P.size(); ++m)
    table.rows.push_back({static_cast<double>(m + 1), record.P[m]});
  return table;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  const DecayRecord record = decay_distribution(config.params, config.evolve);
  serialize(decay_table(record), config.format, config.output_path);
  double sum = 0.0;
  for (double p : record.P) sum += p;
  out << "simulate v=" << format_double(config.params.v)
      << " method=" << (record.method == EvolveMethod::Spectral ? "spectral" : "time-stepping")
      << " t_stop=" << format_double(record.t_stop)
      << " residual=" << format_double(record.residual) << " sum_P=" << format_double(sum)
      << " P_imb=" << format_double(imbalance(record)) << '\n';
  return 0;
}

int run_spectrum(const RunConfig& config, std::ostream& out) {
  const std::vector<double> grid = grid_or_single(config);
  const std::vector<SpectrumResult> results =
      spectrum_scan(config.params, grid, config.edge);

  Table table;
  table.columns = {"v", "re_e", "im_e", "abs_e", "edge_flag"};
  int edge_total = 0;
  for (const auto& result : results) {
    for (int i = 0; i < result.eigenvalues.size(); ++i) {
      const Complex e = result.eigenvalues[i];
      table.rows.push_back(
          {result.v, e.real(), e.imag(), std::abs(e), result.edge_flags[i] ? 1.0 : 0.0});
    }
    edge_total += result.edge_state_count();
  }
  serialize(table, config.format, config.output_path);
  out << "spectrum points=" << results.size() << " edge_states_total=" << edge_total << '\n';
  return 0;
}

int run_winding(const RunConfig& config, std::ostream& out) {
  const std::vector<double> grid = grid_or_single(config);
  const std::vector<WindingScanPoint> points = winding_scan(config.params, grid);

  Table table;
  table.columns = {"v", "bloch_w", "nonbloch_w", "gbz_radius", "n_samples"};
  std::vector<SweepError> errors;
  for (const auto& point : points) {
    table.rows.push_back({point.v, point.bloch_w.value_or(kNan),
                          point.nonbloch_w ? static_cast<double>(*point.nonbloch_w) : kNan,
                          point.gbz_radius.value_or(kNan),
                          static_cast<double>(point.n_samples)});
    if (!point.error.empty())
      errors.push_back(SweepError{point.v, "winding", "winding_error", point.error});
  }
  serialize(table, config.format, config.output_path);
  write_error_sidecar(sidecar_path(config.output_path), errors);
  out << "winding points=" << points.size() << " errors=" << errors.size() << '\n';
  return 0;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table table;
  table.columns = {"v", "p_imb", "p_1", "p_L", "residual", "edge_state_count",
                   "bloch_w", "nonbloch_w"};
  for (const auto& row : rows)
    table.rows.push_back({row.v, row.p_imb, row.p1, row.pL, row.residual,
                          static_cast<double>(row.edge_state_count), row.bloch_w,
                          row.nonbloch_w});
  return table;
}

int run_sweep_command(const RunConfig& config, std::ostream& out) {
  const std::vector<double> grid =
      config.has_v_grid ? config.v_grid.values() : VGrid{}.values();
  const SweepResult result =
      run_sweep(config.params, config.evolve, config.edge, grid, config.workers);
  serialize(sweep_table(result.rows), config.format, config.output_path);
  write_error_sidecar(sidecar_path(config.output_path), result.errors);
  out << "sweep points=" << result.rows.size() << " errors=" << result.errors.size() << '\n';
  return 0;
}

// Parameter presets of the bundled figure-reproduction datasets
// (L=51, r=0.5, gamma=1, walker released at the center cell).
struct DecayPanel {
  const char* file;
  double v;
};

constexpr DecayPanel kDecayPanels[] = {
    {"fig2a.csv", 0.3},  {"fig2b.csv", 0.5},  {"fig2c.csv", 0.7},  {"fig2d.csv", 0.9},
    {"fig3a.csv", -0.3}, {"fig3b.csv", -0.5}, {"fig3c.csv", -0.7}, {"fig3d.csv", -0.9},
    {"fig4.csv", 0.0},
};

struct ProfilePanel {
  const char* file;
  double v;
};

constexpr ProfilePanel kProfilePanels[] = {
    {"fig5a.csv", -0.3},
    {"fig5b.csv", 0.0},
    {"fig5c.csv", 0.3},
};

int run_figures(const RunConfig& config, std::ostream& out) {
  const std::filesystem::path dir = config.output_path;
  std::filesystem::create_directories(dir);

  LatticeParams params = config.params;
  std::vector<SweepError> errors;

  // Decay-probability panels.
  for (const auto& panel : kDecayPanels) {
    params.v = panel.v;
    const DecayRecord record = decay_distribution(params, config.evolve);
    write_csv(decay_table(record), dir / panel.file);
  }

  // Edge-state population profiles: per-cell weight of each flagged state.
  for (const auto& panel : kProfilePanels) {
    params.v = panel.v;
    const SpectrumResult spectrum =
        classify_edge_states(eigensystem(params), config.edge);
    std::vector<int> flagged;
    for (std::size_t i = 0; i < spectrum.edge_flags.size(); ++i)
      if (spectrum.edge_flags[i]) flagged.push_back(static_cast<int>(i));

    Table table;
    table.columns = {"m", "pop_1", "pop_2"};
    for (int m = 0; m < params.L; ++m) {
      std::vector<double> row{static_cast<double>(m + 1), kNan, kNan};
      for (std::size_t s = 0; s < flagged.size() && s < 2; ++s) {
        const auto& u = spectrum.right_eigenvectors.col(flagged[s]);
        row[s + 1] = std::norm(u[2 * m]) + std::norm(u[2 * m + 1]);
      }
      table.rows.push_back(std::move(row));
    }
    write_csv(table, dir / panel.file);
    if (flagged.size() != 2)
      errors.push_back(SweepError{panel.v, "figures", "edge_census",
                                  std::string(panel.file) + ": expected 2 edge states, found " +
                                      std::to_string(flagged.size())});
  }

  // Spectrum scans: Re E, Im E and |E| versus v.
  const std::vector<double> scan_grid = VGrid{-1.0, 1.0, 0.01}.values();
  const std::vector<SpectrumResult> scans = spectrum_scan(params, scan_grid, config.edge);
  Table re_table, im_table, abs_table;
  re_table.columns = {"v", "re_e"};
  im_table.columns = {"v", "im_e"};
  abs_table.columns = {"v", "abs_e"};
  for (const auto& result : scans)
    for (int i = 0; i < result.eigenvalues.size(); ++i) {
      const Complex e = result.eigenvalues[i];
      re_table.rows.push_back({result.v, e.real()});
      im_table.rows.push_back({result.v, e.imag()});
      abs_table.rows.push_back({result.v, std::abs(e)});
    }
  write_csv(re_table, dir / "fig5d.csv");
  write_csv(im_table, dir / "fig6a.csv");
  write_csv(abs_table, dir / "fig6b.csv");

  // Bloch and non-Bloch invariants versus v.
  const std::vector<WindingScanPoint> windings = winding_scan(params, scan_grid);
  Table winding_table;
  winding_table.columns = {"v", "bloch_w", "nonbloch_w"};
  for (const auto& point : windings) {
    winding_table.rows.push_back(
        {point.v, point.bloch_w.value_or(kNan),
         point.nonbloch_w ? static_cast<double>(*point.nonbloch_w) : kNan});
    if (!point.error.empty())
      errors.push_back(SweepError{point.v, "fig7", "winding_error", point.error});
  }
  write_csv(winding_table, dir / "fig7.csv");

  // Decay-probability imbalance versus v.
  const std::vector<double> imb_grid = VGrid{-1.0, 1.0, 0.02}.values();
  const SweepResult sweep =
      run_sweep(params, config.evolve, config.edge, imb_grid, config.workers);
  Table imb_table;
  imb_table.columns = {"v", "p_imb"};
  for (const auto& row : sweep.rows) imb_table.rows.push_back({row.v, row.p_imb});
  write_csv(imb_table, dir / "fig8.csv");
  for (const auto& error : sweep.errors)
    if (error.stage == "dynamics")
      errors.push_back(SweepError{error.v, "fig8", error.code, error.message});

  write_error_sidecar(dir / "errors.csv", errors);
  out << "figures dir=" << dir.string() << " errors=" << errors.size() << '\n';
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  evolve.validate();
  edge.validate();
  if (has_v_grid) v_grid.validate();
  if (workers < 1) throw InvalidParamsError("workers must be >= 1");
  if (output_path.empty()) throw InvalidParamsError("output path must not be empty");
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidParamsError("config file " + path.string() + ": " + err.what());
  }
  if (!doc.is_object())
    throw InvalidParamsError("config file " + path.string() + ": expected a flat JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "L")
      config.params.L = value.get<int>();
    else if (key == "v")
      config.params.v = value.get<double>();
    else if (key == "r")
      config.params.r = value.get<double>();
    else if (key == "gamma")
      config.params.gamma = value.get<double>();
    else if (key == "origin")
      config.params.origin = value.get<int>();
    else if (key == "stop-norm")
      config.evolve.stop_norm = value.get<double>();
    else if (key == "dt")
      config.evolve.dt = value.get<double>();
    else if (key == "t-max")
      config.evolve.t_max = value.get<double>();
    else if (key == "v-grid") {
      config.v_grid = VGrid::parse(value.get<std::string>());
      config.has_v_grid = true;
    } else if (key == "output")
      config.output_path = value.get<std::string>();
    else if (key == "format") {
      const std::string text = value.get<std::string>();
      if (text == "csv")
        config.format = OutputFormat::Csv;
      else if (text == "json")
        config.format = OutputFormat::Json;
      else
        throw InvalidParamsError("config file: format must be csv or json, got '" + text + "'");
    } else if (key == "workers")
      config.workers = value.get<int>();
    else if (key == "edge-cells")
      config.edge.edge_cells = value.get<int>();
    else if (key == "weight-threshold")
      config.edge.weight_threshold = value.get<double>();
    else if (key == "gap-factor")
      config.edge.gap_factor = value.get<double>();
    else
      throw InvalidParamsError("config file: unknown key '" + key + "'");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Simulate:
        return run_simulate(config, out);
      case Command::Spectrum:
        return run_spectrum(config, out);
      case Command::Winding:
        return run_winding(config, out);
      case Command::Sweep:
        return run_sweep_command(config, out);
      case Command::Figures:
        return run_figures(config, out);
    }
    return 1;
  } catch (const Error& error) {
    err << nlohmann::json{{"error", error.code()}, {"message", error.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& error) {
    err << nlohmann::json{{"error", "internal"}, {"message", error.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace lossywalk
