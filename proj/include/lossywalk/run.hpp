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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lossywalk/serialize.hpp"
#include "lossywalk/spectrum.hpp"
#include "lossywalk/sweep.hpp"
#include "lossywalk/types.hpp"

namespace lossywalk {

enum class Command { Simulate, Spectrum, Winding, Sweep, Figures };

struct RunConfig {
  Command command = Command::Simulate;
  LatticeParams params;
  EvolveConfig evolve;
  EdgeCriteria edge;
  VGrid v_grid;
  bool has_v_grid = false;  // spectrum/winding fall back to the single v when unset
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  int workers = 1;

  void validate() const;
};

/// Overlay flat JSON config-file keys (mirroring the CLI flag names) onto
/// `config`. Later sources win: defaults < config file < explicit flags.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Execute one command: writes the output file(s), prints a one-line
/// summary to `out`, and returns the process exit status. Failures are
/// reported as machine-readable JSON records on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lossywalk
