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

#include <string>
#include <vector>

#include "lossywalk/dynamics.hpp"
#include "lossywalk/spectrum.hpp"
#include "lossywalk/topology.hpp"
#include "lossywalk/types.hpp"

namespace lossywalk {

/// Uniform v grid start:stop:step, inclusive of both ends.
struct VGrid {
  double start = -1.0;
  double stop = 1.0;
  double step = 0.01;

  void validate() const;
  std::vector<double> values() const;
  static VGrid parse(const std::string& text);  // "start:stop:step"
};

/// Joined observables of one sweep grid point. Winding fields are NaN when
/// that computation failed (the failure itself lands in SweepError).
struct SweepRow {
  double v = 0.0;
  double p_imb = 0.0;
  double p1 = 0.0;
  double pL = 0.0;
  double residual = 0.0;
  int edge_state_count = 0;
  double bloch_w = 0.0;
  double nonbloch_w = 0.0;
};

struct SweepError {
  double v = 0.0;
  std::string stage;
  std::string code;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;      // one per grid value, in grid order
  std::vector<SweepError> errors;  // per-point failures, grid order
};

/// Evaluate dynamics, edge census and windings on every grid value using
/// `workers` concurrent evaluations. Row content is independent of the
/// worker count; per-point errors are collected, not fatal.
SweepResult run_sweep(const LatticeParams& params_template, const EvolveConfig& evolve,
                      const EdgeCriteria& edge, const std::vector<double>& v_values,
                      int workers);

}  // namespace lossywalk
