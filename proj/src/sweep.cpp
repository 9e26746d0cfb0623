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

#include "lossywalk/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace lossywalk {

void VGrid::validate() const {
  if (!(step > 0.0)) throw InvalidParamsError("v grid step must be positive");
  if (start > stop) throw InvalidParamsError("v grid start must not exceed stop");
}

std::vector<double> VGrid::values() const {
  validate();
  const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double value = start + i * step;
    if (value > stop + step / 2.0) break;
    grid.push_back(value);
  }
  return grid;
}

VGrid VGrid::parse(const std::string& text) {
  VGrid grid;
  std::istringstream in(text);
  char sep1 = 0, sep2 = 0;
  if (!(in >> grid.start >> sep1 >> grid.stop >> sep2 >> grid.step) || sep1 != ':' ||
      sep2 != ':' || !(in >> std::ws).eof())
    throw InvalidParamsError("v grid must be start:stop:step, got '" + text + "'");
  grid.validate();
  return grid;
}

namespace {

struct PointOutcome {
  SweepRow row;
  std::vector<SweepError> errors;
};

PointOutcome evaluate_point(const LatticeParams& params_template, const EvolveConfig& evolve,
                            const EdgeCriteria& edge, double v) {
  LatticeParams params = params_template;
  params.v = v;

  PointOutcome outcome;
  SweepRow& row = outcome.row;
  row.v = v;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.bloch_w = nan;
  row.nonbloch_w = nan;

  auto record_error = [&](const char* stage, const Error& err) {
    outcome.errors.push_back(SweepError{v, stage, err.code(), err.what()});
  };

  try {
    const DecayRecord record = decay_distribution(params, evolve);
    row.p_imb = imbalance(record);
    row.p1 = record.P.front();
    row.pL = record.P.back();
    row.residual = record.residual;
  } catch (const Error& err) {
    record_error("dynamics", err);
    row.p_imb = row.p1 = row.pL = row.residual = nan;
  }

  try {
    const SpectrumResult spectrum = classify_edge_states(eigensystem(params), edge);
    row.edge_state_count = spectrum.edge_state_count();
  } catch (const Error& err) {
    record_error("spectrum", err);
    row.edge_state_count = -1;
  }

  try {
    row.bloch_w = bloch_winding(params);
  } catch (const Error& err) {
    record_error("bloch_winding", err);
  }
  try {
    row.nonbloch_w = nonbloch_winding(params);
  } catch (const Error& err) {
    record_error("nonbloch_winding", err);
  }
  return outcome;
}

}  // namespace

SweepResult run_sweep(const LatticeParams& params_template, const EvolveConfig& evolve,
                      const EdgeCriteria& edge, const std::vector<double>& v_values,
                      int workers) {
  if (v_values.empty()) throw InvalidParamsError("run_sweep: empty v grid");
  if (workers < 1) throw InvalidParamsError("run_sweep: workers must be >= 1");

  std::vector<PointOutcome> outcomes(v_values.size());

  if (workers == 1 || v_values.size() == 1) {
    for (std::size_t i = 0; i < v_values.size(); ++i)
      outcomes[i] = evaluate_point(params_template, evolve, edge, v_values[i]);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> panic{false};
    std::exception_ptr first_failure;
    std::mutex failure_lock;

    auto worker = [&] {
      while (!panic.load(std::memory_order_relaxed)) {
        const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= v_values.size()) return;
        try {
          outcomes[i] = evaluate_point(params_template, evolve, edge, v_values[i]);
        } catch (...) {
          std::lock_guard<std::mutex> guard(failure_lock);
          if (!first_failure) first_failure = std::current_exception();
          panic.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };

    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(workers, v_values.size());
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
    if (first_failure) std::rethrow_exception(first_failure);
  }

  SweepResult result;
  result.rows.reserve(outcomes.size());
  for (auto& outcome : outcomes) {
    result.rows.push_back(outcome.row);
    for (auto& error : outcome.errors) result.errors.push_back(std::move(error));
  }
  return result;
}

}  // namespace lossywalk
