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

#include <vector>

#include "lossywalk/types.hpp"

namespace lossywalk {

enum class EdgeSide { None, Left, Right, Both };

/// Knobs of the edge-state detector. A state is an edge state when its
/// loss-compensated |E + i*loss_shift| is separated below the rest of the
/// spectrum by gap_factor AND its population concentrates on the first or
/// last edge_cells unit cells.
struct EdgeCriteria {
  int edge_cells = 3;
  double weight_threshold = 0.6;
  double gap_factor = 2.0;

  void validate() const;
};

struct SpectrumResult {
  ComplexVector eigenvalues;        // sorted by (Re, Im)
  ComplexMatrix right_eigenvectors; // unit 2-norm columns, same order
  std::vector<bool> edge_flags;
  std::vector<EdgeSide> edge_sides;
  double v = 0.0;          // scan coordinate
  double loss_shift = 0.0; // gamma/4 of the generating params; 0 for bare matrices

  int edge_state_count() const;
};

/// Full eigendecomposition of a general (non-normal) dense complex matrix.
SpectrumResult eigensystem(const ComplexMatrix& h);

/// Eigendecomposition of the open-boundary Hamiltonian of `params`.
/// Diagonalizes the GBZ-scaled similarity transform so eigenpairs stay
/// accurate in the skin-effect regime, then maps the eigenvectors back.
SpectrumResult eigensystem(const LatticeParams& params);

/// Returns a copy of `result` with edge_flags/edge_sides filled in.
SpectrumResult classify_edge_states(const SpectrumResult& result, const EdgeCriteria& criteria);

/// One classified SpectrumResult per v value.
std::vector<SpectrumResult> spectrum_scan(const LatticeParams& params_template,
                                          const std::vector<double>& v_values,
                                          const EdgeCriteria& criteria = {});

}  // namespace lossywalk
