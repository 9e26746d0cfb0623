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

#include <optional>
#include <string>
#include <vector>

#include "lossywalk/types.hpp"

namespace lossywalk {

struct WindingResult {
  double v = 0.0;
  double bloch_w = 0.0;    // multiple of 1/2
  int nonbloch_w = 0;
  double gbz_radius = 1.0;
  int n_samples = 0;       // contour discretization actually used
};

/// Unwrapped phase statistics of a closed loop of complex samples.
struct LoopTrace {
  double winding = 0.0;   // accumulated phase / 2 pi (counterclockwise positive)
  double max_step = 0.0;  // largest per-sample phase increment, radians
  double min_abs = 0.0;   // smallest |sample| along the loop
};

/// Winding of a sampled closed curve around the origin. Per-step phase
/// increments are taken in (-pi, pi], so the result is exact whenever no
/// step reaches pi.
LoopTrace loop_winding(const std::vector<Complex>& samples);

/// Radius sqrt(|(v - gamma/4) / (v + gamma/4)|) of the circular generalized
/// Brillouin zone; |beta1| = |beta2| for the two roots of the bulk
/// characteristic equation, whose product is (v - gamma/4)/(v + gamma/4).
double gbz_radius(const LatticeParams& params);

/// Half-sum (w+ + w-)/2 of the integer windings of q+-(k) = v +- gamma/4 +
/// r e^{-+ik} around the origin, each taken with the orientation that makes
/// the Hermitian limit (gamma = 0, |v| < r) wind +1. Half-integer values
/// are genuine. n_samples is a starting resolution; the contour is refined
/// until every phase step is below pi/4.
double bloch_winding(const LatticeParams& params, int n_samples = 1024);

/// Non-Bloch winding number W = (i/2pi) \oint q^{-1} dq of the Q-matrix
/// off-diagonal factor q(beta) along the generalized Brillouin zone,
/// built from biorthogonal eigenpairs of the non-Bloch Hamiltonian with
/// the chiral partner generated by sigma_z.
int nonbloch_winding(const LatticeParams& params, int n_samples = 2048);

/// One grid point of winding_scan; fields are absent where the
/// computation failed (error carries the reason).
struct WindingScanPoint {
  double v = 0.0;
  std::optional<double> bloch_w;
  std::optional<int> nonbloch_w;
  std::optional<double> gbz_radius;
  int n_samples = 0;
  std::string error;  // empty on full success
};

std::vector<WindingScanPoint> winding_scan(const LatticeParams& params_template,
                                           const std::vector<double>& v_values,
                                           int bloch_samples = 1024, int nonbloch_samples = 2048);

}  // namespace lossywalk
