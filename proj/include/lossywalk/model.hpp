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

#include "lossywalk/types.hpp"

// Hamiltonian constructors. All sign and basis conventions of the model
// live in this module:
//
//   * Basis ordering is (1A, 1B, 2A, 2B, ...); see BasisIndex.
//   * The rightward A-sublattice hop carries +i r/2, i.e.
//     H[(m+1)A, mA] = +i r/2, and the B sublattice carries the opposite
//     sign, H[(m+1)B, mB] = -i r/2. This fixes the propagation direction:
//     a walker released in the bulk drifts towards the LEFT edge for v > 0.
//   * Loss enters only through the diagonal B entries -i gamma/2, so
//     H - H^dagger = -i gamma * (projector onto all B sites) exactly.

namespace lossywalk {

/// Dense 2L x 2L open-boundary Hamiltonian (no wrap-around terms).
ComplexMatrix build_real_space_hamiltonian(const LatticeParams& params);

/// Momentum-space 2x2 Hamiltonian in the (A, B) basis:
/// h_x sigma_x + (h_z + i gamma/4) sigma_z - (i gamma/4) I with
/// h_x = v + r cos k, h_z = r sin k.
Matrix2c bloch_hamiltonian(const LatticeParams& params, double k);

/// Loss-compensated Bloch matrix after the static sigma_z -> sigma_y
/// rotation; purely off-diagonal with entries
/// q+(k) = v + gamma/4 + r e^{-ik} (upper right) and
/// q-(k) = v - gamma/4 + r e^{+ik} (lower left).
Matrix2c rotated_bloch_hamiltonian(const LatticeParams& params, double k);

/// Non-Bloch 2x2 Hamiltonian (v + gamma/4 + r/beta) sigma_+ +
/// (v - gamma/4 + r beta) sigma_-. Coincides with
/// rotated_bloch_hamiltonian at beta = e^{ik}. Rejects beta = 0.
Matrix2c nonbloch_hamiltonian(const LatticeParams& params, Complex beta);

}  // namespace lossywalk
