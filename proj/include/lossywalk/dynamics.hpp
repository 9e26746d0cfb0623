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

#include <functional>
#include <vector>

#include "lossywalk/types.hpp"

namespace lossywalk {

/// Walker amplitudes (2L complex numbers in BasisIndex layout) at a time.
struct StateVector {
  ComplexVector amplitudes;
  double time = 0.0;

  double norm2() const { return amplitudes.squaredNorm(); }
};

enum class EvolveMethod { Spectral, TimeStepping };

enum class Quadrature { ClosedForm, Trapezoid };

/// Accumulated per-cell decay probabilities of one complete evolution.
/// P[m-1] is the probability that leaked from the B site of cell m; the
/// residual is the walker norm^2 still on the lattice when the run
/// stopped, so sum(P) + residual = 1 up to integrator tolerance.
struct DecayRecord {
  std::vector<double> P;
  double residual = 0.0;
  double t_stop = 0.0;
  EvolveMethod method = EvolveMethod::Spectral;
};

struct EvolveConfig {
  double stop_norm = 1e-8;  ///< stop stepping once norm^2 <= stop_norm
  double dt = 0.01;         ///< fixed step of the 4th-order integrator
  double t_max = 1e5;       ///< hard cap on the integration time
  /// How the decay integral is evaluated: ClosedForm belongs to the
  /// spectral route, Trapezoid to the stepping route.
  Quadrature quadrature = Quadrature::Trapezoid;
  double dark_threshold = 1e-10;  ///< |Im E| below this counts as a dark state

  void validate() const;
};

/// Walker released on sublattice A of the origin cell: psi_m^A = delta_{m,o}.
StateVector initial_state(const LatticeParams& params);

/// out = H * in via the banded stencil (no matrix build). Used by the
/// integrator hot path; agrees entrywise with build_real_space_hamiltonian.
void apply_hamiltonian(const LatticeParams& params, const ComplexVector& in, ComplexVector& out);

/// Closed-form decay distribution from the eigenmode expansion.
///
/// Expands the initial state in right eigenvectors and evaluates
/// P_m = gamma * int_0^inf |psi_m^B(t)|^2 dt exactly, using that every
/// pairwise frequency E_n - conj(E_n') has a negative imaginary part.
/// Internally the Hamiltonian is conjugated by the generalized-Brillouin-zone
/// scaling diag(R^cell) so that the eigenbasis stays well conditioned in the
/// skin-effect regime.
///
/// Throws NearDarkStateError when some |Im E_n| < dark_threshold and
/// DegenerateSpectrumError when the (scaled or effective) eigenvector matrix
/// is too ill-conditioned for the expansion to be trustworthy.
DecayRecord evolve_spectral(const LatticeParams& params, const EvolveConfig& config);

/// Fixed-step RK4 integration of d psi/dt = -i H psi with trapezoid
/// accumulation of gamma |psi_m^B|^2, until norm^2 <= stop_norm or t_max.
DecayRecord evolve_stepping(const LatticeParams& params, const EvolveConfig& config);

/// Dispatcher: spectral when the eigenbasis is safe, stepping otherwise.
/// Guarantees sum(P) + residual = 1 within 1e-6.
DecayRecord decay_distribution(const LatticeParams& params, const EvolveConfig& config);

/// P_imb = P_1 - P_L (leftmost minus rightmost cell).
double imbalance(const DecayRecord& record);

/// Integrate the state to a fixed time, invoking `observer` after every
/// accepted step (and once for the initial state). Useful for trajectory
/// diagnostics; the decay accumulators are not touched.
StateVector propagate(const LatticeParams& params, const EvolveConfig& config, double t_final,
                      const std::function<void(double, const ComplexVector&)>& observer = {});

}  // namespace lossywalk
