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

#include "lossywalk/model.hpp"

#include <cmath>

namespace lossywalk {

namespace {
constexpr Complex kI{0.0, 1.0};
}

void LatticeParams::validate() const {
  if (L < 1) throw InvalidParamsError("L must be >= 1, got " + std::to_string(L));
  if (gamma < 0.0)
    throw InvalidParamsError("gamma must be >= 0, got " + std::to_string(gamma));
  if (origin < 1 || origin > L)
    throw InvalidParamsError("origin must lie in [1, L], got " + std::to_string(origin));
}

ComplexMatrix build_real_space_hamiltonian(const LatticeParams& params) {
  params.validate();
  const int L = params.L;
  const double v = params.v;
  const double r = params.r;

  ComplexMatrix h = ComplexMatrix::Zero(2 * L, 2 * L);
  for (int m = 1; m <= L; ++m) {
    const int mA = site_index(m, Sublattice::A);
    const int mB = site_index(m, Sublattice::B);
    h(mB, mB) = -kI * params.gamma / 2.0;
    h(mA, mB) = v;
    h(mB, mA) = v;
  }
  for (int m = 1; m < L; ++m) {
    const int mA = site_index(m, Sublattice::A);
    const int mB = site_index(m, Sublattice::B);
    const int nA = site_index(m + 1, Sublattice::A);
    const int nB = site_index(m + 1, Sublattice::B);
    h(nA, mA) = kI * r / 2.0;
    h(mA, nA) = -kI * r / 2.0;
    h(nB, mB) = -kI * r / 2.0;
    h(mB, nB) = kI * r / 2.0;
    h(nA, mB) = r / 2.0;
    h(mB, nA) = r / 2.0;
    h(nB, mA) = r / 2.0;
    h(mA, nB) = r / 2.0;
  }
  return h;
}

Matrix2c bloch_hamiltonian(const LatticeParams& params, double k) {
  const double hx = params.v + params.r * std::cos(k);
  const double hz = params.r * std::sin(k);
  const Complex shift = kI * params.gamma / 4.0;
  Matrix2c h;
  h(0, 0) = (hz + shift) - shift;
  h(0, 1) = hx;
  h(1, 0) = hx;
  h(1, 1) = -(hz + shift) - shift;
  return h;
}

Matrix2c rotated_bloch_hamiltonian(const LatticeParams& params, double k) {
  Matrix2c h = Matrix2c::Zero();
  h(0, 1) = params.v + params.gamma / 4.0 + params.r * std::exp(-kI * k);
  h(1, 0) = params.v - params.gamma / 4.0 + params.r * std::exp(kI * k);
  return h;
}

Matrix2c nonbloch_hamiltonian(const LatticeParams& params, Complex beta) {
  if (std::abs(beta) == 0.0)
    throw InvalidParamsError("nonbloch_hamiltonian: beta = 0 is a pole of beta^-1");
  Matrix2c h = Matrix2c::Zero();
  h(0, 1) = params.v + params.gamma / 4.0 + params.r / beta;
  h(1, 0) = params.v - params.gamma / 4.0 + params.r * beta;
  return h;
}

}  // namespace lossywalk
