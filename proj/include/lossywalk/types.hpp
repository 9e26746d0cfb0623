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

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lossywalk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;

/// Model constants of the lossy bipartite chain.
///
/// Every unit cell holds a lossless A site and a B site that leaks with
/// rate gamma. v is the intracell hopping, r the intercell hopping
/// amplitude, and origin the 1-based unit cell on which the walker starts
/// (on sublattice A). Energies are dimensionless, hbar = 1.
struct LatticeParams {
  int L = 51;          ///< number of unit cells
  double v = 0.5;      ///< intracell hopping
  double r = 0.5;      ///< intercell hopping amplitude
  double gamma = 1.0;  ///< loss rate on each B site
  int origin = 26;     ///< initial unit cell, in [1, L]

  void validate() const;
};

enum class Sublattice { A, B };

/// (cell, sublattice) <-> flat index bijection. Cells are 1-based, the
/// flat layout interleaves sublattices: (1A, 1B, 2A, 2B, ...).
struct BasisIndex {
  int cell = 1;
  Sublattice sublattice = Sublattice::A;

  int flat() const { return 2 * (cell - 1) + (sublattice == Sublattice::B ? 1 : 0); }

  static BasisIndex from_flat(int index) {
    return BasisIndex{index / 2 + 1, (index % 2 == 0) ? Sublattice::A : Sublattice::B};
  }
};

inline int site_index(int cell, Sublattice s) { return BasisIndex{cell, s}.flat(); }

/// Base class of all failures raised by the toolkit. `code()` is a stable
/// machine-readable identifier used by the CLI error records.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InvalidParamsError : public Error {
 public:
  explicit InvalidParamsError(const std::string& message) : Error("invalid_params", message) {}
};

/// An eigenvalue sits (numerically) on the real axis, so the closed-form
/// decay integral does not converge.
class NearDarkStateError : public Error {
 public:
  explicit NearDarkStateError(const std::string& message) : Error("near_dark_state", message) {}
};

/// The eigenbasis is too ill-conditioned for spectral evolution.
class DegenerateSpectrumError : public Error {
 public:
  explicit DegenerateSpectrumError(const std::string& message)
      : Error("degenerate_spectrum", message) {}
};

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& message, double residual, double t_reached)
      : Error("not_converged", message), residual(residual), t_reached(t_reached) {}

  double residual;
  double t_reached;
};

class DtTooLargeError : public Error {
 public:
  explicit DtTooLargeError(const std::string& message) : Error("dt_too_large", message) {}
};

/// A winding integrand vanishes on the sampled contour.
class GapClosedError : public Error {
 public:
  explicit GapClosedError(const std::string& message) : Error("gap_closed", message) {}
};

class BiorthogonalBreakdownError : public Error {
 public:
  explicit BiorthogonalBreakdownError(const std::string& message)
      : Error("biorthogonal_breakdown", message) {}
};

/// v = +-gamma/4: one off-diagonal coefficient of the characteristic
/// polynomial vanishes and the generalized-Brillouin-zone circle degenerates.
class DegenerateGbzError : public Error {
 public:
  explicit DegenerateGbzError(const std::string& message) : Error("degenerate_gbz", message) {}
};

class SolverFailureError : public Error {
 public:
  explicit SolverFailureError(const std::string& message,
                              std::optional<double> offending_v = std::nullopt)
      : Error("solver_failure", message), offending_v(offending_v) {}

  std::optional<double> offending_v;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io_error", message) {}
};

}  // namespace lossywalk
