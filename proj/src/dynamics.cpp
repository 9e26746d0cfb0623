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

#include "lossywalk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lossywalk/model.hpp"

namespace lossywalk {

namespace {

constexpr Complex kI{0.0, 1.0};

// Conditioning thresholds of the spectral route. kKappaBasis bounds the
// condition number of the scaled eigenvector matrix; kKappaEffective bounds
// it after multiplying back the GBZ scaling spread, which measures how many
// digits the eigenmode expansion of the initial state cancels away.
constexpr double kKappaBasis = 1e8;
constexpr double kKappaEffective = 1e10;

struct ScaledHamiltonian {
  ComplexMatrix matrix;    // diag(s)^-1 H diag(s)
  double radius = 1.0;     // per-cell scale ratio s_{m+1}/s_m
  double spread = 1.0;     // max(R, 1/R)^(L-1), conditioning of diag(s)
};

// Conjugate H by the GBZ scaling diag(R^(cell-1)) per cell. Entry ratios
// only involve neighbouring cells, so no large powers are formed here.
ScaledHamiltonian build_scaled_hamiltonian(const LatticeParams& params) {
  ScaledHamiltonian out;
  out.matrix = build_real_space_hamiltonian(params);
  if (params.L < 2) return out;

  const double minus = params.v - params.gamma / 4.0;
  const double plus = params.v + params.gamma / 4.0;
  if (std::abs(minus) < 1e-12 || std::abs(plus) < 1e-12) return out;  // degenerate GBZ

  out.radius = std::sqrt(std::abs(minus / plus));
  out.spread = std::pow(std::max(out.radius, 1.0 / out.radius), params.L - 1);

  const int n = 2 * params.L;
  for (int i = 0; i < n; ++i) {
    const int ci = i / 2;
    for (int j = 0; j < n; ++j) {
      const int cj = j / 2;
      if (cj == ci + 1)
        out.matrix(i, j) *= out.radius;
      else if (cj == ci - 1)
        out.matrix(i, j) /= out.radius;
    }
  }
  return out;
}

double spectral_radius_bound(const LatticeParams& params) {
  return std::abs(params.v) + 2.0 * std::abs(params.r) + params.gamma / 2.0;
}

std::vector<double> loss_weights(const LatticeParams& params, const ComplexVector& psi) {
  std::vector<double> f(params.L);
  for (int m = 0; m < params.L; ++m) f[m] = params.gamma * std::norm(psi[2 * m + 1]);
  return f;
}

// One RK4 step of d psi/dt = -i H psi, writing into `next`.
struct Rk4Workspace {
  ComplexVector k1, k2, k3, k4, tmp;

  explicit Rk4Workspace(int n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}

  void step(const LatticeParams& params, const ComplexVector& psi, double dt,
            ComplexVector& next) {
    apply_hamiltonian(params, psi, k1);
    tmp = psi - kI * (dt / 2.0) * k1;
    apply_hamiltonian(params, tmp, k2);
    tmp = psi - kI * (dt / 2.0) * k2;
    apply_hamiltonian(params, tmp, k3);
    tmp = psi - kI * dt * k3;
    apply_hamiltonian(params, tmp, k4);
    next = psi - kI * (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

}  // namespace

void EvolveConfig::validate() const {
  if (!(stop_norm > 0.0) || stop_norm >= 1.0)
    throw InvalidParamsError("stop_norm must lie in (0, 1)");
  if (!(dt > 0.0)) throw InvalidParamsError("dt must be positive");
  if (!(t_max > 0.0)) throw InvalidParamsError("t_max must be positive");
  if (!(dark_threshold > 0.0)) throw InvalidParamsError("dark_threshold must be positive");
}

StateVector initial_state(const LatticeParams& params) {
  params.validate();
  StateVector state;
  state.amplitudes = ComplexVector::Zero(2 * params.L);
  state.amplitudes[site_index(params.origin, Sublattice::A)] = 1.0;
  state.time = 0.0;
  return state;
}

void apply_hamiltonian(const LatticeParams& params, const ComplexVector& in, ComplexVector& out) {
  const int L = params.L;
  const double v = params.v;
  const Complex hop = kI * params.r / 2.0;  // chiral +-i r/2 hops
  const double rung = params.r / 2.0;       // intercell A<->B hops
  const Complex loss = -kI * params.gamma / 2.0;

  out.resize(2 * L);
  for (int m = 0; m < L; ++m) {
    const int iA = 2 * m;
    const int iB = iA + 1;
    Complex a = v * in[iB];
    Complex b = loss * in[iB] + v * in[iA];
    if (m > 0) {
      a += hop * in[iA - 2] + rung * in[iB - 2];
      b += -hop * in[iB - 2] + rung * in[iA - 2];
    }
    if (m + 1 < L) {
      a += -hop * in[iA + 2] + rung * in[iB + 2];
      b += hop * in[iB + 2] + rung * in[iA + 2];
    }
    out[iA] = a;
    out[iB] = b;
  }
}

DecayRecord evolve_spectral(const LatticeParams& params, const EvolveConfig& config) {
  params.validate();
  config.validate();
  const int L = params.L;
  const int n = 2 * L;

  const ScaledHamiltonian scaled = build_scaled_hamiltonian(params);
  if (scaled.spread > kKappaEffective) {
    std::ostringstream msg;
    msg << "skin-effect scaling spread " << scaled.spread
        << " exceeds " << kKappaEffective << "; eigenmode expansion would cancel";
    throw DegenerateSpectrumError(msg.str());
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(scaled.matrix, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw SolverFailureError("complex eigensolver did not converge");
  const ComplexVector energies = solver.eigenvalues();
  const ComplexMatrix basis = solver.eigenvectors();

  for (int i = 0; i < n; ++i) {
    if (std::abs(energies[i].imag()) < config.dark_threshold) {
      std::ostringstream msg;
      msg << "eigenvalue " << energies[i] << " has |Im E| < " << config.dark_threshold
          << "; closed-form decay integral is ill-conditioned";
      throw NearDarkStateError(msg.str());
    }
  }

  Eigen::BDCSVD<ComplexMatrix> svd(basis);
  const double kappa = svd.singularValues()(0) / svd.singularValues()(n - 1);
  if (!(kappa < kKappaBasis))
    throw DegenerateSpectrumError("eigenvector matrix condition number " + std::to_string(kappa));
  if (!(kappa * scaled.spread < kKappaEffective)) {
    std::ostringstream msg;
    msg << "effective eigenvector conditioning " << kappa * scaled.spread << " exceeds "
        << kKappaEffective;
    throw DegenerateSpectrumError(msg.str());
  }

  // Coefficients of the initial state in the scaled frame. The origin-cell
  // scale enters as an explicit power; the products below bring every
  // amplitude back to O(1).
  ComplexVector rhs = ComplexVector::Zero(n);
  rhs[site_index(params.origin, Sublattice::A)] =
      std::pow(scaled.radius, -(params.origin - 1));
  const ComplexVector coeff = basis.partialPivLu().solve(rhs);

  // kernel(n', n) = -i / (E_n - conj(E_n')) = int_0^inf e^{-i(E_n - E_n'*) t} dt
  ComplexMatrix kernel(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) kernel(a, b) = -kI / (energies[b] - std::conj(energies[a]));

  DecayRecord record;
  record.P.resize(L);
  ComplexVector amp(n);
  for (int m = 0; m < L; ++m) {
    const double cell_scale = std::pow(scaled.radius, m);
    amp = cell_scale * basis.row(2 * m + 1).transpose().cwiseProduct(coeff);
    const double pm = params.gamma * (amp.adjoint() * kernel * amp).value().real();
    if (pm < -1e-8)
      throw SolverFailureError("negative decay probability " + std::to_string(pm) +
                               " from the spectral expansion");
    record.P[m] = std::max(pm, 0.0);
  }
  record.residual = 0.0;
  record.t_stop = std::numeric_limits<double>::infinity();
  record.method = EvolveMethod::Spectral;
  return record;
}

DecayRecord evolve_stepping(const LatticeParams& params, const EvolveConfig& config) {
  params.validate();
  config.validate();
  if (config.quadrature != Quadrature::Trapezoid)
    throw InvalidParamsError(
        "evolve_stepping accumulates by trapezoid quadrature; the closed form is the "
        "spectral method");

  const double rho = spectral_radius_bound(params);
  if (config.dt * rho > 0.1) {
    std::ostringstream msg;
    msg << "dt = " << config.dt << " does not resolve the fastest scale (dt * " << rho
        << " > 0.1)";
    throw DtTooLargeError(msg.str());
  }

  const int n = 2 * params.L;
  ComplexVector psi = initial_state(params).amplitudes;
  ComplexVector next(n);
  Rk4Workspace work(n);

  DecayRecord record;
  record.P.assign(params.L, 0.0);
  record.method = EvolveMethod::TimeStepping;

  std::vector<double> f_prev = loss_weights(params, psi);
  double norm2 = psi.squaredNorm();
  double t = 0.0;
  while (norm2 > config.stop_norm && t < config.t_max) {
    work.step(params, psi, config.dt, next);
    psi.swap(next);
    t += config.dt;

    const double norm2_new = psi.squaredNorm();
    if (params.gamma > 0.0 && norm2_new > norm2 + 1e-12) {
      std::ostringstream msg;
      msg << "norm^2 increased by " << norm2_new - norm2 << " at t = " << t;
      throw DtTooLargeError(msg.str());
    }
    norm2 = norm2_new;

    const std::vector<double> f = loss_weights(params, psi);
    for (int m = 0; m < params.L; ++m) {
      record.P[m] += config.dt / 2.0 * (f_prev[m] + f[m]);
    }
    f_prev = f;
  }

  record.residual = norm2;
  record.t_stop = t;
  if (norm2 > config.stop_norm) {
    std::ostringstream msg;
    msg << "t_max = " << config.t_max << " reached with norm^2 = " << norm2 << " > stop_norm";
    throw NotConvergedError(msg.str(), norm2, t);
  }
  return record;
}

DecayRecord decay_distribution(const LatticeParams& params, const EvolveConfig& config) {
  auto conserved = [&](const DecayRecord& record) {
    double sum = record.residual;
    for (double p : record.P) sum += p;
    return std::abs(sum - 1.0) <= 1e-6;
  };

  try {
    DecayRecord record = evolve_spectral(params, config);
    if (conserved(record)) return record;
  } catch (const NearDarkStateError&) {
  } catch (const DegenerateSpectrumError&) {
  }

  DecayRecord record = evolve_stepping(params, config);
  if (!conserved(record))
    throw SolverFailureError("decay probabilities violate sum(P) + residual = 1 +- 1e-6");
  return record;
}

double imbalance(const DecayRecord& record) {
  if (record.P.empty()) throw InvalidParamsError("imbalance of an empty DecayRecord");
  return record.P.front() - record.P.back();
}

StateVector propagate(const LatticeParams& params, const EvolveConfig& config, double t_final,
                      const std::function<void(double, const ComplexVector&)>& observer) {
  params.validate();
  config.validate();
  if (t_final < 0.0) throw InvalidParamsError("t_final must be non-negative");

  const double rho = spectral_radius_bound(params);
  if (config.dt * rho > 0.1)
    throw DtTooLargeError("dt does not resolve the fastest scale of the Hamiltonian");

  StateVector state = initial_state(params);
  ComplexVector next(2 * params.L);
  Rk4Workspace work(2 * params.L);
  if (observer) observer(state.time, state.amplitudes);
  while (state.time + config.dt / 2.0 < t_final) {
    work.step(params, state.amplitudes, config.dt, next);
    state.amplitudes.swap(next);
    state.time += config.dt;
    if (observer) observer(state.time, state.amplitudes);
  }
  return state;
}

}  // namespace lossywalk
