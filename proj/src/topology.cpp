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

#include "lossywalk/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lossywalk/model.hpp"

namespace lossywalk {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kGapTolerance = 1e-12;
constexpr double kRoundGuard = 0.01;
constexpr int kMaxSamples = 1 << 22;
constexpr double kMaxPhaseStep = std::numbers::pi / 4.0;

double principal(double phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  phase = std::fmod(phase, two_pi);
  if (phase <= -std::numbers::pi) phase += two_pi;
  if (phase > std::numbers::pi) phase -= two_pi;
  return phase;
}

// Round a winding to its nearest target grid (integers, or half-integers
// for the Bloch half-sum) and insist the residue is below the guard.
double round_with_guard(double w, const char* what) {
  const double rounded = std::round(w);
  if (std::abs(w - rounded) >= kRoundGuard) {
    std::ostringstream msg;
    msg << what << " winding " << w << " is not integral (residue "
        << std::abs(w - rounded) << ")";
    throw GapClosedError(msg.str());
  }
  return rounded;
}

// Sample a loop at n points, refining until phase steps are resolved.
// `factory` yields a fresh generator per pass (generators may carry state,
// e.g. band tracking); generators receive theta in [-pi, pi).
template <typename Factory>
LoopTrace traced_loop(Factory&& factory, int n_samples, const char* what) {
  int n = n_samples;
  while (true) {
    auto generator = factory();
    std::vector<Complex> samples(n);
    for (int j = 0; j < n; ++j) {
      const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * j / n;
      samples[j] = generator(theta);
    }
    LoopTrace trace = loop_winding(samples);
    if (trace.min_abs < kGapTolerance) {
      std::ostringstream msg;
      msg << what << " vanishes on the contour (min |q| = " << trace.min_abs << ")";
      throw GapClosedError(msg.str());
    }
    if (trace.max_step < kMaxPhaseStep || n >= kMaxSamples) {
      if (trace.max_step >= kMaxPhaseStep) {
        std::ostringstream msg;
        msg << what << " phase steps stay unresolved at " << n << " samples";
        throw GapClosedError(msg.str());
      }
      return trace;
    }
    n *= 2;
  }
}

struct BiorthogonalPair {
  Complex energy;
  Eigen::Vector2cd right;
  Eigen::RowVector2cd left;  // normalized so that left * right = 1
};

// Biorthogonal eigenpair of a chiral (purely off-diagonal) 2x2 matrix
// [[0, a], [b, 0]]: E = +-sqrt(ab), right vector (a, E), left covector
// (b, E) / (2 E^2). Picks the band continuous with `previous`, or
// Re E > 0 (ties towards Im E < 0) at the first contour sample.
BiorthogonalPair biorthogonal_band(const Matrix2c& h, const std::optional<Complex>& previous) {
  const Complex a = h(0, 1);
  const Complex b = h(1, 0);
  const Complex root = std::sqrt(a * b);

  Complex energy;
  if (previous) {
    energy = std::abs(root - *previous) <= std::abs(-root - *previous) ? root : -root;
  } else if (root.real() != 0.0) {
    energy = root.real() > 0.0 ? root : -root;
  } else {
    energy = root.imag() < 0.0 ? root : -root;
  }

  BiorthogonalPair pair;
  pair.energy = energy;
  pair.right << a, energy;
  pair.left << b, energy;
  const Complex overlap = pair.left * pair.right;  // = 2 E^2 before normalization

  // Exceptional-point guard: overlap of the unit-normalized pair.
  const double unit_overlap =
      std::abs(overlap) / (pair.right.norm() * pair.left.norm());
  if (!(unit_overlap >= kGapTolerance))
    throw BiorthogonalBreakdownError("left/right eigenvector overlap below 1e-12 on the contour");

  pair.left /= overlap;
  return pair;
}

}  // namespace

LoopTrace loop_winding(const std::vector<Complex>& samples) {
  if (samples.size() < 2) throw InvalidParamsError("loop_winding needs at least 2 samples");
  LoopTrace trace;
  trace.min_abs = std::abs(samples[0]);
  double total = 0.0;
  double prev_arg = std::arg(samples[0]);
  for (std::size_t j = 1; j <= samples.size(); ++j) {
    const Complex z = samples[j % samples.size()];
    trace.min_abs = std::min(trace.min_abs, std::abs(z));
    const double arg = std::arg(z);
    const double step = principal(arg - prev_arg);
    trace.max_step = std::max(trace.max_step, std::abs(step));
    total += step;
    prev_arg = arg;
  }
  trace.winding = total / (2.0 * std::numbers::pi);
  return trace;
}

double gbz_radius(const LatticeParams& params) {
  params.validate();
  const double minus = params.v - params.gamma / 4.0;
  const double plus = params.v + params.gamma / 4.0;
  if (std::abs(minus) < 1e-12 || std::abs(plus) < 1e-12)
    throw DegenerateGbzError("v = +-gamma/4: generalized Brillouin zone radius is 0 or infinite");
  return std::sqrt(std::abs(minus / plus));
}

double bloch_winding(const LatticeParams& params, int n_samples) {
  params.validate();
  if (n_samples < 256) throw InvalidParamsError("bloch_winding needs n_samples >= 256");

  // q+ is traversed against k so that both factors circle counterclockwise
  // in their natural variable e^{-+ik}; the Hermitian SSH phase then winds +1.
  const LoopTrace plus = traced_loop(
      [&] {
        return [&](double theta) {
          return Complex(params.v + params.gamma / 4.0) + params.r * std::exp(kI * theta);
        };
      },
      n_samples, "q+");
  const LoopTrace minus = traced_loop(
      [&] {
        return [&](double theta) {
          return Complex(params.v - params.gamma / 4.0) + params.r * std::exp(kI * theta);
        };
      },
      n_samples, "q-");

  const double w_plus = round_with_guard(plus.winding, "q+");
  const double w_minus = round_with_guard(minus.winding, "q-");
  return (w_plus + w_minus) / 2.0;
}

int nonbloch_winding(const LatticeParams& params, int n_samples) {
  params.validate();
  if (n_samples < 512) throw InvalidParamsError("nonbloch_winding needs n_samples >= 512");
  const double radius = gbz_radius(params);

  const LoopTrace trace = traced_loop(
      [&] {
        return [&, band = std::optional<Complex>()](double theta) mutable {
          const Complex beta = radius * std::exp(kI * theta);
          const Matrix2c h = nonbloch_hamiltonian(params, beta);
          const BiorthogonalPair pair = biorthogonal_band(h, band);
          band = pair.energy;
          // Q = sigma_z |uR><uL| sigma_z - |uR><uL| is purely off-diagonal
          // for a chiral 2x2; its upper-right entry is the factor q(beta).
          const Matrix2c sz = (Matrix2c() << 1, 0, 0, -1).finished();
          const Matrix2c outer = pair.right * pair.left;
          const Matrix2c q_matrix = sz * outer * sz - outer;
          return q_matrix(0, 1);
        };
      },
      n_samples, "q(beta)");

  // Contour-integral orientation: W = (i/2pi) \oint q^{-1} dq = -winding(q).
  const double w = round_with_guard(-trace.winding, "non-Bloch");
  return static_cast<int>(w);
}

std::vector<WindingScanPoint> winding_scan(const LatticeParams& params_template,
                                           const std::vector<double>& v_values,
                                           int bloch_samples, int nonbloch_samples) {
  if (v_values.empty()) throw InvalidParamsError("winding_scan: empty v grid");
  std::vector<WindingScanPoint> points;
  points.reserve(v_values.size());
  for (double v : v_values) {
    LatticeParams params = params_template;
    params.v = v;
    WindingScanPoint point;
    point.v = v;
    point.n_samples = nonbloch_samples;
    std::ostringstream errors;
    try {
      point.gbz_radius = gbz_radius(params);
    } catch (const Error& err) {
      errors << "gbz_radius: " << err.what() << "; ";
    }
    try {
      point.bloch_w = bloch_winding(params, bloch_samples);
    } catch (const Error& err) {
      errors << "bloch_winding: " << err.what() << "; ";
    }
    try {
      point.nonbloch_w = nonbloch_winding(params, nonbloch_samples);
    } catch (const Error& err) {
      errors << "nonbloch_winding: " << err.what() << "; ";
    }
    point.error = errors.str();
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace lossywalk
