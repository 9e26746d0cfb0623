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

#include "lossywalk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "lossywalk/model.hpp"

namespace lossywalk {

namespace {

// Sort eigenpairs by (Re E, Im E) and normalize columns to unit 2-norm.
void sort_and_normalize(ComplexVector& energies, ComplexMatrix& vectors) {
  const int n = static_cast<int>(energies.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (energies[a].real() != energies[b].real()) return energies[a].real() < energies[b].real();
    return energies[a].imag() < energies[b].imag();
  });

  ComplexVector e_sorted(n);
  ComplexMatrix v_sorted(vectors.rows(), n);
  for (int i = 0; i < n; ++i) {
    e_sorted[i] = energies[order[i]];
    v_sorted.col(i) = vectors.col(order[i]).normalized();
  }
  energies.swap(e_sorted);
  vectors.swap(v_sorted);
}

SpectrumResult decompose(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidParamsError("eigensystem: matrix must be square");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw SolverFailureError("complex eigensolver did not converge");

  SpectrumResult result;
  result.eigenvalues = solver.eigenvalues();
  result.right_eigenvectors = solver.eigenvectors();
  sort_and_normalize(result.eigenvalues, result.right_eigenvectors);
  result.edge_flags.assign(result.eigenvalues.size(), false);
  result.edge_sides.assign(result.eigenvalues.size(), EdgeSide::None);
  return result;
}

}  // namespace

void EdgeCriteria::validate() const {
  if (edge_cells < 1) throw InvalidParamsError("edge_cells must be >= 1");
  if (!(weight_threshold > 0.0) || !(weight_threshold < 1.0))
    throw InvalidParamsError("weight_threshold must lie in (0, 1)");
  if (!(gap_factor > 1.0)) throw InvalidParamsError("gap_factor must exceed 1");
}

int SpectrumResult::edge_state_count() const {
  return static_cast<int>(std::count(edge_flags.begin(), edge_flags.end(), true));
}

SpectrumResult eigensystem(const ComplexMatrix& h) { return decompose(h); }

SpectrumResult eigensystem(const LatticeParams& params) {
  params.validate();
  const ComplexMatrix h = build_real_space_hamiltonian(params);

  // GBZ scale per cell; fall back to the bare matrix when the scaling is
  // degenerate (v close to +-gamma/4) or trivial.
  double radius = 1.0;
  const double minus = params.v - params.gamma / 4.0;
  const double plus = params.v + params.gamma / 4.0;
  if (params.L > 1 && std::abs(minus) > 1e-12 && std::abs(plus) > 1e-12)
    radius = std::sqrt(std::abs(minus / plus));
  if (radius < 1e-3 || radius > 1e3) radius = 1.0;

  SpectrumResult result;
  if (radius == 1.0) {
    result = decompose(h);
  } else {
    ComplexMatrix scaled = h;
    const int n = 2 * params.L;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int dc = j / 2 - i / 2;
        if (dc == 1)
          scaled(i, j) *= radius;
        else if (dc == -1)
          scaled(i, j) /= radius;
      }
    result = decompose(scaled);
    // Undo the similarity on the eigenvectors: u = diag(R^cell) u_scaled.
    for (int i = 0; i < n; ++i)
      result.right_eigenvectors.row(i) *= std::pow(radius, i / 2);
    for (int c = 0; c < n; ++c)
      result.right_eigenvectors.col(c).normalize();
  }

  result.v = params.v;
  result.loss_shift = params.gamma / 4.0;
  return result;
}

SpectrumResult classify_edge_states(const SpectrumResult& result, const EdgeCriteria& criteria) {
  criteria.validate();
  if (result.right_eigenvectors.size() == 0)
    throw InvalidParamsError("classify_edge_states: eigenvectors missing");

  const int n = static_cast<int>(result.eigenvalues.size());
  const int L = n / 2;
  const int edge_cells = std::min(criteria.edge_cells, L);

  // Loss-compensated energies: the chiral-symmetric frame in which edge
  // states sit at zero and the bulk keeps a finite gap.
  ComplexVector shifted(n);
  for (int i = 0; i < n; ++i)
    shifted[i] = result.eigenvalues[i] + Complex(0.0, result.loss_shift);

  SpectrumResult out = result;
  out.edge_flags.assign(n, false);
  out.edge_sides.assign(n, EdgeSide::None);

  // Chiral partner (the state closest to -E in the shifted frame) and gap
  // test per state: the smallest |shifted E| of everything outside the
  // pair must exceed gap_factor times the state's own |shifted E|.
  std::vector<int> partner(n, -1);
  std::vector<bool> separated(n, false);
  for (int i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(shifted[j] + shifted[i]);
      if (d < best) {
        best = d;
        partner[i] = j;
      }
    }
    double floor = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i || j == partner[i]) continue;
      floor = std::min(floor, std::abs(shifted[j]));
    }
    separated[i] = floor > criteria.gap_factor * std::abs(shifted[i]);
  }

  auto window_weight = [&](int i, int j) {
    // <u_i | P_window | u_j> over the left and right edge windows.
    Complex left = 0.0, right = 0.0;
    for (int c = 0; c < edge_cells; ++c) {
      for (int s = 0; s < 2; ++s) {
        left += std::conj(result.right_eigenvectors(2 * c + s, i)) *
                result.right_eigenvectors(2 * c + s, j);
        const int cr = L - 1 - c;
        right += std::conj(result.right_eigenvectors(2 * cr + s, i)) *
                 result.right_eigenvectors(2 * cr + s, j);
      }
    }
    return std::pair<Complex, Complex>(left, right);
  };

  auto side_of = [&](int i) {
    const auto [left, right] = window_weight(i, i);
    const bool on_left = left.real() > criteria.weight_threshold;
    const bool on_right = right.real() > criteria.weight_threshold;
    if (!on_left && !on_right) return EdgeSide::None;
    return on_left && on_right ? EdgeSide::Both : on_left ? EdgeSide::Left : EdgeSide::Right;
  };

  std::vector<bool> processed(n, false);
  for (int i = 0; i < n; ++i) {
    if (processed[i] || !separated[i]) continue;
    const int p = partner[i];
    const bool mutual_pair = p >= 0 && !processed[p] && separated[p] && partner[p] == i;

    if (!mutual_pair) {
      processed[i] = true;
      const EdgeSide side = side_of(i);
      if (side != EdgeSide::None) {
        out.edge_flags[i] = true;
        out.edge_sides[i] = side;
      }
      continue;
    }

    processed[i] = processed[p] = true;
    const EdgeSide side_i = side_of(i);
    const EdgeSide side_p = side_of(p);
    if (side_i != EdgeSide::None && side_p != EdgeSide::None) {
      out.edge_flags[i] = true;
      out.edge_sides[i] = side_i;
      out.edge_flags[p] = true;
      out.edge_sides[p] = side_p;
      continue;
    }

    // Hybridized near-degenerate pair: the individual eigenvectors may be
    // symmetrized combinations with weight split across both edges. Count
    // localized states per window from the eigenvalues of the pair span's
    // 2x2 window overlap matrix, then attribute sides by each state's own
    // weight asymmetry.
    auto span_count = [&](bool left_window) {
      const auto [lii, rii] = window_weight(i, i);
      const auto [lpp, rpp] = window_weight(p, p);
      const auto [lip, rip] = window_weight(i, p);
      const double a = left_window ? lii.real() : rii.real();
      const double b = left_window ? lpp.real() : rpp.real();
      const double c = left_window ? std::abs(lip) : std::abs(rip);
      const double disc = std::sqrt((a - b) * (a - b) / 4.0 + c * c);
      const double high = (a + b) / 2.0 + disc;
      const double low = (a + b) / 2.0 - disc;
      return (high > criteria.weight_threshold ? 1 : 0) +
             (low > criteria.weight_threshold ? 1 : 0);
    };
    int n_left = span_count(true);
    int n_right = span_count(false);
    if (n_left + n_right > 2) n_right = 2 - n_left;
    const int total = n_left + n_right;
    if (total == 0) continue;

    auto left_excess = [&](int s) {
      const auto [left, right] = window_weight(s, s);
      return left.real() - right.real();
    };
    int first = i, second = p;  // `first` takes the Left slot when split
    if (left_excess(p) > left_excess(i)) std::swap(first, second);

    if (total == 2) {
      out.edge_flags[first] = out.edge_flags[second] = true;
      if (n_left == 2) {
        out.edge_sides[first] = out.edge_sides[second] = EdgeSide::Left;
      } else if (n_right == 2) {
        out.edge_sides[first] = out.edge_sides[second] = EdgeSide::Right;
      } else {
        out.edge_sides[first] = EdgeSide::Left;
        out.edge_sides[second] = EdgeSide::Right;
      }
    } else {
      const int lone = n_left == 1 ? first : second;
      out.edge_flags[lone] = true;
      out.edge_sides[lone] = n_left == 1 ? EdgeSide::Left : EdgeSide::Right;
    }
  }
  return out;
}

std::vector<SpectrumResult> spectrum_scan(const LatticeParams& params_template,
                                          const std::vector<double>& v_values,
                                          const EdgeCriteria& criteria) {
  if (v_values.empty()) throw InvalidParamsError("spectrum_scan: empty v grid");
  std::vector<SpectrumResult> results;
  results.reserve(v_values.size());
  for (double v : v_values) {
    LatticeParams params = params_template;
    params.v = v;
    try {
      results.push_back(classify_edge_states(eigensystem(params), criteria));
    } catch (const SolverFailureError& err) {
      throw SolverFailureError(err.what() + std::string(" at v = ") + std::to_string(v), v);
    }
  }
  return results;
}

}  // namespace lossywalk
