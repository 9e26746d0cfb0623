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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "lossywalk/model.hpp"
#include "lossywalk/spectrum.hpp"

using namespace lossywalk;

namespace {

LatticeParams make_params(int L, double v, double r = 0.5, double gamma = 1.0) {
  LatticeParams p;
  p.L = L;
  p.v = v;
  p.r = r;
  p.gamma = gamma;
  p.origin = (L + 1) / 2;
  return p;
}

int count_side(const SpectrumResult& result, EdgeSide side) {
  int n = 0;
  for (std::size_t i = 0; i < result.edge_flags.size(); ++i)
    if (result.edge_flags[i] && result.edge_sides[i] == side) ++n;
  return n;
}

}  // namespace

TEST_CASE("dimer eigenvalues") {
  const SpectrumResult result = eigensystem(make_params(1, 0.5));
  REQUIRE(result.eigenvalues.size() == 2);
  // E = -i gamma/4 +- sqrt(v^2 - gamma^2/16), sorted by real part
  const double re = std::sqrt(0.25 - 1.0 / 16.0);  // = 0.43301270189221...
  CHECK(std::abs(result.eigenvalues[0] - Complex(-re, -0.25)) < 1e-12);
  CHECK(std::abs(result.eigenvalues[1] - Complex(re, -0.25)) < 1e-12);
}

TEST_CASE("gamma = 0 spectra are real") {
  const SpectrumResult result = eigensystem(make_params(10, 0.3, 0.5, 0.0));
  for (int i = 0; i < result.eigenvalues.size(); ++i)
    CHECK(std::abs(result.eigenvalues[i].imag()) < 1e-10);
}

TEST_CASE("eigenpairs satisfy the residual bound") {
  for (double v : {0.3, -0.3, 0.0, 0.9}) {
    CAPTURE(v);
    const LatticeParams params = make_params(51, v);
    const ComplexMatrix h = build_real_space_hamiltonian(params);
    const SpectrumResult result = eigensystem(params);
    const double scale = h.norm();
    for (int i = 0; i < result.eigenvalues.size(); ++i) {
      const double residual =
          (h * result.right_eigenvectors.col(i) -
           result.eigenvalues[i] * result.right_eigenvectors.col(i))
              .norm();
      CHECK(residual <= 1e-8 * scale);
      CHECK(std::abs(result.right_eigenvectors.col(i).norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("eigenvalues are sorted and sit in the lower half plane") {
  for (double v : {0.3, -0.3, 0.0, 0.9, -0.9, 0.25}) {
    CAPTURE(v);
    const SpectrumResult result = eigensystem(make_params(51, v));
    for (int i = 0; i < result.eigenvalues.size(); ++i) {
      CHECK(result.eigenvalues[i].imag() <= 1e-10);
      if (i > 0) {
        const Complex prev = result.eigenvalues[i - 1];
        const Complex cur = result.eigenvalues[i];
        CHECK((prev.real() < cur.real() ||
               (prev.real() == cur.real() && prev.imag() <= cur.imag())));
      }
    }
  }
}

TEST_CASE("loss-compensated spectrum is chiral symmetric") {
  // The multiset {E + i gamma/4} must be symmetric under negation. Matched
  // greedily (lexicographic pairing is unstable for conjugate pairs whose
  // real parts agree to rounding).
  for (double v : {0.3, 0.45, -0.2, 0.8}) {
    CAPTURE(v);
    const LatticeParams params = make_params(31, v);
    const SpectrumResult result = eigensystem(params);
    std::vector<Complex> shifted, negated;
    for (int i = 0; i < result.eigenvalues.size(); ++i) {
      const Complex e = result.eigenvalues[i] + Complex(0.0, params.gamma / 4.0);
      shifted.push_back(e);
      negated.push_back(-e);
    }
    std::vector<bool> used(negated.size(), false);
    double worst = 0.0;
    for (const Complex& a : shifted) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t pick = 0;
      for (std::size_t j = 0; j < negated.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(a - negated[j]);
        if (d < best) {
          best = d;
          pick = j;
        }
      }
      used[pick] = true;
      worst = std::max(worst, best);
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("edge-state census at the reference size") {
  const EdgeCriteria criteria;

  const SpectrumResult left = classify_edge_states(eigensystem(make_params(51, 0.3)), criteria);
  CHECK(left.edge_state_count() == 2);
  CHECK(count_side(left, EdgeSide::Left) == 2);

  const SpectrumResult right = classify_edge_states(eigensystem(make_params(51, -0.3)), criteria);
  CHECK(right.edge_state_count() == 2);
  CHECK(count_side(right, EdgeSide::Right) == 2);

  const SpectrumResult split = classify_edge_states(eigensystem(make_params(51, 0.0)), criteria);
  CHECK(split.edge_state_count() == 2);
  CHECK(count_side(split, EdgeSide::Left) == 1);
  CHECK(count_side(split, EdgeSide::Right) == 1);

  CHECK(classify_edge_states(eigensystem(make_params(51, 0.9)), criteria).edge_state_count() == 0);
  CHECK(classify_edge_states(eigensystem(make_params(51, -0.9)), criteria).edge_state_count() == 0);
}

TEST_CASE("edge |E| values form a separated low branch inside the region") {
  const EdgeCriteria criteria;
  for (double v : {0.3, 0.45, -0.4}) {
    CAPTURE(v);
    const SpectrumResult result =
        classify_edge_states(eigensystem(make_params(51, v)), criteria);
    REQUIRE(result.edge_state_count() == 2);
    double edge_max = 0.0;
    double bulk_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < result.eigenvalues.size(); ++i) {
      const double magnitude = std::abs(result.eigenvalues[i]);
      if (result.edge_flags[i])
        edge_max = std::max(edge_max, magnitude);
      else
        bulk_min = std::min(bulk_min, magnitude);
    }
    // The two edge energies sit on the |E| = gamma/4 line, strictly below
    // the bulk; the separation narrows towards the transition.
    CHECK(edge_max == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(bulk_min > edge_max + 0.02);
  }
}

TEST_CASE("edge-state count is 0 or 2 across the scan range") {
  std::vector<double> grid;
  for (double v = -0.9; v <= 0.91; v += 0.1) grid.push_back(v);
  const std::vector<SpectrumResult> scan = spectrum_scan(make_params(51, 0.0), grid);
  for (const auto& result : scan) {
    CAPTURE(result.v);
    const int count = result.edge_state_count();
    CHECK((count == 0 || count == 2));
    const bool topological = std::abs(result.v) < 0.549;
    if (topological) CHECK(count == 2);
    if (std::abs(result.v) > 0.569) CHECK(count == 0);
  }
}

TEST_CASE("gamma = 0 reduces to the Hermitian chain condition |v| < r") {
  const EdgeCriteria criteria;
  CHECK(classify_edge_states(eigensystem(make_params(51, 0.3, 0.5, 0.0)), criteria)
            .edge_state_count() == 2);
  CHECK(classify_edge_states(eigensystem(make_params(51, -0.3, 0.5, 0.0)), criteria)
            .edge_state_count() == 2);
  CHECK(classify_edge_states(eigensystem(make_params(51, 0.7, 0.5, 0.0)), criteria)
            .edge_state_count() == 0);
  CHECK(classify_edge_states(eigensystem(make_params(51, -0.7, 0.5, 0.0)), criteria)
            .edge_state_count() == 0);
}

TEST_CASE("bare-matrix eigensystem handles a generic dense matrix") {
  std::mt19937 rng(3141);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  ComplexMatrix m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = Complex(uniform(rng), uniform(rng));
  const SpectrumResult result = eigensystem(m);
  REQUIRE(result.eigenvalues.size() == 8);
  CHECK(result.loss_shift == 0.0);
  for (int i = 0; i < 8; ++i) {
    const double residual =
        (m * result.right_eigenvectors.col(i) -
         result.eigenvalues[i] * result.right_eigenvectors.col(i))
            .norm();
    CHECK(residual < 1e-10 * m.norm());
  }
  CHECK_THROWS_AS(eigensystem(ComplexMatrix::Zero(3, 4)), InvalidParamsError);
}

TEST_CASE("edge criteria validation") {
  EdgeCriteria criteria;
  criteria.edge_cells = 0;
  CHECK_THROWS_AS(criteria.validate(), InvalidParamsError);
  criteria = EdgeCriteria{};
  criteria.weight_threshold = 1.0;
  CHECK_THROWS_AS(criteria.validate(), InvalidParamsError);
  criteria = EdgeCriteria{};
  criteria.gap_factor = 1.0;
  CHECK_THROWS_AS(criteria.validate(), InvalidParamsError);
}
