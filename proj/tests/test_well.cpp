#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "isowell/well.hpp"
#include "oracles.hpp"

using namespace isowell;

namespace {

const double kSqrt2over5 = std::sqrt(0.4);

StateVector random_state(std::mt19937_64& rng, int max_level, int terms) {
  std::uniform_int_distribution<int> pick_level(1, max_level);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::vector<std::pair<int, std::complex<double>>> parts;
  for (int i = 0; i < terms; ++i) {
    parts.emplace_back(pick_level(rng),
                       std::complex<double>(comp(rng), comp(rng)));
  }
  double norm_sq = 0.0;
  std::vector<std::complex<double>> dense(
      static_cast<size_t>(max_level), std::complex<double>{0.0, 0.0});
  for (const auto& [level, amp] : parts) dense[level - 1] += amp;
  for (const auto& a : dense) norm_sq += std::norm(a);
  for (auto& a : dense) a /= std::sqrt(norm_sq);
  while (!dense.empty() && std::norm(dense.back()) == 0.0) dense.pop_back();
  std::uniform_real_distribution<double> width(0.5, 2.0);
  return StateVector(WellGeometry(width(rng)), std::move(dense));
}

}  // namespace

TEST_SUITE_BEGIN("well_basis");

TEST_CASE("well geometry rejects non-positive widths") {
  CHECK_THROWS_AS(WellGeometry(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WellGeometry(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WellGeometry(std::nan("")), std::invalid_argument);
  CHECK(WellGeometry(2.0).width == 2.0);
}

TEST_CASE("eigen energies scale as n^2 / width^2") {
  const WellGeometry unit(1.0);
  CHECK(eigen_energy(1, unit) == 1.0);
  CHECK(eigen_energy(2, unit) == 4.0);
  // After contracting to sqrt(2/5) the ground level carries the full mean
  // energy (1 + 4)/2 of the two-level superposition.
  CHECK(eigen_energy(1, WellGeometry(kSqrt2over5)) ==
        doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(eigen_energy(0, unit), std::invalid_argument);
  CHECK_THROWS_AS(eigen_energy(-3, unit), std::invalid_argument);
}

TEST_CASE("state construction enforces normalization") {
  const WellGeometry unit(1.0);
  CHECK_THROWS_AS(StateVector(unit, {{0.9, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(unit, {}), std::invalid_argument);
  // Norm off by less than the tolerance is accepted.
  const double amp = std::sqrt(0.5 + 2e-10);
  CHECK_NOTHROW(StateVector(unit, {{amp, 0.0}, {amp, 0.0}}));
}

TEST_CASE("state energies") {
  const WellGeometry unit(1.0);
  CHECK(state_energy(equal_superposition(unit, 1, 2)) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK(state_energy(basis_state(unit, 1)) == doctest::Approx(1.0));
  CHECK(state_energy(equal_superposition(unit, 1, 10)) ==
        doctest::Approx(50.5).epsilon(1e-14));
  // Width rescales the energy, not the moment.
  CHECK(state_energy(equal_superposition(WellGeometry(2.0), 1, 2)) ==
        doctest::Approx(2.5 / 4.0).epsilon(1e-14));
}

TEST_CASE("state energy is invariant under global phase and norm noise") {
  const WellGeometry unit(1.0);
  const double e0 = state_energy(equal_superposition(unit, 1, 2));
  const std::complex<double> phase = std::polar(1.0, 1.234);
  const double amp = std::numbers::sqrt2 / 2.0;
  const StateVector rotated(unit, {amp * phase, amp * phase});
  CHECK(state_energy(rotated) == doctest::Approx(e0).epsilon(1e-14));

  const double noisy = std::sqrt(0.5 * (1.0 + 5e-10));
  const StateVector wiggled(unit, {{noisy, 0.0}, {noisy, 0.0}});
  CHECK(state_energy(wiggled) == doctest::Approx(e0).epsilon(1e-9));
}

TEST_CASE("same-well overlaps") {
  const WellGeometry unit(1.0);
  const StateVector phi = equal_superposition(unit, 1, 2);

  SUBCASE("the (|1>+|2>) vs (|2>+|N>) pair has squared overlap 1/4") {
    for (int n : {3, 7, 40}) {
      const StateVector psi = equal_superposition(unit, 2, n);
      const Overlap o = same_well_overlap(phi, psi);
      CHECK(o.amplitude.real() == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(o.amplitude.imag() == 0.0);
      CHECK(o.squared == doctest::Approx(0.25).epsilon(1e-14));
    }
  }
  SUBCASE("identical states overlap to 1") {
    CHECK(same_well_overlap(phi, phi).squared ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("disjoint supports are orthogonal") {
    CHECK(same_well_overlap(basis_state(unit, 1), basis_state(unit, 2))
              .squared == 0.0);
  }
  SUBCASE("width mismatch is rejected") {
    const StateVector other = equal_superposition(WellGeometry(0.9), 1, 2);
    CHECK_THROWS_AS(same_well_overlap(phi, other), std::invalid_argument);
  }
}

TEST_CASE("cross overlap at equal widths is the identity") {
  const WellGeometry well(1.3);
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      const double v = cross_overlap(m, n, well, well);
      CHECK(std::abs(v - (m == n ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("cross overlap rejects bad arguments") {
  const WellGeometry big(1.0);
  const WellGeometry small(0.5);
  CHECK_THROWS_AS(cross_overlap(1, 1, small, big), std::invalid_argument);
  CHECK_THROWS_AS(cross_overlap(0, 1, big, small), std::invalid_argument);
  CHECK_THROWS_AS(cross_overlap(1, 0, big, small), std::invalid_argument);
}

TEST_CASE("cross overlap matches the quadrature oracle") {
  // Fixed case from the contraction example.
  const double direct =
      cross_overlap(1, 1, WellGeometry(1.0), WellGeometry(kSqrt2over5));
  const double quad = oracles::overlap_quadrature(1, 1, 1.0, kSqrt2over5);
  CHECK(std::abs(direct - quad) < 1e-10);

  // 200 random (m, n', width ratio) triples.
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> levels(1, 40);
  std::uniform_real_distribution<double> big_width(0.5, 2.0);
  std::uniform_real_distribution<double> ratio(0.1, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int m = levels(rng);
    const int n = levels(rng);
    const double big = big_width(rng);
    const double small = big * ratio(rng);
    const double closed =
        cross_overlap(m, n, WellGeometry(big), WellGeometry(small));
    const double reference = oracles::overlap_quadrature(m, n, big, small);
    CHECK(std::abs(closed - reference) < 1e-8);
  }
}

TEST_CASE("degenerate wavenumber branch agrees with quadrature") {
  // Coincident wavenumbers: n'/L' = m/L away from the trivial diagonal.
  const double big = 1.0;
  const double small = 0.5;  // k of (m=2, L=1) equals k of (n'=1, L'=1/2)
  const double closed =
      cross_overlap(2, 1, WellGeometry(big), WellGeometry(small));
  const double reference = oracles::overlap_quadrature(2, 1, big, small);
  CHECK(std::abs(closed - reference) < 1e-10);
  // The analytic limit at coincident wavenumbers is sqrt(L'/L).
  CHECK(closed == doctest::Approx(std::sqrt(small / big)).epsilon(1e-12));
}

TEST_CASE("projection onto a narrower basis never gains probability") {
  // The contracted projections of any state satisfy the Bessel bound; the
  // mass outside [0, L'] is lost.
  std::mt19937_64 rng(7151);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector state = random_state(rng, 12, 4);
    std::uniform_real_distribution<double> ratio(0.2, 1.0);
    const WellGeometry target(state.well().width * ratio(rng));
    double mass = 0.0;
    for (int n = 1; n <= 240; ++n) {
      std::complex<double> proj{0.0, 0.0};
      for (int m = 1; m <= state.cutoff(); ++m) {
        proj += state.amplitude(m) *
                cross_overlap(m, n, state.well(), target);
      }
      mass += std::norm(proj);
    }
    CHECK(mass <= 1.0 + 1e-10);
  }
}

TEST_CASE("sparse construction expands and rejects bad levels") {
  const WellGeometry unit(1.0);
  const StateVector s = equal_superposition(unit, 1, 5);
  CHECK(s.cutoff() == 5);
  CHECK(s.amplitude(2) == std::complex<double>{0.0, 0.0});
  CHECK(s.amplitude(9) == std::complex<double>{0.0, 0.0});
  CHECK_THROWS_AS(s.amplitude(0), std::invalid_argument);

  const std::pair<int, std::complex<double>> bad[] = {{0, {1.0, 0.0}}};
  CHECK_THROWS_AS(
      StateVector::from_levels(unit, {bad, 1}), std::invalid_argument);
}

TEST_SUITE_END();
