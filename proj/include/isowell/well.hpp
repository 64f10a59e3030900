// well.hpp
// Eigenbasis algebra for the one-dimensional infinite square well in reduced
// units (hbar^2 pi^2 / 2M = 1, reference length 1): level energies, state
// vectors over the sine eigenbasis, same-basis overlaps, and the closed-form
// overlap integral between eigenstates of wells with different widths.

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace isowell {

// Normalization tolerance for state amplitudes and probability weights.
// Inputs outside this are rejected, not renormalized.
inline constexpr double kNormTol = 1e-9;

struct WellGeometry {
  double width;

  explicit WellGeometry(double w);

  bool operator==(const WellGeometry&) const = default;
};

// Complex amplitudes over the eigenstates of one well, stored densely for
// levels n = 1..cutoff. Must be normalized within kNormTol.
class StateVector {
 public:
  StateVector(WellGeometry well, std::vector<std::complex<double>> amplitudes);

  // Builds a state from sparse (level, amplitude) terms, expanded densely.
  static StateVector from_levels(
      WellGeometry well,
      std::span<const std::pair<int, std::complex<double>>> terms);

  const WellGeometry& well() const { return well_; }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  int cutoff() const { return static_cast<int>(amps_.size()); }

  // Amplitude of level n; zero beyond the cutoff.
  std::complex<double> amplitude(int level) const;

 private:
  WellGeometry well_;
  std::vector<std::complex<double>> amps_;  // index 0 holds level 1
};

// |n> for the given well.
StateVector basis_state(WellGeometry well, int level);

// (|n1> + |n2>)/sqrt(2).
StateVector equal_superposition(WellGeometry well, int level_a, int level_b);

// Reduced energy of level n: n^2 / width^2. Rejects n < 1.
double eigen_energy(int level, const WellGeometry& well);

// Sum |a_n|^2 n^2 (width-independent second moment of the level index).
double level_second_moment(const StateVector& state);

// Sum |a_n|^2 n^2 / width^2.
double state_energy(const StateVector& state);

struct Overlap {
  std::complex<double> amplitude;  // sum a_n^* b_n
  double squared;                  // |amplitude|^2
};

// Inner product of two states expanded in the same well. Width mismatch is
// rejected; use cross_overlap to relate different widths.
Overlap same_well_overlap(const StateVector& a, const StateVector& b);

// Overlap integral between eigenstate `level` of `well` and eigenstate
// `target_level` of the narrower `target_well`:
//
//   int_0^{L'} sqrt(2/L') sin(n' pi x / L') sqrt(2/L) sin(m pi x / L) dx
//
// evaluated in closed form via the product-to-sum identity. The degenerate
// wavenumber case k1 ~= k2 switches to its analytic limit to avoid
// cancellation. Rejects target wells wider than the source well.
double cross_overlap(int level, int target_level, const WellGeometry& well,
                     const WellGeometry& target_well);

}  // namespace isowell
