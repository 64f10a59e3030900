// compression.hpp
// The isoenergetic compression map: change the well width while holding the
// state's total reduced energy fixed. The conserved energy fixes the second
// moment of the level index in the new basis, and the entropy-maximizing
// weight vector for that moment is the post-compression state.

#pragma once

#include <string_view>

#include "isowell/maxent.hpp"
#include "isowell/well.hpp"

namespace isowell {

// Widths within this distance of the minimum feasible width resolve to the
// degenerate (pure new-ground-level) solution.
inline constexpr double kWidthSlack = 1e-9;

// Canonical representative of the phase equivalence class: every amplitude
// taken real and non-negative, sqrt(p_n).
inline constexpr std::string_view kPhaseConvention = "all-real-nonnegative";

struct CompressedState {
  WellGeometry well;           // the new width
  ProbabilityWeights weights;  // |b_n|^2 over the new eigenbasis
  double beta;                 // from the Gibbs solution (+inf if degenerate)
  bool degenerate;             // all weight on the new ground level
  bool expanded;               // new width exceeded the original width
  std::string_view phase_convention = kPhaseConvention;
};

// Smallest new width for which the conserved energy still reaches the new
// ground level: width / sqrt(sum |a_n|^2 n^2). Pure |1> gives the original
// width back (the ground state admits no compression).
double min_feasible_width(const StateVector& state);

// Compresses (or expands) the state to `new_width` under the three
// constraints: conserved norm, conserved reduced energy, maximum entropy.
// Widths below the minimum feasible width (beyond kWidthSlack) raise
// InfeasibleError naming the minimum; solver failures propagate.
CompressedState compress(const StateVector& state, double new_width,
                         double constraint_tol = kDefaultConstraintTol);

// Weight of the given level of the compressed state; zero beyond the cutoff.
double probe_weight(const CompressedState& cstate, int level);

}  // namespace isowell
