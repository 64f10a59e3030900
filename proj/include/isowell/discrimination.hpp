// discrimination.hpp
// Bayes-cost calculus for the binary decision problem between two pure
// states: the Helstrom bound, the cost after an isoenergetic compression of
// both hypotheses, the cost difference, and the suboptimal projective probe
// onto the new ground level.

#pragma once

#include <utility>

#include "isowell/compression.hpp"
#include "isowell/well.hpp"

namespace isowell {

// Prior probability of hypothesis phi; psi carries the complement.
class Prior {
 public:
  explicit Prior(double xi);

  double xi() const { return xi_; }
  double complement() const { return 1.0 - xi_; }

 private:
  double xi_;
};

// Helstrom bound for a 0-1 cost:
//
//   C(xi, s) = 1/2 - (1/2) sqrt(1 - 4 xi (1 - xi) s),   s = |<phi|psi>|^2.
//
// Overlap arguments within 1e-12 outside [0, 1] are clamped (round-off from
// normalized states); anything further out is rejected.
double helstrom_cost(const Prior& xi, double overlap_sq);

// C(xi, overlap_before) - C(xi, epsilon): the cost saved by discriminating
// at overlap epsilon instead of overlap_before.
double cost_delta(const Prior& xi, double overlap_before, double epsilon);

// Error probability of the projective probe onto the new ground level when
// phi compresses exactly onto it: phi is detected with certainty, psi
// triggers a false positive with probability epsilon, so the Bayes cost is
// (1 - xi) epsilon. Simple, but never below the Helstrom bound.
double projective_probe_cost(const Prior& xi, double epsilon);

// The general-overlap pair
//
//   phi = (|1> + |2>)/sqrt(2)
//   psi = alpha (|1> + |2>)/sqrt(2) + sqrt(1 - alpha^2) |high_level>
//
// whose overlap amplitude equals alpha exactly. Requires high_level >= 3 so
// the added component clears the low-energy support.
std::pair<StateVector, StateVector> make_general_pair(
    double alpha, int high_level, WellGeometry well = WellGeometry(1.0));

// Full arithmetic trail of one discrimination experiment.
struct CostReport {
  double xi;
  double overlap_before;  // |<phi|psi>|^2 from the amplitudes
  // Post-compression overlap. Equal to epsilon whenever phi compresses onto
  // the pure new ground level (the only case the probe protocol defines);
  // otherwise the squared sum of sqrt(p_n q_n) under the all-real-nonnegative
  // phase convention, and flagged as convention-dependent.
  double overlap_after;
  bool overlap_after_convention_dependent;
  double cost_before;  // helstrom_cost(xi, overlap_before)
  double cost_after;   // helstrom_cost(xi, overlap_after)
  double cost_delta;   // cost_before - cost_after
  // Error probability of projecting onto the new ground level and guessing
  // phi on a positive outcome: xi (1 - p_phi(1)) + (1 - xi) p_psi(1), which
  // reduces to (1 - xi) epsilon when phi compresses degenerately.
  double probe_cost;
  double epsilon;  // weight of compressed psi on the new ground level
  double beta_phi;
  double beta_psi;
  bool phi_degenerate;
  bool psi_degenerate;
};

// Compresses both hypotheses to the same new width and evaluates all costs.
// The states must share a well; infeasibility is reported per state.
CostReport discriminate_report(const Prior& xi, const StateVector& phi,
                               const StateVector& psi, double new_width,
                               double constraint_tol = kDefaultConstraintTol);

}  // namespace isowell
