#include "isowell/compression.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isowell {

double min_feasible_width(const StateVector& state) {
  return state.well().width / std::sqrt(level_second_moment(state));
}

CompressedState compress(const StateVector& state, double new_width,
                         double constraint_tol) {
  if (!std::isfinite(new_width) || new_width <= 0.0) {
    throw std::invalid_argument("new width must be positive and finite");
  }
  const double min_width = min_feasible_width(state);
  if (new_width < min_width - kWidthSlack) {
    throw InfeasibleError(
        "new width " + std::to_string(new_width) +
        " is below the minimum feasible width " + std::to_string(min_width) +
        "; the conserved energy cannot reach the new ground level");
  }

  // At the boundary the conserved energy exactly matches the new ground
  // level, which forces the unique degenerate outcome.
  const bool at_boundary = std::abs(new_width - min_width) <= kWidthSlack;
  const double target =
      at_boundary ? 1.0 : state_energy(state) * new_width * new_width;
  GibbsSolution solution = solve_gibbs(target, constraint_tol);

  return CompressedState{WellGeometry(new_width),
                         std::move(solution.weights),
                         solution.beta,
                         solution.degenerate,
                         new_width > state.well().width};
}

double probe_weight(const CompressedState& cstate, int level) {
  if (level < 1) {
    throw std::invalid_argument("level index must be >= 1");
  }
  return cstate.weights.at(level);
}

}  // namespace isowell
