#include "isowell/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isowell {

namespace {

// Round-off slack for overlap arguments produced by normalized states.
constexpr double kOverlapSlack = 1e-12;

double checked_overlap(double overlap_sq, const char* what) {
  if (!std::isfinite(overlap_sq) || overlap_sq < -kOverlapSlack ||
      overlap_sq > 1.0 + kOverlapSlack) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(overlap_sq));
  }
  return std::clamp(overlap_sq, 0.0, 1.0);
}

}  // namespace

Prior::Prior(double xi) : xi_(xi) {
  if (!std::isfinite(xi) || xi <= 0.0 || xi >= 1.0) {
    throw std::invalid_argument("prior must lie strictly inside (0, 1)");
  }
}

double helstrom_cost(const Prior& xi, double overlap_sq) {
  const double s = checked_overlap(overlap_sq, "overlap");
  const double discriminant =
      std::max(0.0, 1.0 - 4.0 * xi.xi() * xi.complement() * s);
  return 0.5 - 0.5 * std::sqrt(discriminant);
}

double cost_delta(const Prior& xi, double overlap_before, double epsilon) {
  return helstrom_cost(xi, overlap_before) - helstrom_cost(xi, epsilon);
}

double projective_probe_cost(const Prior& xi, double epsilon) {
  return xi.complement() * checked_overlap(epsilon, "epsilon");
}

std::pair<StateVector, StateVector> make_general_pair(double alpha,
                                                      int high_level,
                                                      WellGeometry well) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (high_level < 3) {
    throw std::invalid_argument(
        "the high level must be >= 3 to clear the low-energy support");
  }
  const double r = std::numbers::sqrt2 / 2.0;
  StateVector phi = equal_superposition(well, 1, 2);

  const double residual = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  const std::pair<int, std::complex<double>> terms[] = {
      {1, {alpha * r, 0.0}},
      {2, {alpha * r, 0.0}},
      {high_level, {residual, 0.0}},
  };
  StateVector psi = StateVector::from_levels(well, terms);
  return {std::move(phi), std::move(psi)};
}

CostReport discriminate_report(const Prior& xi, const StateVector& phi,
                               const StateVector& psi, double new_width,
                               double constraint_tol) {
  if (!(phi.well() == psi.well())) {
    throw std::invalid_argument("the two hypotheses must share a well");
  }
  const double overlap_before = same_well_overlap(phi, psi).squared;

  CompressedState phi_after = [&] {
    try {
      return compress(phi, new_width, constraint_tol);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(std::string("phi: ") + e.what());
    }
  }();
  CompressedState psi_after = [&] {
    try {
      return compress(psi, new_width, constraint_tol);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(std::string("psi: ") + e.what());
    }
  }();

  const double epsilon = probe_weight(psi_after, 1);

  // Post-compression overlap. When phi collapses onto the new ground level
  // it is the probe weight epsilon itself; otherwise the overlap of the
  // canonical all-real-nonnegative representatives, (sum sqrt(p_n q_n))^2.
  double overlap_after = epsilon;
  if (!phi_after.degenerate) {
    double bhattacharyya = 0.0;
    const auto p = phi_after.weights.values();
    const auto q = psi_after.weights.values();
    const size_t common = std::min(p.size(), q.size());
    for (size_t i = 0; i < common; ++i) {
      bhattacharyya += std::sqrt(p[i] * q[i]);
    }
    overlap_after = bhattacharyya * bhattacharyya;
  }

  CostReport report;
  report.xi = xi.xi();
  report.overlap_before = overlap_before;
  report.overlap_after = overlap_after;
  report.overlap_after_convention_dependent = !phi_after.degenerate;
  report.cost_before = helstrom_cost(xi, overlap_before);
  report.cost_after = helstrom_cost(xi, overlap_after);
  report.cost_delta = report.cost_before - report.cost_after;
  report.probe_cost = xi.xi() * (1.0 - probe_weight(phi_after, 1)) +
                      xi.complement() * epsilon;
  report.epsilon = epsilon;
  report.beta_phi = phi_after.beta;
  report.beta_psi = psi_after.beta;
  report.phi_degenerate = phi_after.degenerate;
  report.psi_degenerate = psi_after.degenerate;
  return report;
}

}  // namespace isowell
