#include "isowell/well.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isowell {

namespace {

// Relative threshold below which the two wavenumbers in the overlap integral
// are treated as coincident and the analytic limit is used.
constexpr double kDegenerateWavenumberTol = 1e-12;

void check_level(int level) {
  if (level < 1) {
    throw std::invalid_argument("level index must be >= 1, got " +
                                std::to_string(level));
  }
}

}  // namespace

WellGeometry::WellGeometry(double w) : width(w) {
  if (!std::isfinite(w) || w <= 0.0) {
    throw std::invalid_argument("well width must be positive and finite");
  }
}

StateVector::StateVector(WellGeometry well,
                         std::vector<std::complex<double>> amplitudes)
    : well_(well), amps_(std::move(amplitudes)) {
  if (amps_.empty()) {
    throw std::invalid_argument("state vector needs at least one amplitude");
  }
  double norm_sq = 0.0;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state amplitudes must be finite");
    }
    norm_sq += std::norm(a);
  }
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw std::invalid_argument("state vector is not normalized: |a|^2 = " +
                                std::to_string(norm_sq));
  }
}

StateVector StateVector::from_levels(
    WellGeometry well,
    std::span<const std::pair<int, std::complex<double>>> terms) {
  int max_level = 0;
  for (const auto& [level, amp] : terms) {
    check_level(level);
    max_level = std::max(max_level, level);
  }
  std::vector<std::complex<double>> amps(static_cast<size_t>(max_level));
  for (const auto& [level, amp] : terms) {
    amps[static_cast<size_t>(level - 1)] += amp;
  }
  return StateVector(well, std::move(amps));
}

std::complex<double> StateVector::amplitude(int level) const {
  check_level(level);
  if (level > cutoff()) return {0.0, 0.0};
  return amps_[static_cast<size_t>(level - 1)];
}

StateVector basis_state(WellGeometry well, int level) {
  const std::pair<int, std::complex<double>> term{level, {1.0, 0.0}};
  return StateVector::from_levels(well, {&term, 1});
}

StateVector equal_superposition(WellGeometry well, int level_a, int level_b) {
  if (level_a == level_b) {
    throw std::invalid_argument("equal superposition needs distinct levels");
  }
  const double amp = std::numbers::sqrt2 / 2.0;
  const std::pair<int, std::complex<double>> terms[] = {
      {level_a, {amp, 0.0}},
      {level_b, {amp, 0.0}},
  };
  return StateVector::from_levels(well, terms);
}

double eigen_energy(int level, const WellGeometry& well) {
  check_level(level);
  const double n = static_cast<double>(level);
  return n * n / (well.width * well.width);
}

double level_second_moment(const StateVector& state) {
  double moment = 0.0;
  const auto amps = state.amplitudes();
  for (size_t i = 0; i < amps.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    moment += std::norm(amps[i]) * n * n;
  }
  return moment;
}

double state_energy(const StateVector& state) {
  const double w = state.well().width;
  return level_second_moment(state) / (w * w);
}

Overlap same_well_overlap(const StateVector& a, const StateVector& b) {
  if (!(a.well() == b.well())) {
    throw std::invalid_argument(
        "overlap of states in different wells: use cross_overlap");
  }
  std::complex<double> amp{0.0, 0.0};
  const auto pa = a.amplitudes();
  const auto pb = b.amplitudes();
  const size_t common = std::min(pa.size(), pb.size());
  for (size_t i = 0; i < common; ++i) {
    amp += std::conj(pa[i]) * pb[i];
  }
  return Overlap{amp, std::norm(amp)};
}

double cross_overlap(int level, int target_level, const WellGeometry& well,
                     const WellGeometry& target_well) {
  check_level(level);
  check_level(target_level);
  const double big = well.width;
  const double small = target_well.width;
  if (small > big) {
    throw std::invalid_argument(
        "target well must not be wider than the source well");
  }
  const double k1 = static_cast<double>(target_level) * std::numbers::pi / small;
  const double k2 = static_cast<double>(level) * std::numbers::pi / big;

  // int_0^{L'} sin(k1 x) sin(k2 x) dx via the product-to-sum identity.
  double integral;
  if (std::abs(k1 - k2) < kDegenerateWavenumberTol * (k1 + k2)) {
    const double k = 0.5 * (k1 + k2);
    integral = 0.5 * small - std::sin(2.0 * k * small) / (4.0 * k);
  } else {
    integral = std::sin((k1 - k2) * small) / (2.0 * (k1 - k2)) -
               std::sin((k1 + k2) * small) / (2.0 * (k1 + k2));
  }
  return 2.0 / std::sqrt(big * small) * integral;
}

}  // namespace isowell
