#include "isowell/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "isowell/well.hpp"

namespace isowell {

namespace {

constexpr int kBracketBudget = 200;
constexpr int kBisectionBudget = 200;
constexpr int kCutoffGrowthBudget = 48;

// Partial sums of the Gibbs family, shifted so the dominant level carries
// weight exp(0) = 1: u_n = exp(-beta (n^2 - ref_sq)).
struct GibbsSums {
  double zshift;  // sum u_n
  double moment;  // sum n^2 u_n
  int cutoff;
  double ref_sq;

  double mean() const { return moment / zshift; }
};

GibbsSums sum_levels(double beta, int cutoff, double ref_sq) {
  GibbsSums s{0.0, 0.0, cutoff, ref_sq};
  for (int n = 1; n <= cutoff; ++n) {
    const double nsq = static_cast<double>(n) * n;
    const double u = std::exp(-beta * (nsq - ref_sq));
    s.zshift += u;
    s.moment += nsq * u;
  }
  return s;
}

// Infinite-support sums (beta > 0), with the cutoff grown until the
// truncated tail probability and tail second-moment contribution are both
// below tail_tol relative to the retained sums. Tail bounds come from the
// Gaussian integrals
//   sum_{n>N} e^{-b n^2}     <= int_N^inf e^{-b x^2} dx
//   sum_{n>N} n^2 e^{-b n^2} <= int_N^inf x^2 e^{-b x^2} dx   (N > 1/sqrt(b))
GibbsSums adaptive_sums(double beta, double tail_tol) {
  const double sb = std::sqrt(beta);
  int cutoff = std::max(
      16, static_cast<int>(std::ceil(std::sqrt((std::log(1.0 / tail_tol) + 30.0) / beta))) + 8);
  for (int attempt = 0; attempt < kCutoffGrowthBudget; ++attempt) {
    const GibbsSums s = sum_levels(beta, cutoff, 1.0);
    const double n = static_cast<double>(cutoff);
    const double shift = std::exp(beta);  // undoes the ref_sq = 1 offset
    const double gauss_tail = std::erfc(sb * n);
    const double tail_z =
        shift * 0.5 * std::sqrt(std::numbers::pi / beta) * gauss_tail;
    const double tail_m =
        shift * (n * std::exp(-beta * n * n) / (2.0 * beta) +
                 std::sqrt(std::numbers::pi) / (4.0 * beta * sb) * gauss_tail);
    if (tail_z <= tail_tol * s.zshift && tail_m <= tail_tol * s.moment) {
      return s;
    }
    cutoff *= 2;
  }
  throw SolverError("tail truncation did not converge at beta = " +
                    std::to_string(beta));
}

GibbsSolution make_solution(double beta, const GibbsSums& sums) {
  std::vector<double> w(static_cast<size_t>(sums.cutoff));
  for (int n = 1; n <= sums.cutoff; ++n) {
    const double nsq = static_cast<double>(n) * n;
    w[static_cast<size_t>(n - 1)] =
        std::exp(-beta * (nsq - sums.ref_sq)) / sums.zshift;
  }
  const double partition_sum = std::exp(-beta * sums.ref_sq) * sums.zshift;
  return GibbsSolution{beta, partition_sum, ProbabilityWeights(std::move(w)),
                       sums.mean(), false};
}

GibbsSolution degenerate_solution() {
  return GibbsSolution{std::numeric_limits<double>::infinity(), 1.0,
                       ProbabilityWeights({1.0}), 1.0, true};
}

// Bisection on the strictly decreasing mean(beta), given a bracket with
// mean(lo) >= target >= mean(hi). `eval` maps beta to GibbsSums.
template <typename Eval>
GibbsSolution bisect_beta(double lo, double hi, double target,
                          double constraint_tol, const Eval& eval) {
  for (int iter = 0; iter < kBisectionBudget; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const GibbsSums s = eval(mid);
    if (std::abs(s.mean() - target) <= constraint_tol * target) {
      return make_solution(mid, s);
    }
    if (s.mean() > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw SolverError("bisection budget exhausted for target " +
                    std::to_string(target));
}

GibbsSolution solve_adaptive(double target, double constraint_tol,
                             double tail_tol) {
  const auto eval = [tail_tol](double beta) {
    return adaptive_sums(beta, tail_tol);
  };

  // Exact multiplier of the continuum (Gaussian-integral) limit; the true
  // root is nearby, so a couple of doublings bracket it.
  const double beta0 = 1.0 / (2.0 * target);
  double lo = beta0;
  double hi = beta0;
  if (eval(beta0).mean() >= target) {
    for (int i = 0;; ++i) {
      if (i >= kBracketBudget) {
        throw SolverError("failed to bracket the multiplier from above");
      }
      hi *= 2.0;
      if (eval(hi).mean() <= target) break;
    }
  } else {
    for (int i = 0;; ++i) {
      if (i >= kBracketBudget) {
        throw SolverError("failed to bracket the multiplier from below");
      }
      lo *= 0.5;
      if (eval(lo).mean() >= target) break;
    }
  }
  return bisect_beta(lo, hi, target, constraint_tol, eval);
}

GibbsSolution solve_fixed(double target, double constraint_tol, int cutoff) {
  if (cutoff < 1) {
    throw std::invalid_argument("fixed cutoff must be >= 1");
  }
  const double top = static_cast<double>(cutoff) * cutoff;
  if (target >= top) {
    throw InfeasibleError("target moment " + std::to_string(target) +
                          " cannot be reached with " + std::to_string(cutoff) +
                          " levels (max " + std::to_string(top) + ")");
  }
  const auto eval = [cutoff](double beta) {
    const double ref_sq =
        beta >= 0.0 ? 1.0 : static_cast<double>(cutoff) * cutoff;
    return sum_levels(beta, cutoff, ref_sq);
  };

  double lo = -1.0;
  double hi = 1.0;
  for (int i = 0; eval(lo).mean() < target; ++i) {
    if (i >= kBracketBudget) {
      throw SolverError("failed to bracket the multiplier from above");
    }
    lo *= 2.0;
  }
  for (int i = 0; eval(hi).mean() > target; ++i) {
    if (i >= kBracketBudget) {
      throw SolverError("failed to bracket the multiplier from below");
    }
    hi *= 2.0;
  }
  return bisect_beta(lo, hi, target, constraint_tol, eval);
}

}  // namespace

ProbabilityWeights::ProbabilityWeights(std::vector<double> weights)
    : w_(std::move(weights)) {
  if (w_.empty()) {
    throw std::invalid_argument("weight vector needs at least one entry");
  }
  double sum = 0.0;
  for (double p : w_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("weights must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormTol) {
    throw std::invalid_argument("weights do not sum to 1: " +
                                std::to_string(sum));
  }
}

double ProbabilityWeights::at(int level) const {
  if (level < 1) {
    throw std::invalid_argument("level index must be >= 1");
  }
  if (level > cutoff()) return 0.0;
  return w_[static_cast<size_t>(level - 1)];
}

double shannon_entropy(const ProbabilityWeights& weights) {
  double entropy = 0.0;
  for (double p : weights.values()) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return entropy;
}

double mean_nsq(const ProbabilityWeights& weights) {
  double mean = 0.0;
  const auto w = weights.values();
  for (size_t i = 0; i < w.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    mean += w[i] * n * n;
  }
  return mean;
}

Feasibility classify_feasibility(double target_mean_nsq) {
  if (!std::isfinite(target_mean_nsq)) {
    throw std::invalid_argument("target moment must be finite");
  }
  if (std::abs(target_mean_nsq - 1.0) <= kDegeneracyTol) {
    return Feasibility::Degenerate;
  }
  return target_mean_nsq < 1.0 ? Feasibility::Infeasible
                               : Feasibility::Feasible;
}

CutoffPolicy CutoffPolicy::adaptive(double tail_tol) {
  if (!(tail_tol > 0.0) || !std::isfinite(tail_tol)) {
    throw std::invalid_argument("tail tolerance must be positive");
  }
  CutoffPolicy p;
  p.fixed_mode = false;
  p.tail_tol = tail_tol;
  return p;
}

CutoffPolicy CutoffPolicy::fixed(int cutoff) {
  if (cutoff < 1) {
    throw std::invalid_argument("fixed cutoff must be >= 1");
  }
  CutoffPolicy p;
  p.fixed_mode = true;
  p.fixed_cutoff = cutoff;
  return p;
}

GibbsSolution solve_gibbs(double target_mean_nsq, double constraint_tol,
                          const CutoffPolicy& policy) {
  if (!(constraint_tol > 0.0) || !std::isfinite(constraint_tol)) {
    throw std::invalid_argument("constraint tolerance must be positive");
  }
  switch (classify_feasibility(target_mean_nsq)) {
    case Feasibility::Infeasible:
      throw InfeasibleError(
          "target moment " + std::to_string(target_mean_nsq) +
          " lies below the ground-level moment 1; no weight vector reaches it");
    case Feasibility::Degenerate:
      return degenerate_solution();
    case Feasibility::Feasible:
      break;
  }
  if (policy.fixed_mode) {
    return solve_fixed(target_mean_nsq, constraint_tol, policy.fixed_cutoff);
  }
  return solve_adaptive(target_mean_nsq, constraint_tol, policy.tail_tol);
}

}  // namespace isowell
