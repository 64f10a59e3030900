// maxent.hpp
// Maximum-entropy weight vectors with a fixed second moment of the level
// index: among probability weights {p_n} on levels n >= 1 with
// sum p_n n^2 = target, the Shannon-entropy maximizer has the Gibbs form
// p_n ~ exp(-beta n^2). The Lagrange multiplier beta is found by bracketing
// plus bisection on the strictly monotone moment function.

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace isowell {

// Absolute tolerance on the target moment around the ground-level value 1;
// targets inside it collapse to the degenerate (all weight on n = 1) case.
inline constexpr double kDegeneracyTol = 1e-9;

// Default relative tolerance on the achieved moment.
inline constexpr double kDefaultConstraintTol = 1e-10;

// Default relative bound on the truncated tail (probability and
// second-moment contribution) in adaptive mode.
inline constexpr double kDefaultTailTol = 1e-12;

// Target moment cannot be reached by any weight vector (below the ground
// level, or outside a fixed truncation's range).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root finding or truncation control failed within its iteration budget.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-negative weights over levels n = 1..cutoff summing to 1 within
// kNormTol.
class ProbabilityWeights {
 public:
  explicit ProbabilityWeights(std::vector<double> weights);

  std::span<const double> values() const { return w_; }
  int cutoff() const { return static_cast<int>(w_.size()); }

  // Weight of level n; zero beyond the cutoff.
  double at(int level) const;

 private:
  std::vector<double> w_;
};

// Natural-log Shannon entropy, with 0 log 0 taken as 0.
double shannon_entropy(const ProbabilityWeights& weights);

// Sum p_n n^2.
double mean_nsq(const ProbabilityWeights& weights);

enum class Feasibility { Infeasible, Degenerate, Feasible };

// Classification is determined solely by the target against the minimum
// second moment 1 (all weight on n = 1), with kDegeneracyTol slack.
Feasibility classify_feasibility(double target_mean_nsq);

// Truncation control for solve_gibbs.
//
// adaptive: grow the cutoff until the truncated tail probability and the
//   truncated tail second-moment contribution are both below tail_tol
//   relative to the retained sums; beta > 0 always.
// fixed: solve on exactly `cutoff` levels. On a finite support the
//   multiplier is unconstrained in sign, so beta may be negative (targets
//   above the uniform moment) or zero; targets must lie in (1, cutoff^2).
struct CutoffPolicy {
  static CutoffPolicy adaptive(double tail_tol = kDefaultTailTol);
  static CutoffPolicy fixed(int cutoff);

  bool fixed_mode = false;
  int fixed_cutoff = 0;
  double tail_tol = kDefaultTailTol;
};

struct GibbsSolution {
  // Lagrange multiplier. Degenerate solutions report +infinity (the limit in
  // which all weight collapses onto n = 1).
  double beta;
  // Sum exp(-beta n^2) over retained levels; 1 by convention when degenerate.
  double partition_sum;
  ProbabilityWeights weights;
  double achieved_mean_nsq;
  bool degenerate;
};

// Entropy-maximizing weights for the given target moment. Infeasible targets
// are rejected with InfeasibleError; failure to bracket or converge raises
// SolverError, never a silent approximation. Deterministic.
GibbsSolution solve_gibbs(double target_mean_nsq,
                          double constraint_tol = kDefaultConstraintTol,
                          const CutoffPolicy& policy = CutoffPolicy::adaptive());

}  // namespace isowell
