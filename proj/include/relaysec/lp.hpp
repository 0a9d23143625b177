#pragma once

#include <vector>

namespace relaysec::lp {

/// Dense LP:  minimize c.z  subject to  A z <= b  and  lo <= z <= up.
/// Upper bounds may be +inf.  Solved by a bounded-variable primal simplex
/// with Bland's rule; basis systems are re-factorized every iteration
/// (problems here have at most a couple of dozen rows).
struct Problem {
  std::vector<std::vector<double>> rows;  // m x n
  std::vector<double> rhs;                // m
  std::vector<double> cost;               // n
  std::vector<double> lower, upper;       // n
  // Initial nonbasic bound per structural variable: false = lower bound,
  // true = upper bound.  The implied slack values must come out nonnegative.
  std::vector<bool> start_at_upper;
};

struct Result {
  std::vector<double> z;
  double objective = 0.0;
  bool optimal = false;
  int iterations = 0;
};

Result solve(const Problem& p, int max_iterations = 2000);

}  // namespace relaysec::lp
