#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace relaysec {

using Vec = std::vector<double>;

/// Inequality constraint in "feasible iff g(x) >= 0" form.
struct Constraint {
  std::string name;
  std::function<double(const Vec&)> g;
};

enum class Sense { Maximize, Minimize };

/// Smooth nonlinear program over a box.  Box bounds are enforced as ordinary
/// constraints during the solve, so iterates never leave [lower, upper].
struct NlpProblem {
  std::string name;
  Sense sense = Sense::Maximize;
  std::function<double(const Vec&)> objective;
  std::vector<Constraint> constraints;
  Vec lower, upper;

  std::size_t dim() const { return lower.size(); }
};

/// Result of the direction-finding linear program.
struct DirectionResult {
  Vec d;              // per-coordinate in [-1, 1]
  double delta = 0.0; // < 0 certifies a strictly feasible ascent direction
};

/// Solve  min delta  s.t.  -d.grad_objective <= delta,
/// -d.grad_g_i <= delta for every active constraint, |d_j| <= 1.
/// grad_objective is the gradient of the maximized objective.  (d = 0,
/// delta = 0) is always feasible, so the LP cannot be infeasible; delta = 0
/// means no strictly feasible ascent direction exists.
DirectionResult lp_direction(const Vec& grad_objective,
                             const std::vector<Vec>& active_constraint_grads);

struct SolverOptions {
  double eps0 = 0.1;        // initial active-set width
  double tol = 1e-6;        // outer tolerance (gradient norm / step / eps floor)
  double delta_zero = 1e-9; // |delta| below this counts as "no direction"
  double line_tol = 1e-6;   // golden-section tolerance on the step length
  int max_iterations = 500;
};

enum class SolveStatus { Converged, MaxIterations, NoFeasibleStart };

struct SolveResult {
  Vec x;
  double objective = 0.0;  // in the problem's own sense
  int iterations = 0;
  SolveStatus status = SolveStatus::Converged;
  Vec residuals;  // g_i(x) for the user constraints
  std::vector<std::pair<double, double>> history;  // (objective, min residual)
};

struct LineSearchResult {
  double a_max = 0.0;  // largest step keeping every inactive constraint feasible
  double a_k = 0.0;    // objective-optimal step in [0, a_max]
};

/// Central finite differences with per-coordinate relative step, probing
/// one-sided where the box would be crossed.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                const Vec& lower, const Vec& upper, double rel_step = 1e-6);

/// Safeguarded bracketing for the last feasible step along d (constraints
/// with 0 <= g <= eps are treated as active and skipped), then golden-section
/// maximization of the objective on [0, a_max].
LineSearchResult line_search(const NlpProblem& p, const Vec& x, const Vec& d,
                             double eps, const SolverOptions& opts = {});

/// Feasible-direction iteration: active-set LP for the direction, safeguarded
/// line search, epsilon refinement; every accepted iterate stays feasible and
/// the objective is monotone.  Deterministic for fixed inputs.
SolveResult solve(const NlpProblem& p, Vec x0, const SolverOptions& opts = {});

/// Run solve() from several starts (in parallel) and keep the best result.
SolveResult solve_multistart(const NlpProblem& p, const std::vector<Vec>& starts,
                             const SolverOptions& opts = {});

}  // namespace relaysec
