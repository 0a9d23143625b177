#include "relaysec/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relaysec/lp.hpp"

namespace relaysec {

namespace {

constexpr double kFeasSlack = 1e-10;

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Vec axpy(const Vec& x, double a, const Vec& d) {
  Vec y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] + a * d[j];
  return y;
}

// User constraints followed by the box faces, all in g(x) >= 0 form.
std::vector<Constraint> extended_constraints(const NlpProblem& p) {
  std::vector<Constraint> cons = p.constraints;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    cons.push_back({"box_lo_" + std::to_string(j),
                    [j, lo = p.lower[j]](const Vec& x) { return x[j] - lo; }});
    cons.push_back({"box_hi_" + std::to_string(j),
                    [j, hi = p.upper[j]](const Vec& x) { return hi - x[j]; }});
  }
  return cons;
}

std::function<double(const Vec&)> maximized_objective(const NlpProblem& p) {
  if (p.sense == Sense::Maximize) return p.objective;
  return [f = p.objective](const Vec& x) { return -f(x); };
}

double golden_section_max(const std::function<double(double)>& h, double lo,
                          double hi, double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = h(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                const Vec& lower, const Vec& upper, double rel_step) {
  Vec g(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double h = rel_step * std::max(std::abs(x[j]), 1e-2);
    Vec xp = x, xm = x;
    xp[j] = std::min(x[j] + h, upper[j]);
    xm[j] = std::max(x[j] - h, lower[j]);
    const double span = xp[j] - xm[j];
    if (span <= 0.0) continue;
    g[j] = (f(xp) - f(xm)) / span;
  }
  return g;
}

DirectionResult lp_direction(const Vec& grad_objective,
                             const std::vector<Vec>& active_constraint_grads) {
  const std::size_t n = grad_objective.size();
  std::vector<Vec> rows;
  rows.push_back(grad_objective);
  for (const Vec& g : active_constraint_grads) rows.push_back(g);

  double big = 1.0;
  for (const Vec& row : rows) {
    double l1 = 0.0;
    for (double v : row) l1 += std::abs(v);
    big = std::max(big, l1);
  }
  big += 1.0;

  // Variables (d_1..d_n, delta); each row demands -d.grad - delta <= 0.
  lp::Problem lp;
  lp.cost.assign(n + 1, 0.0);
  lp.cost[n] = 1.0;
  lp.lower.assign(n + 1, -1.0);
  lp.upper.assign(n + 1, 1.0);
  lp.lower[n] = -big;
  lp.upper[n] = big;
  lp.start_at_upper.assign(n + 1, false);
  lp.start_at_upper[n] = true;  // delta starts high so all rows hold
  for (const Vec& row : rows) {
    std::vector<double> r(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) r[j] = -row[j];
    r[n] = -1.0;
    lp.rows.push_back(std::move(r));
    lp.rhs.push_back(0.0);
  }

  lp::Result res = lp::solve(lp);
  DirectionResult out;
  out.d.assign(res.z.begin(), res.z.begin() + n);
  out.delta = std::min(res.z[n], 0.0);  // (d=0, delta=0) is always feasible
  return out;
}

LineSearchResult line_search(const NlpProblem& p, const Vec& x, const Vec& d,
                             double eps, const SolverOptions& opts) {
  const auto cons = extended_constraints(p);
  std::vector<char> inactive(cons.size());
  for (std::size_t i = 0; i < cons.size(); ++i) {
    inactive[i] = cons[i].g(x) > eps;
  }
  auto feasible = [&](double a) {
    const Vec xa = axpy(x, a, d);
    for (std::size_t i = 0; i < cons.size(); ++i) {
      if (inactive[i] && cons[i].g(xa) < 0.0) return false;
    }
    return true;
  };

  double span = 0.0;
  for (std::size_t j = 0; j < p.dim(); ++j) span += p.upper[j] - p.lower[j];
  double dmax = 0.0;
  for (double v : d) dmax = std::max(dmax, std::abs(v));
  const double a_cap = span / std::max(dmax, 1e-12);

  LineSearchResult out;
  if (!feasible(opts.line_tol * 1e-3)) return out;  // blocked step

  // Bracket the first crossing, then bisect onto it from the feasible side.
  double good = opts.line_tol * 1e-3;
  double bad = -1.0;
  for (double a = std::max(opts.line_tol, 1e-6); a < a_cap; a *= 2.0) {
    if (feasible(a)) {
      good = a;
    } else {
      bad = a;
      break;
    }
  }
  if (bad < 0.0) {
    out.a_max = feasible(a_cap) ? a_cap : good;
  } else {
    for (int it = 0; it < 100 && bad - good > 1e-12 * std::max(1.0, bad); ++it) {
      const double mid = 0.5 * (good + bad);
      (feasible(mid) ? good : bad) = mid;
    }
    out.a_max = good;
  }

  const auto fmax = maximized_objective(p);
  auto h = [&](double a) { return fmax(axpy(x, a, d)); };
  const double a_gs = golden_section_max(h, 0.0, out.a_max, opts.line_tol);
  double best_a = a_gs, best_f = h(a_gs);
  for (double cand : {0.0, out.a_max}) {
    const double f = h(cand);
    if (f > best_f) {
      best_f = f;
      best_a = cand;
    }
  }
  out.a_k = best_a;
  return out;
}

SolveResult solve(const NlpProblem& p, Vec x0, const SolverOptions& opts) {
  if (p.dim() == 0 || x0.size() != p.dim()) {
    throw std::invalid_argument("solver dimension mismatch");
  }
  const auto cons = extended_constraints(p);
  const auto fmax = maximized_objective(p);

  SolveResult res;
  res.x = x0;
  for (const auto& c : cons) {
    if (c.g(x0) < -kFeasSlack) {
      res.status = SolveStatus::NoFeasibleStart;
      res.objective = p.objective(x0);
      return res;
    }
  }

  Vec x = x0;
  double fx = fmax(x);
  double eps = opts.eps0;
  res.status = SolveStatus::MaxIterations;

  auto assert_feasible = [&](const Vec& pt) {
    for (const auto& c : cons) {
      if (c.g(pt) < -1e-9) {
        throw std::logic_error("feasible-direction iterate left the feasible set");
      }
    }
  };

  int iter = 0;
  while (iter < opts.max_iterations) {
    ++iter;
    const Vec grad = fd_gradient(fmax, x, p.lower, p.upper);

    std::vector<Vec> active_grads;
    double min_resid = 1e300;
    for (const auto& c : cons) {
      const double gi = c.g(x);
      min_resid = std::min(min_resid, gi);
      if (gi <= eps) {
        active_grads.push_back(fd_gradient(c.g, x, p.lower, p.upper));
      }
    }
    res.history.emplace_back(p.sense == Sense::Maximize ? fx : -fx,
                             std::max(0.0, -min_resid));

    Vec d;
    double delta;
    if (active_grads.empty()) {
      if (norm2(grad) <= opts.tol) {
        res.status = SolveStatus::Converged;
        break;
      }
      d.resize(p.dim());
      for (std::size_t j = 0; j < p.dim(); ++j) {
        d[j] = std::clamp(grad[j], -1.0, 1.0);
      }
      delta = -1.0;
    } else {
      DirectionResult dir = lp_direction(grad, active_grads);
      d = dir.d;
      delta = dir.delta;
      if (delta >= -opts.delta_zero) {
        if (eps < opts.tol) {
          res.status = SolveStatus::Converged;
          break;
        }
        eps *= 0.5;
        continue;
      }
    }

    LineSearchResult ls = line_search(p, x, d, eps, opts);
    double a = ls.a_k;
    Vec x_new = axpy(x, a, d);
    // Active constraints are excluded from a_max; back off if curvature
    // pulled one of them negative over the finite step.
    auto all_feasible = [&](const Vec& pt) {
      for (const auto& c : cons) {
        if (c.g(pt) < 0.0) return false;
      }
      return true;
    };
    int backoff = 0;
    while (a > 0.0 && !all_feasible(x_new) && backoff < 60) {
      a *= 0.5;
      x_new = axpy(x, a, d);
      ++backoff;
    }
    const double f_new = a > 0.0 ? fmax(x_new) : fx;

    if (a <= 0.0 || f_new < fx || !all_feasible(x_new)) {
      // Blocked or non-improving: refine the active-set width.
      if (eps < opts.tol) {
        res.status = SolveStatus::Converged;
        break;
      }
      eps *= 0.5;
      continue;
    }

    double step = 0.0;
    for (std::size_t j = 0; j < p.dim(); ++j) {
      step += (x_new[j] - x[j]) * (x_new[j] - x[j]);
    }
    step = std::sqrt(step);

    x = x_new;
    fx = f_new;
    assert_feasible(x);

    if (step < opts.tol) {
      res.status = SolveStatus::Converged;
      break;
    }
    if (eps > -delta) eps *= 0.5;
  }

  res.x = x;
  res.iterations = iter;
  res.objective = p.sense == Sense::Maximize ? fx : -fx;
  res.residuals.clear();
  for (const auto& c : p.constraints) res.residuals.push_back(c.g(x));
  return res;
}

SolveResult solve_multistart(const NlpProblem& p, const std::vector<Vec>& starts,
                             const SolverOptions& opts) {
  if (starts.empty()) {
    SolveResult none;
    none.status = SolveStatus::NoFeasibleStart;
    return none;
  }
  std::vector<SolveResult> results(starts.size());
  std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(starts.size()); ++i) {
    try {
      results[i] = solve(p, starts[i], opts);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  const double sign = p.sense == Sense::Maximize ? 1.0 : -1.0;
  int best = -1;
  for (int i = 0; i < static_cast<int>(results.size()); ++i) {
    if (results[i].status == SolveStatus::NoFeasibleStart) continue;
    if (best < 0 ||
        sign * results[i].objective > sign * results[best].objective) {
      best = i;
    }
  }
  if (best < 0) {
    SolveResult none;
    none.status = SolveStatus::NoFeasibleStart;
    return none;
  }
  return results[best];
}

}  // namespace relaysec
