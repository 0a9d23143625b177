#include "relaysec/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relaysec::lp {

namespace {

constexpr double kTol = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gaussian elimination with partial pivoting; solves M x = rhs in place.
std::vector<double> dense_solve(std::vector<std::vector<double>> m,
                                std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i) {
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    }
    if (std::abs(m[piv][col]) < 1e-14) {
      throw std::runtime_error("singular basis in simplex");
    }
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int i = col + 1; i < n; ++i) {
      const double f = m[i][col] / m[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace

Result solve(const Problem& p, int max_iterations) {
  const int m = static_cast<int>(p.rows.size());
  const int n = static_cast<int>(p.cost.size());
  const int total = n + m;  // structurals then slacks

  enum Status : char { kBasic, kAtLower, kAtUpper };
  std::vector<char> status(total);
  std::vector<int> basis(m);
  std::vector<double> lo(total), up(total), cost(total, 0.0);
  for (int j = 0; j < n; ++j) {
    lo[j] = p.lower[j];
    up[j] = p.upper[j];
    cost[j] = p.cost[j];
    status[j] = p.start_at_upper[j] ? kAtUpper : kAtLower;
  }
  for (int i = 0; i < m; ++i) {
    lo[n + i] = 0.0;
    up[n + i] = kInf;
    status[n + i] = kBasic;
    basis[i] = n + i;
  }

  auto column = [&](int j, int row) -> double {
    if (j < n) return p.rows[row][j];
    return j - n == row ? 1.0 : 0.0;
  };
  auto bound_value = [&](int j) { return status[j] == kAtUpper ? up[j] : lo[j]; };

  Result out;
  std::vector<double> xb(m);
  for (int iter = 0; iter < max_iterations; ++iter) {
    // Basic solution for the current bound assignment.
    std::vector<std::vector<double>> bmat(m, std::vector<double>(m));
    std::vector<double> rhs = p.rhs;
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) bmat[i][k] = column(basis[k], i);
      for (int j = 0; j < total; ++j) {
        if (status[j] != kBasic) rhs[i] -= column(j, i) * bound_value(j);
      }
    }
    xb = dense_solve(bmat, rhs);

    // Duals and reduced costs.
    std::vector<std::vector<double>> bt(m, std::vector<double>(m));
    std::vector<double> cb(m);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) bt[i][k] = column(basis[i], k);
      cb[i] = cost[basis[i]];
    }
    std::vector<double> y = dense_solve(bt, cb);

    int entering = -1;
    int direction = 0;  // +1 rising from lower, -1 falling from upper
    for (int j = 0; j < total; ++j) {
      if (status[j] == kBasic) continue;
      double rc = cost[j];
      for (int i = 0; i < m; ++i) rc -= y[i] * column(j, i);
      if (status[j] == kAtLower && rc < -kTol) {
        entering = j;
        direction = +1;
        break;  // Bland: first improving index
      }
      if (status[j] == kAtUpper && rc > kTol) {
        entering = j;
        direction = -1;
        break;
      }
    }
    if (entering < 0) {
      out.optimal = true;
      out.iterations = iter;
      break;
    }

    // Basic response to the entering variable.
    std::vector<double> acol(m);
    for (int i = 0; i < m; ++i) acol[i] = column(entering, i);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) bmat[i][k] = column(basis[k], i);
    }
    std::vector<double> w = dense_solve(bmat, acol);

    double limit = up[entering] - lo[entering];  // own-range bound flip
    int leaving_row = -1;
    int leaving_bound = kAtLower;
    for (int i = 0; i < m; ++i) {
      const double rate = direction * w[i];  // x_B[i] changes by -rate * step
      if (rate > kTol) {
        const double room = xb[i] - lo[basis[i]];
        const double t = std::max(room, 0.0) / rate;
        if (t < limit - kTol ||
            (t < limit + kTol && (leaving_row < 0 || basis[i] < basis[leaving_row]))) {
          limit = std::min(t, limit);
          leaving_row = i;
          leaving_bound = kAtLower;
        }
      } else if (rate < -kTol && up[basis[i]] < kInf) {
        const double room = up[basis[i]] - xb[i];
        const double t = std::max(room, 0.0) / (-rate);
        if (t < limit - kTol ||
            (t < limit + kTol && (leaving_row < 0 || basis[i] < basis[leaving_row]))) {
          limit = std::min(t, limit);
          leaving_row = i;
          leaving_bound = kAtUpper;
        }
      }
    }
    if (!std::isfinite(limit)) {
      throw std::runtime_error("unbounded LP in direction subproblem");
    }

    if (leaving_row < 0) {
      // Entering variable runs to its opposite bound.
      status[entering] = status[entering] == kAtLower ? kAtUpper : kAtLower;
      continue;
    }
    status[basis[leaving_row]] = static_cast<char>(leaving_bound);
    basis[leaving_row] = entering;
    status[entering] = kBasic;
  }

  if (!out.optimal) {
    throw std::runtime_error("simplex iteration limit exceeded");
  }

  // Recover the structural solution.
  out.z.assign(n, 0.0);
  std::vector<double> full(total);
  for (int j = 0; j < total; ++j) {
    if (status[j] != kBasic) full[j] = bound_value(j);
  }
  for (int i = 0; i < m; ++i) full[basis[i]] = xb[i];
  for (int j = 0; j < n; ++j) {
    out.z[j] = std::min(std::max(full[j], lo[j]), up[j]);
    out.objective += p.cost[j] * out.z[j];
  }
  return out;
}

}  // namespace relaysec::lp
