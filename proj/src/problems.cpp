#include "relaysec/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaysec {

namespace {

constexpr double kBoxLow = 1e-6;
constexpr double kBoxHigh = 1e4;

double rate_ceiling() { return std::log2(1.0 + kBoxHigh); }

struct Metrics {
  double rho_id, sop, soct, tau_ar, tau_rb;
};

Metrics eval_point(ProblemKind k, const ChannelParams& ch,
                   const ProblemConstants& c, const Vec& x) {
  const double al = x[0], be = x[1], rs = x[2];
  Metrics m{};
  if (is_fixed_rate(k)) {
    const double ra = c.rate_fixed;
    m.rho_id = raw::fixed_rho_id(ch, al, be, ra);
    const double p1 = raw::fixed_sop_hop1(ch.mean_ae, ra, rs);
    const double p2 = raw::fixed_sop_hop2(ch, al, be, ra, rs);
    m.sop = 1.0 - (1.0 - p1) * (1.0 - p2);
    m.soct = raw::fixed_rho_r(ch, al, be, ra) * rs;
    m.tau_ar = raw::fixed_tau_ar(ch, al, be, ra, rs);
    m.tau_rb = raw::fixed_tau_rb(ch, al, be, ra, rs);
  } else {
    m.rho_id = raw::adaptive_rho_id(ch, al, be);
    const double p1 = raw::adaptive_sop_hop1(ch, al, be, rs);
    const double p2 = raw::adaptive_sop_hop2(ch, al, be, rs);
    m.sop = 1.0 - (1.0 - p1) * (1.0 - p2);
    m.soct = raw::adaptive_rho_r(ch, al, be) * rs;
    m.tau_ar = raw::adaptive_tau_ar(ch, al, be, rs);
    m.tau_rb = raw::adaptive_tau_rb(ch, al, be, rs);
  }
  return m;
}

}  // namespace

bool is_fixed_rate(ProblemKind k) {
  return k == ProblemKind::PF1 || k == ProblemKind::PF2 || k == ProblemKind::PF3;
}

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::PA1: return "PA1";
    case ProblemKind::PA2: return "PA2";
    case ProblemKind::PA3: return "PA3";
    case ProblemKind::PF1: return "PF1";
    case ProblemKind::PF2: return "PF2";
    case ProblemKind::PF3: return "PF3";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  for (ProblemKind k : {ProblemKind::PA1, ProblemKind::PA2, ProblemKind::PA3,
                        ProblemKind::PF1, ProblemKind::PF2, ProblemKind::PF3}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown problem kind: " + s);
}

void ProblemConstants::validate(ProblemKind k) const {
  auto in01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in01(idle_cap)) throw std::invalid_argument("idle_cap must lie in (0,1)");
  if ((k == ProblemKind::PA1 || k == ProblemKind::PF1) && !in01(sop_cap)) {
    throw std::invalid_argument("sop_cap must lie in (0,1)");
  }
  if ((k == ProblemKind::PA2 || k == ProblemKind::PF2) && !(soc_floor > 0.0)) {
    throw std::invalid_argument("soc_floor must be positive");
  }
  if (is_fixed_rate(k) && !(rate_fixed > 0.0)) {
    throw std::invalid_argument("rate_fixed must be positive");
  }
  if (!(equality_band > 0.0)) {
    throw std::invalid_argument("equality_band must be positive");
  }
}

NlpProblem build_problem(ProblemKind k, const ChannelParams& ch,
                         const ProblemConstants& c, FixedBranch branch) {
  ch.validate();
  c.validate(k);
  if (is_fixed_rate(k) && branch == FixedBranch::None) {
    throw std::invalid_argument("fixed-rate problems need an explicit branch");
  }

  NlpProblem p;
  p.name = to_string(k);
  p.lower = {kBoxLow, kBoxLow, kBoxLow};
  p.upper = {kBoxHigh, kBoxHigh, rate_ceiling()};
  if (is_fixed_rate(k)) {
    const double gate = std::exp2(c.rate_fixed) - 1.0;
    if (branch == FixedBranch::BelowGate) {
      p.upper[0] = std::min(gate, kBoxHigh);
    } else {
      p.lower[0] = std::min(gate, kBoxHigh - kBoxLow);
    }
    p.upper[2] = std::min(p.upper[2], c.rate_fixed - 1e-6);
    p.name += branch == FixedBranch::BelowGate ? "/below" : "/above";
  }

  auto metrics = [k, ch, c](const Vec& x) { return eval_point(k, ch, c, x); };

  // Either selected link must cover the secret rate.
  p.constraints.push_back(
      {"rate_floor_alpha",
       [](const Vec& x) { return x[0] - (std::exp2(x[2]) - 1.0); }});
  p.constraints.push_back(
      {"rate_floor_beta",
       [](const Vec& x) { return x[1] - (std::exp2(x[2]) - 1.0); }});
  p.constraints.push_back(
      {"idle_cap",
       [metrics, cap = c.idle_cap](const Vec& x) { return cap - metrics(x).rho_id; }});

  switch (k) {
    case ProblemKind::PA1:
    case ProblemKind::PF1:
      p.sense = Sense::Maximize;
      p.objective = [metrics](const Vec& x) { return metrics(x).soct; };
      p.constraints.push_back(
          {"sop_cap", [metrics, cap = c.sop_cap](const Vec& x) {
             return cap - metrics(x).sop;
           }});
      break;
    case ProblemKind::PA2:
    case ProblemKind::PF2:
      p.sense = Sense::Minimize;
      p.objective = [metrics](const Vec& x) { return metrics(x).sop; };
      p.constraints.push_back(
          {"soc_floor", [metrics, floor = c.soc_floor](const Vec& x) {
             return metrics(x).soct - floor;
           }});
      break;
    case ProblemKind::PA3:
    case ProblemKind::PF3:
      p.sense = Sense::Maximize;
      p.objective = [metrics](const Vec& x) { return metrics(x).tau_rb; };
      // tau_ar == tau_rb as a two-sided band scaled by the secret rate.
      p.constraints.push_back(
          {"edge_upper", [metrics, band = c.equality_band](const Vec& x) {
             const Metrics m = metrics(x);
             return band * x[2] - (m.tau_ar - m.tau_rb);
           }});
      p.constraints.push_back(
          {"edge_lower", [metrics, band = c.equality_band](const Vec& x) {
             const Metrics m = metrics(x);
             return band * x[2] + (m.tau_ar - m.tau_rb);
           }});
      break;
  }
  return p;
}

std::vector<Vec> feasible_starts(const NlpProblem& p, std::size_t want) {
  static const double grid_ab[] = {0.3, 1.0, 2.5, 6.0, 15.0, 40.0, 300.0, 3000.0};
  static const double grid_rs[] = {0.1, 0.35, 0.8, 1.4, 2.2, 3.2};

  struct Scored {
    double score;
    Vec x;
  };
  std::vector<Scored> found;
  const double sign = p.sense == Sense::Maximize ? 1.0 : -1.0;
  for (double al : grid_ab) {
    if (al < p.lower[0] || al > p.upper[0]) continue;
    for (double be : grid_ab) {
      if (be < p.lower[1] || be > p.upper[1]) continue;
      for (double rs : grid_rs) {
        if (rs < p.lower[2] || rs > p.upper[2]) continue;
        Vec x{al, be, rs};
        bool ok = true;
        for (const auto& cn : p.constraints) {
          if (cn.g(x) < 1e-9) {
            ok = false;
            break;
          }
        }
        if (ok) found.push_back({sign * p.objective(x), x});
      }
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Scored& a, const Scored& b) { return a.score > b.score; });
  std::vector<Vec> out;
  for (const auto& s : found) {
    if (out.size() >= want) break;
    out.push_back(s.x);
  }
  return out;
}

namespace {

struct Scored {
  double score;
  Vec x;
};

// All points on the tau_ar == tau_rb edge for this (alpha, beta) column:
// scan the secret rate for sign changes of the gap and bisect each one.
void edge_roots(const NlpProblem& p, ProblemKind k, const ChannelParams& ch,
                const ProblemConstants& c, double al, double be,
                std::vector<Scored>& out) {
  auto gap = [&](double rs) {
    const Metrics m = eval_point(k, ch, c, {al, be, rs});
    return m.tau_ar - m.tau_rb;
  };
  const double lo = p.lower[2];
  const double hi =
      std::min(p.upper[2], std::log2(1.0 + std::min(al, be)) - 1e-9);
  if (hi <= lo) return;

  constexpr int kScan = 48;
  double prev_rs = lo;
  double prev_gap = gap(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double rs = lo + (hi - lo) * i / kScan;
    const double g = gap(rs);
    if ((prev_gap <= 0.0) != (g <= 0.0)) {
      double a = prev_rs, b = rs, ga = prev_gap;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = gap(mid);
        if ((gm <= 0.0) == (ga <= 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      Vec x{al, be, 0.5 * (a + b)};
      if (std::abs(gap(x[2])) <= 0.5 * c.equality_band * x[2]) {
        bool ok = true;
        for (const auto& cn : p.constraints) {
          if (cn.g(x) < 0.0) {
            ok = false;
            break;
          }
        }
        if (ok) out.push_back({p.objective(x), x});
      }
    }
    prev_rs = rs;
    prev_gap = g;
  }
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (hi <= lo) return g;
  for (int i = 0; i < n; ++i) {
    g.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  }
  return g;
}

}  // namespace

std::vector<Vec> edge_starts(ProblemKind k, const ChannelParams& ch,
                             const ProblemConstants& c, FixedBranch branch,
                             std::size_t want) {
  const NlpProblem p = build_problem(k, ch, c, branch);
  const double alo = std::max(p.lower[0], 0.05);
  const double ahi = std::min(p.upper[0], 120.0);
  const double blo = std::max(p.lower[1], 0.05);
  const double bhi = std::min(p.upper[1], 120.0);

  std::vector<Scored> found;
  for (double al : log_grid(alo, ahi, 40)) {
    for (double be : log_grid(blo, bhi, 40)) {
      edge_roots(p, k, ch, c, al, be, found);
    }
  }
  auto by_score = [](const Scored& a, const Scored& b) {
    return a.score > b.score;
  };
  std::stable_sort(found.begin(), found.end(), by_score);

  // Two local refinement passes around the current leaders; each pass
  // shrinks the neighborhood by the previous grid's step ratio.
  double ratio = std::pow(ahi / alo, 1.0 / 39.0);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<Scored> leaders(found.begin(),
                                found.begin() + std::min<std::size_t>(4, found.size()));
    for (const Scored& s : leaders) {
      const double da = std::pow(ratio, 1.5);
      for (double al : log_grid(std::max(alo, s.x[0] / da),
                                std::min(ahi, s.x[0] * da), 13)) {
        for (double be : log_grid(std::max(blo, s.x[1] / da),
                                  std::min(bhi, s.x[1] * da), 13)) {
          edge_roots(p, k, ch, c, al, be, found);
        }
      }
    }
    std::stable_sort(found.begin(), found.end(), by_score);
    ratio = std::pow(ratio, 3.0 / 13.0);
  }

  std::vector<Vec> out;
  for (const auto& s : found) {
    if (out.size() >= want) break;
    bool dup = false;
    for (const Vec& x : out) {
      if (std::abs(x[0] - s.x[0]) < 1e-6 * x[0] &&
          std::abs(x[1] - s.x[1]) < 1e-6 * x[1]) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(s.x);
  }
  return out;
}

PolicyOptimum optimize_policy(ProblemKind k, const ChannelParams& ch,
                              const ProblemConstants& c,
                              const SolverOptions& opts) {
  const bool edge_kind = k == ProblemKind::PA3 || k == ProblemKind::PF3;
  std::vector<FixedBranch> branches;
  if (is_fixed_rate(k)) {
    branches = {FixedBranch::BelowGate, FixedBranch::AboveGate};
  } else {
    branches = {FixedBranch::None};
  }

  PolicyOptimum best;
  best.kind = k;
  for (FixedBranch branch : branches) {
    const NlpProblem p = build_problem(k, ch, c, branch);
    const std::vector<Vec> starts =
        edge_kind ? edge_starts(k, ch, c, branch) : feasible_starts(p);
    if (starts.empty()) continue;
    SolveResult r = solve_multistart(p, starts, opts);
    if (r.status == SolveStatus::NoFeasibleStart) continue;
    const double sign = p.sense == Sense::Maximize ? 1.0 : -1.0;
    if (!best.feasible || sign * r.objective > sign * best.result.objective) {
      best.feasible = true;
      best.branch = branch;
      best.result = std::move(r);
    }
  }
  return best;
}

}  // namespace relaysec
