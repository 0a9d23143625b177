#pragma once

#include <string>
#include <vector>

#include "relaysec/analytic.hpp"
#include "relaysec/channel.hpp"
#include "relaysec/optimizer.hpp"

namespace relaysec {

/// The six policy-design programs over x = (alpha, beta, rate_secret).
/// PA* use the adaptive-rate metrics, PF* the fixed-rate ones.
///  *1: maximize the secrecy outage capacity under SOP and idle ceilings.
///  *2: minimize the end-to-end SOP under SOC floor and idle ceiling.
///  *3: maximize the exact secrecy throughput on the tau_ar == tau_rb edge.
enum class ProblemKind { PA1, PA2, PA3, PF1, PF2, PF3 };

bool is_fixed_rate(ProblemKind k);
const char* to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

struct ProblemConstants {
  double sop_cap = 0.1;     // ceiling on the end-to-end SOP
  double idle_cap = 0.2;    // ceiling on the idle probability
  double soc_floor = 0.4;   // floor on the secrecy outage capacity
  double rate_fixed = 4.0;  // hop-1 codeword rate for the PF problems
  // Relative half-width of the band that stands in for tau_ar == tau_rb in
  // the *3 problems (feasible-direction methods need interior points).
  double equality_band = 1e-6;

  void validate(ProblemKind k) const;
};

/// The fixed-rate metrics switch form at alpha = 2^rate_fixed - 1; each PF
/// problem is solved once per side and the better result kept.
enum class FixedBranch { None, BelowGate, AboveGate };

NlpProblem build_problem(ProblemKind k, const ChannelParams& ch,
                         const ProblemConstants& c,
                         FixedBranch branch = FixedBranch::None);

/// Feasible starting points from a coarse grid scan, best objective first.
std::vector<Vec> feasible_starts(const NlpProblem& p, std::size_t want = 8);

/// Starting points for the *3 problems: scan an (alpha, beta) grid and
/// bisect rate_secret onto the tau_ar == tau_rb edge.
std::vector<Vec> edge_starts(ProblemKind k, const ChannelParams& ch,
                             const ProblemConstants& c, FixedBranch branch,
                             std::size_t want = 8);

struct PolicyOptimum {
  ProblemKind kind = ProblemKind::PA1;
  FixedBranch branch = FixedBranch::None;
  SolveResult result;
  bool feasible = false;
};

/// Build, seed and solve the given program (both branches for PF kinds),
/// multistarting from grid-scan feasible points.
PolicyOptimum optimize_policy(ProblemKind k, const ChannelParams& ch,
                              const ProblemConstants& c,
                              const SolverOptions& opts = {});

}  // namespace relaysec
