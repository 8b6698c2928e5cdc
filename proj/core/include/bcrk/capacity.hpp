#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcrk/aux_chain.hpp"
#include "bcrk/inner_bound.hpp"
#include "bcrk/report.hpp"

namespace bcrk {

// The four source-side entropies the bound systems compare against.
struct EntropyTuple {
  double hk = 0.0;
  double hs = 0.0;
  double ht = 0.0;
  double hst = 0.0;

  // Enforces hst >= max(hs,ht) - 1e-9, hk <= min(hs,ht) + 1e-9, all >= 0.
  static EntropyTuple validated(double hk, double hs, double ht, double hst);
  static EntropyTuple of(const SourceSpec& src);
};

// Exact-region conditions (25)-(29) for channels whose Y output is a
// deterministic function of X, at one auxiliary joint over (W,V,X).
BoundReport eval_thm3(const EntropyTuple& et, const ChannelSpec& ch,
                      const JointPmf& pwvx);

// Same, taking the entropies from a source; requires the source to satisfy
// the Markov property I(S;T|K)=0 and scales entropies by 1/R (an
// extrapolation when R != 1, flagged in the warnings).
BoundReport eval_thm3(const SourceSpec& src, const ChannelSpec& ch,
                      const JointPmf& pwvx, double R = 1.0);

// Exact-region conditions (33)-(35) for more-capable channels, at one
// auxiliary joint over (W~,X).  Only H(T) and H(ST) matter.  If a
// classification result is supplied and reports a violated more-capable
// verdict, a warning is attached (the evaluation still runs).
BoundReport eval_thm4(double ht, double hst, const ChannelSpec& ch,
                      const JointPmf& pwx,
                      const MoreCapableResult* mc = nullptr);

// One point of a swept region boundary: the RHS vector of the theorem's
// entries plus the auxiliary joint that achieved it.
struct FrontierSample {
  std::vector<double> rhs;
  JointPmf aux;
};

struct FrontierCaps {
  int w = 2;
  int v = 2;  // ignored for theorem 4
  static FrontierCaps defaults_for(int theorem, const ChannelSpec& ch);
};

// Sweeps auxiliary joints maximizing weighted sums of the RHS terms (11
// weights per objective pair), then keeps the Pareto-nondominated RHS
// vectors, sorted lexicographically.  theorem is 3 or 4.
std::vector<FrontierSample> region_frontier(int theorem, const ChannelSpec& ch,
                                            FrontierCaps caps,
                                            SearchBudget budget,
                                            std::uint64_t seed);

enum class Verdict { Admissible, NotAdmissibleHeuristic, Boundary };

struct Decision {
  Verdict verdict = Verdict::Boundary;
  std::string method;
  double best_min_slack = 0.0;
  BoundReport best_report;
  std::string note;
  std::vector<std::string> warnings;
  std::optional<InnerAuxChain> witness_chain;  // han_costa / separation
  std::optional<JointPmf> witness_aux;         // thm3 / thm4
};

// Decides admissibility of the source for the channel by the chosen method:
//   "han_costa"  — search for an achievability witness (sufficient only);
//   "separation" — witness search restricted to decoupled chains;
//   "thm3"       — exact region for Y-deterministic channels, Markov sources;
//   "thm4"       — exact region for more-capable channels (exhaustive fine
//                  grid when |X| = 2 with a two-letter auxiliary, randomized
//                  search otherwise).
// "admissible" attaches a witness; "not-admissible" is heuristic (best
// searched min-slack below -tol::strict); |min slack| <= tol::strict is
// reported as boundary/inconclusive.
Decision decide_admissible(const SourceSpec& src, const ChannelSpec& ch,
                           const std::string& method, SearchBudget budget,
                           std::uint64_t seed, double R = 1.0);

}  // namespace bcrk
