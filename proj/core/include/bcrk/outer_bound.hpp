#pragma once

#include <cstdint>
#include <string>

#include "bcrk/aux_chain.hpp"
#include "bcrk/report.hpp"

namespace bcrk {

// The first converse system prints two of its sum bounds in a weaker form
// than its derivation establishes; both readings are supported.
enum class OuterVariant { AsPrinted, ProofDerived };

// Necessary conditions (7)-(13) for the given converse chain.  All source
// entropies are divided by the bandwidth expansion R.
BoundReport eval_thm1(const SourceSpec& src, const ChannelSpec& ch,
                      const OuterAuxChain& chain, double R = 1.0,
                      OuterVariant variant = OuterVariant::AsPrinted);

// Weakened conditions (14)-(20) with the composite group Q = (K,U,V).
BoundReport eval_thm2(const SourceSpec& src, const ChannelSpec& ch,
                      const OuterAuxChain& chain, double R = 1.0);

struct OuterScan {
  bool witness_found = false;     // some chain satisfies every entry weakly
  double best_min_slack = 0.0;
  OuterAuxChain best_chain;
  BoundReport best_report;
  std::string verdict;
};

// Searches converse chains maximizing the minimum slack of the selected
// system (theorem 1 or 2).  A chain satisfying all entries weakly certifies
// consistency with the outer bound; failure to find one is only heuristic
// evidence of non-admissibility and is labeled as such.
OuterScan outer_superset_scan(const SourceSpec& src, const ChannelSpec& ch,
                              int theorem, OuterCaps caps, SearchBudget budget,
                              std::uint64_t seed, double R = 1.0,
                              OuterVariant variant = OuterVariant::AsPrinted);

}  // namespace bcrk
