#pragma once

#include <cstdint>

#include "bcrk/aux_chain.hpp"
#include "bcrk/report.hpp"

namespace bcrk {

// Achievability conditions (2)-(5): the source is admissible if every entry
// holds strictly for some chain.  Source entropies are divided by the
// bandwidth expansion R; R != 1 is an extrapolation and adds a warning.
BoundReport eval_han_costa(const SourceSpec& src, const ChannelSpec& ch,
                           const InnerAuxChain& chain, double R = 1.0);

// Source/channel-separation specialization (21)-(24): requires the (W,U,V)
// factor to be independent of the source pair (I(ST;WUV) below tol::strict,
// else NotDecoupled).  Exhibits the rate-loss term I(S;T|K).
BoundReport eval_separation(const SourceSpec& src, const ChannelSpec& ch,
                            const InnerAuxChain& chain, double R = 1.0);

struct WitnessSearch {
  bool witness_found = false;
  double best_min_slack = 0.0;
  InnerAuxChain best_chain;
  BoundReport best_report;
};

// Maximizes the minimum slack of the achievability report over sampled and
// refined chains.  With decoupled = true the search is restricted to chains
// with (W,U,V) independent of the source and scores eval_separation instead.
// Deterministic given (seed, budget), independent of worker count.
WitnessSearch search_witness(const SourceSpec& src, const ChannelSpec& ch,
                             InnerCaps caps, SearchBudget budget,
                             std::uint64_t seed, double R = 1.0,
                             bool decoupled = false);

}  // namespace bcrk
