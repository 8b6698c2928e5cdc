#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bcrk/channel.hpp"
#include "bcrk/common_part.hpp"
#include "bcrk/prob.hpp"
#include "bcrk/rng.hpp"

namespace bcrk {

// Cardinality caps for the achievability auxiliaries (W, U, V).  The theory
// provides no bounds; these defaults are a pragmatic, configurable guess.
struct InnerCaps {
  int w = 2;
  int u = 2;
  int v = 2;
  static InnerCaps defaults_for(const ChannelSpec& ch) {
    return {ch.x_alpha.size + 2, ch.x_alpha.size + 1, ch.x_alpha.size + 1};
  }
};

struct OuterCaps {
  int u = 2;
  int v = 2;
  static OuterCaps defaults_for(const ChannelSpec& ch) {
    return {ch.x_alpha.size + 1, ch.x_alpha.size + 1};
  }
};

// Auxiliary chain for the achievability system: the source pair feeds
// (W,U,V), which selects the channel input, so the composed joint realizes
// ST - WUV - X - YZ.
struct InnerAuxChain {
  ConditionalPmf wuv_given_st;  // given (S,T), output (W,U,V)
  ConditionalPmf x_given_wuv;   // given (W,U,V), output (X)
};

// Auxiliary chain for the converse systems: (U,V) is drawn from the source
// pair and X from the source pair (deterministically or stochastically), so
// the composed joint realizes KSTUV - X - YZ.
struct OuterAuxChain {
  ConditionalPmf uv_given_st;  // given (S,T), output (U,V)
  int x_size = 0;              // |X| the input rule maps into
  // Exactly one of the two input rules is active.
  std::optional<std::vector<int>> x_map;          // (s,t) -> x, s-major
  std::optional<ConditionalPmf> x_given_stuv;     // given (S,T,U,V), output (X)
};

// Full joint over (K,S,T,W,U,V,X,Y,Z).
JointPmf compose_inner(const SourceSpec& src, const ChannelSpec& ch,
                       const InnerAuxChain& chain);

// Full joint over (K,S,T,U,V,X,Y,Z).
JointPmf compose_outer(const SourceSpec& src, const ChannelSpec& ch,
                       const OuterAuxChain& chain);

// Random chains: factor tables drawn flat-Dirichlet per conditional slice.
InnerAuxChain sample_inner_chain(const SourceSpec& src, const ChannelSpec& ch,
                                 InnerCaps caps, Rng& rng);
OuterAuxChain sample_outer_chain(const SourceSpec& src, const ChannelSpec& ch,
                                 OuterCaps caps, Rng& rng,
                                 bool deterministic_x);

// A chain whose (W,U,V) factor does not depend on (s,t): one shared slice is
// replicated, so the auxiliaries decouple from the source exactly.
InnerAuxChain sample_decoupled_chain(const SourceSpec& src,
                                     const ChannelSpec& ch, InnerCaps caps,
                                     Rng& rng);

// True iff every (s,t) slice of the (W,U,V) factor is identical.
bool is_decoupled(const InnerAuxChain& chain);

// Hill climbing: per step, pick one conditional slice (or map entry), perturb
// with Gaussian noise sigma = 0.05, project back to the simplex, keep the
// move iff the objective strictly improves.  Monotone by construction.
// With keep_decoupled, the (W,U,V) factor is perturbed as one shared slice.
InnerAuxChain local_refine(const std::function<double(const InnerAuxChain&)>& objective,
                           InnerAuxChain chain, int steps, Rng& rng,
                           bool keep_decoupled = false);
OuterAuxChain local_refine(const std::function<double(const OuterAuxChain&)>& objective,
                           OuterAuxChain chain, int steps, Rng& rng);
JointPmf local_refine(const std::function<double(const JointPmf&)>& objective,
                      JointPmf joint, int steps, Rng& rng);

// Euclidean projection of an arbitrary vector onto the probability simplex.
void project_to_simplex(double* v, std::size_t n);

// The achievability chain induced by a joint pmf over (W~, X): W = (T, W~)
// with (W~,U,V) independent of (S,T), U = X drawn from X|W~, V constant.
// `pwx` must have two axes, the second matching |X|.
InnerAuxChain thm4_inner_chain(const SourceSpec& src, const ChannelSpec& ch,
                               const JointPmf& pwx);

// The achievability chain induced by a joint pmf over (W, V, X) on a channel
// whose Y is deterministic in X: U is set to the Y output of X, (W,U,V)
// independent of (S,T).  `pwvx` must have three axes, the third matching |X|.
InnerAuxChain thm3_inner_chain(const SourceSpec& src, const ChannelSpec& ch,
                               const JointPmf& pwvx);

}  // namespace bcrk
