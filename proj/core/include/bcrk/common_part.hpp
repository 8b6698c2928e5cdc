#pragma once

#include <vector>

#include "bcrk/prob.hpp"

namespace bcrk {

// A two-component source together with its common variable K: the maximal
// random variable expressible as a deterministic function of S and of T
// simultaneously.  K is computed from the connected components of the support
// bipartite graph on S ∪ T (edge iff joint mass > tol::zero); symbols with no
// marginal mass share one dedicated sink component that is never sampled.
struct SourceSpec {
  Alphabet s_alpha;
  Alphabet t_alpha;
  Alphabet k_alpha;
  JointPmf pst;        // axes (S, T)
  std::vector<int> f;  // S symbol -> K index
  std::vector<int> g;  // T symbol -> K index

  double hk = 0.0;
  double hs = 0.0;
  double ht = 0.0;
  double hst = 0.0;
  double i_st_given_k = 0.0;
  bool markov = false;     // I(S;T|K) <= tol::strict
  bool has_sink = false;   // some symbol has zero marginal mass
  int sink_label = -1;     // K index of the sink component, or -1
};

// Builds the common part of a 2-axis joint pmf.  The two axes are relabeled to
// the canonical names "S" and "T" (first axis = S).  Positive-mass components
// are labeled in order of their smallest S symbol; the sink, if present, gets
// the last label.
SourceSpec gacs_korner(const JointPmf& pst);

// |I(S;T|K) + H(K) - I(S;T)|, which is identically zero for a correctly
// constructed common part.
double common_identity_residual(const SourceSpec& spec);

// The joint over (K, S, T) with K adjoined deterministically via f.
JointPmf adjoin_common_part(const SourceSpec& spec);

}  // namespace bcrk
