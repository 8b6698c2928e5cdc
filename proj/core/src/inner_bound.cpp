#include "bcrk/inner_bound.hpp"

#include <algorithm>
#include <limits>

#include "bcrk/parallel.hpp"

namespace bcrk {

namespace {

void add_extrapolation_warning(BoundReport& rep) {
  if (rep.bandwidth_expansion != 1.0) {
    rep.warnings.push_back(
        "bandwidth expansion applied to achievability conditions is an "
        "extrapolation beyond their stated regime");
  }
}

}  // namespace

BoundReport eval_han_costa(const SourceSpec& src, const ChannelSpec& ch,
                           const InnerAuxChain& chain, double R) {
  if (R <= 0.0) throw InvalidArgument("bandwidth expansion must be positive");
  JointPmf joint = compose_inner(src, ch, chain);
  GroupEntropyCache m(joint);

  double rhs2 = m.mutual({"S", "W", "U"}, {"Y"}) -
                m.mutual({"T"}, {"W", "U"}, {"S"});
  double rhs3 = m.mutual({"T", "W", "V"}, {"Z"}) -
                m.mutual({"S"}, {"W", "V"}, {"T"});
  double rhs4 = std::min(m.mutual({"K", "W"}, {"Y"}),
                         m.mutual({"K", "W"}, {"Z"})) +
                m.mutual({"S", "U"}, {"Y"}, {"K", "W"}) +
                m.mutual({"T", "V"}, {"Z"}, {"K", "W"}) -
                m.mutual({"S", "U"}, {"T", "V"}, {"K", "W"});
  double rhs5 = m.mutual({"S", "W", "U"}, {"Y"}) +
                m.mutual({"T", "W", "V"}, {"Z"}) -
                m.mutual({"S", "U"}, {"T", "V"}, {"K", "W"}) -
                m.mutual({"S", "T"}, {"K", "W"});

  BoundReport rep;
  rep.system = "han-costa";
  rep.bandwidth_expansion = R;
  rep.entries.push_back(BoundEntry::make("(2)", src.hs / R, rhs2));
  rep.entries.push_back(BoundEntry::make("(3)", src.ht / R, rhs3));
  rep.entries.push_back(BoundEntry::make("(4)", src.hst / R, rhs4));
  rep.entries.push_back(BoundEntry::make("(5)", src.hst / R, rhs5));
  add_extrapolation_warning(rep);
  return rep;
}

BoundReport eval_separation(const SourceSpec& src, const ChannelSpec& ch,
                            const InnerAuxChain& chain, double R) {
  if (R <= 0.0) throw InvalidArgument("bandwidth expansion must be positive");
  JointPmf joint = compose_inner(src, ch, chain);
  GroupEntropyCache m(joint);

  double coupling = m.mutual({"S", "T"}, {"W", "U", "V"});
  if (coupling >= tol::strict) {
    throw NotDecoupled("auxiliaries are not independent of the source pair");
  }

  double rate_loss = src.i_st_given_k;  // I(S;T|K)
  double hk = src.hk;                   // I(ST;K) = H(K)
  double rhs21 = m.mutual({"W", "U"}, {"Y"});
  double rhs22 = m.mutual({"W", "V"}, {"Z"});
  double rhs23 =
      std::min(m.mutual({"W"}, {"Y"}), m.mutual({"W"}, {"Z"})) +
      m.mutual({"U"}, {"Y"}, {"W"}) + m.mutual({"V"}, {"Z"}, {"W"}) -
      m.mutual({"U"}, {"V"}, {"W"}) - rate_loss;
  double rhs24 = rhs21 + rhs22 - m.mutual({"U"}, {"V"}, {"W"}) - rate_loss - hk;

  BoundReport rep;
  rep.system = "separation";
  rep.bandwidth_expansion = R;
  rep.entries.push_back(BoundEntry::make("(21)", src.hs / R, rhs21));
  rep.entries.push_back(BoundEntry::make("(22)", src.ht / R, rhs22));
  rep.entries.push_back(BoundEntry::make("(23)", src.hst / R, rhs23));
  rep.entries.push_back(BoundEntry::make("(24)", src.hst / R, rhs24));
  add_extrapolation_warning(rep);
  return rep;
}

WitnessSearch search_witness(const SourceSpec& src, const ChannelSpec& ch,
                             InnerCaps caps, SearchBudget budget,
                             std::uint64_t seed, double R, bool decoupled) {
  const int restarts = std::max(1, budget.restarts);
  const int steps = std::max(0, budget.steps);

  auto evaluate = [&](const InnerAuxChain& c) {
    return decoupled ? eval_separation(src, ch, c, R)
                     : eval_han_costa(src, ch, c, R);
  };
  auto objective = [&](const InnerAuxChain& c) {
    return evaluate(c).min_slack();
  };

  struct Local {
    double slack = -std::numeric_limits<double>::infinity();
    InnerAuxChain chain;
  };
  std::vector<Local> results(static_cast<std::size_t>(restarts));

  parallel_for(restarts, [&](int r) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(r));
    InnerAuxChain chain = decoupled
                              ? sample_decoupled_chain(src, ch, caps, rng)
                              : sample_inner_chain(src, ch, caps, rng);
    chain = local_refine(objective, std::move(chain), steps, rng, decoupled);
    Local& loc = results[static_cast<std::size_t>(r)];
    loc.slack = objective(chain);
    loc.chain = std::move(chain);
  });

  WitnessSearch out;
  out.best_min_slack = -std::numeric_limits<double>::infinity();
  for (auto& loc : results) {
    if (loc.slack > out.best_min_slack) {
      out.best_min_slack = loc.slack;
      out.best_chain = std::move(loc.chain);
    }
  }
  out.best_report = evaluate(out.best_chain);
  out.witness_found = out.best_min_slack > tol::strict;
  return out;
}

}  // namespace bcrk
