#include "bcrk/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcrk/parallel.hpp"

namespace bcrk {

namespace {

JointPmf canonical_aux(const JointPmf& aux, const std::vector<std::string>& names,
                       int x_size) {
  if (aux.axis_count() != static_cast<int>(names.size())) {
    throw ShapeMismatch("auxiliary joint has the wrong number of axes");
  }
  if (aux.axes().back().size != x_size) {
    throw IncompatibleAlphabets("auxiliary X axis does not match the channel");
  }
  std::vector<Alphabet> axes;
  for (std::size_t i = 0; i < names.size(); ++i) {
    axes.push_back({names[i], aux.axes()[i].size});
  }
  return JointPmf::validated(std::move(axes),
                             std::vector<double>(aux.table()));
}

std::vector<double> thm3_rhs(const ChannelSpec& ch, const JointPmf& pwvx) {
  JointPmf joint = chain_compose(
      canonical_aux(pwvx, {"W", "V", "X"}, ch.x_alpha.size), ch.pyz_x);
  GroupEntropyCache m(joint);
  double hy_wv = m.entropy({"Y"}, {"W", "V"});
  return {
      std::min(m.mutual({"W"}, {"Y"}), m.mutual({"W"}, {"Z"})),  // (25)
      m.entropy({"Y"}),                                          // (26)
      m.mutual({"W", "V"}, {"Z"}),                               // (27)
      hy_wv + m.mutual({"V", "W"}, {"Z"}),                       // (28)
      m.mutual({"W"}, {"Y"}) + hy_wv + m.mutual({"V"}, {"Z"}, {"W"})  // (29)
  };
}

std::vector<double> thm4_rhs(const ChannelSpec& ch, const JointPmf& pwx) {
  JointPmf joint = chain_compose(
      canonical_aux(pwx, {"Wt", "X"}, ch.x_alpha.size), ch.pyz_x);
  GroupEntropyCache m(joint);
  double rhs34 = m.mutual({"Wt"}, {"Z"});
  return {
      m.mutual({"X"}, {"Y"}),                          // (33)
      rhs34,                                           // (34)
      m.mutual({"X"}, {"Y"}, {"Wt"}) + rhs34           // (35)
  };
}

JointPmf random_aux(const std::vector<Alphabet>& axes, Rng& rng) {
  std::size_t cells = 1;
  for (const auto& ax : axes) cells *= static_cast<std::size_t>(ax.size);
  return JointPmf::validated(std::vector<Alphabet>(axes),
                             rng.dirichlet(static_cast<int>(cells)));
}

struct GridBest {
  double slack = -std::numeric_limits<double>::infinity();
  double a = 0.5, b0 = 0.5, b1 = 0.5;
};

// Exhaustive two-stage grid over binary-input channels with a two-letter
// auxiliary: parameters a = P(W~=0), b0 = P(X=0|W~=0), b1 = P(X=0|W~=1).
class Thm4Grid {
 public:
  Thm4Grid(const ChannelSpec& ch, double ht, double hst)
      : ny_(ch.y_alpha.size), nz_(ch.z_alpha.size), ht_(ht), hst_(hst) {
    py0_.assign(static_cast<std::size_t>(ny_), 0.0);
    py1_.assign(static_cast<std::size_t>(ny_), 0.0);
    pz0_.assign(static_cast<std::size_t>(nz_), 0.0);
    pz1_.assign(static_cast<std::size_t>(nz_), 0.0);
    for (int y = 0; y < ny_; ++y) {
      py0_[static_cast<std::size_t>(y)] =
          ch.py_x.prob(0, static_cast<std::size_t>(y));
      py1_[static_cast<std::size_t>(y)] =
          ch.py_x.prob(1, static_cast<std::size_t>(y));
    }
    for (int z = 0; z < nz_; ++z) {
      pz0_[static_cast<std::size_t>(z)] =
          ch.pz_x.prob(0, static_cast<std::size_t>(z));
      pz1_[static_cast<std::size_t>(z)] =
          ch.pz_x.prob(1, static_cast<std::size_t>(z));
    }
    hy0_ = mix_entropy(py0_, py1_, 1.0);
    hy1_ = mix_entropy(py0_, py1_, 0.0);
  }

  // H of p*row0 + (1-p)*row1.
  static double mix_entropy(const std::vector<double>& r0,
                            const std::vector<double>& r1, double p) {
    double h = 0.0;
    for (std::size_t i = 0; i < r0.size(); ++i) {
      double v = p * r0[i] + (1.0 - p) * r1[i];
      if (v > tol::zero) h -= v * std::log2(v);
    }
    return h;
  }

  double ixy(double p) const {
    return mix_entropy(py0_, py1_, p) - (p * hy0_ + (1.0 - p) * hy1_);
  }
  double hz(double p) const { return mix_entropy(pz0_, pz1_, p); }

  // min slack of (33)-(35) at the point (a, b0, b1).
  double slack(double a, double b0, double b1) const {
    double px0 = a * b0 + (1.0 - a) * b1;
    double rhs33 = ixy(px0);
    double rhs34 = hz(px0) - (a * hz(b0) + (1.0 - a) * hz(b1));
    if (rhs34 < 0.0) rhs34 = 0.0;  // rounding guard; true value is >= 0
    double rhs35 = a * ixy(b0) + (1.0 - a) * ixy(b1) + rhs34;
    return std::min({rhs33 - hst_, rhs34 - ht_, rhs35 - hst_});
  }

  GridBest run() const {
    GridBest best;
    std::vector<GridBest> top;
    const int n1 = 100;  // coarse step 1e-2
    for (int ia = 0; ia <= n1; ++ia) {
      double a = ia / static_cast<double>(n1);
      for (int ib0 = 0; ib0 <= n1; ++ib0) {
        double b0 = ib0 / static_cast<double>(n1);
        for (int ib1 = 0; ib1 <= n1; ++ib1) {
          double b1 = ib1 / static_cast<double>(n1);
          double s = slack(a, b0, b1);
          if (s > best.slack) best = {s, a, b0, b1};
          if (top.size() < 32) {
            top.push_back({s, a, b0, b1});
            if (top.size() == 32) {
              std::sort(top.begin(), top.end(),
                        [](const GridBest& x, const GridBest& y) {
                          return x.slack > y.slack;
                        });
            }
          } else if (s > top.back().slack) {
            top.back() = {s, a, b0, b1};
            std::sort(top.begin(), top.end(),
                      [](const GridBest& x, const GridBest& y) {
                        return x.slack > y.slack;
                      });
          }
        }
      }
    }
    // Fine pass (step 1e-3) around the best coarse cells.
    for (const auto& cell : top) {
      for (int ia = -10; ia <= 10; ++ia) {
        double a = std::clamp(cell.a + ia * 1e-3, 0.0, 1.0);
        for (int ib0 = -10; ib0 <= 10; ++ib0) {
          double b0 = std::clamp(cell.b0 + ib0 * 1e-3, 0.0, 1.0);
          for (int ib1 = -10; ib1 <= 10; ++ib1) {
            double b1 = std::clamp(cell.b1 + ib1 * 1e-3, 0.0, 1.0);
            double s = slack(a, b0, b1);
            if (s > best.slack) best = {s, a, b0, b1};
          }
        }
      }
    }
    return best;
  }

 private:
  int ny_, nz_;
  double ht_, hst_;
  std::vector<double> py0_, py1_, pz0_, pz1_;
  double hy0_ = 0, hy1_ = 0;
};

JointPmf grid_point_to_pwx(double a, double b0, double b1) {
  std::vector<double> t = {a * b0, a * (1.0 - b0), (1.0 - a) * b1,
                           (1.0 - a) * (1.0 - b1)};
  return JointPmf::validated({{"Wt", 2}, {"X", 2}}, std::move(t));
}

Verdict verdict_from_slack(double slack) {
  if (slack > tol::strict) return Verdict::Admissible;
  if (slack < -tol::strict) return Verdict::NotAdmissibleHeuristic;
  return Verdict::Boundary;
}

}  // namespace

EntropyTuple EntropyTuple::validated(double hk, double hs, double ht,
                                     double hst) {
  if (hk < 0.0 || hs < 0.0 || ht < 0.0 || hst < 0.0) {
    throw InvalidArgument("entropies must be nonnegative");
  }
  if (hst < std::max(hs, ht) - 1e-9) {
    throw InvalidArgument("joint entropy below a marginal entropy");
  }
  if (hk > std::min(hs, ht) + 1e-9) {
    throw InvalidArgument("common-part entropy above a marginal entropy");
  }
  EntropyTuple et;
  et.hk = hk;
  et.hs = hs;
  et.ht = ht;
  et.hst = hst;
  return et;
}

EntropyTuple EntropyTuple::of(const SourceSpec& src) {
  return validated(src.hk, src.hs, src.ht, src.hst);
}

namespace {
constexpr const char* kExtrapolationWarning =
    "bandwidth expansion applied to the exact-region conditions is an "
    "extrapolation beyond their stated regime";
}  // namespace

BoundReport eval_thm3(const EntropyTuple& et, const ChannelSpec& ch,
                      const JointPmf& pwvx) {
  if (!is_deterministic_output(ch, Receiver::Y)) {
    throw NotSemiDeterministic("Y must be a deterministic function of X");
  }
  std::vector<double> rhs = thm3_rhs(ch, pwvx);
  BoundReport rep;
  rep.system = "thm3";
  rep.entries.push_back(BoundEntry::make("(25)", et.hk, rhs[0]));
  rep.entries.push_back(BoundEntry::make("(26)", et.hs, rhs[1]));
  rep.entries.push_back(BoundEntry::make("(27)", et.ht, rhs[2]));
  rep.entries.push_back(BoundEntry::make("(28)", et.hst, rhs[3]));
  rep.entries.push_back(BoundEntry::make("(29)", et.hst, rhs[4]));
  return rep;
}

BoundReport eval_thm3(const SourceSpec& src, const ChannelSpec& ch,
                      const JointPmf& pwvx, double R) {
  if (R <= 0.0) throw InvalidArgument("bandwidth expansion must be positive");
  if (!src.markov) {
    throw NotMarkovSource("source must satisfy I(S;T|K)=0");
  }
  EntropyTuple et = EntropyTuple::validated(src.hk / R, src.hs / R,
                                            src.ht / R, src.hst / R);
  BoundReport rep = eval_thm3(et, ch, pwvx);
  rep.bandwidth_expansion = R;
  if (R != 1.0) {
    rep.warnings.push_back(kExtrapolationWarning);
  }
  return rep;
}

BoundReport eval_thm4(double ht, double hst, const ChannelSpec& ch,
                      const JointPmf& pwx, const MoreCapableResult* mc) {
  if (ht < 0.0 || hst < ht - 1e-9) {
    throw InvalidArgument("need 0 <= H(T) <= H(ST)");
  }
  std::vector<double> rhs = thm4_rhs(ch, pwx);
  BoundReport rep;
  rep.system = "thm4";
  rep.entries.push_back(BoundEntry::make("(33)", hst, rhs[0]));
  rep.entries.push_back(BoundEntry::make("(34)", ht, rhs[1]));
  rep.entries.push_back(BoundEntry::make("(35)", hst, rhs[2]));
  if (mc != nullptr && mc->verdict == McVerdict::Violated) {
    rep.warnings.push_back(
        "channel failed the more-capable search; the exact-region "
        "characterization does not apply");
  }
  return rep;
}

FrontierCaps FrontierCaps::defaults_for(int theorem, const ChannelSpec& ch) {
  if (theorem == 3) {
    return {ch.x_alpha.size + 2, ch.x_alpha.size + 1};
  }
  return {ch.x_alpha.size + 1, 1};
}

std::vector<FrontierSample> region_frontier(int theorem, const ChannelSpec& ch,
                                            FrontierCaps caps,
                                            SearchBudget budget,
                                            std::uint64_t seed) {
  if (theorem != 3 && theorem != 4) {
    throw InvalidArgument("theorem selector must be 3 or 4");
  }
  if (caps.w < 1 || caps.v < 1) {
    throw InvalidArgument("cardinality caps must be at least 1");
  }
  if (theorem == 3 && !is_deterministic_output(ch, Receiver::Y)) {
    throw NotSemiDeterministic("Y must be a deterministic function of X");
  }

  std::vector<Alphabet> axes;
  if (theorem == 3) {
    axes = {{"W", caps.w}, {"V", caps.v}, ch.x_alpha};
  } else {
    axes = {{"Wt", caps.w}, ch.x_alpha};
  }
  auto rhs_of = [&](const JointPmf& aux) {
    return theorem == 3 ? thm3_rhs(ch, aux) : thm4_rhs(ch, aux);
  };
  const std::size_t k = theorem == 3 ? 5 : 3;

  // Weight grid: 11 weights per unordered objective pair.
  std::vector<std::vector<double>> weights;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (int step = 0; step <= 10; ++step) {
        std::vector<double> w(k, 0.0);
        w[i] = step / 10.0;
        w[j] = 1.0 - w[i];
        weights.push_back(std::move(w));
      }
    }
  }

  const int restarts = std::max(1, budget.restarts);
  const int steps = std::max(0, budget.steps);
  const int total = static_cast<int>(weights.size()) * restarts;
  std::vector<FrontierSample> pool(static_cast<std::size_t>(total));

  parallel_for(total, [&](int idx) {
    const std::vector<double>& w =
        weights[static_cast<std::size_t>(idx / restarts)];
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(idx));
    auto objective = [&](const JointPmf& aux) {
      std::vector<double> rhs = rhs_of(aux);
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += w[i] * rhs[i];
      return s;
    };
    JointPmf aux = random_aux(axes, rng);
    aux = local_refine(objective, std::move(aux), steps, rng);
    FrontierSample& out = pool[static_cast<std::size_t>(idx)];
    out.rhs = rhs_of(aux);
    out.aux = std::move(aux);
  });

  // Pareto filter: drop samples dominated by another (>= everywhere, > once).
  std::vector<char> dead(pool.size(), 0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < pool.size() && !dead[i]; ++j) {
      if (i == j || dead[j]) continue;
      bool ge = true, gt = false;
      for (std::size_t c = 0; c < k; ++c) {
        if (pool[j].rhs[c] < pool[i].rhs[c]) {
          ge = false;
          break;
        }
        if (pool[j].rhs[c] > pool[i].rhs[c]) gt = true;
      }
      if (ge && gt) dead[i] = 1;
    }
  }
  std::vector<FrontierSample> front;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!dead[i]) front.push_back(std::move(pool[i]));
  }
  std::sort(front.begin(), front.end(),
            [](const FrontierSample& a, const FrontierSample& b) {
              return a.rhs < b.rhs;
            });
  front.erase(std::unique(front.begin(), front.end(),
                          [](const FrontierSample& a, const FrontierSample& b) {
                            return a.rhs == b.rhs;
                          }),
              front.end());
  return front;
}

Decision decide_admissible(const SourceSpec& src, const ChannelSpec& ch,
                           const std::string& method, SearchBudget budget,
                           std::uint64_t seed, double R) {
  if (R <= 0.0) throw InvalidArgument("bandwidth expansion must be positive");
  Decision d;
  d.method = method;

  if (src.hst / R <= tol::strict) {
    d.verdict = Verdict::Admissible;
    d.best_min_slack = std::numeric_limits<double>::infinity();
    d.note = "zero-entropy source: admissible on any channel";
    return d;
  }

  if (method == "han_costa" || method == "separation") {
    WitnessSearch ws =
        search_witness(src, ch, InnerCaps::defaults_for(ch), budget, seed, R,
                       method == "separation");
    d.best_min_slack = ws.best_min_slack;
    d.best_report = ws.best_report;
    d.witness_chain = std::move(ws.best_chain);
    d.verdict = verdict_from_slack(d.best_min_slack);
    if (d.verdict == Verdict::NotAdmissibleHeuristic) {
      d.note = "no achievability witness found within budget (heuristic, "
               "one-sided)";
    }
    return d;
  }

  if (method == "thm3") {
    if (!is_deterministic_output(ch, Receiver::Y)) {
      throw NotSemiDeterministic("Y must be a deterministic function of X");
    }
    if (!src.markov) {
      throw NotMarkovSource("source must satisfy I(S;T|K)=0");
    }
    EntropyTuple et = EntropyTuple::validated(src.hk / R, src.hs / R,
                                              src.ht / R, src.hst / R);
    std::vector<Alphabet> axes = {{"W", ch.x_alpha.size + 2},
                                  {"V", ch.x_alpha.size + 1},
                                  ch.x_alpha};
    auto objective = [&](const JointPmf& aux) {
      std::vector<double> rhs = thm3_rhs(ch, aux);
      return std::min({rhs[0] - et.hk, rhs[1] - et.hs, rhs[2] - et.ht,
                       rhs[3] - et.hst, rhs[4] - et.hst});
    };
    const int restarts = std::max(1, budget.restarts);
    struct Local {
      double slack = -std::numeric_limits<double>::infinity();
      JointPmf aux;
    };
    std::vector<Local> results(static_cast<std::size_t>(restarts));
    parallel_for(restarts, [&](int r) {
      Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(r));
      JointPmf aux = random_aux(axes, rng);
      aux = local_refine(objective, std::move(aux),
                         std::max(0, budget.steps), rng);
      results[static_cast<std::size_t>(r)] = {objective(aux), std::move(aux)};
    });
    Local* best = &results[0];
    for (auto& loc : results) {
      if (loc.slack > best->slack) best = &loc;
    }
    d.best_min_slack = best->slack;
    d.best_report = eval_thm3(src, ch, best->aux, R);
    for (const std::string& w : d.best_report.warnings) d.warnings.push_back(w);
    d.witness_aux = std::move(best->aux);
    d.verdict = verdict_from_slack(d.best_min_slack);
    if (d.verdict == Verdict::NotAdmissibleHeuristic) {
      d.note = "every searched auxiliary reverses an inequality (heuristic, "
               "one-sided)";
    }
    return d;
  }

  if (method == "thm4") {
    MoreCapableResult mc = more_capable_test(ch, budget, seed);
    if (mc.verdict == McVerdict::Violated) {
      d.warnings.push_back(
          "channel failed the more-capable search; the exact-region "
          "characterization does not apply");
    }
    const double ht = src.ht / R;
    const double hst = src.hst / R;
    if (R != 1.0) {
      d.warnings.push_back(kExtrapolationWarning);
    }
    JointPmf best_aux;
    if (ch.x_alpha.size == 2) {
      GridBest gb = Thm4Grid(ch, ht, hst).run();
      best_aux = grid_point_to_pwx(gb.a, gb.b0, gb.b1);
      d.note = "two-stage exhaustive grid over two-letter auxiliaries "
               "(coarse 1e-2, fine 1e-3)";
    } else {
      std::vector<Alphabet> axes = {{"Wt", ch.x_alpha.size + 1}, ch.x_alpha};
      auto objective = [&](const JointPmf& aux) {
        std::vector<double> rhs = thm4_rhs(ch, aux);
        return std::min({rhs[0] - hst, rhs[1] - ht, rhs[2] - hst});
      };
      const int restarts = std::max(1, budget.restarts);
      struct Local {
        double slack = -std::numeric_limits<double>::infinity();
        JointPmf aux;
      };
      std::vector<Local> results(static_cast<std::size_t>(restarts));
      parallel_for(restarts, [&](int r) {
        Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(r));
        JointPmf aux = random_aux(axes, rng);
        aux = local_refine(objective, std::move(aux),
                           std::max(0, budget.steps), rng);
        results[static_cast<std::size_t>(r)] = {objective(aux),
                                                std::move(aux)};
      });
      Local* best = &results[0];
      for (auto& loc : results) {
        if (loc.slack > best->slack) best = &loc;
      }
      best_aux = std::move(best->aux);
      d.note = "randomized multistart search over auxiliaries";
    }
    d.best_report = eval_thm4(ht, hst, ch, best_aux, &mc);
    d.best_report.bandwidth_expansion = R;
    if (R != 1.0) {
      d.best_report.warnings.push_back(kExtrapolationWarning);
    }
    d.best_min_slack = d.best_report.min_slack();
    d.witness_aux = std::move(best_aux);
    d.verdict = verdict_from_slack(d.best_min_slack);
    if (d.verdict == Verdict::NotAdmissibleHeuristic) {
      d.note += "; every searched auxiliary fails an inequality";
    }
    return d;
  }

  throw InvalidArgument("unknown method '" + method + "'");
}

}  // namespace bcrk
