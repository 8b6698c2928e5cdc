#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "bcrk/aux_chain.hpp"
#include "bcrk/prob.hpp"
#include "bcrk/rng.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace bcrk;

namespace {

// sort-based exact Euclidean simplex projection, for cross-checking
std::vector<double> reference_projection(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = t;
    }
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
  return v;
}

}  // namespace

TEST_CASE("composed achievability joint has the right structure") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    SourceSpec src = trial % 3 == 0 ? oracle::block_markov(rng, 0.35)
                                    : oracle::random_source(rng, 2, 3);
    ChannelSpec ch = oracle::random_channel(rng, 2, 3, 2);
    InnerCaps caps{2, 2, 2};
    InnerAuxChain chain = sample_inner_chain(src, ch, caps, rng);
    JointPmf j = compose_inner(src, ch, chain);

    // axis order (K,S,T,W,U,V,X,Y,Z)
    std::vector<std::string> names;
    for (const auto& a : j.axes()) names.push_back(a.name);
    CHECK(names == std::vector<std::string>{"K", "S", "T", "W", "U", "V", "X",
                                            "Y", "Z"});
    // source marginal is preserved
    JointPmf st = j.marginal({"S", "T"});
    for (int s = 0; s < src.s_alpha.size; ++s) {
      for (int t = 0; t < src.t_alpha.size; ++t) {
        CHECK(st.mass({s, t}) ==
              doctest::Approx(src.pst.mass({s, t})).epsilon(1e-12));
      }
    }
    // the two Markov constraints of the chain
    CHECK(info_measure(j, {"S", "T"}, {"X"}, {"W", "U", "V"}) <= 1e-9);
    CHECK(info_measure(j, {"W", "U", "V"}, {"Y", "Z"}, {"X"}) <= 1e-9);
    // K is a function of S
    CHECK(entropy_measure(j, {"K"}, {"S"}) <= 1e-9);
    // channel law is preserved where X has mass
    JointPmf xyz = j.marginal({"X", "Y", "Z"});
    JointPmf px = j.marginal({"X"});
    for (int x = 0; x < ch.x_alpha.size; ++x) {
      for (int y = 0; y < ch.y_alpha.size; ++y) {
        for (int z = 0; z < ch.z_alpha.size; ++z) {
          double expect =
              px.mass({x}) *
              ch.pyz_x.prob(static_cast<std::size_t>(x),
                            static_cast<std::size_t>(y * ch.z_alpha.size + z));
          CHECK(xyz.mass({x, y, z}) ==
                doctest::Approx(expect).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("composed converse joint realizes a deterministic input map") {
  Rng rng(23);
  SourceSpec src = oracle::random_source(rng, 2, 2);
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.25);
  OuterAuxChain chain =
      oracle::const_uv_map_chain(src, ch, std::vector<int>{0, 1, 1, 0});
  JointPmf j = compose_outer(src, ch, chain);
  std::vector<std::string> names;
  for (const auto& a : j.axes()) names.push_back(a.name);
  CHECK(names ==
        std::vector<std::string>{"K", "S", "T", "U", "V", "X", "Y", "Z"});
  // X == map(s,t) almost surely
  CHECK(entropy_measure(j, {"X"}, {"S", "T"}) <= 1e-9);
  JointPmf stx = j.marginal({"S", "T", "X"});
  CHECK(stx.mass({0, 1, 1}) ==
        doctest::Approx(src.pst.mass({0, 1})).epsilon(1e-12));
  CHECK(stx.mass({1, 1, 0}) ==
        doctest::Approx(src.pst.mass({1, 1})).epsilon(1e-12));
}

TEST_CASE("stochastic-input converse chains compose consistently") {
  Rng rng(29);
  SourceSpec src = oracle::random_source(rng, 3, 2);
  ChannelSpec ch = oracle::random_channel(rng, 2, 2, 3);
  OuterAuxChain chain = sample_outer_chain(src, ch, {2, 3}, rng, false);
  REQUIRE(chain.x_given_stuv.has_value());
  CHECK(!chain.x_map.has_value());
  JointPmf j = compose_outer(src, ch, chain);
  CHECK(info_measure(j, {"U", "V"}, {"Y", "Z"}, {"X"}) <= 1e-9);
  JointPmf st = j.marginal({"S", "T"});
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 2; ++t) {
      CHECK(st.mass({s, t}) ==
            doctest::Approx(src.pst.mass({s, t})).epsilon(1e-12));
    }
  }
}

TEST_CASE("deterministic-input converse chains carry a map") {
  Rng rng(31);
  SourceSpec src = oracle::random_source(rng, 2, 2);
  ChannelSpec ch = oracle::random_channel(rng, 3, 2, 2);
  OuterAuxChain chain = sample_outer_chain(src, ch, {2, 2}, rng, true);
  REQUIRE(chain.x_map.has_value());
  CHECK(!chain.x_given_stuv.has_value());
  CHECK(chain.x_map->size() == 4);
  for (int m : *chain.x_map) {
    CHECK(m >= 0);
    CHECK(m < 3);
  }
  JointPmf j = compose_outer(src, ch, chain);
  CHECK(entropy_measure(j, {"X"}, {"S", "T"}) <= 1e-9);
}

TEST_CASE("decoupled chains have source-independent auxiliaries") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    SourceSpec src = oracle::random_source(rng, 2, 2);
    ChannelSpec ch = oracle::random_channel(rng, 2, 2, 2);
    InnerAuxChain chain = sample_decoupled_chain(src, ch, {2, 2, 2}, rng);
    CHECK(is_decoupled(chain));
    JointPmf j = compose_inner(src, ch, chain);
    CHECK(info_measure(j, {"S", "T"}, {"W", "U", "V"}) <= 1e-9);
  }
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  CHECK(!is_decoupled(oracle::copy_s_chain(src, ch)));
  CHECK(is_decoupled(oracle::uniform_w_chain(src, ch)));
}

TEST_CASE("simplex projection matches the sort-based reference") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + rng.uniform_int(6);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = 3.0 * rng.gaussian();
    std::vector<double> mine = v;
    project_to_simplex(mine.data(), mine.size());
    std::vector<double> ref = reference_projection(v);
    double sum = 0.0;
    for (std::size_t i = 0; i < mine.size(); ++i) {
      CHECK(mine[i] >= 0.0);
      CHECK(mine[i] == doctest::Approx(ref[i]).epsilon(1e-9));
      sum += mine[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    // projecting a point already on the simplex is the identity
    std::vector<double> p = rng.dirichlet(n);
    std::vector<double> q = p;
    project_to_simplex(q.data(), q.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("hill climbing never worsens the objective") {
  Rng rng(43);
  SourceSpec src = oracle::random_source(rng, 2, 2);
  ChannelSpec ch = oracle::random_channel(rng, 2, 2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    InnerAuxChain chain = sample_inner_chain(src, ch, {2, 2, 2}, rng);
    auto objective = [&](const InnerAuxChain& c) {
      JointPmf j = compose_inner(src, ch, c);
      return info_measure(j, {"W", "U"}, {"Y"});
    };
    double before = objective(chain);
    InnerAuxChain after = local_refine(objective, std::move(chain), 60, rng);
    CHECK(objective(after) >= before - 1e-12);
  }
}

TEST_CASE("hill climbing reaches the symmetric-channel optimum") {
  // maximize I(X;Y) over input distributions for a flip-0.1 channel;
  // the optimum is 1 - h(0.1) at the uniform input.
  ConditionalPmf f = ConditionalPmf::validated(
      {{"X", 2}}, {{"Y", 2}}, {0.9, 0.1, 0.1, 0.9});
  auto objective = [&](const JointPmf& px) {
    JointPmf j = chain_compose(px, f);
    return info_measure(j, {"X"}, {"Y"});
  };
  double best = -1.0;
  Rng rng(47);
  for (int restart = 0; restart < 8; ++restart) {
    JointPmf px = JointPmf::validated({{"X", 2}}, rng.dirichlet(2));
    JointPmf refined = local_refine(objective, std::move(px), 400, rng);
    best = std::max(best, objective(refined));
  }
  CHECK(best == doctest::Approx(1.0 - oracle::h(0.1)).epsilon(1e-3));
}

TEST_CASE("decoupled refinement preserves decoupling") {
  Rng rng(53);
  SourceSpec src = oracle::doubled(0.3);
  ChannelSpec ch = oracle::noiseless(2);
  InnerAuxChain chain = sample_decoupled_chain(src, ch, {3, 2, 2}, rng);
  auto objective = [&](const InnerAuxChain& c) {
    JointPmf j = compose_inner(src, ch, c);
    return info_measure(j, {"W"}, {"Y"});
  };
  InnerAuxChain refined =
      local_refine(objective, std::move(chain), 120, rng, true);
  CHECK(is_decoupled(refined));
}

TEST_CASE("achievability chain induced by a two-letter auxiliary") {
  Rng rng(59);
  SourceSpec src = oracle::random_source(rng, 2, 3);
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  JointPmf pwx = oracle::wt_copy_of_x({0.4, 0.6});
  InnerAuxChain chain = thm4_inner_chain(src, ch, pwx);
  // W = (T, W~): t-major pairs, U = X, V constant
  CHECK(chain.wuv_given_st.output_axes()[0].size == 3 * 2);
  CHECK(chain.wuv_given_st.output_axes()[1].size == 2);
  CHECK(chain.wuv_given_st.output_axes()[2].size == 1);
  JointPmf j = compose_inner(src, ch, chain);
  // U and X coincide almost surely
  CHECK(entropy_measure(j, {"X"}, {"U"}) <= 1e-9);
  CHECK(entropy_measure(j, {"U"}, {"X"}) <= 1e-9);
  // (W~, X) part is independent of the source pair: I(U;ST) = 0
  CHECK(info_measure(j, {"U"}, {"S", "T"}) <= 1e-9);

  CHECK_THROWS_AS(
      thm4_inner_chain(src, ch,
                       JointPmf::validated({{"A", 2}, {"B", 2}, {"C", 1}},
                                           {0.25, 0.25, 0.25, 0.25})),
      ShapeMismatch);
  CHECK_THROWS_AS(
      thm4_inner_chain(src, ch,
                       JointPmf::validated({{"A", 2}, {"B", 3}},
                                           {0.2, 0.2, 0.1, 0.2, 0.2, 0.1})),
      IncompatibleAlphabets);
}

TEST_CASE("deterministic-receiver chain requires such a receiver") {
  Rng rng(61);
  SourceSpec src = oracle::doubled(0.25);
  JointPmf pwvx = JointPmf::validated({{"W", 2}, {"V", 1}, {"X", 2}},
                                      {0.5, 0.0, 0.0, 0.5});
  // fine on a channel whose Y output is a function of X
  InnerAuxChain ok = thm3_inner_chain(src, oracle::semidet(0.1), pwvx);
  JointPmf j = compose_inner(src, oracle::semidet(0.1), ok);
  // U equals the Y output almost surely
  CHECK(entropy_measure(j, {"U"}, {"Y"}) <= 1e-9);
  CHECK(entropy_measure(j, {"Y"}, {"U"}) <= 1e-9);
  // rejected when Y is noisy
  CHECK_THROWS_AS(thm3_inner_chain(src, oracle::bsc_pair(0.1, 0.2), pwvx),
                  NotSemiDeterministic);
}

TEST_CASE("sampled chains respect the cardinality caps") {
  Rng rng(67);
  SourceSpec src = oracle::random_source(rng, 2, 2);
  ChannelSpec ch = oracle::random_channel(rng, 3, 2, 2);
  InnerAuxChain c1 = sample_inner_chain(src, ch, {4, 3, 2}, rng);
  CHECK(c1.wuv_given_st.output_axes()[0].size == 4);
  CHECK(c1.wuv_given_st.output_axes()[1].size == 3);
  CHECK(c1.wuv_given_st.output_axes()[2].size == 2);
  CHECK(c1.x_given_wuv.output_axes()[0].size == 3);
  OuterAuxChain c2 = sample_outer_chain(src, ch, {4, 2}, rng, false);
  CHECK(c2.uv_given_st.output_axes()[0].size == 4);
  CHECK(c2.uv_given_st.output_axes()[1].size == 2);
  CHECK(c2.x_size == 3);
}
