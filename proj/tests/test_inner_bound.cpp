#include <cstdlib>
#include <vector>

#include "bcrk/inner_bound.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace bcrk;

TEST_CASE("copying the common symbol saturates every condition exactly") {
  // S = T = K ~ Bern(0.2), noiseless channel, W = S, X = W: every
  // inequality evaluates with lhs = rhs = h(0.2).
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  BoundReport rep = eval_han_costa(src, ch, oracle::copy_s_chain(src, ch));
  CHECK(rep.system == "han-costa");
  REQUIRE(rep.entries.size() == 4);
  for (const auto& e : rep.entries) {
    CHECK(e.lhs == doctest::Approx(oracle::h(0.2)).epsilon(1e-9));
    CHECK(e.rhs == doctest::Approx(oracle::h(0.2)).epsilon(1e-9));
    CHECK(e.slack == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(!e.strict_ok);
    CHECK(e.weak_ok);
  }
  CHECK(rep.entry("(2)").label == "(2)");
  CHECK(rep.warnings.empty());
}

TEST_CASE("independent uniform input leaves slack 1 - h(0.2) everywhere") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  InnerAuxChain chain = oracle::uniform_w_chain(src, ch);
  BoundReport hc = eval_han_costa(src, ch, chain);
  REQUIRE(hc.entries.size() == 4);
  CHECK(hc.entries[0].rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hc.entries[1].rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hc.entries[2].rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hc.entries[3].rhs ==
        doctest::Approx(2.0 - oracle::h(0.2)).epsilon(1e-9));
  CHECK(hc.min_slack() ==
        doctest::Approx(1.0 - oracle::h(0.2)).epsilon(1e-9));
  CHECK(hc.all_strict());

  // the separation specialization agrees on this decoupled chain
  BoundReport sep = eval_separation(src, ch, chain);
  CHECK(sep.system == "separation");
  REQUIRE(sep.entries.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(sep.entries[static_cast<std::size_t>(i)].rhs ==
          doctest::Approx(hc.entries[static_cast<std::size_t>(i)].rhs)
              .epsilon(1e-9));
  }
}

TEST_CASE("maximal-entropy doubled source sits exactly on the boundary") {
  SourceSpec src = oracle::doubled(0.5);
  ChannelSpec ch = oracle::noiseless(2);
  BoundReport sep = eval_separation(src, ch, oracle::uniform_w_chain(src, ch));
  for (const auto& e : sep.entries) {
    CHECK(e.rhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.slack == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(sep.all_weak());
  CHECK(!sep.all_strict());
}

TEST_CASE("separation evaluation rejects source-coupled auxiliaries") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  CHECK_THROWS_AS(eval_separation(src, ch, oracle::copy_s_chain(src, ch)),
                  NotDecoupled);
}

TEST_CASE("bandwidth expansion scales the source side and warns") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  InnerAuxChain chain = oracle::uniform_w_chain(src, ch);
  BoundReport rep = eval_han_costa(src, ch, chain, 2.0);
  CHECK(rep.bandwidth_expansion == 2.0);
  CHECK(rep.entries[0].lhs ==
        doctest::Approx(oracle::h(0.2) / 2.0).epsilon(1e-12));
  CHECK(rep.entries[0].rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!rep.warnings.empty());
  CHECK(eval_han_costa(src, ch, chain, 1.0).warnings.empty());
  CHECK_THROWS_AS(eval_han_costa(src, ch, chain, 0.0), InvalidArgument);
  CHECK_THROWS_AS(eval_separation(src, ch, chain, -1.0), InvalidArgument);
}

TEST_CASE("witness search finds the uniform-input witness") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  WitnessSearch ws = search_witness(src, ch, {3, 2, 2}, {16, 120}, 0);
  CHECK(ws.witness_found);
  CHECK(ws.best_min_slack > 0.25);  // optimum is 1 - h(0.2) = 0.278
  CHECK(ws.best_min_slack <= 1.0 - oracle::h(0.2) + 1e-9);
  CHECK(ws.best_report.min_slack() ==
        doctest::Approx(ws.best_min_slack).epsilon(1e-12));
  // the stored chain re-evaluates to the reported report
  BoundReport again = eval_han_costa(src, ch, ws.best_chain);
  CHECK(again.min_slack() ==
        doctest::Approx(ws.best_min_slack).epsilon(1e-12));
}

TEST_CASE("restricted search stays decoupled and scores the separation form") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  WitnessSearch ws =
      search_witness(src, ch, {3, 2, 2}, {12, 120}, 1, 1.0, true);
  CHECK(ws.witness_found);
  CHECK(is_decoupled(ws.best_chain));
  CHECK(ws.best_report.system == "separation");
  CHECK(ws.best_min_slack > 0.2);
}

TEST_CASE("witness search cannot certify an impossible source") {
  // H(S,T) = 2 bits through a binary noiseless channel can never satisfy
  // the sum condition: rhs(5) <= 2 - H(K) = 1 < 2.
  SourceSpec src = bcrk::gacs_korner(JointPmf::validated(
      {{"S", 4}, {"T", 4}},
      {0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25}));
  ChannelSpec ch = oracle::noiseless(2);
  WitnessSearch ws = search_witness(src, ch, {2, 2, 2}, {6, 60}, 0);
  CHECK(!ws.witness_found);
  CHECK(ws.best_min_slack < -0.5);
}

TEST_CASE("witness search is reproducible and thread-count independent") {
  SourceSpec src = oracle::source2(0.4, 0.1, 0.15, 0.35);
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  WitnessSearch a = search_witness(src, ch, {2, 2, 2}, {8, 60}, 77);
  WitnessSearch b = search_witness(src, ch, {2, 2, 2}, {8, 60}, 77);
  CHECK(a.best_min_slack == b.best_min_slack);
  CHECK(a.best_chain.wuv_given_st.table() == b.best_chain.wuv_given_st.table());
  CHECK(a.best_chain.x_given_wuv.table() == b.best_chain.x_given_wuv.table());

  setenv("BCRK_THREADS", "4", 1);
  WitnessSearch c = search_witness(src, ch, {2, 2, 2}, {8, 60}, 77);
  setenv("BCRK_THREADS", "1", 1);
  WitnessSearch d = search_witness(src, ch, {2, 2, 2}, {8, 60}, 77);
  unsetenv("BCRK_THREADS");
  CHECK(c.best_min_slack == a.best_min_slack);
  CHECK(d.best_min_slack == a.best_min_slack);
  CHECK(c.best_chain.wuv_given_st.table() == a.best_chain.wuv_given_st.table());
  CHECK(d.best_chain.x_given_wuv.table() == a.best_chain.x_given_wuv.table());
}
