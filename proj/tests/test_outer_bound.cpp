#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "bcrk/aux_chain.hpp"
#include "bcrk/outer_bound.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace bcrk;

namespace {

// correlated binary source (flip 0.1 between S and T), conditionally
// independent receiver pair (flips 0.1 and 0.2), input copies S
struct IdentityMapFixture {
  SourceSpec src = oracle::source2(0.45, 0.05, 0.05, 0.45);
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  OuterAuxChain chain =
      oracle::const_uv_map_chain(src, ch, std::vector<int>{0, 0, 1, 1});
};

}  // namespace

TEST_CASE("first converse system on the copy-input chain") {
  IdentityMapFixture fx;
  BoundReport rep = eval_thm1(fx.src, fx.ch, fx.chain);
  CHECK(rep.system == "thm1[as-printed]");
  REQUIRE(rep.entries.size() == 7);
  const double h01 = oracle::h(0.1);
  const double h018 = oracle::h(0.18);
  const double h026 = oracle::h(0.26);
  // one receiver hop: P(Y != S) = 0.1; two hops: P(Y != T) = 0.18,
  // P(Z != T) = 0.26
  CHECK(rep.entry("(7)").rhs == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.entry("(8)").rhs == doctest::Approx(1.0 - h01).epsilon(1e-9));
  CHECK(rep.entry("(9)").rhs == doctest::Approx(1.0 - h026).epsilon(1e-9));
  CHECK(rep.entry("(10)").rhs ==
        doctest::Approx((h018 - h01) + (1.0 - h026)).epsilon(1e-9));
  CHECK(rep.entry("(11)").rhs == doctest::Approx(1.0 - h01).epsilon(1e-9));
  CHECK(rep.entry("(12)").rhs ==
        doctest::Approx((h018 - h01) + (1.0 - h026)).epsilon(1e-9));
  CHECK(rep.entry("(13)").rhs == doctest::Approx(1.0 - h01).epsilon(1e-9));
  // source side: hk = 0, hs = ht = 1, hst = 1 + h(0.1)
  CHECK(rep.entry("(7)").lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.entry("(8)").lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.entry("(10)").lhs ==
        doctest::Approx(1.0 + h01).epsilon(1e-9));
  // this chain does not satisfy the sum conditions for this source
  CHECK(!rep.all_weak());

  // with constant side auxiliaries the two printed forms coincide
  BoundReport pd =
      eval_thm1(fx.src, fx.ch, fx.chain, 1.0, OuterVariant::ProofDerived);
  CHECK(pd.system == "thm1[proof-derived]");
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(pd.entries[i].rhs ==
          doctest::Approx(rep.entries[i].rhs).epsilon(1e-9));
  }
}

TEST_CASE("weakened converse system on the copy-input chain") {
  IdentityMapFixture fx;
  BoundReport rep = eval_thm2(fx.src, fx.ch, fx.chain);
  CHECK(rep.system == "thm2");
  REQUIRE(rep.entries.size() == 7);
  // the common variable is constant here, so grouping it with the constant
  // side auxiliaries changes nothing relative to the first system
  BoundReport t1 = eval_thm1(fx.src, fx.ch, fx.chain);
  const std::vector<std::string> labels2 = {"(14)", "(15)", "(16)", "(17)",
                                            "(18)", "(19)", "(20)"};
  const std::vector<std::string> labels1 = {"(7)", "(8)", "(9)", "(10)",
                                            "(11)", "(12)", "(13)"};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(rep.entry(labels2[i]).rhs ==
          doctest::Approx(t1.entry(labels1[i]).rhs).epsilon(1e-9));
    CHECK(rep.entry(labels2[i]).lhs ==
          doctest::Approx(t1.entry(labels1[i]).lhs).epsilon(1e-12));
  }
}

TEST_CASE("bandwidth expansion divides the source entropies") {
  IdentityMapFixture fx;
  BoundReport r1 = eval_thm1(fx.src, fx.ch, fx.chain, 1.0);
  BoundReport r2 = eval_thm1(fx.src, fx.ch, fx.chain, 2.0);
  CHECK(r2.bandwidth_expansion == 2.0);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(r2.entries[i].lhs ==
          doctest::Approx(r1.entries[i].lhs / 2.0).epsilon(1e-12));
    CHECK(r2.entries[i].rhs ==
          doctest::Approx(r1.entries[i].rhs).epsilon(1e-12));
  }
  CHECK_THROWS_AS(eval_thm1(fx.src, fx.ch, fx.chain, 0.0), InvalidArgument);
  CHECK_THROWS_AS(eval_thm2(fx.src, fx.ch, fx.chain, -2.0), InvalidArgument);
}

TEST_CASE("trivial common variable zeroes the first condition") {
  // independent source: the common variable is constant
  Rng rng(71);
  SourceSpec src = bcrk::gacs_korner(JointPmf::validated(
      {{"S", 2}, {"T", 2}}, {0.24, 0.36, 0.16, 0.24}));
  REQUIRE(src.hk == doctest::Approx(0.0).epsilon(1e-12));
  ChannelSpec ch = oracle::random_channel(rng, 2, 2, 2);
  OuterAuxChain chain = sample_outer_chain(src, ch, {2, 2}, rng, false);
  BoundReport t1 = eval_thm1(src, ch, chain);
  CHECK(t1.entry("(7)").lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t1.entry("(7)").slack >= 0.0);
  // grouping a constant K adds nothing: rhs(14) = I(U,V;Y) or I(U,V;Z)
  JointPmf j = compose_outer(src, ch, chain);
  double iuv_y = oracle::brute_info(j, {"U", "V"}, {"Y"});
  double iuv_z = oracle::brute_info(j, {"U", "V"}, {"Z"});
  BoundReport t2 = eval_thm2(src, ch, chain);
  CHECK(t2.entry("(14)").rhs ==
        doctest::Approx(std::min(iuv_y, iuv_z)).epsilon(1e-9));
}

TEST_CASE("superset scan certifies consistency for an easy source") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  OuterScan scan = outer_superset_scan(src, ch, 2, {2, 2}, {8, 80}, 0);
  CHECK(scan.witness_found);
  CHECK(scan.best_min_slack >= -tol::strict);
  CHECK(scan.verdict == "consistent-with-outer-bound (witness chain found)");
  CHECK(scan.best_report.system == "thm2");
  CHECK(scan.best_report.min_slack() ==
        doctest::Approx(scan.best_min_slack).epsilon(1e-12));
}

TEST_CASE("superset scan reports heuristic evidence when nothing fits") {
  // two shared uniform bits cannot pass a one-bit channel: even the first
  // condition requires rhs >= H(K) = 2 > 1 >= I(K,U,V;Y)
  SourceSpec src = bcrk::gacs_korner(JointPmf::validated(
      {{"S", 4}, {"T", 4}},
      {0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25}));
  ChannelSpec ch = oracle::noiseless(2);
  OuterScan scan = outer_superset_scan(src, ch, 1, {2, 2}, {4, 40}, 0);
  CHECK(!scan.witness_found);
  CHECK(scan.best_min_slack < -0.5);
  CHECK(scan.verdict ==
        "no satisfying chain found within budget — evidence of "
        "non-admissibility (heuristic, one-sided)");
}

TEST_CASE("scan validates the system selector") {
  SourceSpec src = oracle::doubled(0.2);
  ChannelSpec ch = oracle::noiseless(2);
  CHECK_THROWS_AS(outer_superset_scan(src, ch, 3, {2, 2}, {2, 10}, 0),
                  InvalidArgument);
}

TEST_CASE("scan results are reproducible and thread-count independent") {
  SourceSpec src = oracle::source2(0.4, 0.1, 0.15, 0.35);
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.25);
  OuterScan a = outer_superset_scan(src, ch, 2, {2, 2}, {6, 50}, 5);
  setenv("BCRK_THREADS", "3", 1);
  OuterScan b = outer_superset_scan(src, ch, 2, {2, 2}, {6, 50}, 5);
  unsetenv("BCRK_THREADS");
  CHECK(a.best_min_slack == b.best_min_slack);
  CHECK(a.best_chain.uv_given_st.table() == b.best_chain.uv_given_st.table());
}
