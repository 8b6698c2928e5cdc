#include <cmath>
#include <vector>

#include "bcrk/channel.hpp"
#include "bcrk/prob.hpp"
#include "bcrk/rng.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace bcrk;

TEST_CASE("channel construction derives consistent marginals") {
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  CHECK(ch.x_alpha.name == "X");
  CHECK(ch.py_x.prob(0, 0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(ch.py_x.prob(0, 1) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(ch.pz_x.prob(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(ch.pz_x.prob(1, 0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(ChannelSpec::make(2, 2, 2, {1.0, 0.0, 0.0, 0.0}),
                  ShapeMismatch);
}

TEST_CASE("deterministic receivers are recognized and mapped") {
  ChannelSpec sd = oracle::semidet(0.1);
  CHECK(is_deterministic_output(sd, Receiver::Y));
  CHECK(!is_deterministic_output(sd, Receiver::Z));
  CHECK(deterministic_output_map(sd, Receiver::Y) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(deterministic_output_map(sd, Receiver::Z),
                  NotSemiDeterministic);

  ChannelSpec nl = oracle::noiseless(3);
  CHECK(is_deterministic_output(nl, Receiver::Y));
  CHECK(is_deterministic_output(nl, Receiver::Z));
  CHECK(deterministic_output_map(nl, Receiver::Z) ==
        std::vector<int>{0, 1, 2});
}

TEST_CASE("degrading kernel for nested symmetric channels is recovered") {
  // flip 0.1 cascaded with flip q reaches flip 0.2 iff q = 0.125, and the
  // two linear systems pin the kernel uniquely.
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  DegradednessResult d = degradedness_test(ch);
  REQUIRE(d.feasible);
  CHECK(d.residual <= 1e-9);
  REQUIRE(d.q_z_given_y.size() == 4);
  CHECK(d.q_z_given_y[0] == doctest::Approx(0.875).epsilon(1e-7));
  CHECK(d.q_z_given_y[1] == doctest::Approx(0.125).epsilon(1e-7));
  CHECK(d.q_z_given_y[2] == doctest::Approx(0.125).epsilon(1e-7));
  CHECK(d.q_z_given_y[3] == doctest::Approx(0.875).epsilon(1e-7));
}

TEST_CASE("erasure output cannot be degraded into a crossover output") {
  // Y erases half the symbols, Z flips with probability 0.1: matching the
  // erasure rows would need a kernel entry difference of 1.6 > 1.
  //   P(y|x): y in {0, erased, 1}
  std::vector<double> t;
  std::vector<std::vector<double>> py = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
  std::vector<std::vector<double>> pz = {{0.9, 0.1}, {0.1, 0.9}};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 3; ++y) {
      for (int z = 0; z < 2; ++z) {
        t.push_back(py[static_cast<std::size_t>(x)][static_cast<std::size_t>(
                        y)] *
                    pz[static_cast<std::size_t>(x)][static_cast<std::size_t>(
                        z)]);
      }
    }
  }
  ChannelSpec ch = ChannelSpec::make(2, 3, 2, std::move(t));
  DegradednessResult d = degradedness_test(ch);
  CHECK(!d.feasible);
}

TEST_CASE("random cascades are always detected as degraded") {
  Rng rng(424242);
  for (int trial = 0; trial < 30; ++trial) {
    int nx = 2 + rng.uniform_int(2);
    int ny = 2 + rng.uniform_int(2);
    int nz = 2 + rng.uniform_int(2);
    std::vector<std::vector<double>> py, qz;
    for (int x = 0; x < nx; ++x) py.push_back(rng.dirichlet(ny));
    for (int y = 0; y < ny; ++y) qz.push_back(rng.dirichlet(nz));
    ChannelSpec ch = oracle::cascade(py, qz);
    DegradednessResult d = degradedness_test(ch);
    CHECK(d.feasible);
    CHECK(d.residual <= 1e-8);
  }
}

TEST_CASE("input-distribution gap matches its definition") {
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  // at the uniform input: (1 - h(0.1)) - (1 - h(0.2)) = h(0.2) - h(0.1)
  double g = xy_minus_xz_gap(ch, {0.5, 0.5});
  CHECK(g == doctest::Approx(oracle::h(0.2) - oracle::h(0.1)).epsilon(1e-9));
  CHECK_THROWS_AS(xy_minus_xz_gap(ch, {0.7, 0.2}), NotNormalized);
  CHECK_THROWS_AS(xy_minus_xz_gap(ch, {0.5, 0.25, 0.25}), ShapeMismatch);
}

TEST_CASE("more-capable search certifies a violation with a witness") {
  // Y is a flip-0.2 copy, Z is noiseless: the gap at the uniform input is
  // -h(0.2), and that is the minimum.
  std::vector<double> t(8, 0.0);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      t[static_cast<std::size_t>(x * 4 + y * 2 + x)] =
          (y == x) ? 0.8 : 0.2;
    }
  }
  ChannelSpec ch = ChannelSpec::make(2, 2, 2, std::move(t));
  MoreCapableResult mc = more_capable_test(ch, {30, 150}, 5);
  CHECK(mc.verdict == McVerdict::Violated);
  CHECK(mc.min_gap <= -oracle::h(0.2) + 1e-4);
  CHECK(mc.min_gap >= -oracle::h(0.2) - 1e-9);
  // the witness reproduces the reported gap
  CHECK(xy_minus_xz_gap(ch, mc.witness_px) ==
        doctest::Approx(mc.min_gap).epsilon(1e-12));
}

TEST_CASE("erasure receiver below capacity of the crossover receiver") {
  std::vector<double> t;
  std::vector<std::vector<double>> py = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
  std::vector<std::vector<double>> pz = {{0.9, 0.1}, {0.1, 0.9}};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 3; ++y) {
      for (int z = 0; z < 2; ++z) {
        t.push_back(py[static_cast<std::size_t>(x)][static_cast<std::size_t>(
                        y)] *
                    pz[static_cast<std::size_t>(x)][static_cast<std::size_t>(
                        z)]);
      }
    }
  }
  ChannelSpec ch = ChannelSpec::make(2, 3, 2, std::move(t));
  // at the uniform input the gap is 0.5 - (1 - h(0.1)) < 0
  CHECK(xy_minus_xz_gap(ch, {0.5, 0.5}) ==
        doctest::Approx(0.5 - (1.0 - oracle::h(0.1))).epsilon(1e-9));
  MoreCapableResult mc = more_capable_test(ch, {30, 150}, 7);
  CHECK(mc.verdict == McVerdict::Violated);
  CHECK(mc.min_gap <= 0.5 - (1.0 - oracle::h(0.1)) + 1e-6);
}

TEST_CASE("degraded pairs pass the more-capable search") {
  ChannelSpec ch = oracle::bsc_pair(0.1, 0.2);
  MoreCapableResult mc = more_capable_test(ch, {20, 100}, 3);
  CHECK(mc.verdict == McVerdict::HoldsUpToSearch);
  CHECK(mc.min_gap >= -1e-9);
  CHECK(mc.evaluations > 0);
}

TEST_CASE("swapping the receivers flips a one-sided violation") {
  // As given, Y = noiseless and Z = flip-0.2: more-capable holds.  With the
  // receivers exchanged the search must certify the violation.
  std::vector<double> fwd(8, 0.0), rev(8, 0.0);
  for (int x = 0; x < 2; ++x) {
    for (int o = 0; o < 2; ++o) {
      double p = (o == x) ? 0.8 : 0.2;
      fwd[static_cast<std::size_t>(x * 4 + x * 2 + o)] = p;
      rev[static_cast<std::size_t>(x * 4 + o * 2 + x)] = p;
    }
  }
  ChannelSpec fwd_ch = ChannelSpec::make(2, 2, 2, std::move(fwd));
  ChannelSpec rev_ch = ChannelSpec::make(2, 2, 2, std::move(rev));
  MoreCapableResult a = more_capable_test(fwd_ch, {20, 100}, 1);
  MoreCapableResult b = more_capable_test(rev_ch, {20, 100}, 1);
  CHECK(a.verdict == McVerdict::HoldsUpToSearch);
  CHECK(b.verdict == McVerdict::Violated);
}

TEST_CASE("classification report aggregates all three tests") {
  ClassReport rep = classify(oracle::semidet(0.1), {20, 100}, 0);
  CHECK(rep.y_deterministic);
  CHECK(!rep.z_deterministic);
  CHECK(rep.degraded.feasible);  // Z is a noisy function of Y = X
  CHECK(rep.more_capable.verdict == McVerdict::HoldsUpToSearch);
}

TEST_CASE("more-capable search is deterministic in the seed") {
  ChannelSpec ch = oracle::bsc_pair(0.15, 0.3);
  MoreCapableResult a = more_capable_test(ch, {10, 80}, 99);
  MoreCapableResult b = more_capable_test(ch, {10, 80}, 99);
  CHECK(a.min_gap == b.min_gap);
  CHECK(a.witness_px == b.witness_px);
}
