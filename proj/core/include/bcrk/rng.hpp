#pragma once

#include <cstdint>
#include <vector>

namespace bcrk {

// Self-contained xoshiro256++ generator.  All helper distributions are
// implemented here rather than with <random> adaptors so that a seed pins the
// exact byte stream regardless of standard library version.  Searches fork one
// generator per restart, which makes results independent of thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();      // [0, 1)
  double gaussian();     // standard normal (Box-Muller, pair cached)
  double exponential();  // rate 1
  int uniform_int(int n);  // uniform on [0, n), n >= 1
  std::vector<double> dirichlet(int n);  // flat Dirichlet over the simplex

  // Child generator for stream `stream`, independent of draws made so far.
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_ = 0;
  double cached_gauss_ = 0.0;
  bool has_cached_gauss_ = false;
};

// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace bcrk
