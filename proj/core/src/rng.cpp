#include "bcrk/rng.hpp"

#include <cmath>

#include "bcrk/errors.hpp"

namespace bcrk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  return splitmix64(s);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t s = seed;
  for (auto& w : s_) w = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_gauss_) {
    has_cached_gauss_ = false;
    return cached_gauss_;
  }
  // Box-Muller on (0,1] x [0,1).
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  cached_gauss_ = r * std::sin(a);
  has_cached_gauss_ = true;
  return r * std::cos(a);
}

double Rng::exponential() {
  return -std::log1p(-uniform());
}

int Rng::uniform_int(int n) {
  if (n < 1) throw InvalidArgument("uniform_int requires n >= 1");
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

std::vector<double> Rng::dirichlet(int n) {
  if (n < 1) throw InvalidArgument("dirichlet requires n >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& x : v) {
    x = exponential();
    sum += x;
  }
  if (sum < 1e-300) {
    double u = 1.0 / static_cast<double>(n);
    for (auto& x : v) x = u;
    return v;
  }
  for (auto& x : v) x /= sum;
  return v;
}

Rng Rng::fork(std::uint64_t stream) const {
  return Rng(mix_seed(seed_, stream));
}

}  // namespace bcrk
