#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bcrk/errors.hpp"
#include "bcrk/tolerances.hpp"

namespace bcrk {

// A named finite alphabet.  The name doubles as the axis identifier inside a
// joint table, so it must be unique within any one table.
struct Alphabet {
  std::string name;
  int size = 0;
};

bool operator==(const Alphabet& a, const Alphabet& b) noexcept;
inline bool operator!=(const Alphabet& a, const Alphabet& b) noexcept {
  return !(a == b);
}

// A set of axis names used to address groups of variables in a joint table.
using AxisGroup = std::vector<std::string>;

// Dense probability table over an ordered tuple of alphabets, stored row-major
// with the first axis slowest.  Axis order is part of the value: tables with
// permuted axes compare unequal.  All entries are nonnegative and sum to one
// within tol::norm; construction enforces this and the tol::max_cells cap.
class JointPmf {
 public:
  JointPmf() = default;

  static JointPmf validated(std::vector<Alphabet> axes,
                            std::vector<double> table);

  const std::vector<Alphabet>& axes() const noexcept { return axes_; }
  const std::vector<double>& table() const noexcept { return table_; }
  std::size_t cell_count() const noexcept { return table_.size(); }
  int axis_count() const noexcept { return static_cast<int>(axes_.size()); }

  bool has_axis(std::string_view name) const noexcept;
  int axis_index(std::string_view name) const;  // throws UnknownAxis

  // Probability of the cell addressed by one coordinate per axis.
  double mass(const std::vector<int>& coords) const;

  // Marginal over `keep` (axis names), in the order given.
  JointPmf marginal(const AxisGroup& keep) const;

  friend bool operator==(const JointPmf& a, const JointPmf& b);

 private:
  std::vector<Alphabet> axes_;
  std::vector<double> table_;
};

// Conditional table P(outputs | givens), stored given-major: the slice for a
// given-tuple is a contiguous pmf over the output tuple.  Every slice must be
// a valid pmf, including slices that end up conditioned on zero-probability
// events (builders fill those with the uniform distribution).
class ConditionalPmf {
 public:
  ConditionalPmf() = default;

  static ConditionalPmf validated(std::vector<Alphabet> given,
                                  std::vector<Alphabet> output,
                                  std::vector<double> table);

  const std::vector<Alphabet>& given_axes() const noexcept { return given_; }
  const std::vector<Alphabet>& output_axes() const noexcept { return output_; }
  std::size_t given_count() const noexcept { return given_cells_; }
  std::size_t output_count() const noexcept { return output_cells_; }
  const std::vector<double>& table() const noexcept { return table_; }

  double prob(std::size_t given_flat, std::size_t output_flat) const {
    return table_[given_flat * output_cells_ + output_flat];
  }

  friend bool operator==(const ConditionalPmf& a, const ConditionalPmf& b);

 private:
  std::vector<Alphabet> given_;
  std::vector<Alphabet> output_;
  std::vector<double> table_;
  std::size_t given_cells_ = 0;
  std::size_t output_cells_ = 0;
};

// Free-function spellings of the core operations.

JointPmf validate_pmf(std::vector<Alphabet> axes, std::vector<double> table);

JointPmf marginalize(const JointPmf& joint, const AxisGroup& keep);

// Extends `base` by the factor's output axes: result(base_cell, out_cell) =
// base(base_cell) * factor(out_cell | given-projection of base_cell).  The
// factor's given axes must all be present in `base` with matching sizes; its
// output axes must be new.
JointPmf chain_compose(const JointPmf& base, const ConditionalPmf& factor);

// P(out | given) computed from a joint; zero-mass given-slices become uniform.
ConditionalPmf conditional_from_joint(const JointPmf& joint,
                                      const AxisGroup& given,
                                      const AxisGroup& output);

// Conditional mutual information I(A;B|C) in bits.  A, B, C are axis groups of
// `joint`; C must be disjoint from A and B, and A, B must either be disjoint
// or denote the same set (which yields the conditional entropy H(A|C)).
// Values in [tol::info_clamp, 0) clamp to zero.
double info_measure(const JointPmf& joint, const AxisGroup& a,
                    const AxisGroup& b, const AxisGroup& c = {});

// Entropy H(A|C) in bits; shorthand for info_measure(joint, a, a, c).
double entropy_measure(const JointPmf& joint, const AxisGroup& a,
                       const AxisGroup& c = {});

// Absolute residuals of the two telescoping chain-rule identities used to
// sanity-check the measure plumbing on product-form block variables:
//   first:  I(W;Z_1..Z_n) = sum_i [ I(W,Y_<i ; Z_i..Z_n) - I(W,Y_<=i ; Z_>i) ]
//   second: sum_i I(Z_i ; Y_<i | W, Z_>i) = sum_i I(Y_i ; Z_>i | W, Y_<i)
// `ys` and `zs` list the per-position axis names in order; `w` may be empty.
std::pair<double, double> csiszar_identity_residuals(
    const JointPmf& joint, const AxisGroup& w,
    const std::vector<std::string>& ys, const std::vector<std::string>& zs);

// Memoizes marginal entropies of one joint, keyed by axis bitmask.  The bound
// evaluators ask for many overlapping groups; this keeps each marginal pass
// single.
class GroupEntropyCache {
 public:
  explicit GroupEntropyCache(const JointPmf& joint) : joint_(&joint) {}

  std::uint64_t mask_of(const AxisGroup& g) const;
  double entropy_mask(std::uint64_t mask);
  double entropy(const AxisGroup& a, const AxisGroup& c = {});
  double mutual(const AxisGroup& a, const AxisGroup& b,
                const AxisGroup& c = {});

 private:
  const JointPmf* joint_;
  std::unordered_map<std::uint64_t, double> cache_;
};

// Entropy in bits of a raw nonnegative table, with the tol::zero mask.
double entropy_bits(const std::vector<double>& p);

// Clamp helper shared by the measure paths: tiny negatives are rounding noise,
// anything below tol::info_clamp is an internal error.
double clamp_information(double v);

}  // namespace bcrk
