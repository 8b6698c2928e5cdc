#include "bcrk/prob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcrk {

namespace {

std::size_t checked_cell_count(const std::vector<Alphabet>& axes) {
  std::size_t cells = 1;
  for (const auto& ax : axes) {
    if (ax.size < 1) {
      throw ShapeMismatch("alphabet '" + ax.name + "' must have size >= 1");
    }
    std::size_t s = static_cast<std::size_t>(ax.size);
    if (cells > tol::max_cells / s) {
      throw StateSpaceExceeded("joint table would exceed the dense cell cap");
    }
    cells *= s;
  }
  if (cells > tol::max_cells) {
    throw StateSpaceExceeded("joint table would exceed the dense cell cap");
  }
  return cells;
}

void check_unique_names(const std::vector<Alphabet>& axes) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].name.empty()) throw ShapeMismatch("axis name must be nonempty");
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i].name == axes[j].name) {
        throw AxisCollision("duplicate axis name '" + axes[i].name + "'");
      }
    }
  }
}

void check_entries(const std::vector<double>& table) {
  for (double v : table) {
    if (!std::isfinite(v)) throw NotNormalized("non-finite table entry");
    if (v < 0.0) throw NegativeEntry("negative table entry");
  }
}

double table_sum(const double* p, std::size_t n) {
  // Neumaier-compensated sum; keeps normalization checks meaningful on large
  // tables.
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = s + p[i];
    if (std::abs(s) >= std::abs(p[i])) {
      c += (s - t) + p[i];
    } else {
      c += (p[i] - t) + s;
    }
    s = t;
  }
  return s + c;
}

}  // namespace

bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
  return a.size == b.size && a.name == b.name;
}

double entropy_bits(const std::vector<double>& p) {
  double s = 0.0, c = 0.0;
  for (double v : p) {
    if (v <= tol::zero) continue;
    double term = -v * std::log2(v);
    double t = s + term;
    if (std::abs(s) >= std::abs(term)) {
      c += (s - t) + term;
    } else {
      c += (term - t) + s;
    }
    s = t;
  }
  double h = s + c;
  // A near-point-mass table can carry total mass a few ulp above 1, driving
  // -p log p a hair below zero; entropy of a validated table is nonnegative.
  return h < 0.0 ? 0.0 : h;
}

double clamp_information(double v) {
  if (v >= 0.0) return v;
  if (v >= tol::info_clamp) return 0.0;
  throw std::logic_error("information measure went negative beyond rounding");
}

// ---------------------------------------------------------------------------
// JointPmf

JointPmf JointPmf::validated(std::vector<Alphabet> axes,
                             std::vector<double> table) {
  check_unique_names(axes);
  std::size_t cells = checked_cell_count(axes);
  if (table.size() != cells) {
    throw ShapeMismatch("table has " + std::to_string(table.size()) +
                        " entries, axes imply " + std::to_string(cells));
  }
  check_entries(table);
  double sum = table_sum(table.data(), table.size());
  if (std::abs(sum - 1.0) > tol::norm) {
    throw NotNormalized("table sums to " + std::to_string(sum));
  }
  JointPmf j;
  j.axes_ = std::move(axes);
  j.table_ = std::move(table);
  return j;
}

bool JointPmf::has_axis(std::string_view name) const noexcept {
  for (const auto& ax : axes_) {
    if (ax.name == name) return true;
  }
  return false;
}

int JointPmf::axis_index(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return static_cast<int>(i);
  }
  throw UnknownAxis("no axis named '" + std::string(name) + "'");
}

double JointPmf::mass(const std::vector<int>& coords) const {
  if (coords.size() != axes_.size()) {
    throw ShapeMismatch("coordinate count does not match axis count");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= axes_[i].size) {
      throw ShapeMismatch("coordinate out of range");
    }
    flat = flat * static_cast<std::size_t>(axes_[i].size) +
           static_cast<std::size_t>(coords[i]);
  }
  return table_[flat];
}

JointPmf JointPmf::marginal(const AxisGroup& keep) const {
  const std::size_t n_ax = axes_.size();
  std::vector<Alphabet> out_axes;
  out_axes.reserve(keep.size());
  std::vector<int> kept_idx;
  kept_idx.reserve(keep.size());
  for (const auto& name : keep) {
    int idx = axis_index(name);
    for (int seen : kept_idx) {
      if (seen == idx) {
        throw OverlappingGroups("axis '" + name + "' repeated in marginal");
      }
    }
    kept_idx.push_back(idx);
    out_axes.push_back(axes_[static_cast<std::size_t>(idx)]);
  }

  std::size_t out_cells = 1;
  for (const auto& ax : out_axes) out_cells *= static_cast<std::size_t>(ax.size);

  // Per-input-axis stride into the output table (0 when marginalized away).
  std::vector<std::size_t> out_stride(n_ax, 0);
  {
    std::size_t stride = 1;
    for (std::size_t k = keep.size(); k-- > 0;) {
      out_stride[static_cast<std::size_t>(kept_idx[k])] = stride;
      stride *= static_cast<std::size_t>(out_axes[k].size);
    }
  }

  std::vector<double> out(out_cells, 0.0);
  std::vector<double> comp(out_cells, 0.0);  // Neumaier compensation per bin
  std::vector<int> coord(n_ax, 0);
  std::size_t out_flat = 0;
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    double v = table_[flat];
    double& s = out[out_flat];
    double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      comp[out_flat] += (s - t) + v;
    } else {
      comp[out_flat] += (v - t) + s;
    }
    s = t;
    // odometer increment
    for (std::size_t a = n_ax; a-- > 0;) {
      coord[a]++;
      out_flat += out_stride[a];
      if (coord[a] < axes_[a].size) break;
      out_flat -= out_stride[a] * static_cast<std::size_t>(axes_[a].size);
      coord[a] = 0;
    }
  }
  for (std::size_t i = 0; i < out_cells; ++i) out[i] += comp[i];

  JointPmf j;
  j.axes_ = std::move(out_axes);
  j.table_ = std::move(out);
  return j;
}

bool operator==(const JointPmf& a, const JointPmf& b) {
  return a.axes_ == b.axes_ && a.table_ == b.table_;
}

// ---------------------------------------------------------------------------
// ConditionalPmf

ConditionalPmf ConditionalPmf::validated(std::vector<Alphabet> given,
                                         std::vector<Alphabet> output,
                                         std::vector<double> table) {
  std::vector<Alphabet> all = given;
  all.insert(all.end(), output.begin(), output.end());
  check_unique_names(all);
  if (output.empty()) throw ShapeMismatch("conditional needs output axes");
  std::size_t cells = checked_cell_count(all);
  if (table.size() != cells) {
    throw ShapeMismatch("conditional table has " +
                        std::to_string(table.size()) + " entries, axes imply " +
                        std::to_string(cells));
  }
  check_entries(table);
  std::size_t out_cells = 1;
  for (const auto& ax : output) out_cells *= static_cast<std::size_t>(ax.size);
  std::size_t given_cells = cells / out_cells;
  for (std::size_t g = 0; g < given_cells; ++g) {
    double sum = table_sum(table.data() + g * out_cells, out_cells);
    if (std::abs(sum - 1.0) > tol::norm) {
      throw NotNormalized("conditional slice " + std::to_string(g) +
                          " sums to " + std::to_string(sum));
    }
  }
  ConditionalPmf c;
  c.given_ = std::move(given);
  c.output_ = std::move(output);
  c.table_ = std::move(table);
  c.given_cells_ = given_cells;
  c.output_cells_ = out_cells;
  return c;
}

bool operator==(const ConditionalPmf& a, const ConditionalPmf& b) {
  return a.given_ == b.given_ && a.output_ == b.output_ && a.table_ == b.table_;
}

// ---------------------------------------------------------------------------
// Free operations

JointPmf validate_pmf(std::vector<Alphabet> axes, std::vector<double> table) {
  return JointPmf::validated(std::move(axes), std::move(table));
}

JointPmf marginalize(const JointPmf& joint, const AxisGroup& keep) {
  return joint.marginal(keep);
}

JointPmf chain_compose(const JointPmf& base, const ConditionalPmf& factor) {
  const auto& baxes = base.axes();
  // Locate each given axis inside the base and check alphabet compatibility.
  std::vector<int> given_idx;
  given_idx.reserve(factor.given_axes().size());
  for (const auto& gax : factor.given_axes()) {
    int idx = base.has_axis(gax.name) ? base.axis_index(gax.name) : -1;
    if (idx < 0) {
      throw UnknownAxis("factor conditions on axis '" + gax.name +
                        "' absent from the base joint");
    }
    if (baxes[static_cast<std::size_t>(idx)].size != gax.size) {
      throw IncompatibleAlphabets("axis '" + gax.name +
                                  "' has mismatched sizes");
    }
    given_idx.push_back(idx);
  }
  for (const auto& oax : factor.output_axes()) {
    if (base.has_axis(oax.name)) {
      throw AxisCollision("output axis '" + oax.name +
                          "' already present in the base joint");
    }
  }

  std::vector<Alphabet> out_axes = baxes;
  out_axes.insert(out_axes.end(), factor.output_axes().begin(),
                  factor.output_axes().end());
  std::size_t cells = checked_cell_count(out_axes);
  const std::size_t o = factor.output_count();
  std::vector<double> out(cells, 0.0);

  // Given-flat index tracked incrementally along the base odometer.
  const std::size_t n_ax = baxes.size();
  std::vector<std::size_t> gstride(n_ax, 0);
  {
    std::size_t stride = 1;
    for (std::size_t k = given_idx.size(); k-- > 0;) {
      gstride[static_cast<std::size_t>(given_idx[k])] = stride;
      stride *= static_cast<std::size_t>(
          factor.given_axes()[k].size);
    }
  }
  std::vector<int> coord(n_ax, 0);
  std::size_t gflat = 0;
  const auto& btab = base.table();
  const auto& ftab = factor.table();
  for (std::size_t bflat = 0; bflat < btab.size(); ++bflat) {
    double p = btab[bflat];
    double* dst = out.data() + bflat * o;
    if (p > 0.0) {
      const double* row = ftab.data() + gflat * o;
      for (std::size_t k = 0; k < o; ++k) dst[k] = p * row[k];
    }
    for (std::size_t a = n_ax; a-- > 0;) {
      coord[a]++;
      gflat += gstride[a];
      if (coord[a] < baxes[a].size) break;
      gflat -= gstride[a] * static_cast<std::size_t>(baxes[a].size);
      coord[a] = 0;
    }
  }
  return JointPmf::validated(std::move(out_axes), std::move(out));
}

ConditionalPmf conditional_from_joint(const JointPmf& joint,
                                      const AxisGroup& given,
                                      const AxisGroup& output) {
  AxisGroup order = given;
  order.insert(order.end(), output.begin(), output.end());
  JointPmf m = joint.marginal(order);  // also validates disjointness

  std::vector<Alphabet> gaxes, oaxes;
  for (std::size_t i = 0; i < given.size(); ++i) gaxes.push_back(m.axes()[i]);
  for (std::size_t i = given.size(); i < order.size(); ++i) {
    oaxes.push_back(m.axes()[i]);
  }
  std::size_t o = 1;
  for (const auto& ax : oaxes) o *= static_cast<std::size_t>(ax.size);
  std::size_t g = m.cell_count() / o;

  std::vector<double> table(m.table());
  for (std::size_t gi = 0; gi < g; ++gi) {
    double* row = table.data() + gi * o;
    double sum = table_sum(row, o);
    if (sum <= tol::zero) {
      double u = 1.0 / static_cast<double>(o);
      for (std::size_t k = 0; k < o; ++k) row[k] = u;
    } else {
      for (std::size_t k = 0; k < o; ++k) row[k] /= sum;
    }
  }
  return ConditionalPmf::validated(std::move(gaxes), std::move(oaxes),
                                   std::move(table));
}

// ---------------------------------------------------------------------------
// GroupEntropyCache and measures

std::uint64_t GroupEntropyCache::mask_of(const AxisGroup& g) const {
  std::uint64_t mask = 0;
  for (const auto& name : g) {
    int idx = joint_->axis_index(name);
    std::uint64_t bit = 1ULL << idx;
    if (mask & bit) {
      throw OverlappingGroups("axis '" + name + "' repeated within a group");
    }
    mask |= bit;
  }
  return mask;
}

double GroupEntropyCache::entropy_mask(std::uint64_t mask) {
  if (mask == 0) return 0.0;
  auto it = cache_.find(mask);
  if (it != cache_.end()) return it->second;
  AxisGroup keep;
  for (int i = 0; i < joint_->axis_count(); ++i) {
    if (mask & (1ULL << i)) {
      keep.push_back(joint_->axes()[static_cast<std::size_t>(i)].name);
    }
  }
  double h;
  if (keep.size() == joint_->axes().size()) {
    h = entropy_bits(joint_->table());
  } else {
    h = entropy_bits(joint_->marginal(keep).table());
  }
  cache_.emplace(mask, h);
  return h;
}

double GroupEntropyCache::entropy(const AxisGroup& a, const AxisGroup& c) {
  return mutual(a, a, c);
}

double GroupEntropyCache::mutual(const AxisGroup& a, const AxisGroup& b,
                                 const AxisGroup& c) {
  std::uint64_t ma = mask_of(a), mb = mask_of(b), mc = mask_of(c);
  if (mc & (ma | mb)) {
    throw OverlappingGroups("conditioning group overlaps an argument group");
  }
  if (ma != mb && (ma & mb) != 0) {
    throw OverlappingGroups("argument groups overlap without being identical");
  }
  if (ma == 0 || mb == 0) return 0.0;
  // I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C); with A == B this is H(A|C).
  double h = entropy_mask(ma | mc) + entropy_mask(mb | mc) -
             entropy_mask(ma | mb | mc) - entropy_mask(mc);
  return clamp_information(h);
}

double info_measure(const JointPmf& joint, const AxisGroup& a,
                    const AxisGroup& b, const AxisGroup& c) {
  GroupEntropyCache cache(joint);
  return cache.mutual(a, b, c);
}

double entropy_measure(const JointPmf& joint, const AxisGroup& a,
                       const AxisGroup& c) {
  GroupEntropyCache cache(joint);
  return cache.mutual(a, a, c);
}

std::pair<double, double> csiszar_identity_residuals(
    const JointPmf& joint, const AxisGroup& w,
    const std::vector<std::string>& ys, const std::vector<std::string>& zs) {
  const std::size_t n = ys.size();
  if (n == 0 || zs.size() != n) {
    throw InvalidArgument("need matching, nonempty y and z axis lists");
  }
  GroupEntropyCache cache(joint);

  auto group = [](const AxisGroup& head, const std::vector<std::string>& tail,
                  std::size_t lo, std::size_t hi) {
    AxisGroup g = head;
    for (std::size_t i = lo; i < hi; ++i) g.push_back(tail[i]);
    return g;
  };

  // First identity: I(W;Z_1..Z_n) expanded as a telescoping sum.
  double lhs1 = cache.mutual(w, group({}, zs, 0, n));
  double rhs1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    AxisGroup wy_prev = group(w, ys, 0, i);        // W, Y_1..Y_i
    AxisGroup wy_cur = group(w, ys, 0, i + 1);     // W, Y_1..Y_{i+1}
    AxisGroup z_from_i = group({}, zs, i, n);      // Z_{i+1}..Z_n (0-based i)
    AxisGroup z_after_i = group({}, zs, i + 1, n); // Z_{i+2}..Z_n
    double a = wy_prev.empty() || z_from_i.empty()
                   ? 0.0
                   : cache.mutual(wy_prev, z_from_i);
    double b = wy_cur.empty() || z_after_i.empty()
                   ? 0.0
                   : cache.mutual(wy_cur, z_after_i);
    rhs1 += a - b;
  }

  // Second identity: the two cross sums agree.
  double lhs2 = 0.0, rhs2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    AxisGroup zi = {zs[i]};
    AxisGroup y_prev = group({}, ys, 0, i);
    AxisGroup cond_l = group(w, zs, i + 1, n);
    if (!y_prev.empty()) lhs2 += cache.mutual(zi, y_prev, cond_l);

    AxisGroup yi = {ys[i]};
    AxisGroup z_next = group({}, zs, i + 1, n);
    AxisGroup cond_r = group(w, ys, 0, i);
    if (!z_next.empty()) rhs2 += cache.mutual(yi, z_next, cond_r);
  }

  return {std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)};
}

}  // namespace bcrk
