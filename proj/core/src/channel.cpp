#include "bcrk/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcrk/parallel.hpp"
#include "bcrk/simplex_lp.hpp"
#include "bcrk/tolerances.hpp"

namespace bcrk {

namespace {

double row_entropy_bits(const double* p, int n) {
  // H in bits of a nonnegative row that sums to ~1.
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p[i] > tol::zero) s -= p[i] * std::log2(p[i]);
  }
  return s;
}

}  // namespace

ChannelSpec ChannelSpec::make(int x_size, int y_size, int z_size,
                              std::vector<double> table) {
  ChannelSpec ch;
  ch.x_alpha = {"X", x_size};
  ch.y_alpha = {"Y", y_size};
  ch.z_alpha = {"Z", z_size};
  ch.pyz_x = ConditionalPmf::validated({ch.x_alpha}, {ch.y_alpha, ch.z_alpha},
                                       std::move(table));

  std::vector<double> py(static_cast<std::size_t>(x_size) *
                             static_cast<std::size_t>(y_size),
                         0.0);
  std::vector<double> pz(static_cast<std::size_t>(x_size) *
                             static_cast<std::size_t>(z_size),
                         0.0);
  for (int x = 0; x < x_size; ++x) {
    for (int y = 0; y < y_size; ++y) {
      for (int z = 0; z < z_size; ++z) {
        double v = ch.pyz_x.prob(static_cast<std::size_t>(x),
                                 static_cast<std::size_t>(y * z_size + z));
        py[static_cast<std::size_t>(x * y_size + y)] += v;
        pz[static_cast<std::size_t>(x * z_size + z)] += v;
      }
    }
  }
  ch.py_x = ConditionalPmf::validated({ch.x_alpha}, {ch.y_alpha}, std::move(py));
  ch.pz_x = ConditionalPmf::validated({ch.x_alpha}, {ch.z_alpha}, std::move(pz));
  return ch;
}

bool is_deterministic_output(const ChannelSpec& ch, Receiver which) {
  const ConditionalPmf& m = which == Receiver::Y ? ch.py_x : ch.pz_x;
  for (std::size_t x = 0; x < m.given_count(); ++x) {
    bool found = false;
    for (std::size_t o = 0; o < m.output_count(); ++o) {
      if (m.prob(x, o) >= 1.0 - tol::zero) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<int> deterministic_output_map(const ChannelSpec& ch,
                                          Receiver which) {
  const ConditionalPmf& m = which == Receiver::Y ? ch.py_x : ch.pz_x;
  std::vector<int> map(m.given_count(), 0);
  for (std::size_t x = 0; x < m.given_count(); ++x) {
    int arg = -1;
    for (std::size_t o = 0; o < m.output_count(); ++o) {
      if (m.prob(x, o) >= 1.0 - tol::zero) {
        arg = static_cast<int>(o);
        break;
      }
    }
    if (arg < 0) {
      throw NotSemiDeterministic("receiver is not a deterministic function of the input");
    }
    map[x] = arg;
  }
  return map;
}

DegradednessResult degradedness_test(const ChannelSpec& ch) {
  const int nx = ch.x_alpha.size;
  const int ny = ch.y_alpha.size;
  const int nz = ch.z_alpha.size;
  // Variables: Q(z|y) laid out y-major (ny*nz of them), then t.
  const std::size_t nq = static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  const std::size_t nvar = nq + 1;
  std::vector<double> cost(nvar, 0.0);
  cost[nq] = 1.0;  // minimize t

  std::vector<lp::Constraint> rows;
  rows.reserve(static_cast<std::size_t>(2 * nx * nz + ny));
  for (int x = 0; x < nx; ++x) {
    for (int z = 0; z < nz; ++z) {
      double pzx = ch.pz_x.prob(static_cast<std::size_t>(x),
                                static_cast<std::size_t>(z));
      lp::Constraint up, dn;
      up.coef.assign(nvar, 0.0);
      dn.coef.assign(nvar, 0.0);
      for (int y = 0; y < ny; ++y) {
        double pyx = ch.py_x.prob(static_cast<std::size_t>(x),
                                  static_cast<std::size_t>(y));
        up.coef[static_cast<std::size_t>(y * nz + z)] = pyx;
        dn.coef[static_cast<std::size_t>(y * nz + z)] = pyx;
      }
      up.coef[nq] = -1.0;  // sum - t <= pzx
      up.rel = lp::Relation::LE;
      up.rhs = pzx;
      dn.coef[nq] = 1.0;  // sum + t >= pzx
      dn.rel = lp::Relation::GE;
      dn.rhs = pzx;
      rows.push_back(std::move(up));
      rows.push_back(std::move(dn));
    }
  }
  for (int y = 0; y < ny; ++y) {
    lp::Constraint eq;
    eq.coef.assign(nvar, 0.0);
    for (int z = 0; z < nz; ++z) {
      eq.coef[static_cast<std::size_t>(y * nz + z)] = 1.0;
    }
    eq.rel = lp::Relation::EQ;
    eq.rhs = 1.0;
    rows.push_back(std::move(eq));
  }

  lp::Solution sol = lp::solve_min(cost, rows);
  DegradednessResult res;
  if (sol.status != lp::Status::Optimal) {
    // The program is always feasible (any stochastic Q with large t), so this
    // only happens on numerically broken inputs; report as not degraded.
    res.feasible = false;
    res.residual = std::numeric_limits<double>::infinity();
    return res;
  }

  // Clean the witness: clamp negatives, renormalize each row.
  res.q_z_given_y.assign(nq, 0.0);
  for (int y = 0; y < ny; ++y) {
    double sum = 0.0;
    for (int z = 0; z < nz; ++z) {
      double v = std::max(0.0, sol.x[static_cast<std::size_t>(y * nz + z)]);
      res.q_z_given_y[static_cast<std::size_t>(y * nz + z)] = v;
      sum += v;
    }
    if (sum <= tol::zero) {
      for (int z = 0; z < nz; ++z) {
        res.q_z_given_y[static_cast<std::size_t>(y * nz + z)] =
            1.0 / static_cast<double>(nz);
      }
    } else {
      for (int z = 0; z < nz; ++z) {
        res.q_z_given_y[static_cast<std::size_t>(y * nz + z)] /= sum;
      }
    }
  }

  // Recompute the residual from the cleaned witness.
  double resid = 0.0;
  for (int x = 0; x < nx; ++x) {
    for (int z = 0; z < nz; ++z) {
      double acc = 0.0;
      for (int y = 0; y < ny; ++y) {
        acc += res.q_z_given_y[static_cast<std::size_t>(y * nz + z)] *
               ch.py_x.prob(static_cast<std::size_t>(x),
                            static_cast<std::size_t>(y));
      }
      resid = std::max(resid, std::abs(acc - ch.pz_x.prob(
                                                 static_cast<std::size_t>(x),
                                                 static_cast<std::size_t>(z))));
    }
  }
  res.residual = resid;
  res.feasible = resid <= tol::degraded;
  return res;
}

double xy_minus_xz_gap(const ChannelSpec& ch, const std::vector<double>& px) {
  const int nx = ch.x_alpha.size;
  const int ny = ch.y_alpha.size;
  const int nz = ch.z_alpha.size;
  if (static_cast<int>(px.size()) != nx) {
    throw ShapeMismatch("input distribution size does not match |X|");
  }
  double sum = 0.0;
  for (double v : px) {
    if (v < -tol::zero) throw NegativeEntry("negative input probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::norm) {
    throw NotNormalized("input distribution does not sum to 1");
  }

  std::vector<double> py(static_cast<std::size_t>(ny), 0.0);
  std::vector<double> pz(static_cast<std::size_t>(nz), 0.0);
  double hy_given_x = 0.0, hz_given_x = 0.0;
  for (int x = 0; x < nx; ++x) {
    double p = px[static_cast<std::size_t>(x)];
    if (p <= tol::zero) continue;
    for (int y = 0; y < ny; ++y) {
      py[static_cast<std::size_t>(y)] +=
          p * ch.py_x.prob(static_cast<std::size_t>(x),
                           static_cast<std::size_t>(y));
    }
    for (int z = 0; z < nz; ++z) {
      pz[static_cast<std::size_t>(z)] +=
          p * ch.pz_x.prob(static_cast<std::size_t>(x),
                           static_cast<std::size_t>(z));
    }
    hy_given_x += p * row_entropy_bits(
                          ch.py_x.table().data() +
                              static_cast<std::size_t>(x) *
                                  static_cast<std::size_t>(ny),
                          ny);
    hz_given_x += p * row_entropy_bits(
                          ch.pz_x.table().data() +
                              static_cast<std::size_t>(x) *
                                  static_cast<std::size_t>(nz),
                          nz);
  }
  double ixy = row_entropy_bits(py.data(), ny) - hy_given_x;
  double ixz = row_entropy_bits(pz.data(), nz) - hz_given_x;
  return ixy - ixz;
}

MoreCapableResult more_capable_test(const ChannelSpec& ch, SearchBudget budget,
                                    std::uint64_t seed) {
  const int nx = ch.x_alpha.size;
  const int restarts = std::max(1, budget.restarts);
  const int steps = std::max(0, budget.steps);

  struct Local {
    double gap = std::numeric_limits<double>::infinity();
    std::vector<double> px;
    std::int64_t evals = 0;
  };
  std::vector<Local> results(static_cast<std::size_t>(restarts));

  parallel_for(restarts, [&](int r) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(r));
    Local loc;
    // Start point: uniform first, then simplex vertices, then Dirichlet(1).
    std::vector<double> px;
    if (r == 0) {
      px.assign(static_cast<std::size_t>(nx), 1.0 / nx);
    } else if (r <= nx) {
      px.assign(static_cast<std::size_t>(nx), 0.0);
      px[static_cast<std::size_t>(r - 1)] = 1.0;
    } else {
      px = rng.dirichlet(nx);
    }
    double gap = xy_minus_xz_gap(ch, px);
    ++loc.evals;

    // Coordinate mass-transfer refinement with a shrinking step cycle.
    static constexpr double kSigmas[3] = {0.1, 0.02, 0.004};
    for (int s = 0; s < steps; ++s) {
      std::size_t i = static_cast<std::size_t>(rng.uniform_int(nx));
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(nx));
      if (i == j) continue;
      double sigma = kSigmas[(s / 50) % 3];
      double delta = std::min(px[i], sigma * rng.uniform());
      if (delta <= 0.0) continue;
      px[i] -= delta;
      px[j] += delta;
      double cand = xy_minus_xz_gap(ch, px);
      ++loc.evals;
      if (cand < gap) {
        gap = cand;
      } else {
        px[i] += delta;
        px[j] -= delta;
      }
    }
    loc.gap = gap;
    loc.px = std::move(px);
    results[static_cast<std::size_t>(r)] = std::move(loc);
  });

  MoreCapableResult out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& loc : results) {
    out.evaluations += loc.evals;
    if (loc.gap < out.min_gap) {
      out.min_gap = loc.gap;
      out.witness_px = loc.px;
    }
  }
  out.verdict = out.min_gap < -tol::classifier ? McVerdict::Violated
                                               : McVerdict::HoldsUpToSearch;
  return out;
}

ClassReport classify(const ChannelSpec& ch, SearchBudget budget,
                     std::uint64_t seed) {
  ClassReport rep;
  rep.y_deterministic = is_deterministic_output(ch, Receiver::Y);
  rep.z_deterministic = is_deterministic_output(ch, Receiver::Z);
  rep.degraded = degradedness_test(ch);
  rep.more_capable = more_capable_test(ch, budget, seed);
  return rep;
}

}  // namespace bcrk
