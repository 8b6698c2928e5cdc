#include "bcrk/aux_chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bcrk {

namespace {

std::vector<double> dirichlet_table(Rng& rng, std::size_t slices,
                                    std::size_t width) {
  std::vector<double> table;
  table.reserve(slices * width);
  for (std::size_t s = 0; s < slices; ++s) {
    std::vector<double> row = rng.dirichlet(static_cast<int>(width));
    table.insert(table.end(), row.begin(), row.end());
  }
  return table;
}

// Random factor table mixing three row styles: fully random rows,
// near-deterministic rows, and exact vertex rows.  Informative auxiliaries
// tend to sit near the simplex boundary, so flat Dirichlet sampling alone
// starts the refinement far from every useful configuration.
std::vector<double> sampled_table(Rng& rng, std::size_t slices,
                                  std::size_t width) {
  const int style = rng.uniform_int(3);
  if (style == 0) return dirichlet_table(rng, slices, width);
  std::vector<double> table(slices * width, 0.0);
  for (std::size_t s = 0; s < slices; ++s) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform_int(static_cast<int>(width)));
    if (style == 1) {
      std::vector<double> row = rng.dirichlet(static_cast<int>(width));
      for (std::size_t k = 0; k < width; ++k)
        table[s * width + k] = 0.1 * row[k];
      table[s * width + j] += 0.9;
    } else {
      table[s * width + j] = 1.0;
    }
  }
  return table;
}

void check_caps(int w, int u, int v) {
  if (w < 1 || u < 1 || v < 1) {
    throw InvalidArgument("cardinality caps must be at least 1");
  }
}

// Proposes a new value for table[offset, offset+len): small or large
// Gaussian drift re-projected onto the simplex, a sharpening move toward the
// current mode, or a jump to a random vertex.  Callers accept the proposal
// only on strict objective improvement, so every move type is safe.
void perturb_slice(std::vector<double>& table, std::size_t offset,
                   std::size_t len, Rng& rng) {
  if (len < 2) return;
  switch (rng.uniform_int(4)) {
    case 0:
    case 1: {
      const double sigma = rng.uniform_int(2) == 0 ? 0.05 : 0.3;
      for (std::size_t k = 0; k < len; ++k) {
        table[offset + k] += sigma * rng.gaussian();
      }
      project_to_simplex(table.data() + offset, len);
      break;
    }
    case 2: {  // sharpen toward the current mode
      std::size_t arg = 0;
      for (std::size_t k = 1; k < len; ++k) {
        if (table[offset + k] > table[offset + arg]) arg = k;
      }
      for (std::size_t k = 0; k < len; ++k) table[offset + k] *= 0.25;
      table[offset + arg] += 0.75;
      break;
    }
    default: {  // jump to a vertex
      const std::size_t j =
          static_cast<std::size_t>(rng.uniform_int(static_cast<int>(len)));
      for (std::size_t k = 0; k < len; ++k) table[offset + k] = 0.0;
      table[offset + j] = 1.0;
      break;
    }
  }
}

}  // namespace

void project_to_simplex(double* v, std::size_t n) {
  // Euclidean projection (sort-based).
  std::vector<double> u(v, v + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += u[i];
    double cand = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - cand > 0.0) {
      rho = i;
      theta = cand;
    }
  }
  (void)rho;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::max(0.0, v[i] - theta);
    sum += v[i];
  }
  // Guard against degenerate rounding; renormalize exactly.
  if (sum <= 0.0) {
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / static_cast<double>(n);
  } else {
    for (std::size_t i = 0; i < n; ++i) v[i] /= sum;
  }
}

JointPmf compose_inner(const SourceSpec& src, const ChannelSpec& ch,
                       const InnerAuxChain& chain) {
  JointPmf joint = adjoin_common_part(src);
  joint = chain_compose(joint, chain.wuv_given_st);
  joint = chain_compose(joint, chain.x_given_wuv);
  joint = chain_compose(joint, ch.pyz_x);
  return joint;
}

JointPmf compose_outer(const SourceSpec& src, const ChannelSpec& ch,
                       const OuterAuxChain& chain) {
  JointPmf joint = adjoin_common_part(src);
  joint = chain_compose(joint, chain.uv_given_st);
  if (chain.x_map.has_value() == chain.x_given_stuv.has_value()) {
    throw InvalidArgument("outer chain needs exactly one input rule");
  }
  if (chain.x_map) {
    const int ns = src.s_alpha.size;
    const int nt = src.t_alpha.size;
    const int nx = ch.x_alpha.size;
    if (chain.x_size != nx) {
      throw IncompatibleAlphabets("chain input alphabet does not match the channel");
    }
    if (static_cast<int>(chain.x_map->size()) != ns * nt) {
      throw ShapeMismatch("input map size does not match |S|*|T|");
    }
    std::vector<double> table(
        static_cast<std::size_t>(ns * nt) * static_cast<std::size_t>(nx), 0.0);
    for (int st = 0; st < ns * nt; ++st) {
      int x = (*chain.x_map)[static_cast<std::size_t>(st)];
      if (x < 0 || x >= nx) throw ShapeMismatch("input map value out of range");
      table[static_cast<std::size_t>(st * nx + x)] = 1.0;
    }
    ConditionalPmf x_st = ConditionalPmf::validated(
        {src.s_alpha, src.t_alpha}, {ch.x_alpha}, std::move(table));
    joint = chain_compose(joint, x_st);
  } else {
    joint = chain_compose(joint, *chain.x_given_stuv);
  }
  joint = chain_compose(joint, ch.pyz_x);
  return joint;
}

InnerAuxChain sample_inner_chain(const SourceSpec& src, const ChannelSpec& ch,
                                 InnerCaps caps, Rng& rng) {
  check_caps(caps.w, caps.u, caps.v);
  const int ns = src.s_alpha.size;
  const int nt = src.t_alpha.size;
  const int nx = ch.x_alpha.size;
  const std::size_t st = static_cast<std::size_t>(ns) * nt;
  const std::size_t wuv = static_cast<std::size_t>(caps.w) * caps.u * caps.v;
  InnerAuxChain chain;
  if (rng.uniform_int(4) == 3) {
    // Superposition skeleton: W deterministically tracks one source
    // coordinate (or the pair), U and V carry fresh randomness, and X copies
    // U (or W when U is too small).  Refinement then tunes the masses.
    const int mode = rng.uniform_int(3);
    const std::size_t uv_width = static_cast<std::size_t>(caps.u) * caps.v;
    std::vector<double> table(st * wuv, 0.0);
    for (int s = 0; s < ns; ++s) {
      for (int t = 0; t < nt; ++t) {
        const int w_star =
            (mode == 0 ? s : mode == 1 ? t : s * nt + t) % caps.w;
        std::vector<double> uv_row = rng.dirichlet(static_cast<int>(uv_width));
        const std::size_t base =
            (static_cast<std::size_t>(s) * nt + t) * wuv +
            static_cast<std::size_t>(w_star) * uv_width;
        for (std::size_t k = 0; k < uv_width; ++k) table[base + k] = uv_row[k];
      }
    }
    chain.wuv_given_st = ConditionalPmf::validated(
        {src.s_alpha, src.t_alpha},
        {{"W", caps.w}, {"U", caps.u}, {"V", caps.v}}, std::move(table));
    std::vector<double> x_table(wuv * static_cast<std::size_t>(nx), 0.0);
    const bool copy_u = caps.u >= nx;
    std::size_t slice = 0;
    for (int w = 0; w < caps.w; ++w) {
      for (int u = 0; u < caps.u; ++u) {
        for (int v = 0; v < caps.v; ++v, ++slice) {
          const int x_star = (copy_u ? u : w) % nx;
          x_table[slice * static_cast<std::size_t>(nx) +
                  static_cast<std::size_t>(x_star)] = 1.0;
        }
      }
    }
    chain.x_given_wuv = ConditionalPmf::validated(
        {{"W", caps.w}, {"U", caps.u}, {"V", caps.v}}, {ch.x_alpha},
        std::move(x_table));
    return chain;
  }
  chain.wuv_given_st = ConditionalPmf::validated(
      {src.s_alpha, src.t_alpha},
      {{"W", caps.w}, {"U", caps.u}, {"V", caps.v}},
      sampled_table(rng, st, wuv));
  chain.x_given_wuv = ConditionalPmf::validated(
      {{"W", caps.w}, {"U", caps.u}, {"V", caps.v}}, {ch.x_alpha},
      sampled_table(rng, wuv, static_cast<std::size_t>(ch.x_alpha.size)));
  return chain;
}

OuterAuxChain sample_outer_chain(const SourceSpec& src, const ChannelSpec& ch,
                                 OuterCaps caps, Rng& rng,
                                 bool deterministic_x) {
  check_caps(1, caps.u, caps.v);
  const int ns = src.s_alpha.size;
  const int nt = src.t_alpha.size;
  const int nx = ch.x_alpha.size;
  const std::size_t st = static_cast<std::size_t>(ns) * nt;
  const std::size_t uv = static_cast<std::size_t>(caps.u) * caps.v;
  OuterAuxChain chain;
  chain.uv_given_st = ConditionalPmf::validated(
      {src.s_alpha, src.t_alpha}, {{"U", caps.u}, {"V", caps.v}},
      sampled_table(rng, st, uv));
  chain.x_size = nx;
  if (deterministic_x) {
    std::vector<int> map(st);
    for (std::size_t i = 0; i < st; ++i) map[i] = rng.uniform_int(nx);
    chain.x_map = std::move(map);
  } else {
    chain.x_given_stuv = ConditionalPmf::validated(
        {src.s_alpha, src.t_alpha, {"U", caps.u}, {"V", caps.v}}, {ch.x_alpha},
        sampled_table(rng, st * uv, static_cast<std::size_t>(nx)));
  }
  return chain;
}

InnerAuxChain sample_decoupled_chain(const SourceSpec& src,
                                     const ChannelSpec& ch, InnerCaps caps,
                                     Rng& rng) {
  check_caps(caps.w, caps.u, caps.v);
  const std::size_t st =
      static_cast<std::size_t>(src.s_alpha.size) * src.t_alpha.size;
  const std::size_t wuv =
      static_cast<std::size_t>(caps.w) * caps.u * caps.v;
  std::vector<double> shared = sampled_table(rng, 1, wuv);
  std::vector<double> table;
  table.reserve(st * wuv);
  for (std::size_t s = 0; s < st; ++s) {
    table.insert(table.end(), shared.begin(), shared.end());
  }
  InnerAuxChain chain;
  chain.wuv_given_st = ConditionalPmf::validated(
      {src.s_alpha, src.t_alpha},
      {{"W", caps.w}, {"U", caps.u}, {"V", caps.v}}, std::move(table));
  chain.x_given_wuv = ConditionalPmf::validated(
      {{"W", caps.w}, {"U", caps.u}, {"V", caps.v}}, {ch.x_alpha},
      sampled_table(rng, wuv, static_cast<std::size_t>(ch.x_alpha.size)));
  return chain;
}

bool is_decoupled(const InnerAuxChain& chain) {
  const std::size_t slices = chain.wuv_given_st.given_count();
  const std::size_t width = chain.wuv_given_st.output_count();
  const auto& t = chain.wuv_given_st.table();
  for (std::size_t s = 1; s < slices; ++s) {
    for (std::size_t k = 0; k < width; ++k) {
      if (t[s * width + k] != t[k]) return false;
    }
  }
  return true;
}

InnerAuxChain local_refine(
    const std::function<double(const InnerAuxChain&)>& objective,
    InnerAuxChain chain, int steps, Rng& rng, bool keep_decoupled) {
  double best = objective(chain);
  const std::size_t st_slices = chain.wuv_given_st.given_count();
  const std::size_t wuv_width = chain.wuv_given_st.output_count();
  const std::size_t x_slices = chain.x_given_wuv.given_count();
  const std::size_t x_width = chain.x_given_wuv.output_count();
  const std::size_t ns = static_cast<std::size_t>(
      chain.wuv_given_st.given_axes()[0].size);
  const std::size_t nt = static_cast<std::size_t>(
      chain.wuv_given_st.given_axes()[1].size);
  for (int s = 0; s < steps; ++s) {
    int which = rng.uniform_int(keep_decoupled ? 2 : 4);
    InnerAuxChain cand = chain;
    if (which == 0 || which >= 2) {
      std::vector<double> table = cand.wuv_given_st.table();
      if (keep_decoupled) {
        perturb_slice(table, 0, wuv_width, rng);
        for (std::size_t sl = 1; sl < st_slices; ++sl) {
          std::copy(table.begin(),
                    table.begin() + static_cast<std::ptrdiff_t>(wuv_width),
                    table.begin() + static_cast<std::ptrdiff_t>(sl * wuv_width));
        }
      } else if (which == 2 && ns > 1) {
        // Coordinated move: perturb one t-row and install it for every s, so
        // the factor can become conditionally independent of S given T (the
        // direction rewarded by the Y-side penalty terms).
        const std::size_t t0 =
            static_cast<std::size_t>(rng.uniform_int(static_cast<int>(nt)));
        perturb_slice(table, t0 * wuv_width, wuv_width, rng);
        for (std::size_t si = 1; si < ns; ++si) {
          std::copy(table.begin() + static_cast<std::ptrdiff_t>(t0 * wuv_width),
                    table.begin() +
                        static_cast<std::ptrdiff_t>((t0 + 1) * wuv_width),
                    table.begin() +
                        static_cast<std::ptrdiff_t>((si * nt + t0) * wuv_width));
        }
      } else if (which == 3 && nt > 1) {
        // Mirror image: one s-row copied across all t.
        const std::size_t s0 =
            static_cast<std::size_t>(rng.uniform_int(static_cast<int>(ns)));
        perturb_slice(table, s0 * nt * wuv_width, wuv_width, rng);
        for (std::size_t ti = 1; ti < nt; ++ti) {
          std::copy(
              table.begin() + static_cast<std::ptrdiff_t>(s0 * nt * wuv_width),
              table.begin() +
                  static_cast<std::ptrdiff_t>((s0 * nt + 1) * wuv_width),
              table.begin() +
                  static_cast<std::ptrdiff_t>((s0 * nt + ti) * wuv_width));
        }
      } else {
        std::size_t sl =
            static_cast<std::size_t>(rng.uniform_int(static_cast<int>(st_slices)));
        perturb_slice(table, sl * wuv_width, wuv_width, rng);
      }
      cand.wuv_given_st = ConditionalPmf::validated(
          std::vector<Alphabet>(chain.wuv_given_st.given_axes()),
          std::vector<Alphabet>(chain.wuv_given_st.output_axes()),
          std::move(table));
    } else {
      std::vector<double> table = cand.x_given_wuv.table();
      std::size_t sl =
          static_cast<std::size_t>(rng.uniform_int(static_cast<int>(x_slices)));
      perturb_slice(table, sl * x_width, x_width, rng);
      cand.x_given_wuv = ConditionalPmf::validated(
          std::vector<Alphabet>(chain.x_given_wuv.given_axes()),
          std::vector<Alphabet>(chain.x_given_wuv.output_axes()),
          std::move(table));
    }
    double val = objective(cand);
    if (val > best) {
      best = val;
      chain = std::move(cand);
    }
  }
  return chain;
}

OuterAuxChain local_refine(
    const std::function<double(const OuterAuxChain&)>& objective,
    OuterAuxChain chain, int steps, Rng& rng) {
  double best = objective(chain);
  const std::size_t uv_slices = chain.uv_given_st.given_count();
  const std::size_t uv_width = chain.uv_given_st.output_count();
  for (int s = 0; s < steps; ++s) {
    int which = rng.uniform_int(2);
    OuterAuxChain cand = chain;
    if (which == 0) {
      std::vector<double> table = cand.uv_given_st.table();
      std::size_t sl =
          static_cast<std::size_t>(rng.uniform_int(static_cast<int>(uv_slices)));
      perturb_slice(table, sl * uv_width, uv_width, rng);
      cand.uv_given_st = ConditionalPmf::validated(
          std::vector<Alphabet>(chain.uv_given_st.given_axes()),
          std::vector<Alphabet>(chain.uv_given_st.output_axes()),
          std::move(table));
    } else if (cand.x_map) {
      std::vector<int>& map = *cand.x_map;
      std::size_t cell =
          static_cast<std::size_t>(rng.uniform_int(static_cast<int>(map.size())));
      map[cell] = rng.uniform_int(std::max(cand.x_size, 1));
    } else {
      std::vector<double> table = cand.x_given_stuv->table();
      const std::size_t x_width = cand.x_given_stuv->output_count();
      std::size_t sl = static_cast<std::size_t>(
          rng.uniform_int(static_cast<int>(cand.x_given_stuv->given_count())));
      perturb_slice(table, sl * x_width, x_width, rng);
      cand.x_given_stuv = ConditionalPmf::validated(
          std::vector<Alphabet>(chain.x_given_stuv->given_axes()),
          std::vector<Alphabet>(chain.x_given_stuv->output_axes()),
          std::move(table));
    }
    double val = objective(cand);
    if (val > best) {
      best = val;
      chain = std::move(cand);
    }
  }
  return chain;
}

JointPmf local_refine(const std::function<double(const JointPmf&)>& objective,
                      JointPmf joint, int steps, Rng& rng) {
  double best = objective(joint);
  for (int s = 0; s < steps; ++s) {
    std::vector<double> table = joint.table();
    perturb_slice(table, 0, table.size(), rng);
    JointPmf cand = JointPmf::validated(
        std::vector<Alphabet>(joint.axes()), std::move(table));
    double val = objective(cand);
    if (val > best) {
      best = val;
      joint = std::move(cand);
    }
  }
  return joint;
}

InnerAuxChain thm4_inner_chain(const SourceSpec& src, const ChannelSpec& ch,
                               const JointPmf& pwx) {
  if (pwx.axis_count() != 2) {
    throw ShapeMismatch("auxiliary joint must have axes (W~, X)");
  }
  const int nwt = pwx.axes()[0].size;
  const int nx = pwx.axes()[1].size;
  if (nx != ch.x_alpha.size) {
    throw IncompatibleAlphabets("auxiliary X axis does not match the channel");
  }
  const int ns = src.s_alpha.size;
  const int nt = src.t_alpha.size;
  const int nw = nt * nwt;  // W = (T, W~), t-major
  const int nu = nx;        // U = X

  const auto& pw = pwx.table();
  // P(w,u,v | s,t) = 1[w encodes t] * pwx(w~, u), v constant.
  std::vector<double> wuv(static_cast<std::size_t>(ns * nt) *
                              static_cast<std::size_t>(nw * nu),
                          0.0);
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < nt; ++t) {
      std::size_t slice = static_cast<std::size_t>(s * nt + t) *
                          static_cast<std::size_t>(nw * nu);
      for (int wt = 0; wt < nwt; ++wt) {
        int w = t * nwt + wt;
        for (int u = 0; u < nu; ++u) {
          wuv[slice + static_cast<std::size_t>(w * nu + u)] =
              pw[static_cast<std::size_t>(wt * nx + u)];
        }
      }
    }
  }
  // P(x | w,u,v) = 1[x = u].
  std::vector<double> xw(static_cast<std::size_t>(nw * nu) *
                             static_cast<std::size_t>(nx),
                         0.0);
  for (int w = 0; w < nw; ++w) {
    for (int u = 0; u < nu; ++u) {
      xw[static_cast<std::size_t>((w * nu + u) * nx + u)] = 1.0;
    }
  }
  InnerAuxChain chain;
  chain.wuv_given_st = ConditionalPmf::validated(
      {src.s_alpha, src.t_alpha}, {{"W", nw}, {"U", nu}, {"V", 1}},
      std::move(wuv));
  chain.x_given_wuv = ConditionalPmf::validated(
      {{"W", nw}, {"U", nu}, {"V", 1}}, {ch.x_alpha}, std::move(xw));
  return chain;
}

InnerAuxChain thm3_inner_chain(const SourceSpec& src, const ChannelSpec& ch,
                               const JointPmf& pwvx) {
  if (pwvx.axis_count() != 3) {
    throw ShapeMismatch("auxiliary joint must have axes (W, V, X)");
  }
  const int nw = pwvx.axes()[0].size;
  const int nv = pwvx.axes()[1].size;
  const int nx = pwvx.axes()[2].size;
  if (nx != ch.x_alpha.size) {
    throw IncompatibleAlphabets("auxiliary X axis does not match the channel");
  }
  std::vector<int> ymap = deterministic_output_map(ch, Receiver::Y);
  const int nu = ch.y_alpha.size;  // U = the Y output symbol
  const int ns = src.s_alpha.size;
  const int nt = src.t_alpha.size;

  const auto& pt = pwvx.table();
  // Shared slice P(w,u,v) = sum_x pwvx(w,v,x) 1[ymap(x)=u], replicated over
  // every (s,t).
  std::vector<double> shared(static_cast<std::size_t>(nw * nu * nv), 0.0);
  for (int w = 0; w < nw; ++w) {
    for (int v = 0; v < nv; ++v) {
      for (int x = 0; x < nx; ++x) {
        int u = ymap[static_cast<std::size_t>(x)];
        shared[static_cast<std::size_t>((w * nu + u) * nv + v)] +=
            pt[static_cast<std::size_t>((w * nv + v) * nx + x)];
      }
    }
  }
  std::vector<double> wuv;
  wuv.reserve(static_cast<std::size_t>(ns * nt) * shared.size());
  for (int st = 0; st < ns * nt; ++st) {
    wuv.insert(wuv.end(), shared.begin(), shared.end());
  }

  // P(x | w,u,v) proportional to pwvx(w,v,x) 1[ymap(x)=u]; uniform when the
  // conditioning cell has no mass.
  std::vector<double> xw(static_cast<std::size_t>(nw * nu * nv) *
                             static_cast<std::size_t>(nx),
                         0.0);
  for (int w = 0; w < nw; ++w) {
    for (int u = 0; u < nu; ++u) {
      for (int v = 0; v < nv; ++v) {
        std::size_t row = static_cast<std::size_t>(((w * nu + u) * nv + v)) *
                          static_cast<std::size_t>(nx);
        double denom = 0.0;
        for (int x = 0; x < nx; ++x) {
          if (ymap[static_cast<std::size_t>(x)] == u) {
            denom += pt[static_cast<std::size_t>((w * nv + v) * nx + x)];
          }
        }
        if (denom <= tol::zero) {
          for (int x = 0; x < nx; ++x) {
            xw[row + static_cast<std::size_t>(x)] = 1.0 / nx;
          }
        } else {
          for (int x = 0; x < nx; ++x) {
            if (ymap[static_cast<std::size_t>(x)] == u) {
              xw[row + static_cast<std::size_t>(x)] =
                  pt[static_cast<std::size_t>((w * nv + v) * nx + x)] / denom;
            }
          }
        }
      }
    }
  }

  InnerAuxChain chain;
  chain.wuv_given_st = ConditionalPmf::validated(
      {src.s_alpha, src.t_alpha}, {{"W", nw}, {"U", nu}, {"V", nv}},
      std::move(wuv));
  chain.x_given_wuv = ConditionalPmf::validated(
      {{"W", nw}, {"U", nu}, {"V", nv}}, {ch.x_alpha}, std::move(xw));
  return chain;
}

}  // namespace bcrk
