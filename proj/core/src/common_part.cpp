#include "bcrk/common_part.hpp"

#include <algorithm>
#include <cmath>

namespace bcrk {

SourceSpec gacs_korner(const JointPmf& pst_in) {
  if (pst_in.axis_count() != 2) {
    throw ShapeMismatch("a source needs exactly two axes");
  }
  const int ns = pst_in.axes()[0].size;
  const int nt = pst_in.axes()[1].size;
  JointPmf pst = JointPmf::validated(
      {{"S", ns}, {"T", nt}}, std::vector<double>(pst_in.table()));

  // Union-find over S symbols [0, ns) and T symbols [ns, ns+nt).
  std::vector<int> parent(static_cast<std::size_t>(ns + nt));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };

  const auto& tab = pst.table();
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < nt; ++t) {
      if (tab[static_cast<std::size_t>(s * nt + t)] > tol::zero) {
        unite(s, ns + t);
      }
    }
  }

  std::vector<double> ps(static_cast<std::size_t>(ns), 0.0);
  std::vector<double> pt(static_cast<std::size_t>(nt), 0.0);
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < nt; ++t) {
      double v = tab[static_cast<std::size_t>(s * nt + t)];
      ps[static_cast<std::size_t>(s)] += v;
      pt[static_cast<std::size_t>(t)] += v;
    }
  }

  // Positive components in order of smallest S symbol, then one shared sink
  // for every zero-mass symbol.
  std::vector<int> root_label(static_cast<std::size_t>(ns + nt), -1);
  int next_label = 0;
  bool has_sink = false;
  SourceSpec spec;
  spec.f.assign(static_cast<std::size_t>(ns), -1);
  spec.g.assign(static_cast<std::size_t>(nt), -1);
  for (int s = 0; s < ns; ++s) {
    if (ps[static_cast<std::size_t>(s)] <= tol::zero) {
      has_sink = true;
      continue;
    }
    int r = find(s);
    if (root_label[static_cast<std::size_t>(r)] < 0) {
      root_label[static_cast<std::size_t>(r)] = next_label++;
    }
    spec.f[static_cast<std::size_t>(s)] = root_label[static_cast<std::size_t>(r)];
  }
  for (int t = 0; t < nt; ++t) {
    if (pt[static_cast<std::size_t>(t)] <= tol::zero) {
      has_sink = true;
      continue;
    }
    int r = find(ns + t);
    // Normally every positive-mass T symbol has an edge to a labeled S
    // component; sub-threshold entries can leave an orphan, which then forms
    // its own component.
    if (root_label[static_cast<std::size_t>(r)] < 0) {
      root_label[static_cast<std::size_t>(r)] = next_label++;
    }
    spec.g[static_cast<std::size_t>(t)] = root_label[static_cast<std::size_t>(r)];
  }
  int nk = next_label;
  int sink = -1;
  if (has_sink) {
    sink = nk;
    ++nk;
    for (int s = 0; s < ns; ++s) {
      if (spec.f[static_cast<std::size_t>(s)] < 0) {
        spec.f[static_cast<std::size_t>(s)] = sink;
      }
    }
    for (int t = 0; t < nt; ++t) {
      if (spec.g[static_cast<std::size_t>(t)] < 0) {
        spec.g[static_cast<std::size_t>(t)] = sink;
      }
    }
  }

  spec.s_alpha = {"S", ns};
  spec.t_alpha = {"T", nt};
  spec.k_alpha = {"K", nk};
  spec.pst = std::move(pst);
  spec.has_sink = has_sink;
  spec.sink_label = sink;

  std::vector<double> pk(static_cast<std::size_t>(nk), 0.0);
  for (int s = 0; s < ns; ++s) {
    pk[static_cast<std::size_t>(spec.f[static_cast<std::size_t>(s)])] +=
        ps[static_cast<std::size_t>(s)];
  }
  spec.hk = entropy_bits(pk);
  spec.hs = entropy_bits(ps);
  spec.ht = entropy_bits(pt);
  spec.hst = entropy_bits(spec.pst.table());

  JointPmf kst = adjoin_common_part(spec);
  GroupEntropyCache cache(kst);
  spec.i_st_given_k = cache.mutual({"S"}, {"T"}, {"K"});
  spec.markov = spec.i_st_given_k <= tol::strict;
  return spec;
}

double common_identity_residual(const SourceSpec& spec) {
  JointPmf kst = adjoin_common_part(spec);
  GroupEntropyCache cache(kst);
  double ist = cache.mutual({"S"}, {"T"});
  return std::abs(spec.i_st_given_k + spec.hk - ist);
}

JointPmf adjoin_common_part(const SourceSpec& spec) {
  const int ns = spec.s_alpha.size;
  const int nt = spec.t_alpha.size;
  const int nk = spec.k_alpha.size;
  std::vector<double> table(
      static_cast<std::size_t>(nk) * static_cast<std::size_t>(ns) *
          static_cast<std::size_t>(nt),
      0.0);
  const auto& pst = spec.pst.table();
  for (int s = 0; s < ns; ++s) {
    int k = spec.f[static_cast<std::size_t>(s)];
    for (int t = 0; t < nt; ++t) {
      table[static_cast<std::size_t>((k * ns + s) * nt + t)] =
          pst[static_cast<std::size_t>(s * nt + t)];
    }
  }
  return JointPmf::validated({spec.k_alpha, spec.s_alpha, spec.t_alpha},
                             std::move(table));
}

}  // namespace bcrk
