#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcrk/prob.hpp"
#include "bcrk/rng.hpp"

namespace bcrk {

// A two-receiver memoryless broadcast channel: one input X, outputs Y and Z
// drawn jointly from P(y,z|x).  Marginal transition tables are derived at
// construction.
struct ChannelSpec {
  Alphabet x_alpha;
  Alphabet y_alpha;
  Alphabet z_alpha;
  ConditionalPmf pyz_x;  // given (X), output (Y,Z)
  ConditionalPmf py_x;   // given (X), output (Y)
  ConditionalPmf pz_x;   // given (X), output (Z)

  // Builds a channel from the flat joint-output table, indexed x-major then
  // y then z.  Axis names are canonicalized to X, Y, Z.
  static ChannelSpec make(int x_size, int y_size, int z_size,
                          std::vector<double> table);
};

enum class Receiver { Y, Z };

// True iff the selected output is a deterministic function of X: every
// marginal slice puts all mass on one symbol.
bool is_deterministic_output(const ChannelSpec& ch, Receiver which);

// The map x -> output symbol for a deterministic receiver.
// Throws NotSemiDeterministic if the receiver is not deterministic.
std::vector<int> deterministic_output_map(const ChannelSpec& ch,
                                          Receiver which);

// Result of the linear feasibility test for (stochastic) degradedness: does a
// row-stochastic Q(z|y) exist with sum_y Q(z|y) P(y|x) = P(z|x)?
struct DegradednessResult {
  bool feasible = false;
  // Best kernel found (rows normalized); meaningful mainly when feasible.
  std::vector<double> q_z_given_y;  // y-major, |Y| x |Z|
  // max_{x,z} |sum_y Q(z|y)P(y|x) - P(z|x)| recomputed from the witness.
  double residual = 0.0;
};

DegradednessResult degradedness_test(const ChannelSpec& ch);

// Multistart-search budget shared by the classification and bound searches.
struct SearchBudget {
  int restarts = 200;
  int steps = 500;
};

enum class McVerdict { HoldsUpToSearch, Violated };

// Outcome of minimizing I(X;Y) - I(X;Z) over input distributions.  The
// verdict is one-sided: Violated is a certificate (the witness exhibits a
// negative gap); HoldsUpToSearch only says the search found no violation.
struct MoreCapableResult {
  McVerdict verdict = McVerdict::HoldsUpToSearch;
  double min_gap = 0.0;
  std::vector<double> witness_px;  // argmin found
  std::int64_t evaluations = 0;
};

MoreCapableResult more_capable_test(const ChannelSpec& ch, SearchBudget budget,
                                    std::uint64_t seed);

// I(X;Y) - I(X;Z) at one input distribution (must match |X| and sum to 1
// within tol::norm).
double xy_minus_xz_gap(const ChannelSpec& ch, const std::vector<double>& px);

struct ClassReport {
  bool y_deterministic = false;
  bool z_deterministic = false;
  DegradednessResult degraded;
  MoreCapableResult more_capable;
};

ClassReport classify(const ChannelSpec& ch, SearchBudget budget,
                     std::uint64_t seed);

}  // namespace bcrk
