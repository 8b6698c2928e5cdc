#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcrk/aux_chain.hpp"
#include "bcrk/capacity.hpp"
#include "bcrk/channel.hpp"
#include "bcrk/common_part.hpp"

namespace bcrk {

// All parsers take full JSON text and throw InvalidArgument on malformed
// input or bcrk validation errors on inconsistent tables.  All serializers
// emit deterministic JSON with numbers rounded to 12 significant digits.

// {"x_size", "y_size", "z_size", "p_yz_given_x": [x][y][z]}
ChannelSpec parse_channel_json(const std::string& text);
std::string serialize_channel_json(const ChannelSpec& ch);

// {"s_size", "t_size", "p_st": [s][t]}
SourceSpec parse_source_json(const std::string& text);
std::string serialize_source_json(const SourceSpec& src);

// {"kind": "inner"|"outer", sizes, factor tables}; see the serializers for
// the exact field set.
struct ParsedAux {
  std::string kind;
  std::optional<InnerAuxChain> inner;
  std::optional<OuterAuxChain> outer;
};
ParsedAux parse_aux_json(const std::string& text);
std::string serialize_aux_json(const InnerAuxChain& chain);
std::string serialize_aux_json(const OuterAuxChain& chain);

// {"axes": [{"name","size"}...], "table": [flat row-major]}
JointPmf parse_joint_json(const std::string& text);
std::string serialize_joint_json(const JointPmf& joint);

// Frontier CSV with header "label,rhs_1,...,rhs_k"; rows sorted
// lexicographically by RHS vector, labels p0, p1, ... after sorting.
std::string emit_frontier_csv(const std::vector<FrontierSample>& samples);

struct FrontierCsv {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
};
FrontierCsv parse_frontier_csv(const std::string& text);

// Nearest double to `v` written with `digits` significant decimal digits.
double round_sig(double v, int digits = 12);

// Batch command-line entry point; writes structured output to `out` and
// usage diagnostics to `err`.  Returns the process exit code: 0 success,
// 1 usage error, 2 validation/runtime error (with a machine-readable
// {"error": {"code", "message"}} object on `out`).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bcrk
