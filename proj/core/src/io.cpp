#include "bcrk/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcrk/errors.hpp"

namespace bcrk {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidArgument("malformed JSON document");
  return j;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

int size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1 ||
      v.get<long long>() > 1'000'000)
    throw InvalidArgument(std::string("field '") + key +
                          "' must be a positive integer");
  return static_cast<int>(v.get<long long>());
}

double number_at(const json& v, const char* what) {
  if (!v.is_number())
    throw InvalidArgument(std::string(what) + " must be numeric");
  return v.get<double>();
}

// Nested array [rows][cols] flattened row-major.
std::vector<double> matrix_field(const json& j, const char* key,
                                 std::size_t rows, std::size_t cols) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != rows)
    throw InvalidArgument(std::string("field '") + key + "' must be an array of " +
                          std::to_string(rows) + " rows");
  std::vector<double> flat;
  flat.reserve(rows * cols);
  for (const json& row : v) {
    if (!row.is_array() || row.size() != cols)
      throw InvalidArgument(std::string("each row of '") + key + "' must have " +
                            std::to_string(cols) + " entries");
    for (const json& cell : row) flat.push_back(number_at(cell, key));
  }
  return flat;
}

ordered matrix_json(const std::vector<double>& flat, std::size_t rows,
                    std::size_t cols) {
  ordered out = ordered::array();
  for (std::size_t r = 0; r < rows; ++r) {
    ordered row = ordered::array();
    for (std::size_t c = 0; c < cols; ++c)
      row.push_back(round_sig(flat[r * cols + c]));
    out.push_back(std::move(row));
  }
  return out;
}

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double round_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

ChannelSpec parse_channel_json(const std::string& text) {
  json j = parse_text(text);
  int nx = size_field(j, "x_size");
  int ny = size_field(j, "y_size");
  int nz = size_field(j, "z_size");
  const json& t = field(j, "p_yz_given_x");
  if (!t.is_array() || static_cast<int>(t.size()) != nx)
    throw InvalidArgument("'p_yz_given_x' must have x_size outer entries");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(nx) * ny * nz);
  for (const json& per_x : t) {
    if (!per_x.is_array() || static_cast<int>(per_x.size()) != ny)
      throw InvalidArgument("'p_yz_given_x' rows must have y_size entries");
    for (const json& per_y : per_x) {
      if (!per_y.is_array() || static_cast<int>(per_y.size()) != nz)
        throw InvalidArgument("'p_yz_given_x' cells must have z_size entries");
      for (const json& cell : per_y)
        flat.push_back(number_at(cell, "p_yz_given_x"));
    }
  }
  return ChannelSpec::make(nx, ny, nz, flat);
}

std::string serialize_channel_json(const ChannelSpec& ch) {
  const int nx = static_cast<int>(ch.x_alpha.size);
  const int ny = static_cast<int>(ch.y_alpha.size);
  const int nz = static_cast<int>(ch.z_alpha.size);
  const std::vector<double>& flat = ch.pyz_x.table();
  ordered j;
  j["x_size"] = nx;
  j["y_size"] = ny;
  j["z_size"] = nz;
  ordered t = ordered::array();
  for (int x = 0; x < nx; ++x) {
    ordered per_x = ordered::array();
    for (int y = 0; y < ny; ++y) {
      ordered per_y = ordered::array();
      for (int z = 0; z < nz; ++z)
        per_y.push_back(round_sig(flat[(static_cast<std::size_t>(x) * ny + y) * nz + z]));
      per_x.push_back(std::move(per_y));
    }
    t.push_back(std::move(per_x));
  }
  j["p_yz_given_x"] = std::move(t);
  return j.dump(2);
}

SourceSpec parse_source_json(const std::string& text) {
  json j = parse_text(text);
  int ns = size_field(j, "s_size");
  int nt = size_field(j, "t_size");
  std::vector<double> flat =
      matrix_field(j, "p_st", static_cast<std::size_t>(ns), static_cast<std::size_t>(nt));
  JointPmf pst = JointPmf::validated(
      {{"S", ns}, {"T", nt}}, flat);
  return gacs_korner(pst);
}

std::string serialize_source_json(const SourceSpec& src) {
  const std::size_t ns = src.s_alpha.size;
  const std::size_t nt = src.t_alpha.size;
  ordered j;
  j["s_size"] = ns;
  j["t_size"] = nt;
  j["p_st"] = matrix_json(src.pst.table(), ns, nt);
  return j.dump(2);
}

ParsedAux parse_aux_json(const std::string& text) {
  json j = parse_text(text);
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string())
    throw InvalidArgument("field 'kind' must be \"inner\" or \"outer\"");
  std::string kind = kind_j.get<std::string>();
  int ns = size_field(j, "s_size");
  int nt = size_field(j, "t_size");
  int nx = size_field(j, "x_size");
  const std::size_t nst = static_cast<std::size_t>(ns) * nt;

  ParsedAux out;
  out.kind = kind;
  if (kind == "inner") {
    int nw = size_field(j, "w_size");
    int nu = size_field(j, "u_size");
    int nv = size_field(j, "v_size");
    const std::size_t nwuv = static_cast<std::size_t>(nw) * nu * nv;
    std::vector<double> wuv = matrix_field(j, "p_wuv_given_st", nst, nwuv);
    std::vector<double> xt =
        matrix_field(j, "p_x_given_wuv", nwuv, static_cast<std::size_t>(nx));
    InnerAuxChain chain;
    chain.wuv_given_st = ConditionalPmf::validated(
        {{"S", ns}, {"T", nt}},
        {{"W", nw},
         {"U", nu},
         {"V", nv}},
        wuv);
    chain.x_given_wuv = ConditionalPmf::validated(
        {{"W", nw},
         {"U", nu},
         {"V", nv}},
        {{"X", nx}}, xt);
    out.inner = std::move(chain);
    return out;
  }
  if (kind == "outer") {
    int nu = size_field(j, "u_size");
    int nv = size_field(j, "v_size");
    const std::size_t nuv = static_cast<std::size_t>(nu) * nv;
    std::vector<double> uv = matrix_field(j, "p_uv_given_st", nst, nuv);
    OuterAuxChain chain;
    chain.uv_given_st = ConditionalPmf::validated(
        {{"S", ns}, {"T", nt}},
        {{"U", nu}, {"V", nv}},
        uv);
    chain.x_size = nx;
    const bool has_map = j.contains("x_map");
    const bool has_cond = j.contains("p_x_given_stuv");
    if (has_map == has_cond)
      throw InvalidArgument(
          "outer auxiliary file must contain exactly one of 'x_map' and "
          "'p_x_given_stuv'");
    if (has_map) {
      const json& m = field(j, "x_map");
      if (!m.is_array() || m.size() != nst)
        throw InvalidArgument("'x_map' must list one x per (s,t) pair, s-major");
      std::vector<int> map;
      map.reserve(nst);
      for (const json& cell : m) {
        if (!cell.is_number_integer())
          throw InvalidArgument("'x_map' entries must be integers");
        long long v = cell.get<long long>();
        if (v < 0 || v >= nx)
          throw InvalidArgument("'x_map' entries must lie in [0, x_size)");
        map.push_back(static_cast<int>(v));
      }
      chain.x_map = std::move(map);
    } else {
      std::vector<double> xt = matrix_field(j, "p_x_given_stuv", nst * nuv,
                                            static_cast<std::size_t>(nx));
      chain.x_given_stuv = ConditionalPmf::validated(
          {{"S", ns},
           {"T", nt},
           {"U", nu},
           {"V", nv}},
          {{"X", nx}}, xt);
    }
    out.outer = std::move(chain);
    return out;
  }
  throw InvalidArgument("field 'kind' must be \"inner\" or \"outer\"");
}

std::string serialize_aux_json(const InnerAuxChain& chain) {
  const auto& g = chain.wuv_given_st.given_axes();
  const auto& o = chain.wuv_given_st.output_axes();
  const auto& xo = chain.x_given_wuv.output_axes();
  const std::size_t ns = g[0].size, nt = g[1].size;
  const std::size_t nw = o[0].size, nu = o[1].size, nv = o[2].size;
  const std::size_t nx = xo[0].size;
  ordered j;
  j["kind"] = "inner";
  j["s_size"] = ns;
  j["t_size"] = nt;
  j["w_size"] = nw;
  j["u_size"] = nu;
  j["v_size"] = nv;
  j["x_size"] = nx;
  j["p_wuv_given_st"] =
      matrix_json(chain.wuv_given_st.table(), ns * nt, nw * nu * nv);
  j["p_x_given_wuv"] = matrix_json(chain.x_given_wuv.table(), nw * nu * nv, nx);
  return j.dump(2);
}

std::string serialize_aux_json(const OuterAuxChain& chain) {
  const bool has_map = chain.x_map.has_value();
  const bool has_cond = chain.x_given_stuv.has_value();
  if (has_map == has_cond)
    throw InvalidArgument(
        "outer auxiliary chain must carry exactly one x rule");
  const auto& g = chain.uv_given_st.given_axes();
  const auto& o = chain.uv_given_st.output_axes();
  const std::size_t ns = g[0].size, nt = g[1].size;
  const std::size_t nu = o[0].size, nv = o[1].size;
  ordered j;
  j["kind"] = "outer";
  j["s_size"] = ns;
  j["t_size"] = nt;
  j["u_size"] = nu;
  j["v_size"] = nv;
  j["x_size"] = chain.x_size;
  j["p_uv_given_st"] = matrix_json(chain.uv_given_st.table(), ns * nt, nu * nv);
  if (has_map) {
    ordered m = ordered::array();
    for (int v : *chain.x_map) m.push_back(v);
    j["x_map"] = std::move(m);
  } else {
    j["p_x_given_stuv"] =
        matrix_json(chain.x_given_stuv->table(), ns * nt * nu * nv,
                    static_cast<std::size_t>(chain.x_size));
  }
  return j.dump(2);
}

JointPmf parse_joint_json(const std::string& text) {
  json j = parse_text(text);
  const json& axes_j = field(j, "axes");
  if (!axes_j.is_array() || axes_j.empty())
    throw InvalidArgument("'axes' must be a non-empty array");
  std::vector<Alphabet> axes;
  std::size_t cells = 1;
  for (const json& a : axes_j) {
    const json& name = field(a, "name");
    if (!name.is_string() || name.get<std::string>().empty())
      throw InvalidArgument("axis 'name' must be a non-empty string");
    int size = size_field(a, "size");
    axes.push_back({name.get<std::string>(), size});
    cells *= static_cast<std::size_t>(size);
  }
  const json& t = field(j, "table");
  if (!t.is_array() || t.size() != cells)
    throw InvalidArgument("'table' length must equal the product of axis sizes");
  std::vector<double> flat;
  flat.reserve(cells);
  for (const json& cell : t) flat.push_back(number_at(cell, "table"));
  return JointPmf::validated(axes, flat);
}

std::string serialize_joint_json(const JointPmf& joint) {
  ordered j;
  ordered axes = ordered::array();
  for (const Alphabet& a : joint.axes()) {
    ordered ax;
    ax["name"] = a.name;
    ax["size"] = a.size;
    axes.push_back(std::move(ax));
  }
  j["axes"] = std::move(axes);
  ordered t = ordered::array();
  for (double v : joint.table()) t.push_back(round_sig(v));
  j["table"] = std::move(t);
  return j.dump(2);
}

std::string emit_frontier_csv(const std::vector<FrontierSample>& samples) {
  if (samples.empty())
    throw EmptyFrontier("frontier is empty; nothing to emit");
  const std::size_t k = samples.front().rhs.size();
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const FrontierSample& s : samples) {
    if (s.rhs.size() != k)
      throw InvalidArgument("frontier samples disagree on objective count");
    rows.push_back(s.rhs);
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "label";
  for (std::size_t i = 1; i <= k; ++i) out += ",rhs_" + std::to_string(i);
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += "p" + std::to_string(r);
    for (double v : rows[r]) {
      out += ',';
      out += format_sig(v);
    }
    out += '\n';
  }
  return out;
}

FrontierCsv parse_frontier_csv(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  if (lines.empty()) throw InvalidArgument("empty CSV document");

  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string f;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(f);
        f.clear();
      } else {
        f += c;
      }
    }
    fields.push_back(f);
    return fields;
  };

  std::vector<std::string> header = split(lines[0]);
  if (header.empty() || header[0] != "label")
    throw InvalidArgument("CSV header must start with 'label'");
  const std::size_t k = header.size() - 1;
  if (k == 0) throw InvalidArgument("CSV header must list at least one rhs column");

  FrontierCsv out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split(lines[i]);
    if (fields.size() != k + 1)
      throw InvalidArgument("CSV row has wrong field count");
    out.labels.push_back(fields[0]);
    std::vector<double> row;
    row.reserve(k);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const char* begin = fields[c].c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0')
        throw InvalidArgument("CSV cell is not numeric: '" + fields[c] + "'");
      row.push_back(v);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace bcrk
