#include "bcrk/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcrk/channel.hpp"
#include "bcrk/common_part.hpp"
#include "bcrk/errors.hpp"
#include "bcrk/inner_bound.hpp"
#include "bcrk/outer_bound.hpp"
#include "bcrk/rng.hpp"
#include "bcrk/tolerances.hpp"

namespace bcrk {
namespace {

using ordered = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << text;
  if (!out) throw InvalidArgument("failed while writing file: " + path);
}

// Numbers are rounded to 12 significant digits; non-finite values are
// emitted as strings so the JSON stays parseable.
ordered jnum(double v) {
  if (std::isfinite(v)) return ordered(round_sig(v));
  if (std::isnan(v)) return ordered("nan");
  return ordered(v > 0 ? "inf" : "-inf");
}

ordered jvec(const std::vector<double>& v) {
  ordered a = ordered::array();
  for (double x : v) a.push_back(jnum(x));
  return a;
}

ordered jmatrix(const std::vector<double>& flat, std::size_t rows,
                std::size_t cols) {
  ordered out = ordered::array();
  for (std::size_t r = 0; r < rows; ++r) {
    ordered row = ordered::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(jnum(flat[r * cols + c]));
    out.push_back(std::move(row));
  }
  return out;
}

ordered jstrings(const std::vector<std::string>& v) {
  ordered a = ordered::array();
  for (const std::string& s : v) a.push_back(s);
  return a;
}

// All shared knobs; sentinels (-1 / empty) mean "use the default".
struct Opts {
  std::uint64_t seed = 0;
  int budget = -1;  // restarts
  int steps = -1;
  double R = 1.0;
  std::string variant = "as-printed";
  double tol_strict = -1.0;  // CLI-level verdict override; library stays pinned
  double tol_class = -1.0;

  std::string channel_path;
  std::string source_path;
  std::string aux_path;
  int theorem = 0;
  bool separation = false;
  bool decoupled = false;
  std::string csv_path;
  std::string method;
  int cap_w = -1, cap_u = -1, cap_v = -1;
  std::string selftest_which;
  int selftest_n = 2;
  int selftest_instances = 100;

  double ts() const { return tol_strict > 0 ? tol_strict : tol::strict; }
  double tc() const { return tol_class > 0 ? tol_class : tol::classifier; }
  SearchBudget resolve(int def_restarts, int def_steps) const {
    SearchBudget b{def_restarts, def_steps};
    if (budget > 0) b.restarts = budget;
    if (steps > 0) b.steps = steps;
    return b;
  }
  OuterVariant outer_variant() const {
    return variant == "proof-derived" ? OuterVariant::ProofDerived
                                      : OuterVariant::AsPrinted;
  }
};

ordered budget_json(const SearchBudget& b) {
  ordered j;
  j["restarts"] = b.restarts;
  j["steps"] = b.steps;
  return j;
}

// Verdict booleans are recomputed from the numeric slacks so that --tol
// overrides act uniformly at the reporting layer.
ordered report_json(const BoundReport& r, double ts) {
  ordered j;
  j["system"] = r.system;
  j["bandwidth_expansion"] = jnum(r.bandwidth_expansion);
  ordered entries = ordered::array();
  bool all_strict = true;
  bool all_weak = true;
  for (const BoundEntry& e : r.entries) {
    const bool strict_ok = e.slack > ts;
    const bool weak_ok = e.slack >= -ts;
    all_strict = all_strict && strict_ok;
    all_weak = all_weak && weak_ok;
    ordered je;
    je["label"] = e.label;
    je["lhs"] = jnum(e.lhs);
    je["rhs"] = jnum(e.rhs);
    je["slack"] = jnum(e.slack);
    je["strict_ok"] = strict_ok;
    je["weak_ok"] = weak_ok;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["min_slack"] = jnum(r.min_slack());
  j["all_strict"] = all_strict;
  j["all_weak"] = all_weak;
  j["warnings"] = jstrings(r.warnings);
  return j;
}

ChannelSpec load_channel(const Opts& o) {
  return parse_channel_json(read_file(o.channel_path));
}
SourceSpec load_source(const Opts& o) {
  return parse_source_json(read_file(o.source_path));
}

ordered embed(const std::string& json_text) { return ordered::parse(json_text); }

std::string run_classify(const Opts& o) {
  ChannelSpec ch = load_channel(o);
  SearchBudget budget = o.resolve(200, 500);
  ClassReport rep = classify(ch, budget, o.seed);

  ordered j;
  j["command"] = "classify";
  j["x_size"] = ch.x_alpha.size;
  j["y_size"] = ch.y_alpha.size;
  j["z_size"] = ch.z_alpha.size;
  j["y_deterministic"] = rep.y_deterministic;
  j["z_deterministic"] = rep.z_deterministic;
  ordered deg;
  deg["feasible"] = rep.degraded.feasible;
  deg["residual"] = jnum(rep.degraded.residual);
  deg["q_z_given_y"] =
      jmatrix(rep.degraded.q_z_given_y, ch.y_alpha.size, ch.z_alpha.size);
  j["degraded"] = std::move(deg);
  ordered mc;
  const bool violated = rep.more_capable.min_gap < -o.tc();
  mc["verdict"] = violated ? "violated" : "holds-up-to-search";
  mc["min_gap"] = jnum(rep.more_capable.min_gap);
  if (violated) mc["witness_px"] = jvec(rep.more_capable.witness_px);
  mc["evaluations"] = rep.more_capable.evaluations;
  mc["budget"] = budget_json(budget);
  j["more_capable"] = std::move(mc);
  return j.dump(2);
}

std::string run_common_part(const Opts& o) {
  SourceSpec src = load_source(o);
  std::vector<double> pk(src.k_alpha.size, 0.0);
  const std::vector<double>& table = src.pst.table();
  const std::size_t nt = src.t_alpha.size;
  for (std::size_t s = 0; s < src.s_alpha.size; ++s)
    for (std::size_t t = 0; t < nt; ++t)
      pk[static_cast<std::size_t>(src.f[s])] += table[s * nt + t];

  ordered j;
  j["command"] = "common-part";
  j["s_size"] = src.s_alpha.size;
  j["t_size"] = src.t_alpha.size;
  j["k_size"] = src.k_alpha.size;
  ordered f = ordered::array(), g = ordered::array();
  for (int v : src.f) f.push_back(v);
  for (int v : src.g) g.push_back(v);
  j["f"] = std::move(f);
  j["g"] = std::move(g);
  j["p_k"] = jvec(pk);
  j["h_k"] = jnum(src.hk);
  j["h_s"] = jnum(src.hs);
  j["h_t"] = jnum(src.ht);
  j["h_st"] = jnum(src.hst);
  j["i_st_given_k"] = jnum(src.i_st_given_k);
  j["markov"] = src.markov;
  j["has_sink"] = src.has_sink;
  j["identity_residual"] = jnum(common_identity_residual(src));
  return j.dump(2);
}

std::string run_inner_eval(const Opts& o) {
  SourceSpec src = load_source(o);
  ChannelSpec ch = load_channel(o);
  ParsedAux aux = parse_aux_json(read_file(o.aux_path));
  if (!aux.inner)
    throw InvalidArgument("inner-eval requires an auxiliary file with kind \"inner\"");
  BoundReport rep = o.separation ? eval_separation(src, ch, *aux.inner, o.R)
                                 : eval_han_costa(src, ch, *aux.inner, o.R);
  ordered j;
  j["command"] = "inner-eval";
  j["report"] = report_json(rep, o.ts());
  return j.dump(2);
}

std::string run_inner_search(const Opts& o) {
  SourceSpec src = load_source(o);
  ChannelSpec ch = load_channel(o);
  InnerCaps caps = InnerCaps::defaults_for(ch);
  if (o.cap_w > 0) caps.w = o.cap_w;
  if (o.cap_u > 0) caps.u = o.cap_u;
  if (o.cap_v > 0) caps.v = o.cap_v;
  SearchBudget budget = o.resolve(64, 160);
  WitnessSearch ws =
      search_witness(src, ch, caps, budget, o.seed, o.R, o.decoupled);
  const bool found = ws.best_min_slack > o.ts();

  ordered j;
  j["command"] = "inner-search";
  j["decoupled"] = o.decoupled;
  j["witness_found"] = found;
  j["verdict"] = found ? "admissible (witness found)"
                       : "no witness found within budget (inconclusive)";
  j["best_min_slack"] = jnum(ws.best_min_slack);
  j["budget"] = budget_json(budget);
  j["seed"] = o.seed;
  j["report"] = report_json(ws.best_report, o.ts());
  j["chain"] = embed(serialize_aux_json(ws.best_chain));
  return j.dump(2);
}

std::string run_outer_eval(const Opts& o) {
  SourceSpec src = load_source(o);
  ChannelSpec ch = load_channel(o);
  ParsedAux aux = parse_aux_json(read_file(o.aux_path));
  if (!aux.outer)
    throw InvalidArgument("outer-eval requires an auxiliary file with kind \"outer\"");
  BoundReport rep = o.theorem == 1
                        ? eval_thm1(src, ch, *aux.outer, o.R, o.outer_variant())
                        : eval_thm2(src, ch, *aux.outer, o.R);
  ordered j;
  j["command"] = "outer-eval";
  j["theorem"] = o.theorem;
  if (o.theorem == 1) j["variant"] = o.variant;
  j["report"] = report_json(rep, o.ts());
  return j.dump(2);
}

std::string run_outer_scan(const Opts& o) {
  SourceSpec src = load_source(o);
  ChannelSpec ch = load_channel(o);
  OuterCaps caps = OuterCaps::defaults_for(ch);
  if (o.cap_u > 0) caps.u = o.cap_u;
  if (o.cap_v > 0) caps.v = o.cap_v;
  SearchBudget budget = o.resolve(64, 160);
  OuterScan scan = outer_superset_scan(src, ch, o.theorem, caps, budget, o.seed,
                                       o.R, o.outer_variant());
  const bool found = scan.best_min_slack >= -o.ts();

  ordered j;
  j["command"] = "outer-scan";
  j["theorem"] = o.theorem;
  if (o.theorem == 1) j["variant"] = o.variant;
  j["witness_found"] = found;
  j["verdict"] = found ? "consistent-with-outer-bound (witness chain found)"
                       : "no satisfying chain found within budget — evidence "
                         "of non-admissibility (heuristic, one-sided)";
  j["best_min_slack"] = jnum(scan.best_min_slack);
  j["budget"] = budget_json(budget);
  j["seed"] = o.seed;
  j["report"] = report_json(scan.best_report, o.ts());
  j["chain"] = embed(serialize_aux_json(scan.best_chain));
  return j.dump(2);
}

std::string run_region(const Opts& o) {
  ChannelSpec ch = load_channel(o);
  FrontierCaps caps = FrontierCaps::defaults_for(o.theorem, ch);
  if (o.cap_w > 0) caps.w = o.cap_w;
  if (o.cap_v > 0) caps.v = o.cap_v;
  SearchBudget budget = o.resolve(8, 120);
  std::vector<FrontierSample> frontier =
      region_frontier(o.theorem, ch, caps, budget, o.seed);
  std::string csv = emit_frontier_csv(frontier);
  if (!o.csv_path.empty()) write_file(o.csv_path, csv);

  ordered j;
  j["command"] = "region";
  j["theorem"] = o.theorem;
  ordered labels = ordered::array();
  if (o.theorem == 3)
    for (const char* l : {"(25)", "(26)", "(27)", "(28)", "(29)"}) labels.push_back(l);
  else
    for (const char* l : {"(33)", "(34)", "(35)"}) labels.push_back(l);
  j["labels"] = std::move(labels);
  j["budget"] = budget_json(budget);
  j["seed"] = o.seed;
  ordered samples = ordered::array();
  for (const FrontierSample& s : frontier) {
    ordered js;
    js["rhs"] = jvec(s.rhs);
    js["aux"] = embed(serialize_joint_json(s.aux));
    samples.push_back(std::move(js));
  }
  j["samples"] = std::move(samples);
  j["csv"] = csv;
  return j.dump(2);
}

std::string run_admissible(const Opts& o) {
  SourceSpec src = load_source(o);
  ChannelSpec ch = load_channel(o);
  SearchBudget budget = o.resolve(48, 160);
  Decision d = decide_admissible(src, ch, o.method, budget, o.seed, o.R);
  const double ts = o.ts();
  std::string verdict;
  if (d.best_min_slack > ts)
    verdict = "admissible";
  else if (d.best_min_slack < -ts)
    verdict = "not-admissible (heuristic)";
  else
    verdict = "boundary/inconclusive";

  ordered j;
  j["command"] = "admissible";
  j["method"] = d.method;
  j["verdict"] = verdict;
  j["best_min_slack"] = jnum(d.best_min_slack);
  j["budget"] = budget_json(budget);
  j["seed"] = o.seed;
  if (!d.note.empty()) j["note"] = d.note;
  j["warnings"] = jstrings(d.warnings);
  if (!d.best_report.entries.empty())
    j["report"] = report_json(d.best_report, ts);
  if (d.witness_chain) j["witness"] = embed(serialize_aux_json(*d.witness_chain));
  if (d.witness_aux) j["witness"] = embed(serialize_joint_json(*d.witness_aux));
  return j.dump(2);
}

// Randomized instance checks of the two internal identities the bound
// derivations rest on; exits nonzero if any residual exceeds 1e-9.
std::string run_selftest(const Opts& o, int* exit_code) {
  const double threshold = 1e-9;
  ordered j;
  j["command"] = "selftest";
  j["test"] = o.selftest_which;
  Rng rng(mix_seed(o.seed, 0xbc5e1f7e57ULL));

  if (o.selftest_which == "csiszar") {
    const int n = o.selftest_n;
    if (n < 1 || n > 3)
      throw InvalidArgument("selftest csiszar supports --n between 1 and 3");
    double max_r1 = 0.0, max_r2 = 0.0;
    for (int inst = 0; inst < o.selftest_instances; ++inst) {
      std::vector<Alphabet> axes;
      axes.push_back({"W", 1 + rng.uniform_int(3)});
      std::vector<std::string> ys, zs;
      for (int i = 0; i < n; ++i) {
        std::string y = "Y" + std::to_string(i + 1);
        std::string z = "Z" + std::to_string(i + 1);
        axes.push_back({y, 1 + rng.uniform_int(3)});
        axes.push_back({z, 1 + rng.uniform_int(3)});
        ys.push_back(y);
        zs.push_back(z);
      }
      std::size_t cells = 1;
      for (const Alphabet& a : axes) cells *= a.size;
      JointPmf joint =
          JointPmf::validated(axes, rng.dirichlet(static_cast<int>(cells)));
      auto [r1, r2] = csiszar_identity_residuals(joint, AxisGroup{"W"}, ys, zs);
      max_r1 = std::max(max_r1, r1);
      max_r2 = std::max(max_r2, r2);
    }
    j["n"] = n;
    j["instances"] = o.selftest_instances;
    j["max_residual_sum_identity"] = jnum(max_r1);
    j["max_residual_exchange_identity"] = jnum(max_r2);
    const bool pass = max_r1 < threshold && max_r2 < threshold;
    j["pass"] = pass;
    if (!pass) *exit_code = 2;
    return j.dump(2);
  }
  if (o.selftest_which == "common-part") {
    double max_res = 0.0;
    for (int inst = 0; inst < o.selftest_instances; ++inst) {
      JointPmf pst = [&] {
        if (inst % 2 == 0) {
          return JointPmf::validated({{"S", 3}, {"T", 3}}, rng.dirichlet(9));
        }
        // Block-diagonal support: a nontrivial common variable.
        std::vector<double> blocks = rng.dirichlet(8);
        double split = 0.25 + 0.5 * rng.uniform();
        std::vector<double> table(16, 0.0);
        for (int i = 0; i < 4; ++i) {
          table[(i / 2) * 4 + (i % 2)] = split * blocks[i] /
                                         (blocks[0] + blocks[1] + blocks[2] + blocks[3]);
          table[(2 + i / 2) * 4 + (2 + i % 2)] =
              (1.0 - split) * blocks[4 + i] /
              (blocks[4] + blocks[5] + blocks[6] + blocks[7]);
        }
        return JointPmf::validated({{"S", 4}, {"T", 4}}, table);
      }();
      SourceSpec src = gacs_korner(pst);
      max_res = std::max(max_res, common_identity_residual(src));
      if (inst % 2 == 1 && src.k_alpha.size < 2)
        throw InvalidArgument(
            "selftest common-part: block-diagonal source produced a trivial "
            "common variable");
    }
    j["instances"] = o.selftest_instances;
    j["max_identity_residual"] = jnum(max_res);
    const bool pass = max_res < threshold;
    j["pass"] = pass;
    if (!pass) *exit_code = 2;
    return j.dump(2);
  }
  throw InvalidArgument("unknown selftest: " + o.selftest_which);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Opts o;
  std::string payload;
  int exit_code = 0;

  CLI::App app{"Source-channel admissibility toolkit for two-receiver "
               "broadcast channels"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "RNG seed for all searches")
      ->capture_default_str();
  app.add_option("--budget", o.budget, "search restarts (command default if omitted)")
      ->check(CLI::PositiveNumber);
  app.add_option("--steps", o.steps, "refinement steps per restart")
      ->check(CLI::PositiveNumber);
  app.add_option("--R", o.R, "bandwidth expansion (channel uses per source pair)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--variant", o.variant,
                 "necessary-condition variant for theorem 1")
      ->capture_default_str()
      ->check(CLI::IsMember({"as-printed", "proof-derived"}));
  app.add_option("--tol-strict", o.tol_strict,
                 "override the strict-satisfaction slack threshold (report level)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-class", o.tol_class,
                 "override the more-capable violation threshold (report level)")
      ->check(CLI::PositiveNumber);

  auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--channel", o.channel_path, "channel JSON file")
        ->required();
  };
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--source", o.source_path, "source JSON file")->required();
  };

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "structural channel classification");
  classify_cmd->fallthrough();
  add_channel(classify_cmd);
  classify_cmd->callback([&] { payload = run_classify(o); });

  CLI::App* common_cmd = app.add_subcommand(
      "common-part", "common variable and entropies of a source");
  common_cmd->fallthrough();
  add_source(common_cmd);
  common_cmd->callback([&] { payload = run_common_part(o); });

  CLI::App* inner_eval_cmd = app.add_subcommand(
      "inner-eval", "evaluate the achievability conditions at a given chain");
  inner_eval_cmd->fallthrough();
  add_source(inner_eval_cmd);
  add_channel(inner_eval_cmd);
  inner_eval_cmd->add_option("--aux", o.aux_path, "auxiliary-chain JSON file")
      ->required();
  inner_eval_cmd->add_flag("--separation", o.separation,
                           "evaluate the decoupled (separation) system instead");
  inner_eval_cmd->callback([&] { payload = run_inner_eval(o); });

  CLI::App* inner_search_cmd = app.add_subcommand(
      "inner-search", "search for an achievability witness chain");
  inner_search_cmd->fallthrough();
  add_source(inner_search_cmd);
  add_channel(inner_search_cmd);
  inner_search_cmd->add_flag("--decoupled", o.decoupled,
                             "restrict to source-independent auxiliaries");
  inner_search_cmd->add_option("--cap-w", o.cap_w, "cardinality cap for W")
      ->check(CLI::PositiveNumber);
  inner_search_cmd->add_option("--cap-u", o.cap_u, "cardinality cap for U")
      ->check(CLI::PositiveNumber);
  inner_search_cmd->add_option("--cap-v", o.cap_v, "cardinality cap for V")
      ->check(CLI::PositiveNumber);
  inner_search_cmd->callback([&] { payload = run_inner_search(o); });

  CLI::App* outer_eval_cmd = app.add_subcommand(
      "outer-eval", "evaluate the necessary conditions at a given chain");
  outer_eval_cmd->fallthrough();
  add_source(outer_eval_cmd);
  add_channel(outer_eval_cmd);
  outer_eval_cmd->add_option("--aux", o.aux_path, "auxiliary-chain JSON file")
      ->required();
  outer_eval_cmd->add_option("--theorem", o.theorem, "bound system: 1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  outer_eval_cmd->callback([&] { payload = run_outer_eval(o); });

  CLI::App* outer_scan_cmd = app.add_subcommand(
      "outer-scan", "search for a chain satisfying the necessary conditions");
  outer_scan_cmd->fallthrough();
  add_source(outer_scan_cmd);
  add_channel(outer_scan_cmd);
  outer_scan_cmd->add_option("--theorem", o.theorem, "bound system: 1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  outer_scan_cmd->add_option("--cap-u", o.cap_u, "cardinality cap for U")
      ->check(CLI::PositiveNumber);
  outer_scan_cmd->add_option("--cap-v", o.cap_v, "cardinality cap for V")
      ->check(CLI::PositiveNumber);
  outer_scan_cmd->callback([&] { payload = run_outer_scan(o); });

  CLI::App* region_cmd = app.add_subcommand(
      "region", "sweep the exact-region frontier of theorem 3 or 4");
  region_cmd->fallthrough();
  add_channel(region_cmd);
  region_cmd->add_option("--theorem", o.theorem, "region system: 3 or 4")
      ->required()
      ->check(CLI::IsMember({3, 4}));
  region_cmd->add_option("--csv", o.csv_path, "also write the frontier CSV here");
  region_cmd->add_option("--cap-w", o.cap_w, "cardinality cap for W")
      ->check(CLI::PositiveNumber);
  region_cmd->add_option("--cap-v", o.cap_v,
                         "cardinality cap for V (theorem 3 only)")
      ->check(CLI::PositiveNumber);
  region_cmd->callback([&] { payload = run_region(o); });

  CLI::App* admissible_cmd = app.add_subcommand(
      "admissible", "decide admissibility of a source for a channel");
  admissible_cmd->fallthrough();
  add_source(admissible_cmd);
  add_channel(admissible_cmd);
  admissible_cmd
      ->add_option("--method", o.method,
                   "separation, han_costa, thm3, or thm4")
      ->required()
      ->check(CLI::IsMember({"separation", "han_costa", "thm3", "thm4"}));
  admissible_cmd->callback([&] { payload = run_admissible(o); });

  CLI::App* selftest_cmd = app.add_subcommand(
      "selftest", "randomized checks of the internal identities");
  selftest_cmd->fallthrough();
  selftest_cmd->add_option("which", o.selftest_which, "csiszar or common-part")
      ->required()
      ->check(CLI::IsMember({"csiszar", "common-part"}));
  selftest_cmd->add_option("--n", o.selftest_n, "block length for the sum identity")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--instances", o.selftest_instances,
                           "number of random instances")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  selftest_cmd->callback([&] { payload = run_selftest(o, &exit_code); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    ordered j;
    j["error"] = {{"code", e.code()}, {"message", e.what()}};
    out << j.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered j;
    j["error"] = {{"code", "Internal"}, {"message", e.what()}};
    out << j.dump(2) << "\n";
    return 2;
  }

  out << payload << "\n";
  return exit_code;
}

}  // namespace bcrk
