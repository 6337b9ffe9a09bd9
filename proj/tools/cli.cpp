#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "msp/error.hpp"
#include "msp/generators.hpp"
#include "msp/harness.hpp"
#include "msp/instance_io.hpp"
#include "msp/kernel.hpp"
#include "msp/oracle.hpp"
#include "msp/reduction.hpp"

namespace msp {

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 4;

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream os;
  if (path == "-") {
    os << in.rdbuf();
    return os.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot read " + path);
  os << f.rdbuf();
  return os.str();
}

bool looks_like_instance(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

/// A formula or graph from a file or stdin, told apart by content.
Instance read_instance(const std::string& path, std::istream& in, std::ostream& err) {
  const auto text = slurp(path, in);
  Instance inst;
  inst.id = path == "-" ? "stdin" : path;
  inst.provenance["generator"] = "file";
  inst.provenance["path"] = path;
  inst.provenance["file_hash"] = fnv1a64_hex(text);
  if (looks_like_instance(text)) {
    auto loaded = deserialize_instance(text);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    inst.payload = std::move(loaded.doc.graph);
  } else {
    inst.payload = parse_dimacs(text);
  }
  return inst;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorKind::Io, "cannot write " + path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Labeled multi-stage graph toolkit: ZH decision procedure, reductions and differential testing"};
  app.name("zhmsp");
  app.require_subcommand(1);

  std::string file;
  std::string output;

  auto* validate = app.add_subcommand("validate", "Check the 2-MSP structure items; exit 4 on violations");
  validate->add_option("file", file, "Instance or DIMACS file, - for stdin")->required();

  auto* pre = app.add_subcommand("preprocess", "Run label pre-processing and print the instance");
  pre->add_option("file", file)->required();
  pre->add_option("-o,--output", output, "Output file (default stdout)");

  bool trace = false;
  std::string trace_out;
  bool permissive = false;
  bool stats = false;
  auto* solve = app.add_subcommand("solve", "Decide with the ZH procedure; prints yes or no");
  solve->add_option("file", file)->required();
  solve->add_flag("--trace", trace, "Record prune events as JSON lines");
  solve->add_option("--trace-out", trace_out, "Trace destination (default stderr)");
  auto* strict_flag = solve->add_flag("--strict", "Reject inputs that are not 2-MSP (default)");
  solve->add_flag("--permissive", permissive, "Run on inputs that are not 2-MSP")->excludes(strict_flag);
  solve->add_flag("--stats", stats, "Print run statistics to stderr");

  std::uint64_t budget_ms = OracleBudget{}.max_millis;
  std::uint64_t budget_nodes = OracleBudget{}.max_nodes;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive sigma-path search; prints yes, no or unknown");
  oracle->add_option("file", file)->required();
  oracle->add_option("--budget-ms", budget_ms, "Wall-clock limit");
  oracle->add_option("--budget-nodes", budget_nodes, "Search-node limit");

  bool no_gadgets = false;
  auto* reduce = app.add_subcommand("reduce", "Reduce a DIMACS formula to an instance");
  reduce->add_option("file", file)->required();
  reduce->add_flag("--no-gadgets", no_gadgets, "Plain multi-stage form instead of 2-MSP");
  reduce->add_option("-o,--output", output);

  auto* gen = app.add_subcommand("gen", "Generate formulas (DIMACS) or graphs (instance format)");
  gen->require_subcommand(1);
  std::uint64_t seed = 1;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 3;
  std::uint32_t holes = 0;
  bool split = false;
  std::uint32_t stages = 0;
  std::uint32_t width = 0;
  double density = 0.0;
  bool raw = false;
  auto* gen_fn = gen->add_subcommand("fn", "Minimal unsatisfiable formula with 2^n clauses");
  gen_fn->add_option("n", n)->required();
  auto* gen_ksat = gen->add_subcommand("ksat", "Random k-SAT");
  gen_ksat->add_option("n", n, "Variables")->required();
  gen_ksat->add_option("m", m, "Clauses")->required();
  gen_ksat->add_option("k", k, "Literals per clause");
  gen_ksat->add_option("--seed", seed);
  auto* gen_php = gen->add_subcommand("php", "Pigeonhole formula, holes+1 pigeons");
  gen_php->add_option("holes", holes)->required();
  gen_php->add_flag("--split", split, "Split clauses wider than 3");
  auto* gen_msp = gen->add_subcommand("msp", "Random 2-MSP graph");
  gen_msp->add_option("stages", stages, "Last stage index L (>= 5)")->required();
  gen_msp->add_option("width", width, "Max vertices per stage")->required();
  gen_msp->add_option("density", density, "Label density in [0,1]")->required();
  gen_msp->add_option("--seed", seed);
  gen_msp->add_flag("--raw", raw, "Labels drawn from all of E, no repair");
  for (auto* sub : {gen_fn, gen_ksat, gen_php, gen_msp}) sub->add_option("-o,--output", output);

  std::string out_dir;
  unsigned workers = 0;
  auto* fuzz = app.add_subcommand("fuzz", "Run a differential-testing campaign");
  fuzz->add_option("config", file, "Campaign config (JSON)")->required();
  fuzz->add_option("--output", out_dir, "Override the output directory");
  fuzz->add_option("--workers", workers, "Override the worker count");

  std::string predicate;
  auto* minimize = app.add_subcommand("minimize", "Shrink an instance while a predicate holds");
  minimize->add_option("file", file)->required();
  minimize->add_option("--predicate", predicate, "disagree | zh-no | zh-yes")
      ->required()
      ->check(CLI::IsMember({"disagree", "zh-no", "zh-yes"}));
  minimize->add_option("-o,--output", output);

  auto* report = app.add_subcommand("report", "Summarize a campaign directory");
  report->add_option("dir", file)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      const auto g = instance_graph(read_instance(file, in, err));
      const auto violations = validate_2msp(g);
      for (const auto& v : violations) out << v.rule << " " << v.detail << "\n";
      if (violations.empty()) out << "ok\n";
      return violations.empty() ? 0 : kExitInvalid;
    }
    if (pre->parsed()) {
      const auto inst = read_instance(file, in, err);
      Json prov = Json::object();
      prov["generator"] = "preprocess";
      prov["from"] = inst.provenance;
      emit(output, serialize_instance(InstanceDoc{preprocess(instance_graph(inst)), std::nullopt, prov}), out);
      return 0;
    }
    if (solve->parsed()) {
      const auto g = instance_graph(read_instance(file, in, err));
      const auto res = zh_solve(g, SolveOptions{!permissive, trace});
      out << to_string(res.decision) << "\n";
      if (trace) {
        if (trace_out.empty()) err << format_trace(res.trace);
        else emit(trace_out, format_trace(res.trace), out);
      }
      if (stats) {
        Json s = Json::object();
        s["passes"] = res.stats.passes;
        s["psi_calls"] = res.stats.psi_calls;
        s["psi_prunes"] = res.stats.psi_prunes;
        s["r0_total"] = res.stats.r0_total;
        s["r_final_total"] = res.stats.r_final_total;
        s["kernel_size"] = res.stats.kernel_size;
        s["millis"] = res.stats.millis;
        s["sweep_order"] = std::string(kSweepOrder);
        s["violations"] = res.violations.size();
        err << s.dump() << "\n";
      }
      return 0;
    }
    if (oracle->parsed()) {
      const auto g = instance_graph(read_instance(file, in, err));
      out << to_string(sigma_path_exists(g, OracleBudget{budget_nodes, budget_ms})) << "\n";
      return 0;
    }
    if (reduce->parsed()) {
      const auto text = slurp(file, in);
      const auto f = parse_dimacs(text);
      const auto plain = cnf_to_msp(f, false);
      const auto red = no_gadgets ? plain : gadgetize_2msp(plain.graph, plain.map, f);
      Json prov = Json::object();
      prov["generator"] = "reduce";
      prov["gadgets"] = !no_gadgets;
      prov["source"] = file;
      prov["file_hash"] = fnv1a64_hex(text);
      emit(output, serialize_instance(InstanceDoc{red.graph, red.map, prov}), out);
      return 0;
    }
    if (gen->parsed()) {
      if (gen_fn->parsed()) emit(output, to_dimacs(gen_fn_mu(n), {"gen fn " + std::to_string(n)}), out);
      if (gen_ksat->parsed())
        emit(output,
             to_dimacs(gen_random_ksat(n, m, k, seed),
                       {"gen ksat " + std::to_string(n) + " " + std::to_string(m) + " " + std::to_string(k) +
                        " --seed " + std::to_string(seed) + " rng " + std::string(Rng::kAlgorithm)}),
             out);
      if (gen_php->parsed()) {
        auto f = gen_pigeonhole(holes);
        if (split) f = split_clauses(f);
        emit(output, to_dimacs(f, {"gen php " + std::to_string(holes) + (split ? " --split" : "")}), out);
      }
      if (gen_msp->parsed()) {
        MspGenOptions o;
        o.repair = !raw;
        Json prov = Json::object();
        prov["generator"] = "msp";
        prov["stage_count"] = stages;
        prov["width"] = width;
        prov["density"] = density;
        prov["raw"] = raw;
        prov["seed"] = seed;
        prov["rng"] = std::string(Rng::kAlgorithm);
        emit(output, serialize_instance(InstanceDoc{gen_random_msp(stages, width, density, seed, o), std::nullopt, prov}),
             out);
      }
      return 0;
    }
    if (fuzz->parsed()) {
      auto cfg = load_campaign_config(file);
      if (!out_dir.empty()) cfg.output = out_dir;
      if (workers > 0) cfg.workers = workers;
      const auto rep = run_campaign(cfg);
      out << rep.summary.to_text(cfg.to_json());
      for (const auto& a : rep.archived) out << "archived " << a << "\n";
      return rep.summary.exit_code();
    }
    if (minimize->parsed()) {
      const auto inst = read_instance(file, in, err);
      MinimizeStats st;
      const auto kind = *predicate_from_string(predicate);
      const auto small = minimize_instance(inst, kind, RunOptions{}, &st);
      emit(output, instance_text(small), out);
      err << "accepted " << st.accepted << " step(s), " << st.predicate_calls << " predicate call(s)\n";
      return 0;
    }
    if (report->parsed()) {
      const auto [summary, config] = read_campaign(file);
      out << summary.to_text(config);
      return summary.exit_code();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace msp
