#include "msp/harness.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "msp/error.hpp"
#include "msp/generators.hpp"
#include "msp/reduction.hpp"

namespace fs = std::filesystem;

namespace msp {

std::string_view to_string(Agreement a) noexcept {
  switch (a) {
    case Agreement::agree_yes: return "agree-yes";
    case Agreement::agree_no: return "agree-no";
    case Agreement::necessity_violation: return "necessity-violation";
    case Agreement::sufficiency_disagreement: return "sufficiency-disagreement";
    case Agreement::oracle_unknown: return "oracle-unknown";
  }
  return "unknown";
}

std::optional<Agreement> agreement_from_string(std::string_view s) noexcept {
  for (Agreement a : kAllAgreements)
    if (to_string(a) == s) return a;
  return std::nullopt;
}

Agreement classify(Decision zh, Answer oracle) noexcept {
  if (oracle == Answer::unknown) return Agreement::oracle_unknown;
  if (oracle == Answer::yes) return zh == Decision::yes ? Agreement::agree_yes : Agreement::necessity_violation;
  return zh == Decision::no ? Agreement::agree_no : Agreement::sufficiency_disagreement;
}

// ---------------------------------------------------------------------------
// Records

namespace {

std::optional<Decision> decision_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>() == "yes" ? Decision::yes : Decision::no;
}

Answer answer_from(const std::string& s) {
  if (s == "yes") return Answer::yes;
  if (s == "no") return Answer::no;
  return Answer::unknown;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
    throw Error(ErrorKind::Io, "cannot write " + path.string());
}

}  // namespace

Json VerdictRecord::to_json(bool with_timings) const {
  Json j = Json::object();
  j["seq"] = seq;
  j["id"] = id;
  j["status"] = ok ? "ok" : "error";
  if (!ok) j["error"] = error;
  j["provenance"] = provenance;
  j["hash"] = hash;
  j["valid_2msp"] = valid_2msp;
  j["zh"] = zh ? Json(std::string(to_string(*zh))) : Json(nullptr);
  j["oracle"] = std::string(to_string(oracle));
  j["sat"] = sat ? Json(*sat) : Json(nullptr);
  j["agreement"] = agreement ? Json(std::string(to_string(*agreement))) : Json(nullptr);
  j["kernel_size"] = kernel_size;
  j["prune_events"] = prune_events;
  j["passes"] = passes;
  j["psi_calls"] = psi_calls;
  j["r0_total"] = r0_total;
  j["oracle_nodes"] = oracle_nodes;
  j["sweep_order"] = sweep_order;
  if (with_timings) {
    j["zh_millis"] = std::round(zh_millis * 1000.0) / 1000.0;
    j["oracle_millis"] = std::round(oracle_millis * 1000.0) / 1000.0;
  }
  if (!trace_summary.empty()) j["trace_summary"] = trace_summary;
  return j;
}

VerdictRecord VerdictRecord::from_json(const Json& j) {
  VerdictRecord r;
  try {
    r.seq = j.at("seq").get<std::size_t>();
    r.id = j.at("id").get<std::string>();
    r.ok = j.at("status").get<std::string>() == "ok";
    if (!r.ok) r.error = j.value("error", "");
    r.provenance = j.value("provenance", Json::object());
    r.hash = j.value("hash", "");
    r.valid_2msp = j.value("valid_2msp", false);
    r.zh = decision_from(j.at("zh"));
    r.oracle = answer_from(j.at("oracle").get<std::string>());
    if (!j.at("sat").is_null()) r.sat = j.at("sat").get<bool>();
    if (!j.at("agreement").is_null()) r.agreement = agreement_from_string(j.at("agreement").get<std::string>());
    r.kernel_size = j.value("kernel_size", std::size_t{0});
    r.prune_events = j.value("prune_events", std::size_t{0});
    r.passes = j.value("passes", std::size_t{0});
    r.psi_calls = j.value("psi_calls", std::size_t{0});
    r.r0_total = j.value("r0_total", std::size_t{0});
    r.oracle_nodes = j.value("oracle_nodes", std::uint64_t{0});
    r.sweep_order = j.value("sweep_order", "");
    r.zh_millis = j.value("zh_millis", 0.0);
    r.oracle_millis = j.value("oracle_millis", 0.0);
    r.trace_summary = j.value("trace_summary", Json::object());
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, std::string("verdict record: ") + ex.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Single runs

MultiStageGraph instance_graph(const Instance& inst) {
  if (const auto* f = std::get_if<CnfFormula>(&inst.payload)) return reduce_full(*f).graph;
  return std::get<MultiStageGraph>(inst.payload);
}

VerdictRecord run_one(const Instance& inst, const RunOptions& options) {
  VerdictRecord rec;
  rec.id = inst.id;
  rec.provenance = inst.provenance;
  rec.sweep_order = std::string(kSweepOrder);
  if (const auto* f = std::get_if<CnfFormula>(&inst.payload); f && f->num_vars <= 24) rec.sat = sat_brute_force(*f);

  const MultiStageGraph g = instance_graph(inst);
  rec.hash = content_hash(g);
  rec.valid_2msp = validate_2msp(g).empty();

  const auto res = zh_solve(g, SolveOptions{options.strict, options.trace});
  rec.zh = res.decision;
  rec.kernel_size = res.stats.kernel_size;
  rec.prune_events = res.stats.psi_prunes;
  rec.passes = res.stats.passes;
  rec.psi_calls = res.stats.psi_calls;
  rec.r0_total = res.stats.r0_total;
  rec.zh_millis = res.stats.millis;
  if (options.trace) {
    std::map<std::string, std::size_t> counts;
    for (const auto& ev : res.trace) ++counts[std::string(to_string(ev.kind)) + "/" + std::string(ev.reason)];
    for (const auto& [k, v] : counts) rec.trace_summary[k] = v;
    rec.trace = res.trace;
  }

  OracleStats ost;
  rec.oracle = sigma_path_exists(g, options.budget, &ost);
  rec.oracle_nodes = ost.nodes;
  rec.oracle_millis = ost.millis;
  rec.agreement = classify(*rec.zh, rec.oracle);
  return rec;
}

// ---------------------------------------------------------------------------
// Instances from provenance and files

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
T need(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::Usage, std::string("missing \"") + key + "\" in " + j.dump());
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Usage, std::string("bad \"") + key + "\" in " + j.dump());
  }
}

Json gen_provenance(std::string_view generator) {
  Json p = Json::object();
  p["generator"] = std::string(generator);
  return p;
}

}  // namespace

Instance regenerate(const Json& p) {
  if (!p.is_object() || !p.contains("generator")) throw Error(ErrorKind::Usage, "provenance has no generator");
  const auto gen = need<std::string>(p, "generator");
  Instance inst;
  inst.id = p.value("id", gen);
  inst.provenance = p;
  if (gen == "msp") {
    MspGenOptions o;
    o.repair = !p.value("raw", false);
    inst.payload = gen_random_msp(need<std::uint32_t>(p, "stage_count"), need<std::uint32_t>(p, "width"),
                                  need<double>(p, "density"), need<std::uint64_t>(p, "seed"), o);
  } else if (gen == "ksat") {
    inst.payload = gen_random_ksat(need<std::uint32_t>(p, "n"), need<std::uint32_t>(p, "m"),
                                   need<std::uint32_t>(p, "k"), need<std::uint64_t>(p, "seed"));
  } else if (gen == "fn") {
    inst.payload = gen_fn_mu(need<std::uint32_t>(p, "n"));
  } else if (gen == "php") {
    auto f = gen_pigeonhole(need<std::uint32_t>(p, "holes"));
    if (p.value("split", false)) f = split_clauses(f);
    inst.payload = std::move(f);
  } else if (gen == "file") {
    const fs::path path = need<std::string>(p, "path");
    inst = load_instance_file(path);
    if (p.contains("file_hash") && inst.provenance.value("file_hash", "") != p["file_hash"])
      throw Error(ErrorKind::HashMismatch, path.string() + " changed since the record was made");
    inst.provenance = p;
  } else {
    throw Error(ErrorKind::Usage, "provenance generator '" + gen + "' cannot be replayed");
  }
  return inst;
}

Instance load_instance_file(const fs::path& path) {
  const auto text = read_file(path);
  Instance inst;
  inst.id = path.filename().string();
  inst.provenance = gen_provenance("file");
  inst.provenance["path"] = path.string();
  inst.provenance["file_hash"] = fnv1a64_hex(text);
  const auto ext = path.extension().string();
  if (ext == ".cnf" || ext == ".dimacs") {
    inst.payload = parse_dimacs(text);
  } else {
    inst.payload = deserialize_instance(text).doc.graph;
  }
  return inst;
}

std::string instance_text(const Instance& inst) {
  if (const auto* f = std::get_if<CnfFormula>(&inst.payload)) return to_dimacs(*f, {"id " + inst.id});
  return serialize_instance(InstanceDoc{std::get<MultiStageGraph>(inst.payload), std::nullopt, inst.provenance});
}

std::string_view instance_extension(const Instance& inst) {
  return std::holds_alternative<CnfFormula>(inst.payload) ? ".cnf" : ".msp";
}

// ---------------------------------------------------------------------------
// Campaign configuration

CampaignConfig CampaignConfig::from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorKind::Usage, "campaign config must be an object");
  static const std::vector<std::string> known = {"name",   "seed",   "workers", "trace", "strict",
                                                 "minimize", "budget", "output",  "corpus"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw Error(ErrorKind::Usage, "unknown campaign key \"" + k + "\"");

  CampaignConfig c;
  c.base_dir = base_dir;
  try {
    c.name = j.value("name", c.name);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.trace = j.value("trace", c.trace);
    c.strict = j.value("strict", c.strict);
    c.minimize = j.value("minimize", c.minimize);
    c.output = j.value("output", c.output);
    if (j.contains("budget")) {
      c.budget.max_nodes = j["budget"].value("max_nodes", c.budget.max_nodes);
      c.budget.max_millis = j["budget"].value("max_millis", c.budget.max_millis);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Usage, std::string("campaign config: ") + ex.what());
  }
  if (c.workers == 0) c.workers = 1;
  if (j.contains("corpus")) {
    if (!j["corpus"].is_array()) throw Error(ErrorKind::Usage, "\"corpus\" must be an array");
    c.corpus = j["corpus"];
  }
  return c;
}

Json CampaignConfig::to_json() const {
  Json j = Json::object();
  j["name"] = name;
  j["seed"] = seed;
  j["workers"] = workers;
  j["trace"] = trace;
  j["strict"] = strict;
  j["minimize"] = minimize;
  j["budget"] = {{"max_nodes", budget.max_nodes}, {"max_millis", budget.max_millis}};
  j["output"] = output;
  j["corpus"] = corpus;
  return j;
}

CampaignConfig load_campaign_config(const fs::path& path) {
  const auto text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + ex.what());
  }
  auto cfg = CampaignConfig::from_json(j, path.parent_path().empty() ? fs::path(".") : path.parent_path());
  if (const char* env = std::getenv("ZH_WORKERS")) {
    char* end = nullptr;
    const auto n = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || n == 0) throw Error(ErrorKind::Usage, "ZH_WORKERS must be a positive integer");
    cfg.workers = static_cast<unsigned>(n);
  }
  return cfg;
}

namespace {

/// A corpus parameter given as a number or an inclusive [lo, hi] pair.
template <typename T>
std::pair<T, T> range_of(const Json& entry, const char* key, T fallback) {
  if (!entry.contains(key)) return {fallback, fallback};
  const Json& v = entry[key];
  try {
    if (v.is_array()) {
      if (v.size() != 2) throw Error(ErrorKind::Usage, std::string("\"") + key + "\" range needs two values");
      auto lo = v[0].get<T>();
      auto hi = v[1].get<T>();
      if (hi < lo) std::swap(lo, hi);
      return {lo, hi};
    }
    return {v.get<T>(), v.get<T>()};
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Usage, std::string("bad \"") + key + "\" in corpus entry " + entry.dump());
  }
}

std::uint32_t draw(Rng& rng, std::pair<std::uint32_t, std::uint32_t> r) {
  return static_cast<std::uint32_t>(rng.between(r.first, r.second));
}

std::string pad_index(std::size_t i) {
  std::ostringstream os;
  os << std::setw(4) << std::setfill('0') << i;
  return os.str();
}

std::vector<fs::path> glob_files(const fs::path& base, const std::string& pattern) {
  fs::path full = fs::path(pattern).is_absolute() ? fs::path(pattern) : base / pattern;
  const fs::path dir = full.parent_path().empty() ? fs::path(".") : full.parent_path();
  const std::string leaf = full.filename().string();
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (::fnmatch(leaf.c_str(), entry.path().filename().c_str(), 0) == 0) out.push_back(entry.path());
  }
  if (ec) throw Error(ErrorKind::Io, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Instance> expand_corpus(const CampaignConfig& cfg) {
  std::vector<Instance> out;
  for (std::size_t ei = 0; ei < cfg.corpus.size(); ++ei) {
    const Json& entry = cfg.corpus[ei];
    if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string())
      throw Error(ErrorKind::Usage, "corpus entry " + std::to_string(ei) + " needs a \"kind\"");
    const auto kind = entry["kind"].get<std::string>();
    const auto count = entry.value("count", std::size_t{1});
    Rng rng(splitmix(cfg.seed ^ splitmix(ei + 1)));
    const std::string prefix = "c" + std::to_string(ei) + "-" + kind + "-";

    if (kind == "msp") {
      const auto stages = range_of<std::uint32_t>(entry, "stages", 5);
      const auto width = range_of<std::uint32_t>(entry, "width", 3);
      const auto density = range_of<double>(entry, "density", 0.9);
      const bool raw = entry.value("raw", false);
      for (std::size_t i = 0; i < count; ++i) {
        Json p = gen_provenance("msp");
        p["stage_count"] = draw(rng, stages);
        p["width"] = draw(rng, width);
        p["density"] = density.first + (density.second - density.first) * rng.unit();
        p["raw"] = raw;
        p["seed"] = rng.next();
        p["rng"] = std::string(Rng::kAlgorithm);
        p["id"] = prefix + pad_index(i);
        out.push_back(regenerate(p));
      }
    } else if (kind == "ksat") {
      const auto n = range_of<std::uint32_t>(entry, "n", 5);
      const auto m = range_of<std::uint32_t>(entry, "m", 0);
      const auto k = entry.value("k", std::uint32_t{3});
      const auto ratio = entry.value("ratio", 4.26);
      for (std::size_t i = 0; i < count; ++i) {
        Json p = gen_provenance("ksat");
        const auto nv = draw(rng, n);
        p["n"] = nv;
        p["m"] = entry.contains("m") ? draw(rng, m) : static_cast<std::uint32_t>(std::lround(ratio * nv));
        p["k"] = k;
        p["seed"] = rng.next();
        p["rng"] = std::string(Rng::kAlgorithm);
        p["id"] = prefix + pad_index(i);
        out.push_back(regenerate(p));
      }
    } else if (kind == "fn") {
      const auto n = range_of<std::uint32_t>(entry, "n", 3);
      for (auto v = n.first; v <= n.second; ++v) {
        Json p = gen_provenance("fn");
        p["n"] = v;
        p["id"] = "fn" + std::to_string(v);
        out.push_back(regenerate(p));
      }
    } else if (kind == "php") {
      const auto holes = range_of<std::uint32_t>(entry, "holes", 2);
      for (auto h = holes.first; h <= holes.second; ++h) {
        Json p = gen_provenance("php");
        p["holes"] = h;
        p["split"] = entry.value("split", false);
        p["id"] = "php" + std::to_string(h);
        out.push_back(regenerate(p));
      }
    } else if (kind == "files") {
      if (!entry.contains("glob")) throw Error(ErrorKind::Usage, "files entry needs a \"glob\"");
      for (const auto& path : glob_files(cfg.base_dir, entry["glob"].get<std::string>())) {
        try {
          out.push_back(load_instance_file(path));
        } catch (const Error& ex) {
          Instance bad;
          bad.id = path.filename().string();
          bad.provenance = gen_provenance("file");
          bad.provenance["path"] = path.string();
          bad.load_error = ex.what();
          out.push_back(std::move(bad));
        }
      }
    } else {
      throw Error(ErrorKind::Usage, "unknown corpus kind \"" + kind + "\"");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summaries

std::size_t CampaignSummary::count(Agreement a) const {
  const auto it = counts.find(a);
  return it == counts.end() ? 0 : it->second;
}

int CampaignSummary::exit_code() const {
  if (count(Agreement::necessity_violation) > 0) return 2;
  if (count(Agreement::sufficiency_disagreement) > 0) return 3;
  return 0;
}

Json CampaignSummary::to_json() const {
  Json j = Json::object();
  j["total"] = total;
  j["errors"] = errors;
  Json c = Json::object();
  for (Agreement a : kAllAgreements) c[std::string(to_string(a))] = count(a);
  j["counts"] = std::move(c);
  j["decided"] = total - errors - count(Agreement::oracle_unknown);
  j["zh_millis_total"] = std::round(zh_millis_total * 1000.0) / 1000.0;
  j["zh_millis_max"] = std::round(zh_millis_max * 1000.0) / 1000.0;
  j["exit_code"] = exit_code();
  return j;
}

std::string CampaignSummary::to_text(const Json& config) const {
  std::ostringstream os;
  os << "campaign " << config.value("name", "") << "\n";
  os << std::left << std::setw(28) << "class" << std::right << std::setw(8) << "count" << "\n";
  for (Agreement a : kAllAgreements)
    os << std::left << std::setw(28) << to_string(a) << std::right << std::setw(8) << count(a) << "\n";
  os << std::left << std::setw(28) << "error" << std::right << std::setw(8) << errors << "\n";
  os << std::left << std::setw(28) << "total" << std::right << std::setw(8) << total << "\n";
  os << "decided (oracle-unknown and errors excluded): " << (total - errors - count(Agreement::oracle_unknown))
     << "\n";
  os << std::fixed << std::setprecision(3) << "zh time ms: total " << zh_millis_total << ", max " << zh_millis_max
     << "\n";
  const int code = exit_code();
  os << "exit " << code << " ("
     << (code == 2 ? "necessity-violation" : code == 3 ? "sufficiency-disagreement" : "clean") << ")\n";
  os << "config " << config.dump() << "\n";
  return os.str();
}

CampaignSummary summarize(const std::vector<VerdictRecord>& records) {
  CampaignSummary s;
  for (const auto& r : records) {
    ++s.total;
    if (!r.ok || !r.agreement) {
      ++s.errors;
      continue;
    }
    ++s.counts[*r.agreement];
    s.zh_millis_total += r.zh_millis;
    s.zh_millis_max = std::max(s.zh_millis_max, r.zh_millis);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Minimization

std::optional<PredicateKind> predicate_from_string(std::string_view s) noexcept {
  if (s == "disagree") return PredicateKind::disagree;
  if (s == "zh-no") return PredicateKind::zh_no;
  if (s == "zh-yes") return PredicateKind::zh_yes;
  return std::nullopt;
}

bool holds(PredicateKind kind, const MultiStageGraph& g, const RunOptions& options) {
  const auto zh = zh_solve(g, SolveOptions{options.strict, false}).decision;
  switch (kind) {
    case PredicateKind::zh_no: return zh == Decision::no;
    case PredicateKind::zh_yes: return zh == Decision::yes;
    case PredicateKind::disagree: return zh == Decision::yes && sigma_path_exists(g, options.budget) == Answer::no;
  }
  return false;
}

Instance minimize_instance(const Instance& inst, PredicateKind kind, const RunOptions& options, MinimizeStats* stats) {
  Instance out;
  out.id = inst.id + ".min";
  out.provenance = Json::object();
  out.provenance["generator"] = "minimized";
  out.provenance["from"] = inst.provenance;
  if (const auto* f = std::get_if<CnfFormula>(&inst.payload)) {
    out.payload = minimize_cnf(
        *f, [&](const CnfFormula& x) { return holds(kind, reduce_full(x).graph, options); }, stats);
  } else {
    const auto& g = std::get<MultiStageGraph>(inst.payload);
    // Candidates that stop being 2-MSP are filtered by the minimizer when
    // the input is 2-MSP; otherwise ZH runs without the structure check.
    RunOptions relaxed = options;
    relaxed.strict = options.strict && validate_2msp(g).empty();
    out.payload = minimize_msp(
        g, [&](const MultiStageGraph& x) { return holds(kind, x, relaxed); }, stats);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Campaigns

namespace {

struct Outcome {
  VerdictRecord record;
  std::optional<Instance> minimized;
};

Outcome run_guarded(const Instance& inst, const RunOptions& options, bool minimize) {
  Outcome o;
  try {
    if (!inst.load_error.empty()) throw std::runtime_error(inst.load_error);
    o.record = run_one(inst, options);
  } catch (const std::exception& ex) {
    o.record = VerdictRecord{};
    o.record.id = inst.id;
    o.record.provenance = inst.provenance;
    o.record.sweep_order = std::string(kSweepOrder);
    o.record.ok = false;
    o.record.error = ex.what();
    return o;
  }
  if (minimize && o.record.agreement == Agreement::sufficiency_disagreement) {
    try {
      o.minimized = minimize_instance(inst, PredicateKind::disagree, options);
    } catch (const Error&) {
      // The original is archived regardless.
    }
  }
  return o;
}

class OutputDir {
 public:
  explicit OutputDir(const CampaignConfig& cfg) : root_(cfg.output) {
    if (root_.empty()) return;
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + root_.string() + ": " + ec.message());
    write_file(root_ / "config.json", cfg.to_json().dump(2) + "\n");
    records_.open(root_ / "records.jsonl", std::ios::binary | std::ios::trunc);
    if (!records_) throw Error(ErrorKind::Io, "cannot write " + (root_ / "records.jsonl").string());
  }

  bool enabled() const { return !root_.empty(); }

  void record(const VerdictRecord& r) {
    if (!enabled()) return;
    records_ << r.to_json().dump() << "\n";
    records_.flush();
    if (!records_) throw Error(ErrorKind::Io, "write to records.jsonl failed");
  }

  void trace(const VerdictRecord& r) {
    if (!enabled() || r.trace.empty()) return;
    make("traces");
    write_file(root_ / "traces" / (r.id + ".jsonl"), format_trace(r.trace));
  }

  std::string archive(const std::string& name, const std::string& text) {
    make("disagreements");
    write_file(root_ / "disagreements" / name, text);
    return "disagreements/" + name;
  }

  void finish(const CampaignSummary& s, const Json& config) {
    if (!enabled()) return;
    write_file(root_ / "summary.txt", s.to_text(config));
    Json j = s.to_json();
    j["config"] = config;
    write_file(root_ / "summary.json", j.dump(2) + "\n");
  }

 private:
  void make(const char* sub) {
    std::error_code ec;
    fs::create_directories(root_ / sub, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + (root_ / sub).string());
  }

  fs::path root_;
  std::ofstream records_;
};

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  const auto instances = expand_corpus(cfg);
  OutputDir out(cfg);
  const RunOptions options{cfg.budget, cfg.strict, cfg.trace};

  std::vector<std::optional<Outcome>> done(instances.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      auto o = run_guarded(instances[i], options, cfg.minimize);
      o.record.seq = i;
      {
        std::lock_guard lock(mu);
        done[i] = std::move(o);
      }
      cv.notify_one();
    }
  };
  const unsigned n_threads = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(instances.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads && !instances.empty(); ++t) pool.emplace_back(worker);

  // Single writer: records leave in corpus order.
  CampaignReport report;
  try {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      Outcome o;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return done[i].has_value(); });
        o = std::move(*done[i]);
        done[i].reset();
      }
      out.record(o.record);
      out.trace(o.record);
      if (out.enabled() && o.record.agreement == Agreement::sufficiency_disagreement) {
        const auto& inst = instances[i];
        report.archived.push_back(
            out.archive(inst.id + ".orig" + std::string(instance_extension(inst)), instance_text(inst)));
        if (o.minimized)
          report.archived.push_back(out.archive(inst.id + ".min" + std::string(instance_extension(*o.minimized)),
                                                instance_text(*o.minimized)));
      }
      o.record.trace.clear();
      report.records.push_back(std::move(o.record));
    }
  } catch (...) {
    next.store(instances.size());
    for (auto& t : pool) t.join();
    throw;
  }
  for (auto& t : pool) t.join();

  report.summary = summarize(report.records);
  out.finish(report.summary, cfg.to_json());
  return report;
}

std::pair<CampaignSummary, Json> read_campaign(const fs::path& dir) {
  Json config = Json::object();
  if (fs::exists(dir / "config.json")) {
    try {
      config = Json::parse(read_file(dir / "config.json"));
    } catch (const nlohmann::json::parse_error& ex) {
      throw Error(ErrorKind::ParseError, (dir / "config.json").string() + ": " + ex.what());
    }
  }
  std::vector<VerdictRecord> records;
  std::istringstream in(read_file(dir / "records.jsonl"));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(VerdictRecord::from_json(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& ex) {
      throw Error(ErrorKind::ParseError, "records.jsonl line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return {summarize(records), config};
}

}  // namespace msp
