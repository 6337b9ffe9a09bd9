#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "msp/cnf.hpp"
#include "msp/graph.hpp"
#include "msp/instance_io.hpp"
#include "msp/kernel.hpp"
#include "msp/minimize.hpp"
#include "msp/oracle.hpp"

namespace msp {

/// A formula (run through reduce_full) or a graph, with where it came from.
struct Instance {
  std::string id;
  Json provenance = Json::object();
  std::variant<CnfFormula, MultiStageGraph> payload;
  /// Set when a corpus file could not be loaded; the campaign records it.
  std::string load_error;
};

enum class Agreement { agree_yes, agree_no, necessity_violation, sufficiency_disagreement, oracle_unknown };
std::string_view to_string(Agreement a) noexcept;
std::optional<Agreement> agreement_from_string(std::string_view s) noexcept;
inline constexpr Agreement kAllAgreements[] = {Agreement::agree_yes, Agreement::agree_no,
                                               Agreement::necessity_violation, Agreement::sufficiency_disagreement,
                                               Agreement::oracle_unknown};

/// Exactly one class for every (zh, oracle) pair.
Agreement classify(Decision zh, Answer oracle) noexcept;

struct RunOptions {
  OracleBudget budget;
  bool strict = true;
  bool trace = false;
};

struct VerdictRecord {
  std::size_t seq = 0;
  std::string id;
  Json provenance = Json::object();
  /// Content hash of the graph both engines ran on.
  std::string hash;
  bool ok = true;
  std::string error;
  bool valid_2msp = false;
  std::optional<Decision> zh;
  Answer oracle = Answer::unknown;
  /// Brute-force satisfiability, for formula instances.
  std::optional<bool> sat;
  std::optional<Agreement> agreement;
  std::size_t kernel_size = 0;
  std::size_t prune_events = 0;
  std::size_t passes = 0;
  std::size_t psi_calls = 0;
  std::size_t r0_total = 0;
  std::uint64_t oracle_nodes = 0;
  std::string sweep_order;
  double zh_millis = 0.0;
  double oracle_millis = 0.0;
  /// Event counts per "kind/reason"; empty unless traced.
  Json trace_summary = Json::object();
  /// Full event list; kept in memory only.
  std::vector<TraceEvent> trace;

  /// Fixed field order. Timings are left out when with_timings is false,
  /// which makes records from replays comparable byte for byte.
  Json to_json(bool with_timings = true) const;
  static VerdictRecord from_json(const Json& j);
};

/// The graph both engines see: the graph itself, or reduce_full of the formula.
MultiStageGraph instance_graph(const Instance& inst);

/// Runs ZH and the oracle and classifies. Load and validation errors
/// propagate as Error.
VerdictRecord run_one(const Instance& inst, const RunOptions& options = {});

/// Rebuilds an instance from its provenance ("generator": msp | ksat | fn |
/// php | file). Throws Error{Usage} for provenance that cannot be replayed.
Instance regenerate(const Json& provenance);

/// .cnf / .dimacs files are DIMACS, anything else the instance format.
Instance load_instance_file(const std::filesystem::path& path);

struct CampaignConfig {
  std::string name = "campaign";
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool trace = false;
  bool strict = true;
  bool minimize = true;
  OracleBudget budget;
  /// Output directory; empty keeps everything in memory.
  std::string output;
  /// Corpus entries, kept verbatim (see README for the entry kinds).
  Json corpus = Json::array();
  /// Relative file globs resolve against this directory.
  std::filesystem::path base_dir = ".";

  /// Throws Error{Usage} on unknown keys or bad values.
  static CampaignConfig from_json(const Json& j, const std::filesystem::path& base_dir = ".");
  Json to_json() const;
};

/// Reads a config file; ZH_WORKERS in the environment overrides "workers".
CampaignConfig load_campaign_config(const std::filesystem::path& path);

/// Deterministic expansion of the corpus entries into instances.
std::vector<Instance> expand_corpus(const CampaignConfig& cfg);

struct CampaignSummary {
  std::size_t total = 0;
  std::size_t errors = 0;
  std::map<Agreement, std::size_t> counts;
  double zh_millis_total = 0.0;
  double zh_millis_max = 0.0;

  std::size_t count(Agreement a) const;
  /// 2 on any necessity-violation, else 3 on any sufficiency-disagreement, else 0.
  int exit_code() const;
  Json to_json() const;
  std::string to_text(const Json& config) const;
};

CampaignSummary summarize(const std::vector<VerdictRecord>& records);

struct CampaignReport {
  CampaignSummary summary;
  std::vector<VerdictRecord> records;
  /// Archived disagreement files, relative to the output directory.
  std::vector<std::string> archived;
};

/// Runs every instance on cfg.workers threads. Records are written in corpus
/// order by a single writer; with an output directory this produces
/// config.json, records.jsonl, summary.txt, summary.json, and
/// disagreements/ and traces/ when there is something to put there.
/// Throws Error{Io} when the output cannot be written.
CampaignReport run_campaign(const CampaignConfig& cfg);

/// Re-reads records.jsonl and config.json of a campaign directory.
std::pair<CampaignSummary, Json> read_campaign(const std::filesystem::path& dir);

enum class PredicateKind { disagree, zh_no, zh_yes };
std::optional<PredicateKind> predicate_from_string(std::string_view s) noexcept;

/// The predicate on one graph. disagree means zh = yes and oracle = no.
bool holds(PredicateKind kind, const MultiStageGraph& g, const RunOptions& options);

/// Shrinks the instance while the predicate holds (formulas through
/// minimize_cnf, graphs through minimize_msp).
Instance minimize_instance(const Instance& inst, PredicateKind kind, const RunOptions& options,
                           MinimizeStats* stats = nullptr);

/// DIMACS for formulas, the instance format for graphs.
std::string instance_text(const Instance& inst);
std::string_view instance_extension(const Instance& inst);

}  // namespace msp
