#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tetot/baselines.hpp"
#include "tetot/errors.hpp"
#include "tetot/evaluation.hpp"
#include "tetot/fixture.hpp"
#include "tetot/gaussian_approx.hpp"
#include "tetot/tetot_metric.hpp"

#ifndef TETOT_VERSION
#define TETOT_VERSION "0.0.0"
#endif

namespace tetot::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kFormatsHelp = R"(File formats (all binary formats little-endian):
  EMB1  "TETOTEMB", u32 version=1, u32 dtype=1 (f32), u64 rows, u64 cols, rows*cols f32 row-major.
  LBL   sidecar next to an .emb with the same stem and extension .lbl:
        "TETOTLBL", u32 version=1, u64 count, u32 num_classes, count i64 labels (-1 = unlabeled).
  HED1  "TETOTHED", u32 version=1, u64 K, u64 dim, K*dim f32 weights row-major, K f32 bias.
  STA1  "TETOTSTA", u32 version=1, u64 dim, u64 count, dim f64 mean, dim*dim f64 covariance.
  CSV   embeddings as text, one sample per row, optional header; a last column named "label"
        supplies class ids.
  Manifest  JSON array of {"candidate_id", "source", "target", "head", "accuracy"?, "group"?,
        "source_stats"?}; relative paths resolve against the manifest's directory.

Exit codes: 0 success, 1 usage or input error (including unreadable files),
2 malformed file or invalid file contents.)";

struct Options {
  std::string source, target, head, source_emb, source_stats, stats_out, out, manifest;
  std::string norm = "l2";
  std::string solver = "exact";
  std::string metric = "tetot";
  double lambda = 1.0;
  std::optional<std::size_t> num_source, num_target;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  bool hard_labels = false;
  double jitter = 0.0;
  std::size_t jobs = 0;
  // gen-fixtures
  std::string out_dir;
  std::size_t dim = 16, classes = 5, samples = 500;
  std::vector<double> shifts{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5};
};

ordered_json meta_json(const MetricReport& r) {
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : r.meta) std::visit([&](const auto& v) { meta[key] = v; }, value);
  return meta;
}

ordered_json report_json(const MetricReport& r) {
  ordered_json j;
  j["metric_name"] = r.metric_name;
  j["value"] = r.value;
  j["meta"] = meta_json(r);
  return j;
}

ordered_json config_json(const TetotConfig& c) {
  ordered_json j;
  j["lambda"] = c.lambda;
  j["norm_mode"] = std::string(to_string(c.norm_mode));
  j["num_source"] = c.num_source ? ordered_json(*c.num_source) : ordered_json(nullptr);
  j["num_target"] = c.num_target ? ordered_json(*c.num_target) : ordered_json(nullptr);
  j["seed"] = c.seed;
  j["solver"] = std::string(to_string(c.solver));
  j["sinkhorn_epsilon"] = c.sinkhorn_epsilon ? ordered_json(*c.sinkhorn_epsilon) : ordered_json(nullptr);
  j["sinkhorn_max_iter"] = c.sinkhorn_max_iter;
  j["sinkhorn_tol"] = c.sinkhorn_tol;
  j["hard_pseudo_labels"] = c.hard_pseudo_labels;
  j["cov_jitter"] = c.cov_jitter;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

TetotConfig make_config(const Options& o) {
  TetotConfig c;
  c.lambda = o.lambda;
  c.norm_mode = parse_normalization_mode(o.norm);
  c.num_source = o.num_source;
  c.num_target = o.num_target;
  c.seed = o.seed;
  c.solver = parse_solver_kind(o.solver);
  c.sinkhorn_epsilon = o.epsilon;
  c.hard_pseudo_labels = o.hard_labels;
  c.cov_jitter = o.jitter;
  c.validate();
  return c;
}

std::string summary(const MetricReport& r) {
  std::ostringstream s;
  s << r.metric_name << " = " << std::setprecision(10) << r.value;
  if (!r.meta.empty()) {
    s << " (";
    bool first = true;
    for (const auto& [key, value] : r.meta) {
      s << (first ? "" : ", ") << key << "=";
      std::visit([&](const auto& v) { s << v; }, value);
      first = false;
    }
    s << ")";
  }
  return s.str();
}

// ---- manifest batches ------------------------------------------------------

struct ManifestEntry {
  std::string candidate_id;
  fs::path source, target, head, source_stats;
  std::optional<double> accuracy;
  std::string group;
};

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw FormatError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw FormatError("manifest must be a JSON array");
  const fs::path base = path.parent_path();
  const auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  std::vector<ManifestEntry> entries;
  for (const auto& item : doc) {
    if (!item.is_object()) throw FormatError("manifest entries must be objects");
    const auto str = [&](const char* key, bool required) -> std::string {
      if (!item.contains(key)) {
        if (required) throw FormatError(std::string("manifest entry is missing \"") + key + "\"");
        return {};
      }
      if (!item[key].is_string()) throw FormatError(std::string("manifest field \"") + key + "\" must be a string");
      return item[key].get<std::string>();
    };
    ManifestEntry e;
    e.candidate_id = str("candidate_id", true);
    e.target = resolve(str("target", true));
    if (const auto s = str("source", false); !s.empty()) e.source = resolve(s);
    if (const auto s = str("head", false); !s.empty()) e.head = resolve(s);
    if (const auto s = str("source_stats", false); !s.empty()) e.source_stats = resolve(s);
    e.group = str("group", false);
    if (item.contains("accuracy") && !item["accuracy"].is_null()) {
      if (!item["accuracy"].is_number()) throw FormatError("manifest field \"accuracy\" must be a number");
      e.accuracy = item["accuracy"].get<double>();
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw InputError("manifest has no entries");
  return entries;
}

MetricReport evaluate_entry(const ManifestEntry& e, const std::string& metric, const TetotConfig& config) {
  const auto need = [&](const fs::path& p, const char* key) {
    if (p.empty()) throw InputError("candidate '" + e.candidate_id + "' needs \"" + key + "\" for metric " + metric);
  };
  if (metric == "tetot") {
    need(e.source, "source");
    need(e.head, "head");
    return compute_tetot(load_embedding_set(e.source), load_embedding_set(e.target), load_classifier_head(e.head),
                         config);
  }
  if (metric == "tetot_approx") {
    const GaussianStats stats = !e.source_stats.empty() ? load_gaussian_stats(e.source_stats)
                                : !e.source.empty()     ? gaussian_stats(load_embedding_set(e.source))
                                                        : throw InputError("candidate '" + e.candidate_id +
                                                                           "' needs \"source\" or \"source_stats\"");
    return compute_tetot_approx(stats, load_embedding_set(e.target), config);
  }
  if (metric == "entropy") {
    need(e.head, "head");
    return prediction_entropy(load_classifier_head(e.head), load_embedding_set(e.target));
  }
  throw InputError("unknown metric '" + metric + "' (expected tetot, tetot_approx or entropy)");
}

// Evaluates every entry on a bounded pool; results keep manifest order and
// the first failing entry (in manifest order) is rethrown.
std::vector<MetricReport> evaluate_manifest(const std::vector<ManifestEntry>& entries, const std::string& metric,
                                            const TetotConfig& config, std::size_t jobs) {
  std::vector<MetricReport> reports(entries.size());
  std::vector<std::exception_ptr> errors(entries.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        reports[i] = evaluate_entry(entries[i], metric, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, entries.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reports;
}

// Accuracy from the manifest, or from the target's own labels when omitted.
double entry_accuracy(const ManifestEntry& e) {
  if (e.accuracy) return *e.accuracy;
  if (e.head.empty())
    throw InputError("candidate '" + e.candidate_id + "' has no accuracy and no head to compute it from");
  const EmbeddingSet target = load_embedding_set(e.target);
  if (!target.fully_labeled())
    throw InputError("candidate '" + e.candidate_id + "' has no accuracy and its target is not fully labeled");
  return transferability_ground_truth(load_classifier_head(e.head), target).value;
}

ordered_json correlation_json(const CorrelationReport& r) {
  ordered_json j;
  j["metric_name"] = r.metric_name;
  j["rho"] = r.rho;
  j["n_points"] = r.n_points;
  ordered_json pairs = ordered_json::array();
  for (const auto& [m, a] : r.pairs) pairs.push_back({{"metric", m}, {"accuracy", a}});
  j["pairs"] = pairs;
  return j;
}

// ---- subcommands -----------------------------------------------------------

struct Outcome {
  std::vector<MetricReport> reports;
  ordered_json extra = ordered_json::object();
  std::string summary;
};

Outcome cmd_compute(const Options& o, const TetotConfig& c) {
  const auto r = compute_tetot(load_embedding_set(o.source), load_embedding_set(o.target),
                               load_classifier_head(o.head), c);
  return {{r}, {}, summary(r)};
}

Outcome cmd_approx(const Options& o, const TetotConfig& c) {
  if (o.source_emb.empty() == o.source_stats.empty())
    throw InputError("approx needs exactly one of --source-emb or --source-stats");
  const GaussianStats stats =
      o.source_stats.empty() ? gaussian_stats(load_embedding_set(o.source_emb)) : load_gaussian_stats(o.source_stats);
  const auto r = compute_tetot_approx(stats, load_embedding_set(o.target), c);
  return {{r}, {}, summary(r)};
}

Outcome cmd_entropy(const Options& o, const TetotConfig&) {
  const auto r = prediction_entropy(load_classifier_head(o.head), load_embedding_set(o.target));
  return {{r}, {}, summary(r)};
}

Outcome cmd_accuracy(const Options& o, const TetotConfig&) {
  const auto r = transferability_ground_truth(load_classifier_head(o.head), load_embedding_set(o.target));
  return {{r}, {}, summary(r)};
}

Outcome cmd_stats(const Options& o, const TetotConfig&) {
  const auto set = load_embedding_set(o.source);
  const auto stats = gaussian_stats(set);
  save_gaussian_stats(stats, o.stats_out);
  Outcome out;
  out.extra["stats"] = {{"path", o.stats_out}, {"dim", stats.mean.size()}, {"count", stats.count}};
  out.summary = "wrote " + o.stats_out + " (dim=" + std::to_string(stats.mean.size()) +
                ", count=" + std::to_string(stats.count) + ")";
  return out;
}

std::vector<Candidate> candidates_of(const std::vector<ManifestEntry>& entries, const std::vector<MetricReport>& reports) {
  std::vector<Candidate> batch;
  for (std::size_t i = 0; i < entries.size(); ++i) batch.push_back({entries[i].candidate_id, reports[i], entries[i].accuracy});
  check_unique_ids(batch);
  return batch;
}

ordered_json candidate_reports_json(const std::vector<ManifestEntry>& entries, const std::vector<MetricReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ordered_json j;
    j["candidate_id"] = entries[i].candidate_id;
    j["report"] = report_json(reports[i]);
    arr.push_back(j);
  }
  return arr;
}

Outcome cmd_rank(const Options& o, const TetotConfig& c) {
  const auto entries = read_manifest(o.manifest);
  const auto reports = evaluate_manifest(entries, o.metric, c, o.jobs);
  const auto batch = candidates_of(entries, reports);
  const auto order = rank_candidates(batch, RankDirection::lower_is_better);
  Outcome out;
  out.reports = reports;
  out.extra["candidates"] = candidate_reports_json(entries, reports);
  out.extra["ranking"] = order;
  out.extra["selection"] = order.front();
  out.summary = "ranking by " + o.metric + " (lower is better):";
  for (std::size_t i = 0; i < order.size(); ++i) out.summary += "\n  " + std::to_string(i + 1) + ". " + order[i];
  return out;
}

Outcome cmd_correlate(const Options& o, const TetotConfig& c) {
  auto entries = read_manifest(o.manifest);
  const auto reports = evaluate_manifest(entries, o.metric, c, o.jobs);
  for (auto& e : entries) e.accuracy = entry_accuracy(e);

  Outcome out;
  out.reports = reports;
  out.extra["candidates"] = candidate_reports_json(entries, reports);
  for (std::size_t i = 0; i < entries.size(); ++i) out.extra["candidates"][i]["accuracy"] = *entries[i].accuracy;

  const bool grouped = std::any_of(entries.begin(), entries.end(), [](const auto& e) { return !e.group.empty(); });
  if (!grouped) {
    const auto report = correlate_with_accuracy(candidates_of(entries, reports), o.metric);
    out.extra["correlation"] = correlation_json(report);
    out.summary = "pearson(" + o.metric + ", accuracy) = " + std::to_string(report.rho) + " over " +
                  std::to_string(report.n_points) + " candidates";
    return out;
  }

  // Groups keep first-appearance order.
  std::vector<std::pair<std::string, std::vector<Candidate>>> groups;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.group.empty()) throw InputError("candidate '" + e.candidate_id + "' has no group while others do");
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == e.group; });
    if (it == groups.end()) {
      groups.emplace_back(e.group, std::vector<Candidate>{});
      it = std::prev(groups.end());
    }
    it->second.push_back({e.candidate_id, reports[i], e.accuracy});
  }
  for (const auto& [name, batch] : groups) check_unique_ids(batch);
  const auto g = correlate_grouped(groups, o.metric);
  ordered_json per = ordered_json::array();
  for (const auto& [name, r] : g.per_group) {
    auto j = correlation_json(r);
    j["group"] = name;
    per.push_back(j);
  }
  out.extra["correlation"] = {{"per_group", per}, {"mean_rho", g.mean_rho}, {"pooled", correlation_json(g.pooled)}};
  out.summary = "pearson(" + o.metric + ", accuracy): mean over " + std::to_string(g.per_group.size()) +
                " groups = " + std::to_string(g.mean_rho) + ", pooled = " + std::to_string(g.pooled.rho);
  return out;
}

Outcome cmd_gen_fixtures(const Options& o, const TetotConfig&) {
  const auto fx = generate_synthetic_fixture(o.dim, o.classes, o.shifts, o.samples, o.seed);
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  save_embedding_set(fx.source, dir / "source.emb");
  save_classifier_head(fx.head, dir / "head.hed");
  ordered_json manifest = ordered_json::array();
  for (std::size_t k = 0; k < fx.targets.size(); ++k) {
    const std::string name = "target_" + std::to_string(k);
    save_embedding_set(fx.targets[k], dir / (name + ".emb"));
    manifest.push_back({{"candidate_id", name},
                        {"source", "source.emb"},
                        {"target", name + ".emb"},
                        {"head", "head.hed"},
                        {"accuracy", fx.true_accuracies[k]}});
  }
  std::ofstream m(dir / "manifest.json");
  m << manifest.dump(2) << "\n";
  if (!m) throw IoError("cannot write " + (dir / "manifest.json").string());

  Outcome out;
  ordered_json targets = ordered_json::array();
  for (std::size_t k = 0; k < fx.targets.size(); ++k)
    targets.push_back({{"candidate_id", "target_" + std::to_string(k)}, {"shift", o.shifts[k]}, {"accuracy", fx.true_accuracies[k]}});
  out.extra["fixture"] = {{"out_dir", o.out_dir}, {"dim", o.dim},          {"num_classes", o.classes},
                          {"n_per_domain", o.samples}, {"seed", o.seed}, {"targets", targets}};
  out.summary = "wrote " + std::to_string(fx.targets.size()) + " target domains, source, head and manifest to " + o.out_dir;
  return out;
}

// ---- wiring ----------------------------------------------------------------

void add_config_flags(CLI::App* sub, Options& o) {
  sub->add_option("--lambda", o.lambda, "Weight of the label cost (default 1)")->check(CLI::NonNegativeNumber);
  sub->add_option("--norm", o.norm, "Feature normalization: none, l2, zscore (default l2)")
      ->check(CLI::IsMember({"none", "l2", "l2_per_sample", "zscore", "zscore_per_domain"}));
  sub->add_option("--num-source", o.num_source, "Source samples to draw (default all)");
  sub->add_option("--num-target", o.num_target, "Target samples to draw (default all)");
  sub->add_option("--seed", o.seed, "Seed for all sampling (default 0)");
  sub->add_option("--solver", o.solver, "OT solver: exact or sinkhorn (default exact)")
      ->check(CLI::IsMember({"exact", "sinkhorn"}));
  sub->add_option("--epsilon", o.epsilon, "Sinkhorn regularization (default 0.01 * mean cost)");
  sub->add_flag("--hard-labels", o.hard_labels, "Use one-hot argmax pseudo-labels instead of softmax rows");
}

void add_batch_flags(CLI::App* sub, Options& o) {
  sub->add_option("--manifest", o.manifest, "Batch manifest (JSON array)")->required();
  sub->add_option("--metric", o.metric, "tetot, tetot_approx or entropy (default tetot)")
      ->check(CLI::IsMember({"tetot", "tetot_approx", "entropy"}));
  sub->add_option("--jobs", o.jobs, "Worker threads (default: hardware threads)");
  sub->add_option("--jitter", o.jitter, "Covariance jitter for tetot_approx (default 0)")->check(CLI::NonNegativeNumber);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(path);
  f << text << "\n";
  if (!f) throw IoError("cannot write " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Transferability estimation with optimal transport (TETOT)", "tetot"};
  app.footer(kFormatsHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", TETOT_VERSION);

  using Handler = Outcome (*)(const Options&, const TetotConfig&);
  std::map<const CLI::App*, Handler> handlers;
  const auto add = [&](const char* name, const char* description, Handler h) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--out", o.out, "Write the JSON record here instead of stdout");
    handlers[sub] = h;
    return sub;
  };

  auto* compute = add("compute", "TETOT between a labeled source and a target", cmd_compute);
  compute->add_option("--source", o.source, "Source embeddings (EMB1 or CSV, labeled)")->required();
  compute->add_option("--target", o.target, "Target embeddings (labels ignored)")->required();
  compute->add_option("--head", o.head, "Classifier head (HED1)")->required();
  add_config_flags(compute, o);

  auto* approx = add("approx", "Gaussian closed-form TETOT-approx (squared 2-Wasserstein)", cmd_approx);
  approx->add_option("--source-emb", o.source_emb, "Source embeddings");
  approx->add_option("--source-stats", o.source_stats, "Source statistics (STA1)");
  approx->add_option("--target", o.target, "Target embeddings")->required();
  approx->add_option("--num-target", o.num_target, "Target samples to draw (default all)");
  approx->add_option("--seed", o.seed, "Seed for target sampling (default 0)");
  approx->add_option("--jitter", o.jitter, "Added to both covariance diagonals (default 0)")->check(CLI::NonNegativeNumber);

  auto* entropy = add("entropy", "Mean prediction entropy of the head on the target", cmd_entropy);
  entropy->add_option("--target", o.target, "Target embeddings")->required();
  entropy->add_option("--head", o.head, "Classifier head (HED1)")->required();

  auto* accuracy = add("accuracy", "Head accuracy on a labeled set", cmd_accuracy);
  accuracy->add_option("--target", o.target, "Labeled embeddings")->required();
  accuracy->add_option("--head", o.head, "Classifier head (HED1)")->required();

  auto* stats = add("stats", "Write Gaussian statistics (STA1) of an embedding set", cmd_stats);
  stats->add_option("--source", o.source, "Embeddings to summarize")->required();
  stats->add_option("--stats-out", o.stats_out, "STA1 output path")->required();

  auto* rank = add("rank", "Rank manifest candidates by a metric (lower is better)", cmd_rank);
  add_batch_flags(rank, o);
  add_config_flags(rank, o);

  auto* correlate = add("correlate", "Pearson correlation between a metric and accuracy", cmd_correlate);
  add_batch_flags(correlate, o);
  add_config_flags(correlate, o);

  auto* gen = add("gen-fixtures", "Write a synthetic source, shifted targets, head and manifest", cmd_gen_fixtures);
  gen->add_option("--out-dir", o.out_dir, "Output directory")->required();
  gen->add_option("--dim", o.dim, "Feature dimension (default 16)");
  gen->add_option("--classes", o.classes, "Number of classes (default 5)");
  gen->add_option("--n", o.samples, "Samples per domain (default 500)");
  gen->add_option("--shifts", o.shifts, "Shift level per target (default 0,0.5,...,4.5)")->delimiter(',');
  gen->add_option("--seed", o.seed, "Generator seed (default 0)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << TETOT_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun 'tetot --help' for usage.\n";
    return kExitInput;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const WarningHandler previous = set_warning_handler([&err](std::string_view m) { err << "warning: " << m << "\n"; });
  struct Restore {
    WarningHandler h;
    ~Restore() { set_warning_handler(h); }
  } restore{previous};

  try {
    const TetotConfig config = make_config(o);
    Outcome outcome = handlers.at(chosen)(o, config);

    ordered_json record;
    record["command"] = chosen->get_name();
    record["config"] = config_json(config);
    ordered_json reports = ordered_json::array();
    for (const auto& r : outcome.reports) reports.push_back(report_json(r));
    record["reports"] = reports;
    for (auto it = outcome.extra.begin(); it != outcome.extra.end(); ++it) record[it.key()] = it.value();
    record["timestamp"] = utc_timestamp();
    record["tool_version"] = TETOT_VERSION;

    write_output(o.out, record.dump(2), out);
    err << outcome.summary << "\n";
    return kExitOk;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace tetot::cli
