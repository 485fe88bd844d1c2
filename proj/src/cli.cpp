#include "partsmm/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "partsmm/beliefs.hpp"
#include "partsmm/consistency.hpp"
#include "partsmm/csv.hpp"
#include "partsmm/enrich.hpp"
#include "partsmm/error.hpp"
#include "partsmm/hash.hpp"
#include "partsmm/ingest.hpp"
#include "partsmm/metrics.hpp"
#include "partsmm/parallel.hpp"
#include "partsmm/repair.hpp"
#include "partsmm/synthetic.hpp"
#include "partsmm/wcnf.hpp"

namespace partsmm::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kManifestSchema = 1;

struct Options {
  std::string input;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::int64_t scale = kDefaultScale;
  double budget_secs = 180.0;
  std::string engine = "exact";
  std::string solver_cmd;
  bool allow_missing = false;
  std::uint64_t iterations = 100000;
  std::string beliefs;
  std::string probes;
  std::string predictions;
  std::string conflicts;
  std::string models_out;
  std::string assignment;
  std::string use = "beliefs";
  bool contrapositive = false;
  bool strict = false;
  bool append = false;
  bool omit_timings = false;
  std::size_t count = 50;
  std::size_t min_parts = 4;
  std::size_t max_parts = 8;
};

std::size_t worker_count(const Options& o) {
  if (o.workers > 0) return o.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

RepairConfig repair_config(const Options& o) {
  RepairConfig c;
  c.engine = engine_from_string(o.engine);
  c.scale = o.scale;
  c.budget = Seconds(o.budget_secs);
  c.seed = o.seed;
  c.iterations = o.iterations;
  c.solver_cmd = o.solver_cmd;
  c.allow_missing = o.allow_missing;
  return c;
}

std::string num(double v) { return nlohmann::json(v).dump(); }

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string model_path(const std::string& dir, const PartsMentalModel& m) {
  return (fs::path(dir) / (model_file_stem(m) + ".json")).string();
}

bool has_json_models(const std::string& path) {
  if (!fs::is_directory(path)) return fs::path(path).extension() == ".json";
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == ".json") return true;
  }
  return false;
}

/// Models from JSON files, or ingested and enriched from a raw release.
std::vector<PartsMentalModel> load_dataset(const std::string& path, bool contrapositive) {
  if (!fs::exists(path)) throw ValidationError("input not found: " + path);
  if (has_json_models(path)) return load_models(path);
  IngestResult ing = ingest_path(path);
  EnrichOptions eo;
  eo.contrapositive = contrapositive;
  for (auto& m : ing.models) m.gold = to_labeled(enrich(m.gold_map(), m.parts, eo).enriched);
  return std::move(ing.models);
}

std::vector<std::string> input_files(const std::string& path) {
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::recursive_directory_iterator(path)) {
      if (e.is_regular_file()) files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  return files;
}

/// Beliefs per model: from a probe file when given, else from the model.
std::vector<BeliefMap> gather_beliefs(const std::vector<PartsMentalModel>& models, const Options& o) {
  std::vector<BeliefMap> out(models.size());
  if (o.probes.empty()) {
    for (std::size_t i = 0; i < models.size(); ++i) out[i] = models[i].belief_map();
    return out;
  }
  std::map<std::pair<std::string, std::string>, std::vector<ProbeRecord>> by_model;
  for (auto& r : read_probe_records(o.probes)) by_model[{r.entity, r.model_id}].push_back(std::move(r));
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto it = by_model.find({models[i].entity, models[i].model_id});
    if (it != by_model.end()) out[i] = beliefs_from_records(it->second, o.allow_missing);
  }
  return out;
}

std::vector<std::vector<ProbeRecord>> probe_models(const std::vector<PartsMentalModel>& models, const Options& o) {
  SourceSpec spec = parse_source_spec(o.beliefs);
  if (!spec.params.count("seed")) spec.params["seed"] = std::to_string(o.seed);
  std::unique_ptr<BeliefSource> shared;
  if (spec.kind == "http" || spec.kind == "recorded") {
    if (models.empty()) return {};
    shared = make_source(spec, models.front());
  }
  std::vector<std::vector<ProbeRecord>> out(models.size());
  parallel_for(models.size(), worker_count(o), [&](std::size_t i) {
    if (shared) {
      out[i] = probe(*shared, models[i]);
    } else {
      auto source = make_source(spec, models[i]);
      out[i] = probe(*source, models[i]);
    }
  });
  return out;
}

std::vector<Repair> repair_models(const std::vector<PartsMentalModel>& models, const std::vector<BeliefMap>& beliefs,
                                  const RepairConfig& config, std::size_t workers) {
  std::vector<Repair> out(models.size());
  parallel_for(models.size(), workers, [&](std::size_t i) {
    try {
      out[i] = repair(models[i], beliefs[i], config);
    } catch (const Error& e) {
      throw Error(models[i].entity + "/" + models[i].model_id + ": " + e.what());
    }
  });
  return out;
}

ModelEval make_eval(const PartsMentalModel& m, Assignment pred, std::size_t ties) {
  return ModelEval{m.entity, m.model_id, std::move(pred), m.gold_map(), ties};
}

void print_report(std::ostream& out, const std::string& format, const ViolationReport& r) {
  out << (format == "csv" ? to_csv(r) : to_json_text(r));
}

std::string accuracy_curve_csv(const EvalReport& raw, const EvalReport& repaired) {
  std::string s = "s,raw,repaired\n";
  for (int t : kAccuracyThresholds) {
    s += csv_row({std::to_string(t), num(raw.accuracy_at_s.at(t)), num(repaired.accuracy_at_s.at(t))});
  }
  return s;
}

ViolationReport total_violations(const std::vector<Repair>& repairs, bool repaired) {
  ViolationReport total;
  for (const auto& r : repairs) total.merge(repaired ? r.repaired_violations : r.raw_violations);
  total.finalize();
  return total;
}

// ---- subcommands ----

int cmd_ingest(const Options& o, std::ostream& out) {
  const IngestResult r = ingest_path(o.input);
  if (!o.out.empty()) {
    for (const auto& m : r.models) save_model(m, model_path(o.out, m));
  }
  if (o.format == "csv") {
    out << "key,value\n";
    out << csv_row({"models", std::to_string(r.summary.models)});
    out << csv_row({"entities", std::to_string(r.summary.entities)});
    out << csv_row({"tuples", std::to_string(r.summary.tuples)});
    out << csv_row({"true_tuples", std::to_string(r.summary.true_tuples)});
    out << csv_row({"false_tuples", std::to_string(r.summary.false_tuples)});
    out << csv_row({"majority_baseline", num(r.summary.majority_baseline())});
  } else {
    out << to_json_text(r.summary);
  }
  return 0;
}

int cmd_enrich(const Options& o, std::ostream& out) {
  const auto models = load_models(o.input);
  EnrichOptions eo;
  eo.contrapositive = o.contrapositive;
  const DatasetEnrichment d = enrich_dataset(models, eo, worker_count(o));
  if (!o.out.empty()) {
    for (std::size_t i = 0; i < models.size(); ++i) {
      if (!d.models[i].result) continue;
      PartsMentalModel m = models[i];
      m.gold = to_labeled(d.models[i].result->enriched);
      save_model(m, model_path(o.out, m));
    }
  }
  if (!o.conflicts.empty()) write_file(o.conflicts, conflicts_csv(d));
  const EnrichmentSummary& s = d.summary;
  if (o.format == "csv") {
    out << "models,failed,input_tuples,enriched_tuples,true_tuples,false_tuples,conflicts,conflict_rate\n";
    out << csv_row({std::to_string(s.models), std::to_string(s.failed), std::to_string(s.input_tuples),
                    std::to_string(s.enriched_tuples), std::to_string(s.true_tuples),
                    std::to_string(s.false_tuples), std::to_string(s.conflicts), num(s.conflict_rate)});
  } else {
    ojson j;
    j["models"] = s.models;
    j["failed"] = s.failed;
    j["input_tuples"] = s.input_tuples;
    j["enriched_tuples"] = s.enriched_tuples;
    j["true_tuples"] = s.true_tuples;
    j["false_tuples"] = s.false_tuples;
    j["spatial_tuples"] = s.spatial_tuples;
    j["connectivity_tuples"] = s.connectivity_tuples;
    j["functional_tuples"] = s.functional_tuples;
    j["conflicts"] = s.conflicts;
    j["conflict_rate"] = s.conflict_rate;
    auto& errors = j["errors"] = ojson::array();
    for (const auto& m : d.models) {
      if (!m.error.empty()) errors.push_back({{"entity", m.entity}, {"model_id", m.model_id}, {"error", m.error}});
    }
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
  if (o.use != "beliefs" && o.use != "gold") throw ValidationError("--use must be beliefs or gold");
  const auto models = load_models(o.input);
  std::optional<Solution> given;
  if (!o.assignment.empty()) given = solution_from_json_text(read_file(o.assignment), o.assignment);
  ViolationReport total;
  for (const auto& m : models) {
    Assignment a;
    if (given) {
      a = given->assignment;
    } else if (o.use == "gold") {
      a.truth = m.gold_map();
    } else {
      a = threshold(m.belief_map()).assignment;
    }
    const Grounding g = ground(m.parts);
    total.merge(conditional_violation(densify(a, g.universe, o.strict ? -1 : 0), g));
  }
  total.finalize();
  print_report(out, o.format, total);
  return 0;
}

int cmd_probe(const Options& o, std::ostream& out) {
  const auto models = load_models(o.input);
  const auto records = probe_models(models, o);
  if (!o.append && fs::exists(o.out)) fs::remove(o.out);
  if (auto parent = fs::path(o.out).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::size_t total = 0, failed = 0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    append_probe_records(o.out, records[i]);
    total += records[i].size();
    for (const auto& r : records[i]) failed += r.failed;
    if (!o.models_out.empty()) {
      PartsMentalModel m = models[i];
      m.beliefs = to_entries(beliefs_from_records(records[i], true));
      save_model(m, model_path(o.models_out, m));
    }
  }
  if (o.format == "csv") {
    out << "models,records,failed\n" << csv_row({std::to_string(models.size()), std::to_string(total), std::to_string(failed)});
  } else {
    ojson j{{"models", models.size()}, {"records", total}, {"failed", failed}};
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto models = load_models(o.input);
  const auto beliefs = gather_beliefs(models, o);
  const RepairConfig config = repair_config(o);
  const auto repairs = repair_models(models, beliefs, config, worker_count(o));
  if (!o.out.empty()) {
    for (std::size_t i = 0; i < models.size(); ++i) {
      write_file(model_path(o.out, models[i]), solution_to_json_text(repairs[i], config));
    }
  }
  if (o.format == "csv") {
    out << "entity,model_id,proven_optimal,satisfied_soft_weight,total_soft_weight,raw_micro_tau,repaired_micro_tau\n";
    for (const auto& r : repairs) {
      out << csv_row({r.entity, r.model_id, r.proven_optimal ? "true" : "false", std::to_string(r.satisfied_soft_weight),
                      std::to_string(r.total_soft_weight), num(r.raw_violations.micro_tau),
                      num(r.repaired_violations.micro_tau)});
    }
  } else {
    ojson j;
    j["models"] = repairs.size();
    std::size_t optimal = 0;
    for (const auto& r : repairs) optimal += r.proven_optimal;
    j["proven_optimal"] = optimal;
    j["raw_micro_tau"] = total_violations(repairs, false).micro_tau;
    j["repaired_micro_tau"] = total_violations(repairs, true).micro_tau;
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto models = load_models(o.input);
  const auto beliefs = gather_beliefs(models, o);
  bool have_beliefs = false;
  for (const auto& b : beliefs) have_beliefs = have_beliefs || !b.empty();

  std::optional<EvalReport> raw, repaired;
  if (have_beliefs) {
    std::vector<ModelEval> evals;
    for (std::size_t i = 0; i < models.size(); ++i) {
      const StatementUniverse u(models[i].parts);
      const auto t = threshold(complete_beliefs(beliefs[i], u, o.allow_missing));
      evals.push_back(make_eval(models[i], t.assignment, t.ties));
    }
    raw = breakdowns(evals);
  }
  if (!o.predictions.empty()) {
    std::vector<ModelEval> evals;
    for (const auto& m : models) {
      const std::string path = model_path(o.predictions, m);
      if (!fs::exists(path)) throw ValidationError("no prediction for " + m.entity + "/" + m.model_id + " at " + path);
      evals.push_back(make_eval(m, solution_from_json_text(read_file(path), path).assignment, 0));
    }
    repaired = breakdowns(evals);
  }
  if (!raw && !repaired) throw ValidationError("nothing to evaluate: models carry no beliefs and no --predictions given");

  const EvalReport& main = repaired ? *repaired : *raw;
  if (!o.out.empty()) {
    const fs::path dir(o.out);
    write_file((dir / "report.json").string(),
               raw && repaired ? comparison_json_text(*raw, *repaired) : to_json_text(main));
    write_file((dir / "per_relation.csv").string(), per_relation_csv(main));
    write_file((dir / "per_entity.csv").string(), per_entity_csv(main));
    write_file((dir / "per_model.csv").string(), per_model_csv(main));
    write_file((dir / "accuracy_at_s.csv").string(),
               raw && repaired ? accuracy_curve_csv(*raw, *repaired) : accuracy_at_s_csv(main));
  }
  if (o.format == "csv") {
    out << per_relation_csv(main);
  } else {
    out << (raw && repaired ? comparison_json_text(*raw, *repaired) : to_json_text(main));
  }
  return 0;
}

int cmd_export_wcnf(const Options& o, std::ostream& out) {
  const PartsMentalModel m = load_model(o.input);
  BeliefMap beliefs = m.belief_map();
  if (!o.probes.empty()) beliefs = gather_beliefs({m}, o).front();
  const Grounding g = ground(m.parts);
  const WcnfProblem p = encode(complete_beliefs(beliefs, g.universe, o.allow_missing), g, o.scale);
  const std::string text = export_wcnf(p);
  if (o.out.empty() || o.out == "-") {
    out << text;
  } else {
    write_file(o.out, text);
  }
  return 0;
}

int cmd_synth(const Options& o, std::ostream& out) {
  SyntheticOptions so;
  so.min_parts = o.min_parts;
  so.max_parts = o.max_parts;
  const auto models = synthetic_dataset(o.seed, o.count, so);
  for (const auto& m : models) save_model(m, model_path(o.out, m));
  ojson j{{"models", models.size()}, {"seed", o.seed}};
  out << j.dump(2) << "\n";
  return 0;
}

struct ManifestFile {
  std::string path;
  std::string sha256;
};

int cmd_pipeline(const Options& o, std::ostream& out) {
  const std::string started_at = utc_now();
  std::map<std::string, double> timings;
  auto t = Clock::now();

  const auto models = load_dataset(o.input, o.contrapositive);
  if (models.empty()) throw ValidationError("dataset has no mental models: " + o.input);
  timings["load"] = seconds_since(t);
  const RepairConfig config = repair_config(o);
  const fs::path dir(o.out);
  fs::create_directories(dir);

  t = Clock::now();
  const auto records = probe_models(models, o);
  const std::string probes_path = (dir / "probes.jsonl").string();
  std::string probe_text;
  std::vector<BeliefMap> beliefs(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (const auto& r : records[i]) probe_text += to_jsonl(r);
    beliefs[i] = beliefs_from_records(records[i], o.allow_missing);
  }
  write_file(probes_path, probe_text);
  timings["probe"] = seconds_since(t);

  t = Clock::now();
  const auto repairs = repair_models(models, beliefs, config, worker_count(o));
  for (std::size_t i = 0; i < models.size(); ++i) {
    write_file(model_path((dir / "solutions").string(), models[i]), solution_to_json_text(repairs[i], config));
  }
  timings["solve"] = seconds_since(t);

  t = Clock::now();
  std::vector<ModelEval> raw_evals, fixed_evals;
  for (std::size_t i = 0; i < models.size(); ++i) {
    raw_evals.push_back(make_eval(models[i], repairs[i].raw, repairs[i].ties));
    fixed_evals.push_back(make_eval(models[i], repairs[i].repaired, 0));
  }
  const EvalReport raw = breakdowns(raw_evals);
  const EvalReport fixed = breakdowns(fixed_evals);
  write_file((dir / "report.json").string(), comparison_json_text(raw, fixed));
  write_file((dir / "per_relation_raw.csv").string(), per_relation_csv(raw));
  write_file((dir / "per_relation_repaired.csv").string(), per_relation_csv(fixed));
  write_file((dir / "per_entity_raw.csv").string(), per_entity_csv(raw));
  write_file((dir / "per_entity_repaired.csv").string(), per_entity_csv(fixed));
  write_file((dir / "per_model_raw.csv").string(), per_model_csv(raw));
  write_file((dir / "per_model_repaired.csv").string(), per_model_csv(fixed));
  write_file((dir / "accuracy_at_s.csv").string(), accuracy_curve_csv(raw, fixed));
  const ViolationReport raw_tau = total_violations(repairs, false);
  const ViolationReport fixed_tau = total_violations(repairs, true);
  write_file((dir / "violations_raw.json").string(), to_json_text(raw_tau));
  write_file((dir / "violations_repaired.json").string(), to_json_text(fixed_tau));
  timings["evaluate"] = seconds_since(t);

  ojson summary;
  summary["models"] = models.size();
  summary["raw_accuracy"] = raw.overall_accuracy;
  summary["repaired_accuracy"] = fixed.overall_accuracy;
  summary["raw_macro_accuracy"] = raw.macro_accuracy;
  summary["repaired_macro_accuracy"] = fixed.macro_accuracy;
  summary["raw_micro_tau"] = raw_tau.micro_tau;
  summary["repaired_micro_tau"] = fixed_tau.micro_tau;
  std::size_t optimal = 0;
  for (const auto& r : repairs) optimal += r.proven_optimal;
  summary["proven_optimal"] = optimal;
  write_file((dir / "summary.json").string(), summary.dump(2) + "\n");

  // Manifest: everything but the "run" block is a function of inputs and config.
  ojson manifest;
  manifest["schema_version"] = kManifestSchema;
  manifest["command"] = "pipeline";
  manifest["config"] = {{"beliefs", o.beliefs},
                        {"engine", o.engine},
                        {"scale", o.scale},
                        {"budget_secs", o.budget_secs},
                        {"seed", o.seed},
                        {"iterations", o.iterations},
                        {"allow_missing", o.allow_missing},
                        {"contrapositive", o.contrapositive}};
  auto& inputs = manifest["inputs"] = ojson::array();
  const fs::path in_root = fs::is_directory(o.input) ? fs::path(o.input) : fs::path(o.input).parent_path();
  for (const auto& f : input_files(o.input)) {
    inputs.push_back({{"path", fs::relative(f, in_root).generic_string()}, {"sha256", sha256_hex(read_file(f))}});
  }
  auto& outputs = manifest["outputs"] = ojson::array();
  for (const auto& f : input_files(dir.string())) {
    const auto rel = fs::relative(f, dir).generic_string();
    if (rel == "manifest.json") continue;
    outputs.push_back({{"path", rel}, {"sha256", sha256_hex(read_file(f))}});
  }
  if (!o.omit_timings) {
    ojson tm = ojson::object();
    for (const auto& [k, v] : timings) tm[k] = v;
    manifest["run"] = {{"started_at", started_at}, {"finished_at", utc_now()}, {"timings_secs", tm}};
  }
  write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");

  if (o.format == "csv") {
    out << "key,value\n";
    for (auto it = summary.begin(); it != summary.end(); ++it) out << csv_row({it.key(), it.value().dump()});
  } else {
    out << summary.dump(2) << "\n";
  }
  return 0;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
  if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
  if (dynamic_cast<const IoError*>(&e)) return "io_error";
  if (dynamic_cast<const Error*>(&e)) return "error";
  if (dynamic_cast<const fs::filesystem_error*>(&e)) return "io_error";
  return "internal_error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parts mental models: enrichment, consistency checking and belief repair", "partsmm"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("-i,--input", o.input, "Model JSON file or directory");
    if (required) opt->required();
  };
  auto format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto workers = [&](CLI::App* c) { c->add_option("--workers", o.workers, "Worker threads (0 = all cores)"); };
  auto engine = [&](CLI::App* c) {
    c->add_option("--engine", o.engine, "exact, local or external")->check(CLI::IsMember({"exact", "local", "external"}));
    c->add_option("--scale", o.scale, "Confidence-to-weight scale")->check(CLI::PositiveNumber);
    c->add_option("--budget-secs", o.budget_secs, "Per-model solver budget")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "Seed for all randomness");
    c->add_option("--iterations", o.iterations, "Local search iterations");
    c->add_option("--solver-cmd", o.solver_cmd, "External solver command; the .wcnf path is appended");
    c->add_flag("--allow-missing", o.allow_missing, "Fill statements without beliefs with 0.5");
  };

  auto* ingest = app.add_subcommand("ingest", "Read a raw annotation release into model files");
  ingest->add_option("-i,--input", o.input, "CSV/TSV/JSONL file or directory")->required();
  ingest->add_option("-o,--out", o.out, "Directory for model JSON files");
  format(ingest);

  auto* enrich = app.add_subcommand("enrich", "Close gold labels under the relation rules");
  input(enrich);
  enrich->add_option("-o,--out", o.out, "Directory for enriched model files");
  enrich->add_option("--conflicts", o.conflicts, "CSV file listing conflicts with both derivations");
  enrich->add_flag("--contrapositive", o.contrapositive, "Also derive False through transitivity");
  workers(enrich);
  format(enrich);

  auto* check = app.add_subcommand("check", "Conditional violation rates of an assignment");
  input(check);
  check->add_option("--use", o.use, "Which labels to check: beliefs (thresholded) or gold");
  check->add_option("--assignment", o.assignment, "Solution JSON to check instead");
  check->add_flag("--strict", o.strict, "Fail on statements without a label instead of reading them as False");
  format(check);

  auto* probe_cmd = app.add_subcommand("probe", "Query a belief source for every statement");
  input(probe_cmd);
  probe_cmd->add_option("--beliefs", o.beliefs, "gold | noisy:flip=P,seed=S | random:seed=S | recorded:path=F | http:config=F")->required();
  probe_cmd->add_option("-o,--out", o.out, "JSON-lines probe file")->required();
  probe_cmd->add_option("--models-out", o.models_out, "Also write models with beliefs attached");
  probe_cmd->add_option("--seed", o.seed, "Seed for synthetic sources without one");
  probe_cmd->add_flag("--append", o.append, "Append to an existing probe file");
  workers(probe_cmd);
  format(probe_cmd);

  auto* solve = app.add_subcommand("solve", "Repair beliefs by weighted MaxSAT");
  input(solve);
  solve->add_option("-o,--out", o.out, "Directory for solution files");
  solve->add_option("--probes", o.probes, "Probe file to read beliefs from");
  engine(solve);
  workers(solve);
  format(solve);

  auto* evaluate = app.add_subcommand("evaluate", "Accuracy of raw and repaired answers against gold");
  input(evaluate);
  evaluate->add_option("--predictions", o.predictions, "Directory of solution files");
  evaluate->add_option("--probes", o.probes, "Probe file to read raw beliefs from");
  evaluate->add_option("-o,--out", o.out, "Directory for report.json and CSV breakdowns");
  evaluate->add_flag("--allow-missing", o.allow_missing, "Fill statements without beliefs with 0.5");
  format(evaluate);

  auto* export_cmd = app.add_subcommand("export-wcnf", "Write the MaxSAT instance of one model as DIMACS WCNF");
  export_cmd->add_option("-i,--input", o.input, "Model JSON file")->required();
  export_cmd->add_option("-o,--out", o.out, "WCNF file (stdout if omitted)");
  export_cmd->add_option("--probes", o.probes, "Probe file to read beliefs from");
  export_cmd->add_option("--scale", o.scale, "Confidence-to-weight scale")->check(CLI::PositiveNumber);
  export_cmd->add_flag("--allow-missing", o.allow_missing, "Fill statements without beliefs with 0.5");

  auto* pipeline = app.add_subcommand("pipeline", "probe, solve and evaluate a dataset with a manifest");
  pipeline->add_option("--dataset,-i,--input", o.input, "Model JSON directory or raw release")->required();
  pipeline->add_option("--beliefs", o.beliefs, "Belief source spec")->required();
  pipeline->add_option("-o,--out", o.out, "Output directory")->required();
  pipeline->add_flag("--contrapositive", o.contrapositive, "Contrapositive enrichment for raw releases");
  pipeline->add_flag("--omit-timings", o.omit_timings, "Leave timestamps and timings out of the manifest");
  engine(pipeline);
  workers(pipeline);
  format(pipeline);

  auto* synth = app.add_subcommand("synth", "Generate synthetic mental models with consistent gold");
  synth->add_option("-o,--out", o.out, "Output directory")->required();
  synth->add_option("--count", o.count, "Number of models");
  synth->add_option("--seed", o.seed, "Seed");
  synth->add_option("--min-parts", o.min_parts, "Fewest parts per model");
  synth->add_option("--max-parts", o.max_parts, "Most parts per model");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o, out);
    if (enrich->parsed()) return cmd_enrich(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (probe_cmd->parsed()) return cmd_probe(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (export_cmd->parsed()) return cmd_export_wcnf(o, out);
    if (pipeline->parsed()) return cmd_pipeline(o, out);
    if (synth->parsed()) return cmd_synth(o, out);
  } catch (const std::exception& e) {
    ojson j{{"error", error_kind(e)}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace partsmm::cli
