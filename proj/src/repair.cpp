#include "partsmm/repair.hpp"

#include "json.hpp"
#include "partsmm/beliefs.hpp"
#include "partsmm/error.hpp"
#include "partsmm/hash.hpp"

namespace partsmm {

using nlohmann::json;

Engine engine_from_string(std::string_view s) {
  if (s == "exact") return Engine::Exact;
  if (s == "local") return Engine::Local;
  if (s == "external") return Engine::External;
  throw ValidationError("unknown engine '" + std::string(s) + "'; expected exact, local or external");
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Exact: return "exact";
    case Engine::Local: return "local";
    case Engine::External: return "external";
  }
  return "";
}

BeliefMap complete_beliefs(const BeliefMap& beliefs, const StatementUniverse& u, bool allow_missing) {
  if (!allow_missing) {
    std::size_t missing = 0;
    std::string sample;
    for (const Statement& s : u.statements()) {
      if (beliefs.count(s)) continue;
      if (++missing <= 5) sample += " " + to_string(s);
    }
    if (missing > 0) {
      throw ValidationError(std::to_string(missing) + " statement(s) have no belief (e.g." + sample +
                            "); pass --allow-missing to fill them with 0.5");
    }
  }
  return fill_missing(beliefs, u, 0.5);
}

Repair repair(const PartsMentalModel& model, const BeliefMap& beliefs, const RepairConfig& config) {
  const Grounding g = ground(model.parts);
  const BeliefMap full = complete_beliefs(beliefs, g.universe, config.allow_missing);
  const WcnfProblem p = encode(full, g, config.scale);

  SolveResult result;
  switch (config.engine) {
    case Engine::Exact:
      result = solve_exact(p, config.budget);
      break;
    case Engine::Local: {
      LocalSearchOptions o;
      o.seed = combine_seed(config.seed, model_file_stem(model));
      o.iterations = config.iterations;
      result = solve_local(p, o);
      break;
    }
    case Engine::External:
      if (config.solver_cmd.empty()) throw ValidationError("engine external needs --solver-cmd");
      result = solve_external(p, config.solver_cmd, config.budget);
      break;
  }

  Repair r;
  r.entity = model.entity;
  r.model_id = model.model_id;
  const ThresholdedBeliefs t = threshold(full);
  r.raw = t.assignment;
  r.ties = t.ties;
  r.repaired = std::move(result.assignment);
  r.raw_violations = conditional_violation(r.raw, g);
  r.repaired_violations = conditional_violation(r.repaired, g);
  r.satisfied_soft_weight = result.satisfied_soft_weight;
  r.total_soft_weight = p.total_soft_weight();
  r.proven_optimal = result.proven_optimal;
  r.stats = result.stats;
  return r;
}

std::string solution_to_json_text(const Repair& r, const RepairConfig& config) {
  nlohmann::ordered_json j;
  j["entity"] = r.entity;
  j["model_id"] = r.model_id;
  j["engine"] = std::string(to_string(config.engine));
  j["seed"] = config.seed;
  j["scale"] = config.scale;
  j["proven_optimal"] = r.proven_optimal;
  j["satisfied_soft_weight"] = r.satisfied_soft_weight;
  j["total_soft_weight"] = r.total_soft_weight;
  j["ties"] = r.ties;
  j["raw_micro_tau"] = r.raw_violations.micro_tau;
  j["raw_violations"] = r.raw_violations.violations;
  j["repaired_micro_tau"] = r.repaired_violations.micro_tau;
  j["repaired_violations"] = r.repaired_violations.violations;
  auto& a = j["assignment"] = nlohmann::ordered_json::array();
  for (const auto& [s, v] : r.repaired.truth) {
    a.push_back({{"x", s.subject}, {"rln", std::string(to_string(s.relation))}, {"y", s.object}, {"label", v}});
  }
  return j.dump(1) + "\n";
}

Solution solution_from_json_text(std::string_view text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    Solution s;
    s.entity = j.at("entity").get<std::string>();
    s.model_id = j.at("model_id").get<std::string>();
    for (const auto& rec : j.at("assignment")) {
      Statement st{rec.at("x").get<std::string>(), relation_from_string(rec.at("rln").get<std::string>()),
                   rec.at("y").get<std::string>()};
      s.assignment.truth[st] = rec.at("label").get<bool>();
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

}  // namespace partsmm
