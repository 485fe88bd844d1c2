#include "partsmm/enrich.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "partsmm/csv.hpp"
#include "partsmm/error.hpp"
#include "partsmm/parallel.hpp"

namespace partsmm {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Gold: return "gold";
    case Rule::Symmetric: return "symmetric";
    case Rule::Inverse: return "inverse";
    case Rule::Asymmetric: return "asymmetric";
    case Rule::AsymmetricInverse: return "asymmetric-inverse";
    case Rule::Transitive: return "transitive";
    case Rule::TransitiveContrapositive: return "transitive-contrapositive";
  }
  return "?";
}

std::string to_string(const Derivation& d) {
  std::string out(to_string(d.rule));
  out += '(';
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    if (i) out += "; ";
    out += to_string(d.premises[i].statement);
    out += d.premises[i].label ? "=T" : "=F";
  }
  out += ')';
  return out;
}

namespace {

constexpr std::uint8_t kTrue = 1;
constexpr std::uint8_t kFalse = 2;

std::uint8_t bit(bool label) { return label ? kTrue : kFalse; }

struct DenseDerivation {
  Rule rule = Rule::Gold;
  // Up to two premises; index into the universe plus label.
  std::uint32_t p0 = 0, p1 = 0;
  bool l0 = false, l1 = false;
  std::uint8_t count = 0;
};

struct Candidate {
  std::size_t index;
  bool label;
  DenseDerivation why;
};

class Enricher {
 public:
  Enricher(const StatementUniverse& u, const EnrichOptions& opt)
      : u_(u), opt_(opt), state_(u.size(), 0), why_true_(u.size()), why_false_(u.size()) {
    if (opt.shuffle_seed) rng_.seed(*opt.shuffle_seed);
  }

  void seed(std::size_t idx, bool label) { add({idx, label, {Rule::Gold, 0, 0, false, false, 0}}); }

  void run() {
    std::vector<Candidate> out;
    while (!work_.empty()) {
      std::size_t pick = 0;
      if (opt_.shuffle_seed) pick = std::uniform_int_distribution<std::size_t>(0, work_.size() - 1)(rng_);
      auto [idx, label] = work_[pick];
      if (pick == 0) {
        work_.pop_front();
      } else {
        work_[pick] = work_.front();
        work_.pop_front();
      }
      out.clear();
      consequences(idx, label, out);
      if (opt_.shuffle_seed) std::shuffle(out.begin(), out.end(), rng_);
      for (const auto& c : out) add(c);
    }
  }

  bool has(std::size_t idx, bool label) const { return state_[idx] & bit(label); }
  std::uint8_t state(std::size_t idx) const { return state_[idx]; }

  Derivation derivation(std::size_t idx, bool label) const {
    const DenseDerivation& d = label ? why_true_[idx] : why_false_[idx];
    Derivation out{d.rule, {}};
    if (d.count > 0) out.premises.push_back({u_.at(d.p0), d.l0});
    if (d.count > 1) out.premises.push_back({u_.at(d.p1), d.l1});
    return out;
  }

 private:
  void add(const Candidate& c) {
    if (state_[c.index] & bit(c.label)) return;
    state_[c.index] |= bit(c.label);
    (c.label ? why_true_ : why_false_)[c.index] = c.why;
    work_.emplace_back(c.index, c.label);
  }

  static DenseDerivation one(Rule r, std::size_t p, bool l) {
    return {r, static_cast<std::uint32_t>(p), 0, l, false, 1};
  }
  static DenseDerivation two(Rule r, std::size_t p, bool l, std::size_t q, bool m) {
    return {r, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), l, m, 2};
  }

  void consequences(std::size_t idx, bool label, std::vector<Candidate>& out) const {
    const Statement& s = u_.at(idx);
    const std::size_t x = *u_.part_index(s.subject);
    const std::size_t y = *u_.part_index(s.object);
    const Relation r = s.relation;
    const RelationProps& p = properties(r);
    const std::size_t n = u_.part_count();

    if (p.symmetric) {
      out.push_back({u_.index(y, r, x), label, one(Rule::Symmetric, idx, label)});
    } else {
      out.push_back({u_.index(y, p.inverse, x), label, one(Rule::Inverse, idx, label)});
    }
    if (label && p.asymmetric) {
      out.push_back({u_.index(y, r, x), false, one(Rule::Asymmetric, idx, true)});
      out.push_back({u_.index(x, p.inverse, y), false, one(Rule::AsymmetricInverse, idx, true)});
    }
    if (!p.transitive) return;

    for (std::size_t z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      if (label) {
        // s = (x r y) as the left premise, then as the right premise.
        const std::size_t yz = u_.index(y, r, z);
        if (has(yz, true)) {
          out.push_back({u_.index(x, r, z), true, two(Rule::Transitive, idx, true, yz, true)});
        }
        const std::size_t zx = u_.index(z, r, x);
        if (has(zx, true)) {
          out.push_back({u_.index(z, r, y), true, two(Rule::Transitive, zx, true, idx, true)});
        }
        if (opt_.contrapositive) {
          // (x r y)=T, (x r z)=F => (y r z)=F
          const std::size_t xz = u_.index(x, r, z);
          if (has(xz, false)) {
            out.push_back({u_.index(y, r, z), false,
                           two(Rule::TransitiveContrapositive, idx, true, xz, false)});
          }
          // (x r y)=T, (z r y)=F => (z r x)=F
          const std::size_t zy = u_.index(z, r, y);
          if (has(zy, false)) {
            out.push_back({u_.index(z, r, x), false,
                           two(Rule::TransitiveContrapositive, idx, true, zy, false)});
          }
        }
      } else if (opt_.contrapositive) {
        // s = (x r y) is the false conclusion of (x r z), (z r y) => (x r y).
        const std::size_t xz = u_.index(x, r, z);
        if (has(xz, true)) {
          out.push_back({u_.index(z, r, y), false,
                         two(Rule::TransitiveContrapositive, xz, true, idx, false)});
        }
        const std::size_t zy = u_.index(z, r, y);
        if (has(zy, true)) {
          out.push_back({u_.index(x, r, z), false,
                         two(Rule::TransitiveContrapositive, zy, true, idx, false)});
        }
      }
    }
  }

  const StatementUniverse& u_;
  EnrichOptions opt_;
  std::vector<std::uint8_t> state_;
  std::vector<DenseDerivation> why_true_;
  std::vector<DenseDerivation> why_false_;
  std::deque<std::pair<std::size_t, bool>> work_;
  std::mt19937_64 rng_;
};

}  // namespace

EnrichmentResult enrich(const LabelMap& gold, const std::vector<std::string>& parts,
                        const EnrichOptions& options) {
  EnrichmentResult result;
  if (gold.empty()) return result;
  StatementUniverse u(parts);
  Enricher e(u, options);
  for (const auto& [s, label] : gold) {
    auto idx = u.find(s);
    if (!idx) {
      throw ValidationError("gold statement " + to_string(s) +
                            " is reflexive or references a part outside the parts list");
    }
    e.seed(*idx, label);
  }
  e.run();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::uint8_t st = e.state(i);
    if (st == 0) continue;
    const Statement& s = u.at(i);
    if (st == (kTrue | kFalse)) {
      result.conflicts.push_back({s, e.derivation(i, true), e.derivation(i, false)});
      continue;
    }
    const bool label = st == kTrue;
    result.enriched.emplace(s, label);
    result.derivation.emplace(s, e.derivation(i, label));
  }
  return result;
}

bool replay(const Derivation& d, const Statement& c, bool label) {
  const auto& ps = d.premises;
  switch (d.rule) {
    case Rule::Gold:
      return ps.empty();
    case Rule::Symmetric:
      return ps.size() == 1 && properties(c.relation).symmetric && ps[0].label == label &&
             ps[0].statement == Statement{c.object, c.relation, c.subject};
    case Rule::Inverse:
      return ps.size() == 1 && ps[0].label == label &&
             ps[0].statement == Statement{c.object, inverse_of(c.relation), c.subject};
    case Rule::Asymmetric:
      return ps.size() == 1 && !label && ps[0].label && properties(c.relation).asymmetric &&
             ps[0].statement == Statement{c.object, c.relation, c.subject};
    case Rule::AsymmetricInverse:
      return ps.size() == 1 && !label && ps[0].label &&
             properties(inverse_of(c.relation)).asymmetric &&
             ps[0].statement == Statement{c.subject, inverse_of(c.relation), c.object};
    case Rule::Transitive:
      return ps.size() == 2 && label && ps[0].label && ps[1].label &&
             properties(c.relation).transitive && ps[0].statement.relation == c.relation &&
             ps[1].statement.relation == c.relation && ps[0].statement.subject == c.subject &&
             ps[0].statement.object == ps[1].statement.subject &&
             ps[1].statement.object == c.object;
    case Rule::TransitiveContrapositive: {
      if (ps.size() != 2 || label || !properties(c.relation).transitive) return false;
      // One premise true, one false; the three statements form a chain
      // a->b, b->c, a->c of which the conclusion is one of the two links or
      // the shortcut, and the false one is the shortcut or the conclusion.
      const Premise* t = ps[0].label ? &ps[0] : &ps[1];
      const Premise* f = ps[0].label ? &ps[1] : &ps[0];
      if (!t->label || f->label) return false;
      for (const Statement* st : {&t->statement, &f->statement}) {
        if (st->relation != c.relation) return false;
      }
      const Statement& ts = t->statement;
      const Statement& fs = f->statement;
      // (a r b)=T, (a r c)=F => (b r c)=F
      if (ts.subject == fs.subject && c.subject == ts.object && c.object == fs.object) return true;
      // (b r c)=T, (a r c)=F => (a r b)=F
      if (ts.object == fs.object && c.subject == fs.subject && c.object == ts.subject) return true;
      return false;
    }
  }
  return false;
}

DatasetEnrichment enrich_dataset(const std::vector<PartsMentalModel>& models,
                                 const EnrichOptions& options, std::size_t workers) {
  DatasetEnrichment out;
  out.models.resize(models.size());
  parallel_for(models.size(), workers, [&](std::size_t i) {
    ModelEnrichment& me = out.models[i];
    me.entity = models[i].entity;
    me.model_id = models[i].model_id;
    try {
      me.result = enrich(models[i].gold_map(), models[i].parts, options);
    } catch (const std::exception& e) {
      me.error = e.what();
    }
  });
  EnrichmentSummary& s = out.summary;
  s.models = models.size();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const ModelEnrichment& me = out.models[i];
    s.input_tuples += models[i].gold.size();
    if (!me.result) {
      ++s.failed;
      continue;
    }
    s.conflicts += me.result->conflicts.size();
    for (const auto& [st, label] : me.result->enriched) {
      ++s.enriched_tuples;
      ++(label ? s.true_tuples : s.false_tuples);
      switch (properties(st.relation).category) {
        case RelationCategory::SpatialOrientation: ++s.spatial_tuples; break;
        case RelationCategory::Connectivity: ++s.connectivity_tuples; break;
        case RelationCategory::Functional: ++s.functional_tuples; break;
      }
    }
  }
  const std::size_t denom = s.enriched_tuples + s.conflicts;
  s.conflict_rate = denom ? static_cast<double>(s.conflicts) / static_cast<double>(denom) : 0.0;
  return out;
}

std::string conflicts_csv(const DatasetEnrichment& d) {
  std::string out = "entity,model_id,statement,true_trace,false_trace\n";
  for (const auto& me : d.models) {
    if (!me.result) continue;
    for (const auto& c : me.result->conflicts) {
      out += csv_row({me.entity, me.model_id, to_string(c.statement),
                      to_string(c.true_derivation), to_string(c.false_derivation)});
    }
  }
  return out;
}

}  // namespace partsmm
