#include "partsmm/maxsat.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numeric>
#include <set>
#include <unistd.h>
#include <sys/wait.h>

#include "normalized.hpp"
#include "partsmm/error.hpp"

namespace partsmm {
namespace detail {

Normalized normalize(const WcnfProblem& p) {
  p.validate();
  Normalized n;
  n.original_vars = p.num_vars;
  n.num_vars = p.num_vars;
  n.wpos.assign(p.num_vars, 0);
  n.wneg.assign(p.num_vars, 0);

  // Sorted, deduplicated literals; nullopt for tautologies.
  auto clean = [](const Clause& c) -> std::optional<std::vector<Lit>> {
    std::vector<Lit> lits;
    lits.reserve(c.size());
    for (int l : c) lits.push_back(from_dimacs(l));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
      if (lits[i] == negate(lits[i - 1])) return std::nullopt;
    }
    return lits;
  };

  for (const auto& c : p.hard) {
    auto lits = clean(c);
    if (!lits) continue;
    if (lits->empty()) throw InfeasibleError("empty hard clause");
    n.hard.push_back(std::move(*lits));
  }
  for (const auto& s : p.soft) {
    auto lits = clean(s.clause);
    if (!lits) continue;  // always satisfied; weight is recomputed at the end
    if (lits->empty()) continue;  // never satisfied
    if (lits->size() == 1) {
      const Lit l = (*lits)[0];
      (lit_neg(l) ? n.wneg : n.wpos)[lit_var(l)] += s.weight;
      continue;
    }
    const auto b = static_cast<std::uint32_t>(n.num_vars++);
    n.wpos.push_back(0);
    n.wneg.push_back(s.weight);
    lits->push_back(make_lit(b, false));
    n.hard.push_back(std::move(*lits));
  }
  return n;
}

SolveResult finish(const WcnfProblem& p, std::vector<std::uint8_t> values, bool optimal,
                   SolveStats stats, Clock::time_point started) {
  SolveResult r;
  values.resize(p.num_vars);
  if (!satisfies_hard(p, values)) throw Error("solver produced an assignment violating a hard clause");
  r.satisfied_soft_weight = soft_weight(p, values);
  if (p.var_statements.size() == p.num_vars && p.num_vars > 0) r.assignment = decode(p, values);
  r.values = std::move(values);
  r.proven_optimal = optimal;
  r.stats = stats;
  r.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return r;
}

namespace {

// Equivalence merging: value(v) = value(rep[v]) xor parity[v].
struct Reduced {
  std::size_t num_vars = 0;
  std::vector<std::uint32_t> rep;
  std::vector<std::uint8_t> parity;
  std::vector<std::uint64_t> wpos, wneg;
  std::vector<std::vector<Lit>> hard;
};

class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::pair<std::uint32_t, std::uint8_t> find(std::uint32_t v) {
    std::uint8_t par = 0;
    std::uint32_t root = v;
    while (parent_[root] != root) {
      par ^= parity_[root];
      root = parent_[root];
    }
    // Path compression with parity fix-up.
    std::uint8_t acc = par;
    while (parent_[v] != root) {
      const std::uint32_t next = parent_[v];
      const std::uint8_t pv = parity_[v];
      parent_[v] = root;
      parity_[v] = acc;
      acc ^= pv;
      v = next;
    }
    return {root, par};
  }
  // Records value(a) = value(b) xor par. Returns false on contradiction.
  bool unite(std::uint32_t a, std::uint32_t b, std::uint8_t par) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == par;
    // value(ra) = value(a) ^ pa = value(b) ^ par ^ pa = value(rb) ^ pb ^ par ^ pa
    if (rb < ra) {
      std::swap(ra, rb);
    }
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ par;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> parity_;
};

Reduced reduce(const Normalized& n) {
  ParityUnionFind uf(n.num_vars);
  std::set<std::pair<Lit, Lit>> binaries;
  for (const auto& c : n.hard) {
    if (c.size() == 2) binaries.emplace(c[0], c[1]);
  }
  for (const auto& [x, y] : binaries) {
    // (x or y) and (not x or not y) => x = not y
    Lit nx = negate(x), ny = negate(y);
    if (nx > ny) std::swap(nx, ny);
    if (!binaries.count({nx, ny})) continue;
    const std::uint8_t par = static_cast<std::uint8_t>(lit_neg(x) ^ lit_neg(y) ^ 1);
    if (!uf.unite(lit_var(x), lit_var(y), par)) {
      throw InfeasibleError("hard clauses force a variable to equal its own negation");
    }
  }

  Reduced r;
  r.rep.resize(n.num_vars);
  r.parity.resize(n.num_vars);
  std::vector<std::int64_t> dense(n.num_vars, -1);
  for (std::uint32_t v = 0; v < n.num_vars; ++v) {
    auto [root, par] = uf.find(v);
    if (dense[root] < 0) dense[root] = static_cast<std::int64_t>(r.num_vars++);
    r.rep[v] = static_cast<std::uint32_t>(dense[root]);
    r.parity[v] = par;
  }
  r.wpos.assign(r.num_vars, 0);
  r.wneg.assign(r.num_vars, 0);
  for (std::uint32_t v = 0; v < n.num_vars; ++v) {
    const std::uint32_t t = r.rep[v];
    if (r.parity[v]) {
      r.wpos[t] += n.wneg[v];
      r.wneg[t] += n.wpos[v];
    } else {
      r.wpos[t] += n.wpos[v];
      r.wneg[t] += n.wneg[v];
    }
  }
  std::set<std::vector<Lit>> seen;
  for (const auto& c : n.hard) {
    std::vector<Lit> lits;
    lits.reserve(c.size());
    for (Lit l : c) lits.push_back(make_lit(r.rep[lit_var(l)], lit_neg(l) ^ (r.parity[lit_var(l)] != 0)));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool taut = false;
    for (std::size_t i = 1; i < lits.size(); ++i) taut = taut || lits[i] == negate(lits[i - 1]);
    if (taut) continue;
    if (seen.insert(lits).second) r.hard.push_back(std::move(lits));
  }
  return r;
}

enum class Status { Optimal, Timeout, Infeasible };

// Branch and bound over one connected component. Variables are local
// indices; clauses hold local literals.
class BranchAndBound {
 public:
  BranchAndBound(std::vector<std::uint64_t> wpos, std::vector<std::uint64_t> wneg,
                 std::vector<std::vector<Lit>> clauses, Clock::time_point deadline, SolveStats& stats)
      : n_(wpos.size()),
        wpos_(std::move(wpos)),
        wneg_(std::move(wneg)),
        deadline_(deadline),
        stats_(stats),
        value_(n_, -1),
        occ_(2 * n_),
        residual_(n_) {
    clause_start_.push_back(0);
    for (auto& c : clauses) {
      const auto id = static_cast<std::uint32_t>(clause_start_.size() - 1);
      for (Lit l : c) {
        lits_.push_back(l);
        occ_[l].push_back(id);
      }
      clause_start_.push_back(static_cast<std::uint32_t>(lits_.size()));
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto la = loss(a), lb = loss(b);
      if (la != lb) return la > lb;
      return occ_[2 * a].size() + occ_[2 * a + 1].size() > occ_[2 * b].size() + occ_[2 * b + 1].size();
    });
    for (std::size_t v = 0; v < n_; ++v) free_max_ += std::max(wpos_[v], wneg_[v]);
  }

  /// `incumbent` (optional) must satisfy the clauses.
  Status run(const std::vector<std::uint8_t>* incumbent) {
    if (incumbent) {
      best_ = *incumbent;
      best_weight_ = 0;
      for (std::size_t v = 0; v < n_; ++v) best_weight_ += best_[v] ? wpos_[v] : wneg_[v];
      has_best_ = true;
    }
    // Level 0: unit clauses.
    for (std::size_t c = 0; c + 1 < clause_start_.size(); ++c) {
      if (clause_start_[c + 1] - clause_start_[c] != 1) continue;
      const Lit l = lits_[clause_start_[c]];
      if (value_[lit_var(l)] == -1) {
        assign(l);
      } else if (!is_true(l)) {
        return Status::Infeasible;
      }
    }
    if (!propagate()) return Status::Infeasible;

    struct Frame {
      std::uint32_t var;
      std::size_t trail_pos;
      bool flipped;
    };
    std::vector<Frame> stack;
    bool conflict = false;
    std::uint64_t nodes = 0;

    for (;;) {
      if ((++nodes & 255) == 0 && Clock::now() >= deadline_) {
        return Status::Timeout;
      }
      bool backtrack = conflict;
      if (!backtrack) {
        const std::uint64_t optimistic = cur_ + free_max_;
        if (has_best_ && optimistic <= best_weight_) {
          backtrack = true;
        } else if (has_best_ && optimistic - core_bound() <= best_weight_) {
          backtrack = true;
        }
      }
      if (!backtrack) {
        const std::int64_t v = pick();
        if (v < 0) {
          if (!has_best_ || cur_ > best_weight_) {
            best_weight_ = cur_;
            best_.assign(n_, 0);
            for (std::size_t i = 0; i < n_; ++i) best_[i] = static_cast<std::uint8_t>(value_[i] == 1);
            has_best_ = true;
          }
          backtrack = true;
        } else {
          const auto var = static_cast<std::uint32_t>(v);
          stack.push_back({var, trail_.size(), false});
          ++stats_.decisions;
          assign(make_lit(var, !preferred(var)));
          conflict = !propagate();
          continue;
        }
      }
      // Backtrack to the deepest decision that still has an untried branch.
      while (!stack.empty() && stack.back().flipped) stack.pop_back();
      if (stack.empty()) return has_best_ ? Status::Optimal : Status::Infeasible;
      Frame& f = stack.back();
      undo(f.trail_pos);
      f.flipped = true;
      assign(make_lit(f.var, preferred(f.var)));
      conflict = !propagate();
    }
  }

  const std::vector<std::uint8_t>& best() const { return best_; }
  bool has_best() const { return has_best_; }

 private:
  std::uint64_t loss(std::uint32_t v) const {
    return wpos_[v] > wneg_[v] ? wpos_[v] - wneg_[v] : wneg_[v] - wpos_[v];
  }
  bool preferred(std::uint32_t v) const { return wpos_[v] > wneg_[v]; }
  bool is_true(Lit l) const { return value_[lit_var(l)] == (lit_neg(l) ? 0 : 1); }

  void assign(Lit l) {
    const std::uint32_t v = lit_var(l);
    const bool val = !lit_neg(l);
    value_[v] = val ? 1 : 0;
    cur_ += val ? wpos_[v] : wneg_[v];
    free_max_ -= std::max(wpos_[v], wneg_[v]);
    trail_.push_back(v);
  }

  void undo(std::size_t pos) {
    while (trail_.size() > pos) {
      const std::uint32_t v = trail_.back();
      trail_.pop_back();
      cur_ -= value_[v] ? wpos_[v] : wneg_[v];
      free_max_ += std::max(wpos_[v], wneg_[v]);
      value_[v] = -1;
    }
    qhead_ = std::min(qhead_, trail_.size());
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const std::uint32_t v = trail_[qhead_++];
      const Lit falsified = make_lit(v, value_[v] == 1);
      for (std::uint32_t c : occ_[falsified]) {
        Lit unit = 0;
        int free = 0;
        bool sat = false;
        for (std::uint32_t k = clause_start_[c]; k < clause_start_[c + 1]; ++k) {
          const Lit l = lits_[k];
          const std::int8_t val = value_[lit_var(l)];
          if (val == -1) {
            ++free;
            unit = l;
          } else if ((val == 1) != lit_neg(l)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (free == 0) {
          qhead_ = trail_.size();
          return false;
        }
        if (free == 1) {
          ++stats_.propagations;
          assign(unit);
        }
      }
    }
    return true;
  }

  std::int64_t pick() const {
    for (std::uint32_t v : order_) {
      if (value_[v] == -1) return v;
    }
    return -1;
  }

  // Disjoint-core lower bound on the weight the free variables must give up.
  std::uint64_t core_bound() {
    for (std::uint32_t v = 0; v < n_; ++v) residual_[v] = value_[v] == -1 ? loss(v) : 0;
    std::uint64_t total = 0;
    const std::size_t clauses = clause_start_.size() - 1;
    for (std::size_t c = 0; c < clauses; ++c) {
      std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
      bool core = true;
      bool any_free = false;
      for (std::uint32_t k = clause_start_[c]; k < clause_start_[c + 1]; ++k) {
        const Lit l = lits_[k];
        const std::uint32_t v = lit_var(l);
        if (value_[v] != -1) {
          if ((value_[v] == 1) != lit_neg(l)) {
            core = false;
            break;
          }
          continue;
        }
        if (residual_[v] == 0 || preferred(v) != lit_neg(l)) {
          core = false;
          break;
        }
        any_free = true;
        m = std::min(m, residual_[v]);
      }
      if (!core || !any_free) continue;
      total += m;
      for (std::uint32_t k = clause_start_[c]; k < clause_start_[c + 1]; ++k) {
        const std::uint32_t v = lit_var(lits_[k]);
        if (value_[v] == -1) residual_[v] -= m;
      }
    }
    return total;
  }

  std::size_t n_;
  std::vector<std::uint64_t> wpos_, wneg_;
  Clock::time_point deadline_;
  SolveStats& stats_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::vector<std::uint32_t> clause_start_;
  std::vector<Lit> lits_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> trail_;
  std::size_t qhead_ = 0;
  std::uint64_t cur_ = 0;
  std::uint64_t free_max_ = 0;
  std::vector<std::uint64_t> residual_;
  std::vector<std::uint8_t> best_;
  std::uint64_t best_weight_ = 0;
  bool has_best_ = false;
};

struct Component {
  std::vector<std::uint32_t> vars;  // reduced-variable ids, ascending
  std::vector<std::size_t> clauses;
};

std::vector<Component> components(const Reduced& r) {
  std::vector<std::uint32_t> parent(r.num_vars);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& c : r.hard) {
    const std::uint32_t a = find(lit_var(c[0]));
    for (std::size_t k = 1; k < c.size(); ++k) {
      const std::uint32_t b = find(lit_var(c[k]));
      if (a != b) parent[b] = a;
    }
  }
  std::vector<std::int64_t> comp_of_root(r.num_vars, -1);
  std::vector<Component> out;
  std::vector<std::uint8_t> in_clause(r.num_vars, 0);
  for (const auto& c : r.hard) {
    for (Lit l : c) in_clause[lit_var(l)] = 1;
  }
  for (std::uint32_t v = 0; v < r.num_vars; ++v) {
    if (!in_clause[v]) continue;
    const std::uint32_t root = find(v);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<std::int64_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(comp_of_root[root])].vars.push_back(v);
  }
  for (std::size_t i = 0; i < r.hard.size(); ++i) {
    const std::uint32_t root = find(lit_var(r.hard[i][0]));
    out[static_cast<std::size_t>(comp_of_root[root])].clauses.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> first_model(const Normalized& n, Clock::time_point deadline,
                                      SolveStats& stats) {
  BranchAndBound bb(std::vector<std::uint64_t>(n.num_vars, 0), std::vector<std::uint64_t>(n.num_vars, 0),
                    n.hard, deadline, stats);
  const Status st = bb.run(nullptr);
  if (st == Status::Infeasible) throw InfeasibleError("hard clauses are unsatisfiable");
  if (!bb.has_best()) return {};
  return bb.best();
}

}  // namespace detail

using detail::Clock;
using detail::Lit;

SolveResult solve_exact(const WcnfProblem& p, Seconds budget) {
  const auto started = Clock::now();
  const auto deadline = started + std::chrono::duration_cast<Clock::duration>(budget);
  SolveStats stats;
  const detail::Normalized n = detail::normalize(p);

  // Incumbent over the normalized variables.
  LocalSearchOptions ls;
  ls.seed = 0;
  ls.iterations = std::min<std::uint64_t>(200000, 50 * std::max<std::size_t>(n.num_vars, 1));
  std::vector<std::uint8_t> incumbent = detail::local_search(n, ls, deadline, stats);

  const detail::Reduced r = detail::reduce(n);
  std::vector<std::uint8_t> rvals(r.num_vars, 0);
  for (std::uint32_t v = 0; v < n.num_vars; ++v) {
    rvals[r.rep[v]] = static_cast<std::uint8_t>(incumbent[v] ^ r.parity[v]);
  }
  // Unconstrained variables take their heavier polarity.
  std::vector<std::uint8_t> constrained(r.num_vars, 0);
  for (const auto& c : r.hard) {
    for (Lit l : c) constrained[detail::lit_var(l)] = 1;
  }
  for (std::uint32_t v = 0; v < r.num_vars; ++v) {
    if (!constrained[v]) rvals[v] = r.wpos[v] > r.wneg[v];
  }

  bool optimal = true;
  const auto comps = detail::components(r);
  stats.components = comps.size();
  for (const auto& comp : comps) {
    std::vector<std::uint32_t> local(r.num_vars, 0);
    std::vector<std::uint64_t> wp, wn;
    std::vector<std::uint8_t> inc;
    for (std::size_t i = 0; i < comp.vars.size(); ++i) {
      local[comp.vars[i]] = static_cast<std::uint32_t>(i);
      wp.push_back(r.wpos[comp.vars[i]]);
      wn.push_back(r.wneg[comp.vars[i]]);
      inc.push_back(rvals[comp.vars[i]]);
    }
    std::vector<std::vector<Lit>> clauses;
    clauses.reserve(comp.clauses.size());
    for (std::size_t ci : comp.clauses) {
      std::vector<Lit> c;
      for (Lit l : r.hard[ci]) c.push_back(detail::make_lit(local[detail::lit_var(l)], detail::lit_neg(l)));
      clauses.push_back(std::move(c));
    }
    detail::BranchAndBound bb(std::move(wp), std::move(wn), std::move(clauses), deadline, stats);
    const detail::Status st = bb.run(&inc);
    if (st == detail::Status::Infeasible) throw InfeasibleError("hard clauses are unsatisfiable");
    if (st == detail::Status::Timeout) optimal = false;
    const auto& best = bb.best();
    for (std::size_t i = 0; i < comp.vars.size(); ++i) rvals[comp.vars[i]] = best[i];
  }

  std::vector<std::uint8_t> values(p.num_vars);
  for (std::uint32_t v = 0; v < p.num_vars; ++v) {
    values[v] = static_cast<std::uint8_t>(rvals[r.rep[v]] ^ r.parity[v]);
  }
  return detail::finish(p, std::move(values), optimal, stats, started);
}

SolveResult all_false(const WcnfProblem& p) {
  const auto started = Clock::now();
  return detail::finish(p, std::vector<std::uint8_t>(p.num_vars, 0), false, {}, started);
}

SolveResult brute_force(const WcnfProblem& p) {
  const auto started = Clock::now();
  p.validate();
  const std::size_t n = p.num_vars;
  if (n > kBruteForceLimit) {
    throw Error("brute force refuses " + std::to_string(n) + " variables (limit " +
                std::to_string(kBruteForceLimit) + ")");
  }
  // Clauses are checked once their highest variable is assigned.
  auto last_var = [](const Clause& c) {
    std::size_t m = 0;
    for (int l : c) m = std::max<std::size_t>(m, static_cast<std::size_t>(std::abs(l)));
    return m;
  };
  std::vector<std::vector<const Clause*>> hard_at(n + 1);
  std::vector<std::vector<const SoftClause*>> soft_at(n + 1);
  for (const auto& c : p.hard) {
    if (c.empty()) throw InfeasibleError("empty hard clause");
    hard_at[last_var(c)].push_back(&c);
  }
  for (const auto& s : p.soft) soft_at[last_var(s.clause)].push_back(&s);

  std::vector<std::uint8_t> values(n, 0);
  auto sat = [&](const Clause& c) {
    for (int l : c) {
      if ((values[static_cast<std::size_t>(std::abs(l)) - 1] != 0) == (l > 0)) return true;
    }
    return false;
  };
  std::uint64_t base = 0;  // empty soft clauses never count; tautologies handled by sat()
  for (const auto* s : soft_at[0]) base += sat(s->clause) ? s->weight : 0;

  std::vector<std::uint8_t> best;
  std::uint64_t best_weight = 0;
  bool found = false;
  SolveStats stats;

  // Explicit DFS: depth d assigns variable d+1, False first.
  std::vector<std::uint64_t> weight_at(n + 1, 0);
  weight_at[0] = base;
  std::vector<int> branch(n, -1);
  std::size_t depth = 0;
  for (;;) {
    if (depth == n) {
      if (!found || weight_at[n] > best_weight) {
        best_weight = weight_at[n];
        best = values;
        found = true;
      }
      if (n == 0) break;
      --depth;
      continue;
    }
    if (branch[depth] >= 1) {
      branch[depth] = -1;
      if (depth == 0) break;
      --depth;
      continue;
    }
    ++branch[depth];
    values[depth] = static_cast<std::uint8_t>(branch[depth]);
    ++stats.decisions;
    bool ok = true;
    for (const auto* c : hard_at[depth + 1]) {
      if (!sat(*c)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::uint64_t w = weight_at[depth];
    for (const auto* s : soft_at[depth + 1]) w += sat(s->clause) ? s->weight : 0;
    weight_at[depth + 1] = w;
    ++depth;
  }
  if (!found) throw InfeasibleError("hard clauses are unsatisfiable");
  return detail::finish(p, std::move(best), true, stats, started);
}

SolveResult solve_external(const WcnfProblem& p, const std::string& command, Seconds budget) {
  const auto started = Clock::now();
  namespace fs = std::filesystem;
  char tmpl[] = "/tmp/partsmm-XXXXXX";
  const int fd = mkstemp(tmpl);
  if (fd < 0) throw Error("cannot create temporary file for the external solver");
  close(fd);
  const std::string path = std::string(tmpl) + ".wcnf";
  fs::rename(tmpl, path);
  write_file(path, export_wcnf(p));
  const auto secs = static_cast<long long>(std::max(1.0, budget.count()));
  const std::string cmd = "timeout " + std::to_string(secs) + " " + command + " '" + path + "' 2>/dev/null";
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    fs::remove(path);
    throw Error("cannot run external solver: " + command);
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  const int status = pclose(pipe);
  fs::remove(path);
  SolverOutput out;
  try {
    out = parse_solver_output(output, p.num_vars);
  } catch (const ParseError& e) {
    throw Error("external solver '" + command + "' (exit status " + std::to_string(WEXITSTATUS(status)) +
                ") gave unusable output: " + e.what());
  }
  SolveStats stats;
  return detail::finish(p, std::move(out.values), out.status == "OPTIMUM FOUND", stats, started);
}

}  // namespace partsmm
