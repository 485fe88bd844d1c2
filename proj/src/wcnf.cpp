#include "partsmm/wcnf.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "partsmm/error.hpp"

namespace partsmm {

std::uint64_t WcnfProblem::total_soft_weight() const {
  std::uint64_t sum = 0;
  for (const auto& s : soft) sum += s.weight;
  return sum;
}

std::uint64_t WcnfProblem::top() const { return 1 + total_soft_weight(); }

void WcnfProblem::validate() const {
  auto check = [&](const Clause& c, const char* kind, std::size_t i) {
    for (int lit : c) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > num_vars) {
        throw ValidationError(std::string(kind) + " clause " + std::to_string(i) +
                              " has literal " + std::to_string(lit) + " outside 1.." +
                              std::to_string(num_vars));
      }
    }
  };
  for (std::size_t i = 0; i < hard.size(); ++i) check(hard[i], "hard", i);
  for (std::size_t i = 0; i < soft.size(); ++i) {
    check(soft[i].clause, "soft", i);
    if (soft[i].weight == 0) {
      throw ValidationError("soft clause " + std::to_string(i) + " has weight 0");
    }
  }
  if (!var_statements.empty() && var_statements.size() != num_vars) {
    throw ValidationError("variable names cover " + std::to_string(var_statements.size()) +
                          " of " + std::to_string(num_vars) + " variables");
  }
}

Clause to_clause(const GroundedConstraint& c) {
  Clause out;
  out.reserve(c.antecedent.size() + 1);
  auto dimacs = [](Literal l) {
    const int v = static_cast<int>(l.var) + 1;
    return l.positive ? v : -v;
  };
  for (Literal l : c.antecedent) out.push_back(-dimacs(l));
  out.push_back(dimacs(c.consequent));
  return out;
}

WcnfProblem encode(const BeliefMap& beliefs, const Grounding& grounding, std::int64_t scale) {
  if (scale < 1) throw ValidationError("scale must be >= 1, got " + std::to_string(scale));
  const StatementUniverse& u = grounding.universe;
  WcnfProblem p;
  p.num_vars = u.size();
  p.var_statements = u.statements();

  std::vector<double> conf(u.size(), -1.0);
  for (const auto& [s, c] : beliefs) {
    auto idx = u.find(s);
    if (!idx) throw ValidationError("belief for " + to_string(s) + " is outside the statement universe");
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ValidationError("confidence " + std::to_string(c) + " of " + to_string(s) +
                            " is outside [0,1]");
    }
    conf[*idx] = c;
  }
  std::size_t missing = 0;
  std::string names;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    if (conf[i] >= 0.0) continue;
    if (missing++ < 10) names += " " + to_string(u.at(i));
  }
  if (missing) {
    throw ValidationError("beliefs are missing " + std::to_string(missing) +
                          " statement(s):" + names + (missing > 10 ? " ..." : ""));
  }

  const double sc = static_cast<double>(scale);
  for (std::size_t i = 0; i < conf.size(); ++i) {
    const int v = static_cast<int>(i) + 1;
    const auto pos = std::llround(conf[i] * sc);
    const auto neg = std::llround((1.0 - conf[i]) * sc);
    if (pos >= 1) p.soft.push_back({{v}, static_cast<std::uint64_t>(pos)});
    if (neg >= 1) p.soft.push_back({{-v}, static_cast<std::uint64_t>(neg)});
  }
  p.hard.reserve(grounding.constraints.size());
  for (const auto& c : grounding.constraints) p.hard.push_back(to_clause(c));
  return p;
}

BeliefMap fill_missing(const BeliefMap& beliefs, const StatementUniverse& u, double fill) {
  BeliefMap out = beliefs;
  for (const auto& s : u.statements()) out.emplace(s, fill);
  return out;
}

Assignment decode(const WcnfProblem& p, const std::vector<std::uint8_t>& values) {
  if (p.var_statements.size() != p.num_vars) {
    throw ValidationError("problem has no statement names for its variables");
  }
  if (values.size() != p.num_vars) {
    throw ValidationError("solution has " + std::to_string(values.size()) + " values for " +
                          std::to_string(p.num_vars) + " variables");
  }
  Assignment a;
  for (std::size_t i = 0; i < values.size(); ++i) a.truth.emplace(p.var_statements[i], values[i] != 0);
  return a;
}

namespace {
bool lit_true(int lit, const std::vector<std::uint8_t>& values) {
  const bool v = values[static_cast<std::size_t>(std::abs(lit)) - 1] != 0;
  return lit > 0 ? v : !v;
}
bool clause_true(const Clause& c, const std::vector<std::uint8_t>& values) {
  for (int lit : c) {
    if (lit_true(lit, values)) return true;
  }
  return false;
}
}  // namespace

bool satisfies_hard(const WcnfProblem& p, const std::vector<std::uint8_t>& values) {
  for (const auto& c : p.hard) {
    if (!clause_true(c, values)) return false;
  }
  return true;
}

std::uint64_t soft_weight(const WcnfProblem& p, const std::vector<std::uint8_t>& values) {
  std::uint64_t sum = 0;
  for (const auto& s : p.soft) {
    if (clause_true(s.clause, values)) sum += s.weight;
  }
  return sum;
}

std::string export_wcnf(const WcnfProblem& p) {
  std::ostringstream out;
  const std::uint64_t top = p.top();
  for (std::size_t i = 0; i < p.var_statements.size(); ++i) {
    out << "c var " << (i + 1) << ' ' << to_string(p.var_statements[i]) << '\n';
  }
  out << "p wcnf " << p.num_vars << ' ' << (p.hard.size() + p.soft.size()) << ' ' << top << '\n';
  for (const auto& c : p.hard) {
    out << top;
    for (int lit : c) out << ' ' << lit;
    out << " 0\n";
  }
  for (const auto& s : p.soft) {
    out << s.weight;
    for (int lit : s.clause) out << ' ' << lit;
    out << " 0\n";
  }
  return out.str();
}

namespace {

struct Tokenizer {
  std::string_view line;
  std::size_t line_offset;  // byte offset of `line` in the full text
  std::size_t pos = 0;

  bool next(std::string_view& tok, std::size_t& offset) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) return false;
    const std::size_t b = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    tok = line.substr(b, pos - b);
    offset = line_offset + b;
    return true;
  }
};

template <typename T>
T to_number(std::string_view tok, std::size_t offset, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected " + std::string(what) + " at byte " + std::to_string(offset) +
                     ", got '" + std::string(tok) + "'");
  }
  return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(pos, end - pos), pos, ++line_no);
    pos = end + 1;
  }
}

std::optional<Statement> parse_statement_name(std::string_view text) {
  auto a = text.find('|');
  if (a == std::string_view::npos) return std::nullopt;
  auto b = text.find('|', a + 1);
  if (b == std::string_view::npos || text.find('|', b + 1) != std::string_view::npos) return std::nullopt;
  auto r = parse_relation(text.substr(a + 1, b - a - 1));
  if (!r) return std::nullopt;
  return Statement{std::string(text.substr(0, a)), *r, std::string(text.substr(b + 1))};
}

}  // namespace

WcnfProblem parse_wcnf(std::string_view text) {
  WcnfProblem p;
  std::optional<std::uint64_t> top;
  std::size_t declared_clauses = 0;
  bool have_header = false;
  std::vector<std::optional<Statement>> names;
  std::size_t max_var = 0;

  for_each_line(text, [&](std::string_view line, std::size_t offset, std::size_t line_no) {
    Tokenizer tk{line, offset};
    std::string_view tok;
    std::size_t off = 0;
    if (!tk.next(tok, off)) return;
    if (tok == "c") {
      std::string_view kw;
      if (tk.next(kw, off) && kw == "var" && tk.next(tok, off)) {
        const auto v = to_number<std::size_t>(tok, off, "variable index");
        while (tk.pos < line.size() && line[tk.pos] == ' ') ++tk.pos;
        std::string_view rest = line.substr(tk.pos);
        if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
        if (v >= 1) {
          if (names.size() < v) names.resize(v);
          names[v - 1] = parse_statement_name(rest);
        }
      }
      return;
    }
    if (tok == "p") {
      std::string_view fmt;
      if (!tk.next(fmt, off) || fmt != "wcnf") {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'p wcnf' header");
      }
      if (!tk.next(tok, off)) throw ParseError("line " + std::to_string(line_no) + ": missing variable count");
      p.num_vars = to_number<std::size_t>(tok, off, "variable count");
      if (!tk.next(tok, off)) throw ParseError("line " + std::to_string(line_no) + ": missing clause count");
      declared_clauses = to_number<std::size_t>(tok, off, "clause count");
      if (tk.next(tok, off)) top = to_number<std::uint64_t>(tok, off, "top weight");
      have_header = true;
      return;
    }
    bool is_hard = false;
    std::uint64_t weight = 0;
    if (tok == "h") {
      is_hard = true;
    } else {
      weight = to_number<std::uint64_t>(tok, off, "clause weight");
      is_hard = top && weight >= *top;
    }
    Clause c;
    bool terminated = false;
    while (tk.next(tok, off)) {
      const int lit = to_number<int>(tok, off, "literal");
      if (lit == 0) {
        terminated = true;
        break;
      }
      max_var = std::max<std::size_t>(max_var, static_cast<std::size_t>(std::abs(lit)));
      c.push_back(lit);
    }
    if (!terminated) {
      throw ParseError("line " + std::to_string(line_no) + ": clause not terminated by 0");
    }
    if (is_hard) {
      p.hard.push_back(std::move(c));
    } else {
      if (weight == 0) throw ParseError("line " + std::to_string(line_no) + ": soft clause weight 0");
      p.soft.push_back({std::move(c), weight});
    }
  });

  if (have_header && p.hard.size() + p.soft.size() != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(p.hard.size() + p.soft.size()));
  }
  if (!have_header) p.num_vars = max_var;
  if (max_var > p.num_vars) {
    throw ParseError("literal references variable " + std::to_string(max_var) + " beyond header count " +
                     std::to_string(p.num_vars));
  }
  if (names.size() == p.num_vars && p.num_vars > 0) {
    bool all = true;
    for (const auto& n : names) all = all && n.has_value();
    if (all) {
      for (auto& n : names) p.var_statements.push_back(std::move(*n));
    }
  }
  return p;
}

SolverOutput parse_solver_output(std::string_view text, std::size_t num_vars) {
  SolverOutput out;
  out.values.assign(num_vars, 0);
  bool saw_values = false;
  for_each_line(text, [&](std::string_view line, std::size_t offset, std::size_t) {
    Tokenizer tk{line, offset};
    std::string_view tok;
    std::size_t off = 0;
    if (!tk.next(tok, off)) return;
    if (tok == "s") {
      std::string_view rest = line.substr(tk.pos);
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
      while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) rest.remove_suffix(1);
      out.status = std::string(rest);
    } else if (tok == "o") {
      if (!tk.next(tok, off)) throw ParseError("missing cost after 'o' at byte " + std::to_string(off));
      out.cost = to_number<std::uint64_t>(tok, off, "cost");
    } else if (tok == "v") {
      saw_values = true;
      std::vector<std::pair<std::string_view, std::size_t>> toks;
      while (tk.next(tok, off)) toks.emplace_back(tok, off);
      const bool binary = toks.size() == 1 && toks[0].first.size() == num_vars && num_vars > 1 &&
                          toks[0].first.find_first_not_of("01") == std::string_view::npos;
      if (binary) {
        for (std::size_t i = 0; i < num_vars; ++i) out.values[i] = toks[0].first[i] == '1';
        return;
      }
      for (const auto& [t, o] : toks) {
        const int lit = to_number<int>(t, o, "literal");
        if (lit == 0) break;
        const auto v = static_cast<std::size_t>(std::abs(lit));
        if (v > num_vars) {
          throw ParseError("literal " + std::to_string(lit) + " at byte " + std::to_string(o) +
                           " exceeds variable count " + std::to_string(num_vars));
        }
        out.values[v - 1] = lit > 0;
      }
    }
  });
  if (!saw_values) throw ParseError("solver output has no 'v' line");
  return out;
}

Assignment import_solution(std::string_view text, const WcnfProblem& p) {
  return decode(p, parse_solver_output(text, p.num_vars).values);
}

}  // namespace partsmm
