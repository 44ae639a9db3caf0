#include "convexa/eval.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "convexa/errors.hpp"

namespace convexa {

Element eval_term(const FiniteLattice& l, const Term& t, const std::map<std::string, Element>& a) {
  if (t.is_variable()) {
    auto it = a.find(t.name());
    if (it == a.end()) throw UnboundVariable("variable '" + t.name() + "' is not assigned");
    if (it->second >= l.size()) throw RangeError("value of '" + t.name() + "' out of range");
    return it->second;
  }
  Element x = eval_term(l, t.left(), a), y = eval_term(l, t.right(), a);
  return t.kind() == Term::Kind::meet ? l.meet(x, y) : l.join(x, y);
}

TermProgram::TermProgram(const std::vector<Term>& roots, const std::vector<std::string>& variables)
    : nvars_(variables.size()), nslots_(variables.size()) {
  std::vector<std::size_t> level(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) level[i] = i;
  std::map<std::tuple<bool, std::uint32_t, std::uint32_t>, std::uint32_t> seen;

  auto compile = [&](auto&& self, const Term& t) -> std::uint32_t {
    if (t.is_variable()) {
      auto it = std::find(variables.begin(), variables.end(), t.name());
      if (it == variables.end()) throw UnboundVariable("variable '" + t.name() + "' is not declared");
      return static_cast<std::uint32_t>(it - variables.begin());
    }
    std::uint32_t a = self(self, t.left()), b = self(self, t.right());
    bool is_join = t.kind() == Term::Kind::join;
    auto key = std::make_tuple(is_join, std::min(a, b), std::max(a, b));
    if (auto it = seen.find(key); it != seen.end()) return it->second;
    if (a == b) return a;  // x & x = x | x = x
    auto dst = static_cast<std::uint32_t>(nslots_++);
    seen.emplace(key, dst);
    level.push_back(std::max(level[a], level[b]));
    code_.push_back({is_join, a, b, dst});
    return dst;
  };

  for (const Term& r : roots) {
    std::uint32_t s = compile(compile, r);
    outputs_.push_back(s);
    output_levels_.push_back(level[s]);
  }
  std::stable_sort(code_.begin(), code_.end(),
                   [&](const Instr& x, const Instr& y) { return level[x.dst] < level[y.dst]; });
  level_begin_.assign(nvars_ + 1, 0);
  std::size_t i = 0;
  for (std::size_t lv = 0; lv <= nvars_; ++lv) {
    while (i < code_.size() && level[code_[i].dst] < lv) ++i;
    level_begin_[lv] = i;
  }
  level_begin_[nvars_] = code_.size();
}

std::uint64_t assignment_count(std::size_t lattice_size, std::size_t vars) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars; ++i) {
    if (lattice_size != 0 && total > std::numeric_limits<std::uint64_t>::max() / lattice_size)
      return std::numeric_limits<std::uint64_t>::max();
    total *= lattice_size;
  }
  return total;
}

namespace {

// Depth-first lexicographic sweep.  `premises` are (lhs, rhs) root pairs
// tested as s <= t once bound; the conclusion is tested at the leaves as
// s <= t, or s = t when `equality` is set.
CheckResult sweep(const FiniteLattice& l, const std::vector<std::string>& variables,
                  const std::vector<Inequality>& premises, const Inequality& conclusion, bool equality,
                  std::uint64_t node_budget) {
  CheckResult res;
  res.variables = variables;
  std::vector<Term> roots;
  for (auto& p : premises) {
    roots.push_back(p.lhs);
    roots.push_back(p.rhs);
  }
  roots.push_back(conclusion.lhs);
  roots.push_back(conclusion.rhs);
  TermProgram prog(roots, variables);
  const std::size_t k = variables.size();
  const std::size_t n = l.size();

  auto test = [&](std::uint32_t a, std::uint32_t b, const std::vector<Element>& slots, bool eq) {
    return eq ? slots[a] == slots[b] : l.leq(slots[a], slots[b]);
  };

  if (k == 0) {
    std::vector<Element> slots(prog.slot_count(), 0);
    res.nodes = 1;
    bool prem = true;
    for (std::size_t i = 0; i < premises.size(); ++i)
      prem = prem && test(prog.output(2 * i), prog.output(2 * i + 1), slots, false);
    std::size_t c = premises.size();
    if (prem && !test(prog.output(2 * c), prog.output(2 * c + 1), slots, equality)) {
      res.holds = false;
      res.counterexample = Assignment{};
    }
    return res;
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> at_level(k);
  for (std::size_t i = 0; i < premises.size(); ++i) {
    std::size_t lv = std::max(prog.output_level(2 * i), prog.output_level(2 * i + 1));
    at_level[lv].emplace_back(prog.output(2 * i), prog.output(2 * i + 1));
  }
  const std::uint32_t cl = prog.output(2 * premises.size());
  const std::uint32_t cr = prog.output(2 * premises.size() + 1);

  std::vector<Element> slots(prog.slot_count(), 0);
  std::vector<Element> val(k, 0);
  std::ptrdiff_t d = 0;
  while (true) {
    if (++res.nodes > node_budget)
      throw BudgetError("search exceeded " + std::to_string(node_budget) + " nodes");
    slots[d] = val[d];
    prog.run_levels(l, slots, static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    bool ok = true;
    for (auto [a, b] : at_level[d])
      if (!l.leq(slots[a], slots[b])) {
        ok = false;
        break;
      }
    if (ok) {
      if (static_cast<std::size_t>(d) + 1 < k) {
        val[++d] = 0;
        continue;
      }
      if (!test(cl, cr, slots, equality)) {
        res.holds = false;
        res.counterexample = val;
        return res;
      }
    }
    while (d >= 0 && ++val[d] == n) --d;
    if (d < 0) break;
  }
  return res;
}

}  // namespace

CheckResult check_identity(const FiniteLattice& l, const Term& s, const Term& t, const CheckOptions& opts) {
  return check_identity(l, Identity{"", variables_of(s, t), s, t}, opts);
}

CheckResult check_identity(const FiniteLattice& l, const Identity& id, const CheckOptions& opts) {
  auto total = assignment_count(l.size(), id.variables.size());
  if (total > opts.budget)
    throw BudgetError("identity sweep needs " + std::to_string(l.size()) + "^" +
                      std::to_string(id.variables.size()) + " assignments, budget is " +
                      std::to_string(opts.budget));
  return sweep(l, id.variables, {}, {id.lhs, id.rhs}, true, std::numeric_limits<std::uint64_t>::max());
}

CheckResult check_quasi_identity(const FiniteLattice& l, const std::vector<Inequality>& premises,
                                 const Inequality& conclusion, const CheckOptions& opts) {
  std::vector<std::string> vars;
  for (auto& p : premises)
    for (auto& v : variables_of(p.lhs, p.rhs))
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  for (auto& v : variables_of(conclusion.lhs, conclusion.rhs))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  return sweep(l, vars, premises, conclusion, false, opts.budget);
}

CheckResult check_quasi_identity(const FiniteLattice& l, const QuasiIdentity& q, const CheckOptions& opts) {
  return sweep(l, q.variables, q.premises, q.conclusion, false, opts.budget);
}

}  // namespace convexa
