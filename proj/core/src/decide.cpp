#include "convexa/decide.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "convexa/convexity.hpp"
#include "convexa/errors.hpp"
#include "convexa/identities.hpp"

namespace convexa {

namespace {

// Iterated degree refinement; returns a class rank per element.
std::vector<std::size_t> refine_classes(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t round = 0; round <= n; ++round) {
    using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
    std::vector<Key> keys(n);
    for (Element x = 0; x < n; ++x) {
      std::vector<std::size_t> below, above;
      for (Element y = 0; y < n; ++y) {
        if (p.less(y, x)) below.push_back(rank[y]);
        if (p.less(x, y)) above.push_back(rank[y]);
      }
      std::sort(below.begin(), below.end());
      std::sort(above.begin(), above.end());
      keys[x] = Key{rank[x], p.down(x).count(), p.up(x).count(), std::move(below), std::move(above)};
    }
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> next(n);
    for (Element x = 0; x < n; ++x)
      next[x] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[x]) - sorted.begin());
    std::size_t before = std::set<std::size_t>(rank.begin(), rank.end()).size();
    rank = std::move(next);
    if (sorted.size() == before && round > 0) break;
  }
  return rank;
}

struct CanonSearch {
  const Poset& p;
  std::vector<std::size_t> cls;      // class of each element
  std::vector<std::size_t> slot_cls; // class required at each position
  std::vector<Element> perm, best_perm;
  std::vector<bool> used;
  CanonicalCode cur, best;

  explicit CanonSearch(const Poset& poset) : p(poset) {
    const std::size_t n = p.size();
    cls = refine_classes(p);
    slot_cls = cls;
    std::sort(slot_cls.begin(), slot_cls.end());
    used.assign(n, false);
  }

  void run(std::size_t i, bool less) {
    const std::size_t n = p.size();
    if (i == n) {
      if (less || best_perm.empty()) {
        best = cur;
        best_perm = perm;
      }
      return;
    }
    for (Element x = 0; x < n; ++x) {
      if (used[x] || cls[x] != slot_cls[i]) continue;
      std::size_t mark = cur.size();
      for (std::size_t j = 0; j < i; ++j) {
        cur.push_back(p.leq(perm[j], x));
        cur.push_back(p.leq(x, perm[j]));
      }
      bool now_less = less;
      bool prune = false;
      if (!less && !best_perm.empty()) {
        for (std::size_t b = mark; b < cur.size(); ++b)
          if (cur[b] != best[b]) {
            if (cur[b] < best[b])
              now_less = true;
            else
              prune = true;
            break;
          }
      }
      if (!prune) {
        used[x] = true;
        perm.push_back(x);
        run(i + 1, now_less);
        perm.pop_back();
        used[x] = false;
      }
      cur.resize(mark);
    }
  }
};

std::pair<Poset, CanonicalCode> canonicalize(const Poset& p) {
  CanonSearch s(p);
  s.run(0, false);
  return {p.relabel(s.best_perm), s.best};
}

std::vector<PosetCatalog>& catalog_cache() {
  static std::vector<PosetCatalog> cache;
  return cache;
}
std::mutex catalog_mutex;

}  // namespace

Poset canonical_form(const Poset& p) { return canonicalize(p).first; }
CanonicalCode canonical_code(const Poset& p) { return canonicalize(p).second; }

bool isomorphic(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) return false;
  return canonical_code(a) == canonical_code(b);
}

PosetCatalog enumerate_posets(std::size_t k, std::size_t cap) {
  if (k > cap)
    throw SizeError("poset enumeration is capped at " + std::to_string(cap) + " points; asked for " +
                    std::to_string(k));
  std::lock_guard<std::mutex> lock(catalog_mutex);
  auto& cache = catalog_cache();
  if (cache.empty()) cache.push_back({0, {Poset::from_up_sets({})}});
  while (cache.size() <= k) {
    const std::size_t m = cache.size() - 1;  // extend posets on m points
    std::map<CanonicalCode, Poset> found;
    for (const Poset& q : cache.back().posets) {
      // The new point m sits above exactly the down-set D.
      std::vector<std::uint64_t> down(m);
      for (Element x = 0; x < m; ++x) down[x] = to_mask(q.down(x));
      for (std::uint64_t d = 0; d < (std::uint64_t{1} << m); ++d) {
        bool closed = true;
        for (std::uint64_t r = d; r && closed; r &= r - 1)
          if ((down[__builtin_ctzll(r)] & ~d) != 0) closed = false;
        if (!closed) continue;
        std::vector<ElementSet> up(m + 1, ElementSet(m + 1));
        for (Element x = 0; x < m; ++x) {
          for (Element y = 0; y < m; ++y)
            if (q.leq(x, y)) up[x].set(y);
          if (d >> x & 1) up[x].set(m);
        }
        up[m].set(m);
        auto [canon, code] = canonicalize(Poset::from_up_sets(std::move(up)));
        found.emplace(std::move(code), std::move(canon));
      }
    }
    PosetCatalog next{m + 1, {}};
    for (auto& [code, poset] : found) next.posets.push_back(std::move(poset));
    cache.push_back(std::move(next));
  }
  return cache[k];
}

bool is_connected(const Poset& p) {
  auto comp = cover_components(p);
  return std::all_of(comp.begin(), comp.end(), [&](Element c) { return c == comp.front(); });
}

bool free_leq(const Term& s, const Term& t) {
  using K = Term::Kind;
  if (s.kind() == K::join) return free_leq(s.left(), t) && free_leq(s.right(), t);
  if (t.kind() == K::meet) return free_leq(s, t.left()) && free_leq(s, t.right());
  if (s.is_variable() && t.is_variable()) return s.name() == t.name();
  if (s.is_variable())  // t is a join
    return free_leq(s, t.left()) || free_leq(s, t.right());
  if (t.is_variable())  // s is a meet
    return free_leq(s.left(), t) || free_leq(s.right(), t);
  // meet below join
  return free_leq(s.left(), t) || free_leq(s.right(), t) || free_leq(s, t.left()) ||
         free_leq(s, t.right());
}

std::size_t witness_bound(const Term& s) {
  if (s.is_variable()) return 1;
  std::size_t a = witness_bound(s.left()), b = witness_bound(s.right());
  return s.kind() == Term::Kind::meet ? a + b - 1 : a + b + 1;
}

namespace {

struct Direction {
  const Term* lhs;
  const Term* rhs;
  const char* name;
  std::size_t bound;
};

// Distinct convex hulls of at most `k` points, as Co(P) indices.
std::vector<Element> hull_options(const Poset& p, const CoLattice& co, std::size_t k) {
  const std::size_t n = p.size();
  std::set<Element> out;
  std::vector<Element> chosen;
  std::function<void(Element)> rec = [&](Element from) {
    ElementSet s(n);
    for (Element x : chosen) s.set(x);
    out.insert(co.index_of(convex_hull(p, s)));
    if (chosen.size() == k) return;
    for (Element x = from; x < n; ++x) {
      chosen.push_back(x);
      rec(x + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

bool search_poset(const Poset& p, const Direction& d, const std::vector<std::string>& vars,
                  DecideResult& res) {
  CoLattice co = co_lattice(p);
  const FiniteLattice& l = co.lattice;
  const std::size_t k = vars.size();
  std::vector<std::vector<Element>> options(k);
  for (std::size_t i = 0; i < k; ++i) options[i] = hull_options(p, co, occurrences(*d.lhs, vars[i]));
  TermProgram prog({*d.lhs, *d.rhs}, vars);
  std::vector<Element> slots(prog.slot_count(), 0);
  const auto out_l = prog.output(0), out_r = prog.output(1);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    for (Element v : options[i]) {
      slots[i] = v;
      prog.run_levels(l, slots, i, i);
      if (i + 1 < k) {
        if (rec(i + 1)) return true;
      } else if (!l.leq(slots[out_l], slots[out_r])) {
        return true;
      }
    }
    return false;
  };
  if (k == 0 || !rec(0)) return false;
  res.valid = false;
  res.witness = p;
  res.failing_direction = d.name;
  for (std::size_t i = 0; i < k; ++i) res.assignment.push_back(co.set(slots[i]));
  return true;
}

}  // namespace

DecideResult decide_identity_in_SUB(const Term& s, const Term& t, const DecideOptions& opts) {
  DecideResult res;
  res.variables = variables_of(s, t);
  std::vector<Direction> dirs;
  if (!free_leq(s, t)) dirs.push_back({&s, &t, "s<=t", 0});
  if (!free_leq(t, s)) dirs.push_back({&t, &s, "t<=s", 0});
  for (auto& d : dirs) {
    if (opts.max_size)
      d.bound = *opts.max_size;
    else if (opts.mode == BoundMode::node_count)
      d.bound = std::max(s.node_count(), t.node_count());
    else
      d.bound = witness_bound(*d.lhs);
    res.bound = std::max(res.bound, d.bound);
  }
  if (res.bound > opts.cap)
    throw SizeError("deciding this identity needs posets with up to " + std::to_string(res.bound) +
                    " points; the cap is " + std::to_string(opts.cap));
  for (std::size_t size = 1; size <= res.bound; ++size) {
    const PosetCatalog cat = enumerate_posets(size, opts.cap);
    for (const Poset& p : cat.posets) {
      if (!is_connected(p)) continue;
      bool counted = false;
      for (const auto& d : dirs) {
        if (size > d.bound) continue;
        if (!counted) {
          ++res.posets_checked;
          counted = true;
        }
        if (search_poset(p, d, res.variables, res)) return res;
      }
    }
  }
  return res;
}

PosetFilter parse_poset_filter(const std::string& name) {
  if (name == "all") return PosetFilter::all;
  if (name == "crown-free") return PosetFilter::crown_free;
  if (name == "has-crown") return PosetFilter::has_crown;
  throw UnknownTag("unknown poset filter '" + name + "'");
}

std::string to_string(PosetFilter f) {
  switch (f) {
    case PosetFilter::all: return "all";
    case PosetFilter::crown_free: return "crown-free";
    case PosetFilter::has_crown: return "has-crown";
  }
  return {};
}

QuasiSearchResult search_quasi_counterexample(const QuasiIdentity& q, std::size_t max_size,
                                              PosetFilter filter, std::uint64_t budget, std::size_t cap) {
  QuasiSearchResult res;
  for (std::size_t size = 1; size <= max_size; ++size) {
    const PosetCatalog cat = enumerate_posets(size, cap);
    for (const Poset& p : cat.posets) {
      if (filter != PosetFilter::all) {
        bool crown = find_crown(p).has_value();
        if ((filter == PosetFilter::crown_free) == crown) continue;
      }
      ++res.posets_checked;
      CoLattice co = co_lattice(p);
      CheckOptions opts;
      opts.budget = budget > res.nodes ? budget - res.nodes : 0;
      std::optional<std::vector<Element>> witness;
      try {
        if (q.name == "theta") {
          auto r = check_theta(co.lattice, opts);
          res.nodes += r.nodes;
          witness = r.witness;
        } else {
          auto r = check_quasi_identity(co.lattice, q, opts);
          res.nodes += r.nodes;
          witness = r.counterexample;
        }
      } catch (const BudgetError&) {
        res.budget_exceeded = true;
        return res;
      }
      if (witness) {
        res.poset = p;
        for (Element x : *witness) res.assignment.push_back(co.set(x));
        return res;
      }
    }
  }
  return res;
}

}  // namespace convexa
