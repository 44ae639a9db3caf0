#include "convexa/embed.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "convexa/convexity.hpp"
#include "convexa/errors.hpp"

namespace convexa {

std::string label(const RPoint& r) {
  switch (r.kind) {
    case RPoint::Kind::zero: return "<" + std::to_string(r.b) + ">";
    case RPoint::Kind::minus: return "<" + std::to_string(r.a) + "," + std::to_string(r.b) + ",->";
    case RPoint::Kind::plus: return "<" + std::to_string(r.a) + "," + std::to_string(r.b) + ",+>";
  }
  return {};
}

std::vector<std::string> RPoset::labels() const {
  std::vector<std::string> out;
  for (const auto& r : points) out.push_back(label(r));
  return out;
}

Element RPoset::index_of(const RPoint& r) const {
  auto it = std::find(points.begin(), points.end(), r);
  if (it == points.end()) throw RangeError("no point " + label(r) + " in R");
  return static_cast<Element>(it - points.begin());
}

namespace {

bool flipped(const PartitionFlips& flips, Element p) {
  return std::find(flips.begin(), flips.end(), p) != flips.end();
}

Poset close_prec(std::size_t n, std::vector<Pair>& prec, const char* what, std::vector<Pair>* shortcuts = nullptr) {
  std::sort(prec.begin(), prec.end());
  prec.erase(std::unique(prec.begin(), prec.end()), prec.end());
  Poset order;
  try {
    order = build_poset(n, prec);
  } catch (const CycleError&) {
    throw AcyclicityViolation(std::string(what) + ": the generating relation has a cycle");
  }
  auto covers = order.covers();
  if (shortcuts) {
    // Pairs of prec implied by longer prec-chains.
    std::set_difference(prec.begin(), prec.end(), covers.begin(), covers.end(), std::back_inserter(*shortcuts));
    return order;
  }
  if (covers != prec)
    throw AcyclicityViolation(std::string(what) + ": the generating relation is not the cover relation");
  return order;
}

std::vector<Element> minus(const std::vector<Element>& all, const std::vector<Element>& drop) {
  std::vector<Element> out;
  for (Element x : all)
    if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
  return out;
}

}  // namespace

RPoset build_R(const JoinDependency& jd, const PartitionFlips& flips) {
  if (!jd.in_sub()) throw NotInSUB("build_R: lattice fails the SUB axioms");
  const auto& J = jd.jirr().jirr;
  auto pairs = jd.pairs();
  RPoset r;
  for (Element p : J) r.points.push_back({RPoint::Kind::zero, p, p});
  for (auto [a, b] : pairs) r.points.push_back({RPoint::Kind::minus, a, b});
  for (auto [a, b] : pairs) r.points.push_back({RPoint::Kind::plus, a, b});

  std::map<std::tuple<int, Element, Element>, Element> index;
  for (Element i = 0; i < r.points.size(); ++i)
    index[{static_cast<int>(r.points[i].kind), r.points[i].a, r.points[i].b}] = i;
  auto zero = [&](Element p) { return index.at({0, p, p}); };
  auto neg = [&](Element a, Element b) { return index.at({1, a, b}); };
  auto pos = [&](Element a, Element b) { return index.at({2, a, b}); };

  for (Element p : J) {
    auto part = jd.udav_bond_partition(p, flipped(flips, p));
    for (Element a : part.A) r.prec.emplace_back(neg(p, a), zero(p));
    for (Element b : part.B) r.prec.emplace_back(zero(p), pos(p, b));
  }
  for (auto [a, b] : pairs) {
    auto C = jd.c_set(a, b);
    auto rest = minus(jd.dependents(b), C);
    for (Element c : rest) {
      r.prec.emplace_back(neg(b, c), pos(a, b));
      r.prec.emplace_back(neg(a, b), pos(b, c));
    }
    for (Element d : C) {
      r.prec.emplace_back(pos(a, b), pos(b, d));
      r.prec.emplace_back(neg(b, d), neg(a, b));
    }
  }
  r.order = close_prec(r.points.size(), r.prec, "R", &r.shortcuts);
  return r;
}

std::optional<std::string> embedding_failure(const FiniteLattice& l, const Poset& target,
                                             const std::vector<ElementSet>& map) {
  const std::size_t n = l.size();
  if (map.size() != n) return "map has " + std::to_string(map.size()) + " entries for " + std::to_string(n);
  for (Element x = 0; x < n; ++x) {
    if (map[x].size() != target.size()) return "image of " + std::to_string(x) + " has the wrong universe";
    if (!is_order_convex(target, map[x]))
      return "image of " + std::to_string(x) + " " + format_set(map[x]) + " is not convex";
  }
  if (map[l.bottom()].any()) return "bottom does not map to the empty set";
  if (!map[l.top()].all()) return "top does not map to the whole poset";
  std::map<ElementSet, Element> seen;
  for (Element x = 0; x < n; ++x) {
    auto [it, fresh] = seen.emplace(map[x], x);
    if (!fresh) return "elements " + std::to_string(it->second) + " and " + std::to_string(x) + " share an image";
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y) {
      if (map[l.meet(x, y)] != (map[x] & map[y]))
        return "meet of " + std::to_string(x) + " and " + std::to_string(y) + " is not preserved";
      if (map[l.join(x, y)] != convex_join(target, map[x], map[y]))
        return "join of " + std::to_string(x) + " and " + std::to_string(y) + " is not preserved";
    }
  return std::nullopt;
}

namespace {

EmbeddingResult finish(const FiniteLattice& l, Poset target, std::vector<ElementSet> map, const char* what) {
  for (Element x = 0; x < l.size(); ++x)
    if (!is_order_convex(target, map[x]))
      throw ConvexityViolation(std::string(what) + "(" + std::to_string(x) + ") = " + format_set(map[x]) +
                               " is not convex");
  if (auto f = embedding_failure(l, target, map)) throw HomomorphismViolation(std::string(what) + ": " + *f);
  EmbeddingResult res;
  res.target = std::move(target);
  res.map = std::move(map);
  res.verified = true;
  return res;
}

}  // namespace

EmbeddingResult phi(const FiniteLattice& l, const RPoset& r) {
  std::vector<ElementSet> map(l.size(), ElementSet(r.points.size()));
  for (Element x = 0; x < l.size(); ++x)
    for (Element i = 0; i < r.points.size(); ++i)
      if (l.leq(r.points[i].e(), x)) map[x].set(i);
  return finish(l, r.order, std::move(map), "phi");
}

std::size_t size_bound(std::size_t n) {
  if (n <= 1) return 1;
  return 2 * n * n - 5 * n + 4;
}

std::string label(const GammaSeq& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(s[i]);
  }
  return out + "]";
}

std::vector<std::string> GammaPoset::labels() const {
  std::vector<std::string> out;
  for (const auto& s : seqs) out.push_back(label(s));
  return out;
}

GammaPoset build_Gamma(const JoinDependency& jd, const GammaOptions& opts, const PartitionFlips& flips) {
  if (!jd.in_sub()) throw NotInSUB("build_Gamma: lattice fails the SUB axioms");
  if (jd.has_cycle()) {
    std::string c;
    for (Element x : *jd.cycle()) c += std::to_string(x) + " D ";
    c += std::to_string(jd.cycle()->front());
    throw DCycleError("D has a cycle (" + c + "); the tree-like poset would be infinite");
  }
  const auto& J = jd.jirr().jirr;
  const std::size_t natural = jd.longest_path() + 1;
  const std::size_t cap = opts.depth_cap.value_or(natural + J.size() + 1);

  GammaPoset g;
  for (Element p : J) {
    g.seqs.push_back({p});
    g.parent.push_back(std::nullopt);
  }
  // Breadth-first; A/B of a sequence are known once its edge to the
  // parent is.
  std::vector<bool> above_parent;  // parent < alpha
  above_parent.assign(g.seqs.size(), false);
  for (std::size_t i = 0; i < g.seqs.size(); ++i) {
    const GammaSeq alpha = g.seqs[i];
    Element e = alpha.back();
    std::vector<Element> A, B;
    if (alpha.size() == 1) {
      auto part = jd.udav_bond_partition(e, flipped(flips, e));
      A = part.A;
      B = part.B;
    } else {
      Element e_bar = alpha[alpha.size() - 2];
      auto C = jd.c_set(e_bar, e);
      auto rest = minus(jd.dependents(e), C);
      if (above_parent[i]) {
        A = rest;
        B = C;
      } else {
        A = C;
        B = rest;
      }
    }
    g.A.push_back(A);
    g.B.push_back(B);
    if (!jd.dependents(e).empty() && alpha.size() >= cap) {
      if (opts.depth_cap)
        throw DepthCapExceeded("sequences longer than the depth cap " + std::to_string(cap) + " exist");
      throw InternalError("sequence length exceeds the longest D-path without a D-cycle");
    }
    for (Element x : jd.dependents(e)) {
      if (g.seqs.size() >= opts.max_points)
        throw SizeError("tree-like poset exceeds " + std::to_string(opts.max_points) + " points");
      GammaSeq child = alpha;
      child.push_back(x);
      auto idx = static_cast<Element>(g.seqs.size());
      g.seqs.push_back(std::move(child));
      g.parent.push_back(static_cast<Element>(i));
      bool in_b = std::find(B.begin(), B.end(), x) != B.end();
      above_parent.push_back(in_b);
      if (in_b)
        g.prec.emplace_back(static_cast<Element>(i), idx);
      else
        g.prec.emplace_back(idx, static_cast<Element>(i));
    }
  }
  g.order = close_prec(g.seqs.size(), g.prec, "Gamma");
  if (!is_tree_like(g.order)) throw TreeLikenessViolation("the constructed poset is not tree-like");
  return g;
}

EmbeddingResult psi(const FiniteLattice& l, const GammaPoset& g) {
  if (!is_tree_like(g.order)) throw TreeLikenessViolation("target is not tree-like");
  auto crown = search_crown(g.order, 10'000'000);
  if (crown.crown) throw InternalError("tree-like target contains a crown");
  std::vector<ElementSet> map(l.size(), ElementSet(g.seqs.size()));
  for (Element x = 0; x < l.size(); ++x)
    for (Element i = 0; i < g.seqs.size(); ++i)
      if (l.leq(g.seqs[i].back(), x)) map[x].set(i);
  return finish(l, g.order, std::move(map), "psi");
}

std::vector<Element> project_to_R(const GammaPoset& g, const RPoset& r) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < g.seqs.size(); ++i) {
    const auto& s = g.seqs[i];
    if (s.size() == 1) {
      out.push_back(r.index_of({RPoint::Kind::zero, s[0], s[0]}));
      continue;
    }
    Element parent = *g.parent[i];
    bool up = g.order.less(parent, static_cast<Element>(i));
    auto kind = up ? RPoint::Kind::plus : RPoint::Kind::minus;
    out.push_back(r.index_of({kind, s[s.size() - 2], s.back()}));
  }
  return out;
}

std::optional<Pair> projection_violation(const GammaPoset& g, const RPoset& r) {
  auto pi = project_to_R(g, r);
  std::set<Pair> rp(r.prec.begin(), r.prec.end());
  for (auto [x, y] : g.prec)
    if (!rp.count({pi[x], pi[y]})) return Pair{x, y};
  return std::nullopt;
}

}  // namespace convexa
