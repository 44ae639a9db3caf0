#include "convexa/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "convexa/errors.hpp"
#include "convexa/poset_io.hpp"

namespace convexa {

namespace {

std::string pair_text(Element x, Element y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

}  // namespace

FiniteLattice FiniteLattice::from_order(Poset order) {
  const std::size_t n = order.size();
  if (n == 0) throw NotALattice(0, 0, "empty order has no bounds");
  FiniteLattice l;
  l.n_ = n;

  // Elements sorted by a linear extension: the least member of any set
  // comes first in this order.
  std::vector<Element> topo(n);
  std::iota(topo.begin(), topo.end(), Element{0});
  std::stable_sort(topo.begin(), topo.end(), [&](Element a, Element b) {
    return order.down(a).count() < order.down(b).count();
  });
  std::vector<Element> rtopo(topo.rbegin(), topo.rend());

  auto least_in = [&](const ElementSet& s, const std::vector<Element>& seq,
                      bool upward) -> std::optional<Element> {
    for (Element u : seq)
      if (s.test(u)) {
        const ElementSet& cone = upward ? order.up(u) : order.down(u);
        if (s.is_subset_of(cone)) return u;
        return std::nullopt;
      }
    return std::nullopt;
  };

  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);
  for (Element x = 0; x < n; ++x)
    for (Element y = x; y < n; ++y) {
      auto j = least_in(order.up(x) & order.up(y), topo, true);
      if (!j) throw NotALattice(x, y, "no least upper bound for " + pair_text(x, y));
      auto m = least_in(order.down(x) & order.down(y), rtopo, false);
      if (!m) throw NotALattice(x, y, "no greatest lower bound for " + pair_text(x, y));
      l.join_[x * n + y] = l.join_[y * n + x] = *j;
      l.meet_[x * n + y] = l.meet_[y * n + x] = *m;
    }
  l.bottom_ = topo.front();
  l.top_ = topo.back();
  if (order.up(l.bottom_).count() != n || order.down(l.top_).count() != n)
    throw NotALattice(l.bottom_, l.top_, "order lacks a bottom or top");
  l.order_ = std::move(order);
  return l;
}

FiniteLattice FiniteLattice::from_tables(Poset order, std::vector<Element> join,
                                        std::vector<Element> meet, Element bottom, Element top) {
  const std::size_t n = order.size();
  if (n == 0 || join.size() != n * n || meet.size() != n * n || bottom >= n || top >= n)
    throw RangeError("lattice tables do not match the order");
  FiniteLattice l;
  l.n_ = n;
  l.order_ = std::move(order);
  l.join_ = std::move(join);
  l.meet_ = std::move(meet);
  l.bottom_ = bottom;
  l.top_ = top;
  return l;
}

void FiniteLattice::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n_) throw RangeError("label count does not match lattice size");
  labels_ = std::move(labels);
}

std::string FiniteLattice::label(Element x) const {
  if (x < labels_.size() && !labels_[x].empty()) return labels_[x];
  return std::to_string(x);
}

FiniteLattice build_lattice(std::size_t n, std::span<const Pair> strict_pairs) {
  return FiniteLattice::from_order(build_poset(n, strict_pairs));
}

FiniteLattice build_lattice(std::size_t n, std::initializer_list<Pair> strict_pairs) {
  std::vector<Pair> v(strict_pairs);
  return build_lattice(n, std::span<const Pair>(v));
}

std::optional<std::string> lattice_law_violation(const FiniteLattice& l) {
  const std::size_t n = l.size();
  for (Element x = 0; x < n; ++x) {
    if (l.join(x, x) != x || l.meet(x, x) != x) return "idempotence fails at " + std::to_string(x);
    if (!l.leq(l.bottom(), x) || !l.leq(x, l.top())) return "bounds fail at " + std::to_string(x);
    for (Element y = 0; y < n; ++y) {
      Element j = l.join(x, y), m = l.meet(x, y);
      if (j != l.join(y, x) || m != l.meet(y, x)) return "commutativity fails at " + pair_text(x, y);
      if (l.meet(x, j) != x || l.join(x, m) != x) return "absorption fails at " + pair_text(x, y);
      if (l.leq(x, y) != (j == y) || l.leq(x, y) != (m == x))
        return "tables disagree with the order at " + pair_text(x, y);
      for (Element z = 0; z < n; ++z) {
        if (l.join(j, z) != l.join(x, l.join(y, z)) || l.meet(m, z) != l.meet(x, l.meet(y, z)))
          return "associativity fails at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                 std::to_string(z) + ")";
      }
    }
  }
  return std::nullopt;
}

std::size_t JirrInfo::index_of(Element j) const {
  auto it = std::lower_bound(jirr.begin(), jirr.end(), j);
  if (it == jirr.end() || *it != j) throw RangeError(std::to_string(j) + " is not join-irreducible");
  return static_cast<std::size_t>(it - jirr.begin());
}

JirrInfo join_irreducibles(const FiniteLattice& l) {
  JirrInfo info;
  info.lower_cover.assign(l.size(), std::nullopt);
  info.is_jirr = ElementSet(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    const auto& lc = l.order().lower_covers(x);
    if (x != l.bottom() && lc.size() == 1) {
      info.jirr.push_back(x);
      info.lower_cover[x] = lc.front();
      info.is_jirr.set(x);
    }
  }
  return info;
}

Sublattice sublattice(const FiniteLattice& l, std::span<const Element> generators) {
  ElementSet in(l.size());
  std::vector<Element> list;
  for (Element g : generators) {
    if (g >= l.size()) throw RangeError("generator out of range");
    if (!in.test(g)) {
      in.set(g);
      list.push_back(g);
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (Element z : {l.join(list[i], list[j]), l.meet(list[i], list[j])})
        if (!in.test(z)) {
          in.set(z);
          list.push_back(z);
        }
  Sublattice s;
  s.members = members(in);
  s.lattice = FiniteLattice::from_order(l.order().induced(s.members));
  if (!l.labels().empty()) {
    std::vector<std::string> labels;
    for (Element m : s.members) labels.push_back(l.label(m));
    s.lattice.set_labels(std::move(labels));
  }
  return s;
}

FiniteLattice chain_lattice(std::size_t n) { return FiniteLattice::from_order(chain_poset(n)); }

FiniteLattice diamond_lattice(std::size_t k) {
  std::vector<Pair> rel;
  for (Element i = 1; i <= k; ++i) {
    rel.emplace_back(0, i);
    rel.emplace_back(i, static_cast<Element>(k + 1));
  }
  if (k == 0) rel.emplace_back(0, 1);
  return build_lattice(k + 2, rel);
}

FiniteLattice pentagon_lattice() { return build_lattice(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}); }

FiniteLattice boolean_lattice(std::size_t atoms) {
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<Pair> rel;
  for (Element x = 0; x < n; ++x)
    for (std::size_t i = 0; i < atoms; ++i)
      if (!(x >> i & 1)) rel.emplace_back(x, x | (Element{1} << i));
  return build_lattice(n, rel);
}

FiniteLattice read_lattice(std::istream& in, std::string_view source) {
  auto f = read_relation_file(in, source);
  std::string src(source);
  if (f.kind != "lattice") throw ParseError(src, 1, "expected 'lattice' header");
  try {
    auto l = build_lattice(f.n, f.pairs);
    l.set_labels(std::move(f.labels));
    return l;
  } catch (const NotALattice& e) {
    throw ParseError(src, 0, e.what());
  } catch (const CycleError& e) {
    throw ParseError(src, 0, e.what());
  }
}

FiniteLattice read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_lattice(in, path);
}

FiniteLattice parse_lattice(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  return read_lattice(in, source);
}

void write_lattice(std::ostream& out, const FiniteLattice& l) {
  write_relation(out, "lattice", l.order(), l.labels());
}

}  // namespace convexa
