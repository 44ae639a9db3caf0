#include "convexa/convexity.hpp"

#include <algorithm>

#include "convexa/errors.hpp"

namespace convexa {

ConvexSet::ConvexSet(const Poset& base, ElementSet members) : base_(&base), members_(std::move(members)) {
  if (members_.size() != base.size()) throw RangeError("convex set universe does not match poset");
  if (!is_order_convex(base, members_))
    throw ConvexityViolation(format_set(members_) + " is not order-convex");
}

ElementSet convex_join(const Poset& p, const ElementSet& x, const ElementSet& y) {
  const std::size_t n = p.size();
  ElementSet up_x(n), down_x(n), up_y(n), down_y(n);
  auto strict = [](const ElementSet& s, Element e) {
    ElementSet r = s;
    r.reset(e);
    return r;
  };
  for (auto i = x.find_first(); i != ElementSet::npos; i = x.find_next(i)) {
    up_x |= strict(p.up(static_cast<Element>(i)), static_cast<Element>(i));
    down_x |= strict(p.down(static_cast<Element>(i)), static_cast<Element>(i));
  }
  for (auto i = y.find_first(); i != ElementSet::npos; i = y.find_next(i)) {
    up_y |= strict(p.up(static_cast<Element>(i)), static_cast<Element>(i));
    down_y |= strict(p.down(static_cast<Element>(i)), static_cast<Element>(i));
  }
  return x | y | (up_x & down_y) | (up_y & down_x);
}

ConvexSet convex_join(const ConvexSet& x, const ConvexSet& y) {
  return ConvexSet(x.base(), convex_join(x.base(), x.members(), y.members()));
}

ElementSet eval_convex(const Poset& p, const Term& t, const std::map<std::string, ElementSet>& a) {
  if (t.is_variable()) {
    auto it = a.find(t.name());
    if (it == a.end()) throw UnboundVariable("variable '" + t.name() + "' is not assigned");
    return it->second;
  }
  ElementSet l = eval_convex(p, t.left(), a), r = eval_convex(p, t.right(), a);
  return t.kind() == Term::Kind::meet ? (l & r) : convex_join(p, l, r);
}

ElementSet restrict_eval(const Poset& p, const ElementSet& q, const Term& t,
                         const std::map<std::string, ElementSet>& a) {
  auto pts = members(q);
  Poset sub = p.induced(pts);
  std::map<std::string, ElementSet> local;
  for (auto& [name, set] : a) {
    ElementSet s(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (set.test(pts[i])) s.set(i);
    local.emplace(name, std::move(s));
  }
  ElementSet r = eval_convex(sub, t, local);
  ElementSet out(p.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (r.test(i)) out.set(pts[i]);
  return out;
}

ElementSet CoLattice::set(Element i) const { return from_mask(masks.at(i), base.size()); }

Element CoLattice::index_of_mask(std::uint64_t m) const {
  auto it = std::lower_bound(masks.begin(), masks.end(), m);
  if (it == masks.end() || *it != m) throw RangeError("set is not order-convex");
  return static_cast<Element>(it - masks.begin());
}

Element CoLattice::index_of(const ElementSet& s) const { return index_of_mask(to_mask(s)); }

namespace {

std::vector<std::uint64_t> convex_masks(const Poset& p, std::size_t max_points) {
  const std::size_t n = p.size();
  if (n > max_points || n > 40)
    throw SizeError("poset has " + std::to_string(n) + " points; convex-set enumeration is capped at " +
                    std::to_string(std::min<std::size_t>(max_points, 40)));
  std::vector<std::uint64_t> up(n), down(n);
  for (Element i = 0; i < n; ++i) {
    up[i] = to_mask(p.up(i));
    down[i] = to_mask(p.down(i));
  }
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    std::uint64_t u = 0, d = 0;
    for (std::uint64_t r = m; r; r &= r - 1) {
      int i = __builtin_ctzll(r);
      u |= up[i];
      d |= down[i];
    }
    if ((u & d) == m) out.push_back(m);
  }
  return out;
}

}  // namespace

std::size_t count_convex_sets(const Poset& p, std::size_t max_points) {
  return convex_masks(p, max_points).size();
}

CoLattice co_lattice(const Poset& p, const CoLatticeLimits& limits) {
  CoLattice co;
  co.base = p;
  co.masks = convex_masks(p, limits.max_points);
  const std::size_t m = co.masks.size();
  if (m > limits.max_elements)
    throw SizeError("Co(P) has " + std::to_string(m) + " elements; table cap is " +
                    std::to_string(limits.max_elements));
  const std::size_t n = p.size();
  std::vector<std::uint64_t> up(n), down(n);
  for (Element i = 0; i < n; ++i) {
    up[i] = to_mask(p.up(i));
    down[i] = to_mask(p.down(i));
  }
  std::vector<std::uint64_t> ups(m), downs(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint64_t r = co.masks[i]; r; r &= r - 1) {
      int b = __builtin_ctzll(r);
      ups[i] |= up[b];
      downs[i] |= down[b];
    }

  std::vector<ElementSet> order(m, ElementSet(m));
  std::vector<Element> join(m * m), meet(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t a = co.masks[i], b = co.masks[j];
      if ((a & b) == a) order[i].set(j);
      if (j < i) continue;
      std::uint64_t hull = (ups[i] | ups[j]) & (downs[i] | downs[j]);
      Element jn = co.index_of_mask(hull), mt = co.index_of_mask(a & b);
      join[i * m + j] = join[j * m + i] = jn;
      meet[i * m + j] = meet[j * m + i] = mt;
    }
  co.lattice = FiniteLattice::from_tables(Poset::from_up_sets(std::move(order)), std::move(join),
                                          std::move(meet), 0, static_cast<Element>(m - 1));
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t i = 0; i < m; ++i) labels.push_back(format_set(co.set(static_cast<Element>(i))));
  co.lattice.set_labels(std::move(labels));
  return co;
}

}  // namespace convexa
