#include "convexa/poset.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "convexa/errors.hpp"

namespace convexa {

Poset Poset::from_relation(std::size_t n, std::span<const Pair> strict_pairs) {
  Poset p;
  p.up_.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) p.up_[i].set(i);
  for (auto [lo, hi] : strict_pairs) {
    if (lo >= n || hi >= n)
      throw RangeError("pair (" + std::to_string(lo) + "," + std::to_string(hi) +
                       ") out of range for " + std::to_string(n) + " elements");
    if (lo == hi) throw CycleError("element " + std::to_string(lo) + " below itself");
    p.up_[lo].set(hi);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (i != k && p.up_[i].test(k)) p.up_[i] |= p.up_[k];
  return from_up_sets(std::move(p.up_));
}

Poset Poset::from_up_sets(std::vector<ElementSet> up) {
  const std::size_t n = up.size();
  Poset p;
  p.up_ = std::move(up);
  for (std::size_t i = 0; i < n; ++i)
    if (p.up_[i].size() != n || !p.up_[i].test(i)) throw RangeError("malformed order matrix");
  p.down_.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = p.up_[i].find_first(); j != ElementSet::npos; j = p.up_[i].find_next(j)) {
      if (j != i && p.up_[j].test(i))
        throw CycleError("cycle through " + std::to_string(i) + " and " + std::to_string(j));
      p.down_[j].set(i);
    }

  p.upper_covers_.assign(n, {});
  p.lower_covers_.assign(n, {});
  for (std::size_t x = 0; x < n; ++x) {
    ElementSet strict = p.up_[x];
    strict.reset(x);
    ElementSet cov = strict;
    for (auto z = strict.find_first(); z != ElementSet::npos; z = strict.find_next(z)) {
      ElementSet above = p.up_[z];
      above.reset(z);
      cov -= above;
    }
    for (auto y = cov.find_first(); y != ElementSet::npos; y = cov.find_next(y)) {
      p.upper_covers_[x].push_back(static_cast<Element>(y));
      p.lower_covers_[y].push_back(static_cast<Element>(x));
    }
  }
  return p;
}

std::vector<Pair> Poset::covers() const {
  std::vector<Pair> out;
  for (Element x = 0; x < size(); ++x)
    for (Element y : upper_covers_[x]) out.emplace_back(x, y);
  return out;
}

std::vector<Pair> Poset::strict_pairs() const {
  std::vector<Pair> out;
  for (Element x = 0; x < size(); ++x)
    for (auto y = up_[x].find_first(); y != ElementSet::npos; y = up_[x].find_next(y))
      if (y != x) out.emplace_back(x, static_cast<Element>(y));
  return out;
}

Poset Poset::induced(std::span<const Element> subset) const {
  std::vector<Pair> rel;
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (i != j && leq(subset[i], subset[j]))
        rel.emplace_back(static_cast<Element>(i), static_cast<Element>(j));
  return from_relation(subset.size(), rel);
}

Poset Poset::dual() const {
  std::vector<Pair> rel;
  for (auto [lo, hi] : covers()) rel.emplace_back(hi, lo);
  return from_relation(size(), rel);
}

Poset Poset::relabel(std::span<const Element> perm) const { return induced(perm); }

std::vector<Element> Poset::minimal_elements() const {
  std::vector<Element> out;
  for (Element x = 0; x < size(); ++x)
    if (lower_covers_[x].empty()) out.push_back(x);
  return out;
}

std::vector<Element> Poset::maximal_elements() const {
  std::vector<Element> out;
  for (Element x = 0; x < size(); ++x)
    if (upper_covers_[x].empty()) out.push_back(x);
  return out;
}

Poset build_poset(std::size_t n, std::span<const Pair> strict_pairs) {
  return Poset::from_relation(n, strict_pairs);
}

Poset build_poset(std::size_t n, std::initializer_list<Pair> strict_pairs) {
  std::vector<Pair> v(strict_pairs);
  return Poset::from_relation(n, v);
}

Poset chain_poset(std::size_t n) {
  std::vector<Pair> rel;
  for (Element i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
  return build_poset(n, rel);
}

Poset antichain_poset(std::size_t n) { return build_poset(n, std::span<const Pair>{}); }

Poset square_poset() { return build_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

Poset crown_poset(std::size_t n) {
  std::vector<Pair> rel;
  for (Element i = 0; i < n; ++i) {
    rel.emplace_back(2 * i, 2 * i + 1);
    rel.emplace_back(2 * ((i + 1) % n), 2 * i + 1);
  }
  return build_poset(2 * n, rel);
}

ElementSet convex_hull(const Poset& p, const ElementSet& x) {
  ElementSet ups(p.size()), downs(p.size());
  for (auto i = x.find_first(); i != ElementSet::npos; i = x.find_next(i)) {
    ups |= p.up(static_cast<Element>(i));
    downs |= p.down(static_cast<Element>(i));
  }
  return ups & downs;
}

bool is_order_convex(const Poset& p, const ElementSet& x) { return convex_hull(p, x) == x; }

namespace {

std::vector<std::vector<Element>> undirected_neighbours(const Poset& p) {
  std::vector<std::vector<Element>> nb(p.size());
  for (Element x = 0; x < p.size(); ++x) {
    nb[x] = p.lower_covers(x);
    nb[x].insert(nb[x].end(), p.upper_covers(x).begin(), p.upper_covers(x).end());
    std::sort(nb[x].begin(), nb[x].end());
  }
  return nb;
}

}  // namespace

std::optional<PathSeq> find_path(const Poset& p, Element a, Element b) {
  if (a >= p.size() || b >= p.size()) return std::nullopt;
  auto nb = undirected_neighbours(p);
  constexpr Element none = ~Element{0};
  std::vector<Element> parent(p.size(), none);
  std::deque<Element> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    if (x == b) break;
    for (Element y : nb[x])
      if (parent[y] == none) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (parent[b] == none) return std::nullopt;
  PathSeq path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Element> cover_components(const Poset& p) {
  std::vector<Element> label(p.size());
  std::iota(label.begin(), label.end(), Element{0});
  auto find = [&](Element x) {
    while (label[x] != x) x = label[x] = label[label[x]];
    return x;
  };
  for (auto [lo, hi] : p.covers()) {
    Element a = find(lo), b = find(hi);
    if (a != b) label[std::max(a, b)] = std::min(a, b);
  }
  for (Element x = 0; x < p.size(); ++x) label[x] = find(x);
  return label;
}

std::optional<std::vector<Element>> find_cover_cycle(const Poset& p) {
  auto nb = undirected_neighbours(p);
  constexpr Element none = ~Element{0};
  std::vector<Element> parent(p.size(), none);
  std::vector<std::size_t> depth(p.size(), 0);
  for (Element root = 0; root < p.size(); ++root) {
    if (parent[root] != none) continue;
    parent[root] = root;
    std::deque<Element> queue{root};
    while (!queue.empty()) {
      Element x = queue.front();
      queue.pop_front();
      for (Element y : nb[x]) {
        if (parent[y] == none) {
          parent[y] = x;
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        } else if (y != parent[x]) {
          // Non-tree edge x-y closes a cycle through their common ancestor.
          std::vector<Element> left{x}, right{y};
          while (left.back() != right.back()) {
            if (depth[left.back()] >= depth[right.back()])
              left.push_back(parent[left.back()]);
            else
              right.push_back(parent[right.back()]);
          }
          right.pop_back();
          std::reverse(right.begin(), right.end());
          left.insert(left.end(), right.begin(), right.end());
          return left;
        }
      }
    }
  }
  return std::nullopt;
}

bool is_tree_like(const Poset& p) {
  // Condition (1): every comparable pair is joined by a chain of covers.
  for (Element x = 0; x < p.size(); ++x) {
    ElementSet reach(p.size());
    reach.set(x);
    std::vector<Element> stack{x};
    while (!stack.empty()) {
      Element y = stack.back();
      stack.pop_back();
      for (Element z : p.upper_covers(y))
        if (!reach.test(z)) {
          reach.set(z);
          stack.push_back(z);
        }
    }
    if (reach != p.up(x))
      throw InternalError("cover chains do not generate the order above " + std::to_string(x));
  }
  // Condition (2): the cover graph is a forest.
  auto label = cover_components(p);
  std::size_t components = 0;
  for (Element x = 0; x < p.size(); ++x)
    if (label[x] == x) ++components;
  return p.covers().size() + components == p.size();
}

bool is_crown(const Poset& p, const Crown& c) {
  const std::size_t n = c.n();
  if (n < 3) return false;
  for (auto [a, b] : c.pairs)
    if (a >= p.size() || b >= p.size()) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool expected = i == j || i == (j + 1) % n;
      if (p.leq(c.pairs[i].first, c.pairs[j].second) != expected) return false;
    }
  return true;
}

namespace {

class CrownSearcher {
 public:
  CrownSearcher(const Poset& p, std::size_t n, std::uint64_t budget)
      : p_(p), n_(n), budget_(budget), a_(n), b_(n) {}

  bool run() { return place_a(0); }
  bool out_of_budget() const { return out_; }
  std::uint64_t nodes() const { return nodes_; }
  Crown crown() const {
    Crown c;
    for (std::size_t i = 0; i < n_; ++i) c.pairs.emplace_back(a_[i], b_[i]);
    return c;
  }

 private:
  bool tick() {
    if (++nodes_ > budget_) out_ = true;
    return !out_;
  }

  bool expected(std::size_t i, std::size_t j) const { return i == j || i == (j + 1) % n_; }

  bool place_a(std::size_t i) {
    for (Element x = 0; x < p_.size(); ++x) {
      if (!tick()) return false;
      // Rotation and reflection normal form: a_0 least, a_1 < a_{n-1}.
      if (i > 0 && x <= a_[0]) continue;
      if (i == n_ - 1 && x <= a_[1]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = p_.leq(x, b_[j]) == expected(i, j);
      if (!ok) continue;
      a_[i] = x;
      if (place_b(i)) return true;
      if (out_) return false;
    }
    return false;
  }

  bool place_b(std::size_t j) {
    for (Element y = 0; y < p_.size(); ++y) {
      if (!tick()) return false;
      bool ok = true;
      for (std::size_t i = 0; i <= j && ok; ++i) ok = p_.leq(a_[i], y) == expected(i, j);
      if (ok && j == n_ - 1) ok = p_.leq(a_[0], y);
      if (!ok) continue;
      b_[j] = y;
      if (j + 1 == n_) return true;
      if (place_a(j + 1)) return true;
      if (out_) return false;
    }
    return false;
  }

  const Poset& p_;
  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_ = false;
  std::vector<Element> a_, b_;
};

}  // namespace

CrownSearch search_crown(const Poset& p, std::uint64_t node_budget) {
  CrownSearch result;
  for (std::size_t n = 3; 2 * n <= p.size(); ++n) {
    CrownSearcher s(p, n, node_budget - result.nodes);
    bool found = s.run();
    result.nodes += s.nodes();
    if (found) {
      result.crown = s.crown();
      if (!is_crown(p, *result.crown)) throw InternalError("crown search returned a non-crown");
      return result;
    }
    if (s.out_of_budget()) {
      result.exhausted = false;
      return result;
    }
  }
  return result;
}

std::optional<Crown> find_crown(const Poset& p) { return search_crown(p).crown; }

bool is_crown_free(const Poset& p) { return !find_crown(p).has_value(); }

}  // namespace convexa
