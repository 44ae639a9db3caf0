#include "convexa/jdep.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "convexa/errors.hpp"
#include "convexa/identities.hpp"

namespace convexa {

namespace {

bool below_with_lower_cover(const FiniteLattice& l, Element p, Element b, Element c) {
  for (Element x : l.order().lower_covers(b))
    if (l.leq(p, l.join(x, c))) return true;
  return false;
}

}  // namespace

JoinCover classify_cover(const FiniteLattice& l, Element p, Element b, Element c) {
  if (p >= l.size() || b >= l.size() || c >= l.size()) throw RangeError("element out of range");
  if (!l.leq(p, l.join(b, c))) throw std::invalid_argument("p is not below b | c");
  JoinCover jc{p, b, c, false, false, false};
  jc.nontrivial = !l.leq(p, b) && !l.leq(p, c);
  jc.minimal_in_b = !below_with_lower_cover(l, p, b, c);
  jc.minimal_in_c = !below_with_lower_cover(l, p, c, b);
  return jc;
}

bool is_stirlitz_track(const FiniteLattice& l, std::span<const Element> a, std::span<const Element> a_prime) {
  if (a.size() != a_prime.size() + 1) return false;
  auto info = join_irreducibles(l);
  for (Element x : a)
    if (x >= l.size() || !info.is_jirr.test(x)) return false;
  for (Element x : a_prime)
    if (x >= l.size() || !info.is_jirr.test(x)) return false;
  const std::size_t n = a_prime.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!l.leq(a[i], l.join(a[i + 1], a_prime[i]))) return false;
    auto jc = classify_cover(l, a[i], a[i + 1], a_prime[i]);
    if (!jc.nontrivial || !jc.minimal_in_b || !jc.minimal_in_c) return false;
  }
  // a_i <= a'_i | a_{i+1} for 1 <= i <= n-1; a'_i is a_prime[i-1].
  for (std::size_t i = 1; i < n; ++i)
    if (!l.leq(a[i], l.join(a_prime[i - 1], a[i + 1]))) return false;
  return true;
}

JoinDependency::JoinDependency(const FiniteLattice& l, bool require_sub)
    : l_(&l), jirr_(join_irreducibles(l)), check_sub_(require_sub) {
  const std::size_t n = l.size();
  d_.assign(n, {});
  d_set_.assign(n, ElementSet(n));
  for (Element p : jirr_.jirr)
    for (Element q : jirr_.jirr) {
      if (p == q) continue;
      Element q_low = *jirr_.lower_cover[q];
      for (Element x = 0; x < n; ++x)
        if (l.leq(p, l.join(q, x)) && !l.leq(p, l.join(q_low, x))) {
          d_[p].push_back(q);
          d_set_[p].set(q);
          break;
        }
    }

  // Cycle search: DFS from each start in ascending order.
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Element> stack;
  std::function<bool(Element)> dfs = [&](Element v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (Element w : d_[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle_ = std::vector<Element>(it, stack.end());
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (Element p : jirr_.jirr)
    if (state[p] == 0 && dfs(p)) break;

  if (check_sub_) in_sub_ = satisfies_SUB_fast(l).holds;
}

void JoinDependency::require_sub(const char* what) const {
  if (check_sub_ && !in_sub_)
    throw NotInSUB(std::string(what) + ": lattice fails the SUB axioms");
}

bool JoinDependency::depends(Element p, Element q) const {
  if (p >= d_set_.size() || q >= d_set_.size()) throw RangeError("element out of range");
  return d_set_[p].test(q);
}

const std::vector<Element>& JoinDependency::dependents(Element p) const {
  if (p >= d_.size()) throw RangeError("element out of range");
  return d_[p];
}

std::vector<Pair> JoinDependency::pairs() const {
  std::vector<Pair> out;
  for (Element p = 0; p < d_.size(); ++p)
    for (Element q : d_[p]) out.emplace_back(p, q);
  return out;
}

std::size_t JoinDependency::longest_path() const {
  if (cycle_) throw DCycleError("D has a cycle");
  const std::size_t n = d_.size();
  std::vector<std::optional<std::size_t>> memo(n);
  std::function<std::size_t(Element)> go = [&](Element v) -> std::size_t {
    if (memo[v]) return *memo[v];
    std::size_t best = 0;
    for (Element w : d_[v]) best = std::max(best, go(w) + 1);
    memo[v] = best;
    return best;
  };
  std::size_t best = 0;
  for (Element p : jirr_.jirr) best = std::max(best, go(p));
  return best;
}

std::vector<JoinCover> JoinDependency::minimal_nontrivial_join_covers(Element p) const {
  const FiniteLattice& l = *l_;
  if (p >= l.size()) throw RangeError("element out of range");
  std::vector<JoinCover> out;
  for (Element b = 0; b < l.size(); ++b) {
    if (l.leq(p, b)) continue;
    for (Element c = 0; c < l.size(); ++c) {
      if (l.leq(p, c) || !l.leq(p, l.join(b, c))) continue;
      auto jc = classify_cover(l, p, b, c);
      if (jc.minimal_in_b && jc.minimal_in_c) out.push_back(jc);
    }
  }
  return out;
}

std::vector<Element> JoinDependency::conjugates(Element p, Element a) const {
  if (!depends(p, a))
    throw NotDRelated("conjugates: " + std::to_string(p) + " D " + std::to_string(a) + " fails");
  const FiniteLattice& l = *l_;
  Element a_low = *jirr_.lower_cover[a];
  std::vector<Element> out;
  for (Element b : jirr_.jirr) {
    if (l.leq(p, b) || !l.leq(p, l.join(a, b))) continue;
    if (l.leq(p, l.join(a_low, b))) continue;
    if (l.leq(p, l.join(a, *jirr_.lower_cover[b]))) continue;
    out.push_back(b);
  }
  return out;
}

std::vector<Element> JoinDependency::c_bracket(Element b, Element b_prime) const {
  const FiniteLattice& l = *l_;
  if (b >= l.size() || b_prime >= l.size()) throw RangeError("element out of range");
  std::vector<Element> out;
  for (Element x : d_[b])
    if (l.leq(b, l.join(b_prime, x))) out.push_back(x);
  return out;
}

std::vector<Element> JoinDependency::c_set(Element a, Element b) const {
  if (!depends(a, b))
    throw NotDRelated("C(a,b): " + std::to_string(a) + " D " + std::to_string(b) + " fails");
  require_sub("C(a,b)");
  auto conj = conjugates(a, b);
  if (conj.empty())
    throw WellDefinednessViolation("C(" + std::to_string(a) + "," + std::to_string(b) +
                                   "): b has no conjugate");
  auto first = c_bracket(b, conj.front());
  for (std::size_t i = 1; i < conj.size(); ++i)
    if (c_bracket(b, conj[i]) != first)
      throw WellDefinednessViolation("C(" + std::to_string(a) + "," + std::to_string(b) +
                                     ") depends on the conjugate: " + std::to_string(conj.front()) +
                                     " vs " + std::to_string(conj[i]));
  return first;
}

UdavBondPartition JoinDependency::udav_bond_partition(Element p, bool flip) const {
  require_sub("Udav-Bond partition");
  const FiniteLattice& l = *l_;
  UdavBondPartition part{p, {}, {}};
  const auto& dp = dependents(p);
  if (dp.empty()) return part;
  Element d0 = dp.front();
  for (Element y : dp) (l.leq(p, l.join(d0, y)) ? part.B : part.A).push_back(y);
  ElementSet in_a(l.size());
  for (Element x : part.A) in_a.set(x);
  for (Element x : dp)
    for (Element y : dp) {
      bool cross = in_a.test(x) != in_a.test(y);
      if (l.leq(p, l.join(x, y)) != cross)
        throw PartitionViolation("no Udav-Bond partition for " + std::to_string(p) + ": pair (" +
                                 std::to_string(x) + "," + std::to_string(y) + ")");
    }
  if (flip) std::swap(part.A, part.B);
  return part;
}

std::vector<StirlitzTrack> JoinDependency::stirlitz_tracks(std::size_t max_length) const {
  const FiniteLattice& l = *l_;
  // Minimal nontrivial covers p <= b | c with b, c join-irreducible.
  std::vector<std::vector<std::pair<Element, Element>>> covers(l.size());
  for (Element p : jirr_.jirr)
    for (Element b : jirr_.jirr) {
      if (l.leq(p, b)) continue;
      for (Element c : jirr_.jirr) {
        if (l.leq(p, c) || !l.leq(p, l.join(b, c))) continue;
        if (l.leq(p, l.join(*jirr_.lower_cover[b], c))) continue;
        if (l.leq(p, l.join(b, *jirr_.lower_cover[c]))) continue;
        covers[p].emplace_back(b, c);
      }
    }

  std::vector<StirlitzTrack> out;
  StirlitzTrack cur;
  std::function<void()> extend = [&]() {
    if (cur.length() >= max_length) return;
    const std::size_t i = cur.length();  // extending from a_i
    Element ai = cur.a.back();
    for (auto [b, c] : covers[ai]) {
      if (i >= 1 && !l.leq(ai, l.join(cur.a_prime[i - 1], b))) continue;
      cur.a.push_back(b);
      cur.a_prime.push_back(c);
      out.push_back(cur);
      extend();
      cur.a.pop_back();
      cur.a_prime.pop_back();
    }
  };
  for (Element p : jirr_.jirr) {
    cur.a = {p};
    cur.a_prime.clear();
    extend();
  }
  return out;
}

}  // namespace convexa
