#include <doctest.h>

#include <random>

#include "convexa/convexity.hpp"
#include "convexa/embed.hpp"
#include "convexa/errors.hpp"
#include "convexa/identities.hpp"
#include "convexa/jdep.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace convexa;

namespace {

Element single(const CoLattice& co, Element x) { return co.index_of(make_set(co.base.size(), {x})); }

}  // namespace

TEST_CASE("R for small lattices") {
  CoLattice c2 = co_lattice(chain_poset(2));
  JoinDependency j2(c2.lattice);
  RPoset r2 = build_R(j2);
  CHECK(r2.points.size() == 2);
  CHECK(r2.order.covers().empty());

  CoLattice c3 = co_lattice(chain_poset(3));
  JoinDependency j3(c3.lattice);
  RPoset r3 = build_R(j3);
  CHECK(r3.points.size() == 7);
  CHECK(r3.points.size() == size_bound(3));
  const Element s0 = single(c3, 0), s1 = single(c3, 1), s2 = single(c3, 2);
  Element lo = r3.index_of({RPoint::Kind::minus, s1, s0});
  Element mid = r3.index_of({RPoint::Kind::zero, s1, s1});
  Element hi = r3.index_of({RPoint::Kind::plus, s1, s2});
  CHECK(r3.order.less(lo, mid));
  CHECK(r3.order.less(mid, hi));
  CHECK(label(r3.points[mid]) == "<" + std::to_string(s1) + ">");
  CHECK(label(r3.points[lo]) == "<" + std::to_string(s1) + "," + std::to_string(s0) + ",->");
  CHECK_THROWS_AS(r3.index_of({RPoint::Kind::plus, s0, s1}), RangeError);

  // Flipping the partition at {1} reverses that chain.
  RPoset flipped = build_R(j3, {s1});
  CHECK(flipped.order.less(flipped.index_of({RPoint::Kind::minus, s1, s2}),
                           flipped.index_of({RPoint::Kind::zero, s1, s1})));

  FiniteLattice one = chain_lattice(1);
  JoinDependency j1(one);
  CHECK(build_R(j1).points.empty());

  FiniteLattice m3 = diamond_lattice(3);
  JoinDependency jm(m3);
  CHECK_THROWS_AS(build_R(jm), NotInSUB);
}

TEST_CASE("phi on Co(3-chain)") {
  CoLattice c3 = co_lattice(chain_poset(3));
  JoinDependency j3(c3.lattice);
  RPoset r = build_R(j3);
  EmbeddingResult e = phi(c3.lattice, r);
  CHECK(e.verified);
  CHECK(e.failure.empty());
  CHECK(e.map[c3.lattice.bottom()].none());
  CHECK(e.map[c3.lattice.top()].count() == r.points.size());
  // phi({0,1}) holds every point whose e() is {0} or {1}.
  Element x = c3.index_of(make_set(3, {0, 1}));
  for (Element i = 0; i < r.points.size(); ++i)
    CHECK(e.map[x].test(i) == c3.lattice.leq(r.points[i].e(), x));
  CHECK(e.map[x].count() == 4);
}

TEST_CASE("size_bound") {
  CHECK(size_bound(0) == 1);
  CHECK(size_bound(1) == 1);
  CHECK(size_bound(2) == 2);
  CHECK(size_bound(3) == 7);
  CHECK(size_bound(4) == 16);
}

TEST_CASE("embedding_failure catches bad maps") {
  FiniteLattice b2 = boolean_lattice(2);
  Poset a2 = antichain_poset(2);
  std::vector<ElementSet> good{make_set(2, {}), make_set(2, {0}), make_set(2, {1}), make_set(2, {0, 1})};
  CHECK_FALSE(embedding_failure(b2, a2, good).has_value());
  auto swapped = good;
  std::swap(swapped[1], swapped[3]);
  CHECK(embedding_failure(b2, a2, swapped).has_value());
  Poset c3 = chain_poset(3);
  std::vector<ElementSet> gap{make_set(3, {}), make_set(3, {0}), make_set(3, {2}), make_set(3, {0, 2})};
  CHECK(embedding_failure(b2, c3, gap).has_value());
}

TEST_CASE("Gamma examples") {
  CoLattice c3 = co_lattice(chain_poset(3));
  JoinDependency j3(c3.lattice);
  GammaPoset g = build_Gamma(j3);
  CHECK(g.seqs.size() == 5);
  CHECK(is_tree_like(g.order));
  const Element s0 = single(c3, 0), s1 = single(c3, 1), s2 = single(c3, 2);
  CHECK(g.seqs[3] == GammaSeq{s1, s0});
  CHECK(g.seqs[4] == GammaSeq{s1, s2});
  CHECK(label(g.seqs[3]) == "[" + std::to_string(s1) + "." + std::to_string(s0) + "]");
  EmbeddingResult e = psi(c3.lattice, g);
  CHECK(e.verified);

  RPoset r = build_R(j3);
  CHECK_FALSE(projection_violation(g, r).has_value());

  FiniteLattice b2 = boolean_lattice(2);
  GammaPoset gb = build_Gamma(JoinDependency(b2));
  CHECK(gb.seqs.size() == 2);
  CHECK(gb.order.covers().empty());

  CoLattice c4 = co_lattice(chain_poset(4));
  JoinDependency j4(c4.lattice);
  CHECK_THROWS_AS(build_Gamma(j4), DCycleError);

  GammaOptions cap;
  cap.depth_cap = 1;
  CHECK_THROWS_AS(build_Gamma(j3, cap), DepthCapExceeded);
  GammaOptions small;
  small.max_points = 4;
  CHECK_THROWS_AS(build_Gamma(j3, small), SizeError);
}

TEST_CASE("R, phi, Gamma and psi over the corpus") {
  auto lattices = corpus::standard(5, 80, 101);
  std::mt19937_64 rng(3);
  int gammas = 0;
  for (const auto& e : lattices) {
    CAPTURE(e.name);
    JoinDependency jd(e.lattice);
    if (!jd.in_sub()) {
      CHECK_THROWS_AS(build_R(jd), NotInSUB);
      continue;
    }
    const auto n = jd.jirr().jirr.size();
    RPoset r = build_R(jd);
    CHECK(r.points.size() <= size_bound(n));
    CHECK(r.points.size() == n + 2 * jd.pairs().size());
    // Covers are prec minus the recorded shortcuts.
    auto cov = oracle::covers(oracle::relation_of(r.order));
    std::vector<Pair> merged(cov.begin(), cov.end());
    merged.insert(merged.end(), r.shortcuts.begin(), r.shortcuts.end());
    std::sort(merged.begin(), merged.end());
    CHECK(merged == r.prec);
    if (e.is_co && e.poset.size() <= 4) CHECK(r.shortcuts.empty());
    CHECK(phi(e.lattice, r).verified);

    PartitionFlips flips;
    for (Element p : jd.jirr().jirr)
      if (rng() & 1) flips.push_back(p);
    RPoset rf = build_R(jd, flips);
    CHECK(phi(e.lattice, rf).verified);

    if (jd.has_cycle()) {
      CHECK_THROWS_AS(build_Gamma(jd), DCycleError);
      continue;
    }
    GammaPoset g = build_Gamma(jd, {}, flips);
    ++gammas;
    auto rel = oracle::relation_of(g.order);
    CHECK(oracle::tree_like(rel));
    if (g.seqs.size() <= 9) CHECK_FALSE(oracle::has_3_crown(rel));
    for (std::size_t i = 0; i < g.seqs.size(); ++i) {
      const auto& s = g.seqs[i];
      for (std::size_t k = 0; k + 1 < s.size(); ++k) CHECK(jd.depends(s[k], s[k + 1]));
      if (s.size() > 1) CHECK(g.seqs[*g.parent[i]] == GammaSeq(s.begin(), s.end() - 1));
    }
    CHECK(psi(e.lattice, g).verified);
    CHECK_FALSE(projection_violation(g, rf).has_value());
  }
  CHECK(gammas > 20);
}

TEST_CASE("Co of a chain attains the size bound") {
  for (std::size_t k = 2; k <= 6; ++k) {
    CAPTURE(k);
    CoLattice co = co_lattice(chain_poset(k));
    JoinDependency jd(co.lattice);
    CHECK(build_R(jd).points.size() == size_bound(k));
  }
}
