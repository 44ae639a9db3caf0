#include <doctest.h>

#include <algorithm>
#include <set>

#include "convexa/convexity.hpp"
#include "convexa/errors.hpp"
#include "convexa/identities.hpp"
#include "convexa/jdep.hpp"
#include "corpus.hpp"
#include "lattice_oracles.hpp"
#include "properties.hpp"

using namespace convexa;

namespace {

struct Chain {
  CoLattice co;
  explicit Chain(std::size_t k) : co(co_lattice(chain_poset(k))) {}
  Element s(Element x) const { return co.index_of(make_set(co.base.size(), {x})); }
  const FiniteLattice& l() const { return co.lattice; }
};

std::vector<Element> sorted(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("minimal nontrivial join-covers") {
  Chain c3(3);
  JoinDependency jd(c3.l());
  auto covers = jd.minimal_nontrivial_join_covers(c3.s(1));
  std::set<std::pair<Element, Element>> got;
  for (auto& jc : covers) {
    got.emplace(jc.b, jc.c);
    CHECK(jc.nontrivial);
  }
  CHECK(got == std::set<std::pair<Element, Element>>{{c3.s(0), c3.s(2)}, {c3.s(2), c3.s(0)}});

  Chain c2(2);
  JoinDependency jd2(c2.l());
  CHECK(jd2.minimal_nontrivial_join_covers(c2.s(0)).empty());

  FiniteLattice ch = chain_lattice(5);
  JoinDependency jch(ch);
  for (Element p = 1; p < 5; ++p) CHECK(jch.minimal_nontrivial_join_covers(p).empty());

  auto jc = classify_cover(c3.l(), c3.s(1), c3.s(0), c3.l().top());
  CHECK_FALSE(jc.nontrivial);
  CHECK_THROWS_AS(classify_cover(c3.l(), c3.s(1), c3.s(0), c3.s(0)), std::invalid_argument);
}

TEST_CASE("D relation examples") {
  Chain c3(3);
  JoinDependency jd(c3.l());
  CHECK(jd.pairs() == std::vector<Pair>{{c3.s(1), c3.s(0)}, {c3.s(1), c3.s(2)}});
  CHECK_FALSE(jd.has_cycle());
  CHECK(jd.longest_path() == 1);

  Chain c4(4);
  JoinDependency jd4(c4.l());
  CHECK(jd4.depends(c4.s(1), c4.s(2)));
  CHECK(jd4.depends(c4.s(2), c4.s(1)));
  REQUIRE(jd4.has_cycle());
  auto cyc = *jd4.cycle();
  for (std::size_t i = 0; i < cyc.size(); ++i) CHECK(jd4.depends(cyc[i], cyc[(i + 1) % cyc.size()]));
  CHECK_THROWS_AS(jd4.longest_path(), DCycleError);

  FiniteLattice b3 = boolean_lattice(3);
  JoinDependency jb(b3);
  CHECK(jb.pairs().empty());
}

TEST_CASE("conjugates, C sets and Udav-Bond partitions: examples") {
  Chain c3(3);
  JoinDependency jd(c3.l());
  CHECK(jd.conjugates(c3.s(1), c3.s(0)) == std::vector<Element>{c3.s(2)});
  CHECK(jd.conjugates(c3.s(1), c3.s(2)) == std::vector<Element>{c3.s(0)});
  CHECK(jd.c_set(c3.s(1), c3.s(0)).empty());
  auto ub = jd.udav_bond_partition(c3.s(1));
  CHECK(ub.A == std::vector<Element>{c3.s(0)});
  CHECK(ub.B == std::vector<Element>{c3.s(2)});
  auto flipped = jd.udav_bond_partition(c3.s(1), true);
  CHECK(flipped.A == ub.B);
  auto prime = jd.udav_bond_partition(c3.s(0));
  CHECK(prime.A.empty());
  CHECK(prime.B.empty());

  FiniteLattice b2 = boolean_lattice(2);
  JoinDependency jb(b2);
  CHECK_THROWS_AS(jb.conjugates(1, 2), NotDRelated);

  Chain c4(4);
  JoinDependency jd4(c4.l());
  auto C = jd4.c_set(c4.s(1), c4.s(2));
  CHECK(std::count(C.begin(), C.end(), c4.s(3)) == 1);
  CHECK(C == std::vector<Element>{c4.s(3)});
  auto ub4 = jd4.udav_bond_partition(c4.s(1));
  CHECK(ub4.A == std::vector<Element>{c4.s(0)});
  CHECK(ub4.B == sorted({c4.s(2), c4.s(3)}));

  FiniteLattice m3 = diamond_lattice(3);
  JoinDependency jm(m3);
  CHECK_FALSE(jm.in_sub());
  REQUIRE(jm.depends(1, 2));
  CHECK_THROWS_AS(jm.c_set(1, 2), NotInSUB);
  CHECK_THROWS_AS(jm.udav_bond_partition(1), NotInSUB);
  // Four atoms: two of the three dependents of 1 land on the same side.
  FiniteLattice m4 = diamond_lattice(4);
  JoinDependency unchecked(m4, false);
  CHECK_THROWS_AS(unchecked.udav_bond_partition(1), PartitionViolation);
}

TEST_CASE("Stirlitz track examples") {
  Chain c4(4);
  std::vector<Element> a{c4.s(1), c4.s(2)}, ap{c4.s(0)};
  CHECK(is_stirlitz_track(c4.l(), a, ap));
  std::vector<Element> single{c4.s(1)};
  CHECK(is_stirlitz_track(c4.l(), single, std::vector<Element>{}));

  Chain c3(3);
  std::vector<Element> b{c3.s(1), c3.s(0)}, bp{c3.s(0)};
  CHECK_FALSE(is_stirlitz_track(c3.l(), b, bp));
  CHECK_FALSE(is_stirlitz_track(c3.l(), b, std::vector<Element>{}));
}

TEST_CASE("jdep agrees with literal definitions on the corpus") {
  auto lattices = corpus::standard(4, 60, 7);
  for (const auto& e : lattices) {
    CAPTURE(e.name);
    const FiniteLattice& l = e.lattice;
    oracle::Lat o(l);
    JoinDependency jd(l);
    const auto& J = jd.jirr().jirr;
    for (Element p = 0; p < l.size(); ++p)
      for (Element q = 0; q < l.size(); ++q) REQUIRE(jd.depends(p, q) == o.D(p, q));
    for (auto [p, q] : jd.pairs()) CHECK_FALSE(l.leq(p, q));

    for (Element p : J) {
      for (auto& jc : jd.minimal_nontrivial_join_covers(p)) {
        CHECK(o.minimal_in_first(p, jc.b, jc.c));
        CHECK(o.minimal_in_first(p, jc.c, jc.b));
        if (jd.in_sub()) {
          CHECK(jd.jirr().is_jirr.test(jc.b));
          CHECK(jd.jirr().is_jirr.test(jc.c));
        }
      }
      for (Element a : jd.dependents(p)) {
        std::vector<Element> want;
        for (Element b : J)
          if (o.conjugate(p, a, b)) want.push_back(b);
        CHECK(jd.conjugates(p, a) == want);
        if (jd.in_sub()) CHECK_FALSE(want.empty());
      }
    }

    if (!jd.in_sub()) continue;
    for (Element p : J) {
      auto ub = jd.udav_bond_partition(p);
      auto all = o.ub_partitions(p);
      CHECK(all.count(ub.A) == 1);
      CHECK(all.size() == (jd.dependents(p).empty() ? 1u : 2u));
    }
    for (auto [a, b] : jd.pairs()) {
      auto C = jd.c_set(a, b);
      auto ub = jd.udav_bond_partition(b);
      CHECK((C == ub.A || C == ub.B));
    }
  }
}

TEST_CASE("structure properties on the SUB part of the corpus") {
  auto lattices = corpus::standard(4, 60, 19);
  props::Tally one, tracks, base, parts;
  std::size_t track_count = 0;
  for (const auto& e : lattices) {
    JoinDependency jd(e.lattice);
    if (!jd.in_sub()) continue;
    one.add(props::one_direction(jd));
    tracks.add(props::track_inequalities(jd, 3));
    base.add(props::same_base(jd, 3));
    parts.add(props::partitions(jd));
    track_count += jd.stirlitz_tracks(3).size();
  }
  CHECK_MESSAGE(one.violations == 0, one.first);
  CHECK_MESSAGE(tracks.violations == 0, tracks.first);
  CHECK_MESSAGE(base.violations == 0, base.first);
  CHECK_MESSAGE(parts.violations == 0, parts.first);
  CHECK(one.checked > 0);
  CHECK(base.checked > 0);
  CHECK(track_count > 0);
}

TEST_CASE("tracks are exactly the sequences passing the definition") {
  Chain c4(4);
  JoinDependency jd(c4.l());
  const auto& J = jd.jirr().jirr;
  std::set<std::pair<std::vector<Element>, std::vector<Element>>> got;
  for (auto& t : jd.stirlitz_tracks(2)) got.emplace(t.a, t.a_prime);
  std::set<std::pair<std::vector<Element>, std::vector<Element>>> want;
  for (Element a0 : J)
    for (Element a1 : J)
      for (Element p1 : J) {
        std::vector<Element> a{a0, a1}, ap{p1};
        if (is_stirlitz_track(c4.l(), a, ap)) want.emplace(a, ap);
        for (Element a2 : J)
          for (Element p2 : J) {
            std::vector<Element> b{a0, a1, a2}, bp{p1, p2};
            if (is_stirlitz_track(c4.l(), b, bp)) want.emplace(b, bp);
          }
      }
  CHECK(got == want);
  CHECK_FALSE(got.empty());
}
