#include <doctest.h>

#include <random>
#include <sstream>

#include "convexa/errors.hpp"
#include "convexa/poset.hpp"
#include "convexa/poset_io.hpp"
#include "oracles.hpp"

using namespace convexa;

TEST_CASE("build_poset closes and reduces") {
  Poset c = build_poset(3, {{0, 1}, {1, 2}});
  CHECK(c.leq(0, 2));
  CHECK_FALSE(c.leq(2, 0));
  CHECK(c.covers() == std::vector<Pair>{{0, 1}, {1, 2}});

  Poset a = build_poset(2, {});
  CHECK(a.covers().empty());
  CHECK_FALSE(a.comparable(0, 1));

  CHECK_THROWS_AS(build_poset(3, {{0, 1}, {1, 2}, {2, 0}}), CycleError);
  CHECK_THROWS_AS(build_poset(2, {{0, 2}}), RangeError);
  CHECK_THROWS_AS(build_poset(2, {{1, 1}}), CycleError);

  Poset empty = build_poset(0, {});
  CHECK(empty.size() == 0);
}

TEST_CASE("redundant pairs do not change the order") {
  Poset a = build_poset(4, {{0, 1}, {1, 2}, {2, 3}});
  Poset b = build_poset(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
  CHECK(a == b);
  CHECK(a.covers() == b.covers());
}

TEST_CASE("closure and covers agree with the oracle on random relations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 8;
    Poset p = oracle::random_poset(rng, n, 0.3);
    auto pairs = p.strict_pairs();
    auto r = oracle::closure(n, pairs);
    CHECK(oracle::relation_of(p) == r);
    auto cov = oracle::covers(r);
    auto got = p.covers();
    CHECK(std::set<Pair>(got.begin(), got.end()) == cov);
    // Rebuilding from covers alone gives the same order.
    CHECK(build_poset(n, got) == p);
  }
}

TEST_CASE("is_order_convex") {
  Poset c = chain_poset(3);
  CHECK_FALSE(is_order_convex(c, make_set(3, {0, 2})));
  CHECK(is_order_convex(c, make_set(3, {1, 2})));
  CHECK(is_order_convex(c, ElementSet(3)));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 7;
    Poset p = oracle::random_poset(rng, n, 0.4);
    auto r = oracle::relation_of(p);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      auto s = from_mask(m, n);
      REQUIRE(is_order_convex(p, s) == oracle::is_convex(r, m));
      auto h = convex_hull(p, s);
      CHECK(is_order_convex(p, h));
      CHECK(s.is_subset_of(h));
    }
  }
}

TEST_CASE("find_path") {
  Poset c = chain_poset(3);
  CHECK(find_path(c, 0, 2) == PathSeq{0, 1, 2});
  CHECK(find_path(c, 1, 1) == PathSeq{1});
  CHECK_FALSE(find_path(antichain_poset(2), 0, 1).has_value());

  // Ties broken by ascending id: 0 -> 1 -> 3 rather than 0 -> 2 -> 3.
  CHECK(find_path(square_poset(), 0, 3) == PathSeq{0, 1, 3});
}

TEST_CASE("find_path exists exactly within a component and is a path") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 8;
    Poset p = oracle::random_poset(rng, n, 0.2);
    auto r = oracle::relation_of(p);
    auto cov = oracle::covers(r);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        auto path = find_path(p, a, b);
        REQUIRE(path.has_value() == oracle::connected(r, a, b));
        if (!path) continue;
        CHECK(path->front() == a);
        CHECK(path->back() == b);
        std::set<Element> distinct(path->begin(), path->end());
        CHECK(distinct.size() == path->size());
        for (std::size_t i = 0; i + 1 < path->size(); ++i) {
          Element x = (*path)[i], y = (*path)[i + 1];
          CHECK((cov.count({x, y}) || cov.count({y, x})));
        }
      }
  }
}

TEST_CASE("tree-like posets have unique paths regardless of labelling") {
  std::mt19937_64 rng(5);
  int tree_like_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 2 + rng() % 7;
    Poset p = oracle::random_poset(rng, n, 0.25);
    if (!is_tree_like(p)) continue;
    ++tree_like_seen;
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    // q's element i is p's element perm[i].
    Poset q = p.relabel(perm);
    std::vector<Element> inv(n);
    for (Element i = 0; i < n; ++i) inv[perm[i]] = i;
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        auto pp = find_path(p, a, b);
        auto qp = find_path(q, inv[a], inv[b]);
        REQUIRE(pp.has_value() == qp.has_value());
        if (!pp) continue;
        for (auto& x : *qp) x = perm[x];
        CHECK(*pp == *qp);
      }
  }
  CHECK(tree_like_seen > 50);
}

TEST_CASE("is_tree_like") {
  CHECK(is_tree_like(chain_poset(3)));
  CHECK(is_tree_like(build_poset(0, {})));
  CHECK_FALSE(is_tree_like(square_poset()));
  // w < x, y < z: the diamond's cover graph is a 4-cycle.
  CHECK_FALSE(is_tree_like(build_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})));
  // Two points above two points (the 2-crown) is not tree-like either.
  CHECK_FALSE(is_tree_like(build_poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}})));

  auto cyc = find_cover_cycle(square_poset());
  REQUIRE(cyc.has_value());
  CHECK(cyc->size() == 4);
  CHECK_FALSE(find_cover_cycle(chain_poset(5)).has_value());

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 7;
    Poset p = oracle::random_poset(rng, n, 0.3);
    auto r = oracle::relation_of(p);
    REQUIRE(is_tree_like(p) == oracle::tree_like(r));
    auto c = find_cover_cycle(p);
    CHECK(c.has_value() == !is_tree_like(p));
    if (c) {
      auto cov = oracle::covers(r);
      for (std::size_t i = 0; i < c->size(); ++i) {
        Element x = (*c)[i], y = (*c)[(i + 1) % c->size()];
        CHECK((cov.count({x, y}) || cov.count({y, x})));
      }
    }
  }
}

TEST_CASE("crowns") {
  Poset c3 = crown_poset(3);
  auto crown = find_crown(c3);
  REQUIRE(crown.has_value());
  CHECK(crown->n() == 3);
  CHECK(is_crown(c3, *crown));
  CHECK(crown->pairs == std::vector<Pair>{{0, 1}, {2, 3}, {4, 5}});

  CHECK_FALSE(find_crown(square_poset()).has_value());
  CHECK(is_crown_free(build_poset(0, {})));

  Poset c4 = crown_poset(4);
  auto crown4 = find_crown(c4);
  REQUIRE(crown4.has_value());
  CHECK(crown4->n() == 4);
  CHECK(is_crown(c4, *crown4));

  Poset c5 = crown_poset(5);
  auto crown5 = find_crown(c5);
  REQUIRE(crown5.has_value());
  CHECK(crown5->n() == 5);

  // The criterion taken literally: a 2-element family is never a crown.
  CHECK_FALSE(is_crown(c3, Crown{{{0, 1}, {2, 3}}}));
  // Breaking one relation breaks the crown.
  CHECK_FALSE(is_crown(c3, Crown{{{0, 1}, {2, 3}, {4, 3}}}));
}

TEST_CASE("3-crown search agrees with a brute-force 6-tuple scan") {
  std::mt19937_64 rng(21);
  int with_crown = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Poset p;
    if (trial % 2 == 0) {
      p = oracle::random_poset(rng, 1 + rng() % 7, 0.35);
    } else {
      // C_3 plus a seventh point with random relations; closure may or
      // may not destroy the crown.
      auto pairs = crown_poset(3).strict_pairs();
      for (Element x = 0; x < 6; ++x) {
        auto r = rng() % 4;
        if (r == 0) pairs.emplace_back(x, 6);
        if (r == 1) pairs.emplace_back(6, x);
      }
      try {
        p = build_poset(7, pairs);
      } catch (const CycleError&) {
        continue;
      }
    }
    auto found = find_crown(p);
    bool brute = oracle::has_3_crown(oracle::relation_of(p));
    // On at most 7 points only 3-crowns fit.
    REQUIRE(found.has_value() == brute);
    if (found) {
      ++with_crown;
      CHECK(is_crown(p, *found));
    }
  }
  CHECK(with_crown > 0);
}

TEST_CASE("crown search respects its node budget") {
  auto s = search_crown(crown_poset(6), 10);
  CHECK_FALSE(s.exhausted);
  CHECK_FALSE(s.crown.has_value());
}

TEST_CASE("poset text format round-trips") {
  Poset p = build_poset(5, {{0, 2}, {1, 2}, {2, 3}, {0, 3}, {2, 4}});
  std::string text = to_string(p);
  CHECK(text == "poset 5\n0 < 2\n1 < 2\n2 < 3\n2 < 4\n");
  Poset q = parse_poset(text);
  CHECK(q == p);
  CHECK(to_string(q) == text);

  Poset r = parse_poset("# comment\nposet 3  # trailing\n\n0 < 1 # x\n 1<2\n");
  CHECK(r == chain_poset(3));

  CHECK_THROWS_AS(parse_poset("poset 2\n0 < 5\n"), ParseError);
  CHECK_THROWS_AS(parse_poset("poset 2\n0 <\n"), ParseError);
  CHECK_THROWS_AS(parse_poset("lattice 2\n"), ParseError);
  CHECK_THROWS_AS(parse_poset("poset 2\n0 < 1\n1 < 0\n"), ParseError);
  try {
    parse_poset("poset 3\n0 < 1\nbogus\n", "f.poset");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.source() == "f.poset");
  }
}

TEST_CASE("element sets format and parse") {
  auto s = make_set(5, {0, 2, 3});
  CHECK(format_set(s) == "{0,2,3}");
  CHECK(parse_set("{0, 2,3}", 5) == s);
  CHECK(parse_set("{}", 5).none());
  CHECK_THROWS(parse_set("{0,9}", 5));
  CHECK_THROWS(parse_set("0,1", 5));
}
