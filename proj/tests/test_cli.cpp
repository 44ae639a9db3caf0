#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "convexa/convexity.hpp"
#include "convexa/decide.hpp"
#include "convexa/lattice.hpp"
#include "convexa/poset_io.hpp"

using namespace convexa;

namespace {

struct Run {
  int code;
  std::string out, err;
  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "convexa");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(CONVEXA_TEST_DATA) + "/" + name; }

// Everything after the first line starting with `kind`.
std::string from_header(const std::string& text, const std::string& kind) {
  auto at = text.find("\n" + kind + " ");
  return at == std::string::npos ? std::string() : text.substr(at + 1);
}

}  // namespace

TEST_CASE("co prints Co(P) and the output round-trips") {
  auto r = run({"co", data("chain3.poset")});
  REQUIRE(r.code == cli::ok);
  CHECK(r.out.rfind("# convexa co seed=2024", 0) == 0);
  FiniteLattice l = parse_lattice(r.out);
  CHECK(l.size() == 7);
  CHECK(l.order() == co_lattice(chain_poset(3)).lattice.order());
  std::ostringstream again;
  write_lattice(again, l);
  CHECK(again.str() == from_header(r.out, "lattice"));
}

TEST_CASE("check reports each axiom and the verdict") {
  auto m3 = run({"check", data("m3.lattice")});
  CHECK(m3.code == cli::fails);
  CHECK(m3.has("AXIOM Sj FAILS a=1 b=2 b0=1 b1=3 c=3"));
  CHECK(m3.has("AXIOM Uj HOLDS"));
  CHECK(m3.has("agreement=true"));
  CHECK(m3.has("\nNOT-IN-SUB\n"));

  auto m4 = run({"check", data("m4.lattice"), "--fast-only"});
  CHECK(m4.code == cli::fails);
  CHECK(m4.has("AXIOM Uj FAILS x=1 x0=2 x1=3 x2=4"));

  auto n5 = run({"check", data("n5.lattice")});
  CHECK(n5.code == cli::ok);
  CHECK(n5.has("\nIN-SUB\n"));

  auto co = run({"check", data("chain4.poset")});
  CHECK(co.code == cli::ok);
}

TEST_CASE("embed and gamma") {
  auto e = run({"embed", data("chain3.poset")});
  CHECK(e.code == cli::ok);
  CHECK(e.has("|R|=7 bound=7 verified=true"));
  CHECK(e.has("# element 0 = <{0}>"));
  Poset r = parse_poset(from_header(e.out, "poset").substr(0, from_header(e.out, "poset").find("phi")));
  CHECK(r.size() == 7);

  auto flipped = run({"embed", data("chain3.poset"), "--flip", "2", "--no-map"});
  CHECK(flipped.code == cli::ok);
  CHECK(flipped.has("flips={2}"));
  CHECK_FALSE(flipped.has("phi "));

  auto g = run({"gamma", data("chain3.poset")});
  CHECK(g.code == cli::ok);
  CHECK(g.has("|Gamma|=5 tree-like=true verified=true projection=ok"));

  auto cyc = run({"gamma", data("chain4.poset")});
  CHECK(cyc.code == cli::fails);
  CHECK(cyc.has("DCycleError"));

  auto m3 = run({"embed", data("m3.lattice")});
  CHECK(m3.code == cli::fails);
  CHECK(m3.has("NOT-IN-SUB"));
}

TEST_CASE("crown, treelike and theta") {
  auto c = run({"crown", data("crown3.poset")});
  CHECK(c.code == cli::fails);
  CHECK(c.has("CROWN n=3"));
  CHECK(run({"crown", data("square.poset")}).code == cli::ok);

  auto sq = run({"treelike", data("square.poset")});
  CHECK(sq.code == cli::fails);
  CHECK(sq.has("NOT-TREE-LIKE"));
  CHECK(run({"treelike", data("chain3.poset")}).code == cli::ok);

  auto th = run({"theta", data("m4.lattice")});
  CHECK(th.code == cli::fails);
  CHECK(th.has("THETA FAILS"));
  auto sampled = run({"theta", data("crown3.poset"), "--samples", "2000", "--seed", "11"});
  CHECK(sampled.code == cli::ok);
  CHECK(sampled.has("seed=11"));
  CHECK(sampled.has("samples=2000"));
}

TEST_CASE("decide") {
  auto dist = run({"decide", "--term-s", data("dist_s.term"), "--term-t", data("dist_t.term")});
  CHECK(dist.code == cli::fails);
  CHECK(dist.has("INVALID bound=3"));
  CHECK(dist.has("x = {1}\ny = {0}\nz = {2}\n"));

  auto s = run({"decide", "--identity", "S"});
  CHECK(s.code == cli::ok);
  CHECK(s.has("VALID bound=5"));

  auto inl = run({"decide", "--s", "(join (var x) (var x))", "--t", "(var x)"});
  CHECK(inl.code == cli::ok);

  auto big = run({"decide", "--identity", "U", "--mode", "node-count"});
  CHECK(big.code == cli::error);
  CHECK(big.err.find("SizeError") != std::string::npos);

  auto q = run({"decide", "--quasi", "theta", "--filter", "crown-free", "--max-size", "4"});
  CHECK(q.code == cli::ok);
  CHECK(q.has("ABSENT"));
  auto sym = run({"decide", "--quasi", data("symmetric.quasi"), "--max-size", "2"});
  CHECK(sym.code == cli::fails);
  CHECK(sym.has("FOUND"));

  CHECK(run({"decide"}).code == cli::error);
  CHECK(run({"decide", "--identity", "XYZ"}).code == cli::error);
}

TEST_CASE("catalog and xi") {
  auto c = run({"catalog", "4"});
  CHECK(c.code == cli::ok);
  CHECK(c.has("# count=16"));
  CHECK(run({"catalog", "8"}).code == cli::error);

  auto x = run({"xi", "3", "--subs", "5"});
  CHECK(x.code == cli::ok);
  CHECK(x.has("J=3 "));
}

TEST_CASE("input errors give exit 2 and name the file") {
  auto bad = run({"check", data("bad.lattice")});
  CHECK(bad.code == cli::error);
  CHECK(bad.err.find("bad.lattice:") != std::string::npos);
  CHECK(bad.out.empty());
  CHECK(run({"co", data("cyclic.poset")}).code == cli::error);
  CHECK(run({"co", data("missing.poset")}).code == cli::error);
  CHECK(run({"frobnicate"}).code == cli::error);
  CHECK(run({}).code == cli::error);

  setenv("CONVEXA_MAX_SUBSET_BITS", "2", 1);
  auto capped = run({"co", data("chain3.poset")});
  setenv("CONVEXA_MAX_SUBSET_BITS", "junk", 1);
  auto junk = run({"co", data("chain3.poset")});
  unsetenv("CONVEXA_MAX_SUBSET_BITS");
  CHECK(capped.code == cli::error);
  CHECK(junk.code == cli::error);
}
