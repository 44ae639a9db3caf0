#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "convexa/convexity.hpp"
#include "convexa/decide.hpp"
#include "convexa/embed.hpp"
#include "convexa/errors.hpp"
#include "convexa/identities.hpp"
#include "convexa/jdep.hpp"
#include "convexa/lattice.hpp"
#include "convexa/poset_io.hpp"

namespace convexa::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::uint64_t seed = 2024;
  std::ostringstream out;
  int code = ok;

  CoLatticeLimits limits() const {
    CoLatticeLimits lim;
    if (const char* env = std::getenv("CONVEXA_MAX_SUBSET_BITS")) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (!*env || *end || v == 0 || v > 63) throw Usage(std::string("CONVEXA_MAX_SUBSET_BITS: bad value '") + env + "'");
      lim.max_points = v;
    }
    return lim;
  }

  void header(const std::string& cmd, const std::string& extra = "") {
    out << "# convexa " << cmd << " seed=" << seed << " max_subset_bits=" << limits().max_points;
    if (!extra.empty()) out << ' ' << extra;
    out << '\n';
  }
};

std::string fmt_set(const ElementSet& s) {
  std::string r = "{";
  bool first = true;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    if (!first) r += ',';
    r += std::to_string(i);
    first = false;
  }
  return r + "}";
}

std::string fmt_list(const std::vector<Element>& v, const FiniteLattice* l = nullptr) {
  std::string r = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) r += ',';
    r += l ? l->label(v[i]) : std::to_string(v[i]);
  }
  return r + "}";
}

std::string fmt_witness(const std::vector<std::string>& names, const std::vector<Element>& w,
                        const FiniteLattice& l) {
  std::string r;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) r += ' ';
    r += (i < names.size() ? names[i] : "v" + std::to_string(i)) + "=" + l.label(w[i]);
  }
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Lattice from a lattice file, or Co(P) from a poset file.
FiniteLattice lattice_or_co(const std::string& path, const Context& ctx, std::string* kind = nullptr) {
  auto f = read_relation_file(path);
  if (kind) *kind = f.kind;
  if (f.kind == "lattice") return read_lattice_file(path);
  return co_lattice(read_poset_file(path), ctx.limits()).lattice;
}

// ---- commands ----------------------------------------------------------

void cmd_co(Context& ctx, const std::string& file) {
  Poset p = read_poset_file(file);
  CoLattice co = co_lattice(p, ctx.limits());
  ctx.header("co", file);
  ctx.out << "# |P|=" << p.size() << " |Co(P)|=" << co.lattice.size() << '\n';
  write_lattice(ctx.out, co.lattice);
}

void cmd_check(Context& ctx, const std::string& file, std::uint64_t budget, bool fast_only) {
  FiniteLattice l = lattice_or_co(file, ctx);
  ctx.header("check", file + " budget=" + std::to_string(budget));
  ctx.out << "# |L|=" << l.size() << " |J(L)|=" << join_irreducibles(l).jirr.size() << '\n';
  auto line = [&](const AxiomReport& r) {
    ctx.out << "AXIOM " << to_string(r.tag) << (r.holds ? " HOLDS" : " FAILS");
    if (r.witness) ctx.out << ' ' << fmt_witness(r.variables, *r.witness, l);
    ctx.out << '\n';
  };
  bool fast = true;
  for (AxiomTag t : {AxiomTag::D2Dj, AxiomTag::Sj, AxiomTag::Uj, AxiomTag::Bj}) {
    auto r = satisfies_jirr_axiom(l, t);
    fast = fast && r.holds;
    line(r);
  }
  auto verdict = [](bool b) { return b ? "IN-SUB" : "NOT-IN-SUB"; };
  bool in_sub = fast;
  if (!fast_only) {
    CheckOptions opts;
    opts.budget = budget;
    bool brute = true;
    for (AxiomTag t : {AxiomTag::S, AxiomTag::U, AxiomTag::B}) {
      auto r = satisfies_identity(l, t, opts);
      brute = brute && r.holds;
      line(r);
    }
    ctx.out << "fast=" << verdict(fast) << " brute=" << verdict(brute)
            << " agreement=" << (fast == brute ? "true" : "false") << '\n';
    in_sub = fast && brute;
    if (fast != brute) ctx.code = fails;
  }
  ctx.out << verdict(in_sub) << '\n';
  if (!in_sub) ctx.code = fails;
}

void cmd_report(Context& ctx, const std::string& file) {
  FiniteLattice l = lattice_or_co(file, ctx);
  JoinDependency jd(l);
  const auto& J = jd.jirr().jirr;
  ctx.header("report", file);
  ctx.out << "size " << l.size() << '\n';
  ctx.out << "jirr " << J.size() << ' ' << fmt_list(J, &l) << '\n';
  for (Element p : J)
    if (!jd.dependents(p).empty()) ctx.out << "D " << l.label(p) << " -> " << fmt_list(jd.dependents(p), &l) << '\n';
  ctx.out << "D-pairs " << jd.pairs().size() << '\n';
  if (jd.has_cycle())
    ctx.out << "D-cycle " << fmt_list(*jd.cycle(), &l) << '\n';
  else
    ctx.out << "D-longest-path " << jd.longest_path() << '\n';
  ctx.out << (jd.in_sub() ? "IN-SUB" : "NOT-IN-SUB") << '\n';
  if (!jd.in_sub()) return;
  for (Element p : J) {
    if (jd.dependents(p).empty()) continue;
    auto ub = jd.udav_bond_partition(p);
    ctx.out << "UB " << l.label(p) << " A=" << fmt_list(ub.A, &l) << " B=" << fmt_list(ub.B, &l) << '\n';
  }
  for (auto [a, b] : jd.pairs()) ctx.out << "C " << l.label(a) << ' ' << l.label(b) << " = " << fmt_list(jd.c_set(a, b), &l) << '\n';
  auto tracks = jd.stirlitz_tracks(3);
  ctx.out << "tracks<=3 " << tracks.size() << '\n';
}

std::vector<std::string> r_labels(const FiniteLattice& l, const RPoset& r) {
  std::vector<std::string> out;
  for (const auto& pt : r.points) {
    if (pt.kind == RPoint::Kind::zero)
      out.push_back("<" + l.label(pt.a) + ">");
    else
      out.push_back("<" + l.label(pt.a) + "," + l.label(pt.b) + (pt.kind == RPoint::Kind::plus ? ",+>" : ",->"));
  }
  return out;
}

std::vector<std::string> gamma_labels(const FiniteLattice& l, const GammaPoset& g) {
  std::vector<std::string> out;
  for (const auto& s : g.seqs) {
    std::string x = "[";
    for (std::size_t i = 0; i < s.size(); ++i) x += (i ? "." : "") + l.label(s[i]);
    out.push_back(x + "]");
  }
  return out;
}

PartitionFlips to_flips(const std::vector<unsigned>& v) { return {v.begin(), v.end()}; }

void cmd_embed(Context& ctx, const std::string& file, const std::vector<unsigned>& flips, bool show_map) {
  FiniteLattice l = lattice_or_co(file, ctx);
  JoinDependency jd(l);
  ctx.header("embed", file + " flips=" + fmt_list(to_flips(flips)));
  if (!jd.in_sub()) {
    auto r = satisfies_SUB_fast(l);
    ctx.out << "NOT-IN-SUB AXIOM " << to_string(r.tag) << " FAILS\n";
    ctx.code = fails;
    return;
  }
  RPoset r = build_R(jd, to_flips(flips));
  write_relation(ctx.out, "poset", r.order, r_labels(l, r));
  const std::size_t bound = size_bound(jd.jirr().jirr.size());
  bool verified = true;
  std::string why;
  try {
    EmbeddingResult e = phi(l, r);
    if (show_map)
      for (Element x = 0; x < l.size(); ++x) ctx.out << "phi " << l.label(x) << " = " << fmt_set(e.map[x]) << '\n';
  } catch (const Error& e) {
    verified = false;
    why = e.what();
  }
  if (!r.shortcuts.empty()) ctx.out << "# prec pairs implied by longer chains: " << r.shortcuts.size() << '\n';
  if (!why.empty()) ctx.out << "# " << why << '\n';
  ctx.out << "|R|=" << r.points.size() << " bound=" << bound << " verified=" << (verified ? "true" : "false") << '\n';
  if (!verified || r.points.size() > bound) ctx.code = fails;
}

void cmd_gamma(Context& ctx, const std::string& file, const std::vector<unsigned>& flips, std::size_t depth_cap,
               std::size_t max_points, bool show_map) {
  FiniteLattice l = lattice_or_co(file, ctx);
  JoinDependency jd(l);
  ctx.header("gamma", file + " max_points=" + std::to_string(max_points) +
                          (depth_cap ? " depth_cap=" + std::to_string(depth_cap) : ""));
  if (!jd.in_sub()) {
    ctx.out << "NOT-IN-SUB\n";
    ctx.code = fails;
    return;
  }
  if (jd.has_cycle()) {
    ctx.out << "DCycleError: D-cycle " << fmt_list(*jd.cycle(), &l) << '\n';
    ctx.code = fails;
    return;
  }
  GammaOptions opts;
  if (depth_cap) opts.depth_cap = depth_cap;
  opts.max_points = max_points;
  GammaPoset g = build_Gamma(jd, opts, to_flips(flips));
  write_relation(ctx.out, "poset", g.order, gamma_labels(l, g));
  bool verified = true;
  std::string why;
  try {
    EmbeddingResult e = psi(l, g);
    if (show_map)
      for (Element x = 0; x < l.size(); ++x) ctx.out << "psi " << l.label(x) << " = " << fmt_set(e.map[x]) << '\n';
  } catch (const Error& e) {
    verified = false;
    why = e.what();
  }
  RPoset r = build_R(jd, to_flips(flips));
  bool proj = !projection_violation(g, r).has_value();
  if (!why.empty()) ctx.out << "# " << why << '\n';
  const bool tree = is_tree_like(g.order);
  ctx.out << "|Gamma|=" << g.seqs.size() << " tree-like=" << (tree ? "true" : "false")
          << " verified=" << (verified ? "true" : "false") << " projection=" << (proj ? "ok" : "broken") << '\n';
  if (!verified || !proj || !tree) ctx.code = fails;
}

void cmd_crown(Context& ctx, const std::string& file, std::uint64_t budget) {
  Poset p = read_poset_file(file);
  ctx.header("crown", file + " budget=" + std::to_string(budget));
  auto s = search_crown(p, budget);
  if (s.crown) {
    ctx.out << "CROWN n=" << s.crown->n();
    for (auto [a, b] : s.crown->pairs) ctx.out << " (" << a << ',' << b << ')';
    ctx.out << '\n';
    ctx.code = fails;
  } else if (!s.exhausted) {
    ctx.out << "UNKNOWN nodes=" << s.nodes << '\n';
    ctx.code = error;
  } else {
    ctx.out << "CROWN-FREE nodes=" << s.nodes << '\n';
  }
}

void cmd_treelike(Context& ctx, const std::string& file) {
  Poset p = read_poset_file(file);
  ctx.header("treelike", file);
  if (auto c = find_cover_cycle(p)) {
    ctx.out << "NOT-TREE-LIKE cycle " << fmt_list(*c) << '\n';
    ctx.code = fails;
  } else {
    ctx.out << "TREE-LIKE\n";
  }
}

void cmd_theta(Context& ctx, const std::string& file, std::uint64_t samples, std::uint64_t budget) {
  std::string kind;
  FiniteLattice l = lattice_or_co(file, ctx, &kind);
  ctx.header("theta", file + " samples=" + std::to_string(samples) + " budget=" + std::to_string(budget));
  ctx.out << "# " << (kind == "poset" ? "Co(P)" : "L") << " |L|=" << l.size() << '\n';
  static const std::vector<std::string> names{"a", "b", "c", "a'", "b'", "c'"};
  std::optional<std::vector<Element>> bad;
  if (samples) {
    auto s = sample_theta(l, samples, ctx.seed);
    bad = s.counterexample;
    ctx.out << "samples=" << s.samples << '\n';
  } else {
    CheckOptions opts;
    opts.budget = budget;
    bad = check_theta(l, opts).witness;
  }
  if (bad) {
    ctx.out << "THETA FAILS " << fmt_witness(names, *bad, l) << '\n';
    ctx.code = fails;
  } else {
    ctx.out << "THETA HOLDS\n";
  }
}

struct DecideArgs {
  std::string term_s, term_t, s, t, identity, quasi, filter = "all", mode = "witness";
  std::size_t max_size = 0, cap = 7;
  std::uint64_t budget = 1'000'000'000;
};

void print_assignment(Context& ctx, const std::vector<std::string>& vars, const std::vector<ElementSet>& a) {
  for (std::size_t i = 0; i < vars.size() && i < a.size(); ++i) ctx.out << vars[i] << " = " << fmt_set(a[i]) << '\n';
}

void cmd_decide(Context& ctx, const DecideArgs& d) {
  if (!d.quasi.empty()) {
    QuasiIdentity q = d.quasi == "theta" ? theta_quasi_identity()
                                         : parse_quasi_identity(slurp(d.quasi), d.quasi);
    PosetFilter f = parse_poset_filter(d.filter);
    std::size_t max_size = d.max_size ? d.max_size : 4;
    ctx.header("decide", "quasi=" + d.quasi + " filter=" + to_string(f) + " max_size=" + std::to_string(max_size) +
                             " budget=" + std::to_string(d.budget));
    auto r = search_quasi_counterexample(q, max_size, f, d.budget, d.cap);
    ctx.out << "# posets=" << r.posets_checked << " nodes=" << r.nodes << '\n';
    if (r.poset) {
      ctx.out << "FOUND\n";
      write_poset(ctx.out, *r.poset);
      print_assignment(ctx, q.variables, r.assignment);
      ctx.code = fails;
    } else if (r.budget_exceeded) {
      ctx.out << "BUDGET-EXCEEDED\n";
      ctx.code = error;
    } else {
      ctx.out << "ABSENT\n";
    }
    return;
  }
  std::optional<Term> s, t;
  if (!d.identity.empty()) {
    Identity id = builtin_identity(d.identity);
    s = id.lhs;
    t = id.rhs;
  }
  if (!d.term_s.empty()) s = parse_term(slurp(d.term_s), d.term_s);
  if (!d.term_t.empty()) t = parse_term(slurp(d.term_t), d.term_t);
  if (!d.s.empty()) s = parse_term(d.s, "--s");
  if (!d.t.empty()) t = parse_term(d.t, "--t");
  if (!s || !t) throw Usage("decide: need both sides (--identity, --term-s/--term-t or --s/--t) or --quasi");
  DecideOptions opts;
  if (d.max_size) opts.max_size = d.max_size;
  opts.cap = d.cap;
  if (d.mode == "witness")
    opts.mode = BoundMode::witness;
  else if (d.mode == "node-count")
    opts.mode = BoundMode::node_count;
  else
    throw Usage("decide: unknown --mode '" + d.mode + "'");
  ctx.header("decide", "mode=" + d.mode + " cap=" + std::to_string(d.cap) +
                           (d.max_size ? " max_size=" + std::to_string(d.max_size) : ""));
  ctx.out << "# s = " << to_sexpr(*s) << "\n# t = " << to_sexpr(*t) << '\n';
  auto r = decide_identity_in_SUB(*s, *t, opts);
  if (r.valid) {
    ctx.out << "VALID bound=" << r.bound << " posets=" << r.posets_checked << '\n';
    return;
  }
  ctx.out << "INVALID bound=" << r.bound << " posets=" << r.posets_checked << " direction=" << r.failing_direction
          << '\n';
  write_poset(ctx.out, *r.witness);
  print_assignment(ctx, r.variables, r.assignment);
  ctx.code = fails;
}

void cmd_catalog(Context& ctx, std::size_t k, std::size_t cap) {
  auto cat = enumerate_posets(k, cap);
  ctx.header("catalog", "k=" + std::to_string(k) + " cap=" + std::to_string(cap));
  ctx.out << "# count=" << cat.posets.size() << '\n';
  for (std::size_t i = 0; i < cat.posets.size(); ++i) {
    ctx.out << "# poset " << i << '\n';
    write_poset(ctx.out, cat.posets[i]);
  }
}

// (|J(L)|, |R|) over Co(P) for small P and random 3-generated sublattices.
void cmd_xi(Context& ctx, std::size_t max_points, std::size_t subs) {
  ctx.header("xi", "max_points=" + std::to_string(max_points) + " subs=" + std::to_string(subs));
  std::vector<FiniteLattice> pool;
  for (std::size_t k = 1; k <= max_points; ++k)
    for (const auto& p : enumerate_posets(k).posets) pool.push_back(co_lattice(p, ctx.limits()).lattice);
  std::mt19937_64 rng(ctx.seed);
  const std::size_t base = pool.size();
  for (std::size_t i = 0; i < subs && base; ++i) {
    const auto& l = pool[rng() % base];
    std::vector<Element> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(static_cast<Element>(rng() % l.size()));
    pool.push_back(sublattice(l, gens).lattice);
  }
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> by_j;  // |J| -> (count, max |R|)
  for (const auto& l : pool) {
    JoinDependency jd(l);
    if (!jd.in_sub()) continue;
    auto& slot = by_j[jd.jirr().jirr.size()];
    ++slot.first;
    slot.second = std::max(slot.second, build_R(jd).points.size());
  }
  for (auto [j, v] : by_j)
    ctx.out << "J=" << j << " lattices=" << v.first << " max|R|=" << v.second << " bound=" << size_bound(j) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  CLI::App app{"Finite posets, lattices of convex subsets and the variety SUB", "convexa"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", ctx.seed, "Seed for every random choice")->capture_default_str();

  std::string file;
  std::uint64_t budget = 1'000'000'000, crown_budget = UINT64_MAX, samples = 0;
  bool fast_only = false, show_map = true;
  std::vector<unsigned> flips;
  std::size_t depth_cap = 0, max_points = 200'000, k = 0, cap = 7, subs = 200;
  DecideArgs d;

  auto* co = app.add_subcommand("co", "Print Co(P) as a lattice file");
  co->add_option("poset", file)->required();

  auto* check = app.add_subcommand("check", "Fast and brute-force SUB axiom report");
  check->add_option("lattice", file, "Lattice file (a poset file means Co(P))")->required();
  check->add_option("--budget", budget, "Assignment budget for the brute-force identities");
  check->add_flag("--fast-only", fast_only, "Skip the brute-force identities");

  auto* report = app.add_subcommand("report", "Join-irreducibles, D relation and partitions");
  report->add_option("lattice", file)->required();

  auto* embed = app.add_subcommand("embed", "Build R, the map phi, and verify");
  embed->add_option("lattice", file)->required();
  embed->add_option("--flip", flips, "Swap the Udav-Bond sides at these elements");
  embed->add_flag("!--no-map", show_map, "Omit the element images");

  auto* gamma = app.add_subcommand("gamma", "Build the tree-like poset, the map psi, and verify");
  gamma->add_option("lattice", file)->required();
  gamma->add_option("--flip", flips);
  gamma->add_option("--depth-cap", depth_cap, "Longest sequence allowed");
  gamma->add_option("--max-points", max_points);
  gamma->add_flag("!--no-map", show_map);

  auto* crown = app.add_subcommand("crown", "Search a poset for a crown");
  crown->add_option("poset", file)->required();
  crown->add_option("--budget", crown_budget, "Search node budget");

  auto* treelike = app.add_subcommand("treelike", "Is the cover graph a forest");
  treelike->add_option("poset", file)->required();

  auto* theta = app.add_subcommand("theta", "Check the quasi-identity theta");
  theta->add_option("file", file, "Lattice file, or poset file for Co(P)")->required();
  theta->add_option("--samples", samples, "Random premise-satisfying samples instead of the full sweep");
  theta->add_option("--budget", budget);

  auto* decide = app.add_subcommand("decide", "Decide an identity in SUB or search for a quasi-identity failure");
  decide->add_option("--term-s", d.term_s, "File holding the left term");
  decide->add_option("--term-t", d.term_t, "File holding the right term");
  decide->add_option("--s", d.s, "Left term, inline");
  decide->add_option("--t", d.t, "Right term, inline");
  decide->add_option("--identity", d.identity, "Built-in identity: S U B SD2 D2D DIST MOD");
  decide->add_option("--quasi", d.quasi, "theta, or a file with a quasi-identity");
  decide->add_option("--filter", d.filter, "all, crown-free or has-crown");
  decide->add_option("--max-size", d.max_size, "Largest poset searched");
  decide->add_option("--cap", d.cap, "Largest poset size allowed at all");
  decide->add_option("--mode", d.mode, "witness or node-count");
  decide->add_option("--budget", d.budget, "Node budget for quasi-identity search");

  auto* catalog = app.add_subcommand("catalog", "All posets of a size up to isomorphism");
  catalog->add_option("k", k)->required();
  catalog->add_option("--cap", cap);

  auto* xi = app.add_subcommand("xi", "Largest |R| seen per |J(L)| (experiment)");
  xi->add_option("max-points", k, "Posets up to this size")->default_val(4);
  xi->add_option("--subs", subs, "Random 3-generated sublattices added");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "convexa: " << e.what() << '\n';
    return error;
  }

  try {
    if (*co) cmd_co(ctx, file);
    else if (*check) cmd_check(ctx, file, budget, fast_only);
    else if (*report) cmd_report(ctx, file);
    else if (*embed) cmd_embed(ctx, file, flips, show_map);
    else if (*gamma) cmd_gamma(ctx, file, flips, depth_cap, max_points, show_map);
    else if (*crown) cmd_crown(ctx, file, crown_budget);
    else if (*treelike) cmd_treelike(ctx, file);
    else if (*theta) cmd_theta(ctx, file, samples, budget);
    else if (*decide) cmd_decide(ctx, d);
    else if (*catalog) cmd_catalog(ctx, k, cap);
    else if (*xi) cmd_xi(ctx, k, subs);
  } catch (const ParseError& e) {
    err << "convexa: " << e.what() << '\n';
    return error;
  } catch (const Usage& e) {
    err << "convexa: " << e.what() << '\n';
    return error;
  } catch (const SizeError& e) {
    err << "convexa: " << (file.empty() ? "" : file + ": ") << "SizeError: " << e.what() << '\n';
    return error;
  } catch (const BudgetError& e) {
    err << "convexa: " << (file.empty() ? "" : file + ": ") << "BudgetError: " << e.what() << '\n';
    return error;
  } catch (const DepthCapExceeded& e) {
    err << "convexa: " << file << ": DepthCapExceeded: " << e.what() << '\n';
    return error;
  } catch (const UnknownTag& e) {
    err << "convexa: UnknownTag: " << e.what() << '\n';
    return error;
  } catch (const Error& e) {
    // Verification failures and other library errors: a failing verdict.
    out << ctx.out.str();
    err << "convexa: " << e.what() << '\n';
    return fails;
  }
  out << ctx.out.str();
  out.flush();
  return ctx.code;
}

}  // namespace convexa::cli
