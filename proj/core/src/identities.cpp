#include "convexa/identities.hpp"

#include <array>
#include <map>
#include <random>

#include "convexa/errors.hpp"

namespace convexa {

namespace {

const std::array<std::pair<AxiomTag, const char*>, 10> kTagNames{{
    {AxiomTag::S, "S"},
    {AxiomTag::U, "U"},
    {AxiomTag::B, "B"},
    {AxiomTag::SD2, "SD2"},
    {AxiomTag::D2D, "D2D"},
    {AxiomTag::Sj, "Sj"},
    {AxiomTag::Uj, "Uj"},
    {AxiomTag::Bj, "Bj"},
    {AxiomTag::D2Dj, "D2Dj"},
    {AxiomTag::theta, "theta"},
}};

Term v(const char* name) { return Term::var(name); }

bool is_identity_tag(AxiomTag t) {
  return t == AxiomTag::S || t == AxiomTag::U || t == AxiomTag::B || t == AxiomTag::SD2 ||
         t == AxiomTag::D2D;
}

std::vector<std::string> jirr_variables(AxiomTag tag) {
  switch (tag) {
    case AxiomTag::Sj: return {"a", "b", "b0", "b1", "c"};
    case AxiomTag::Uj: return {"x", "x0", "x1", "x2"};
    case AxiomTag::Bj: return {"x", "a0", "a1", "b0", "b1"};
    case AxiomTag::D2Dj: return {"p", "a", "b", "c"};
    default: throw UnknownTag(to_string(tag) + " is not a join-irreducible axiom");
  }
}

// The conditions on one tuple; `lower` gives the lower cover of a jirr.
struct JirrAxioms {
  const FiniteLattice& l;
  const JirrInfo& info;

  bool le(Element x, Element y) const { return l.leq(x, y); }
  Element j(Element x, Element y) const { return l.join(x, y); }
  Element low(Element x) const { return *info.lower_cover[x]; }

  bool sj_violated(Element a, Element b, Element b0, Element b1, Element c) const {
    if (a == b || !le(a, j(b, c)) || !le(b, j(b0, b1))) return false;
    if (le(a, j(low(b), c))) return false;
    for (Element bi : {b0, b1})
      if (le(b, j(a, bi)) && le(a, j(bi, c))) return false;
    return true;
  }
  bool uj_violated(Element x, Element x0, Element x1, Element x2) const {
    if (!le(x, j(x0, x1)) || !le(x, j(x0, x2)) || !le(x, j(x1, x2))) return false;
    return !le(x, x0) && !le(x, x1) && !le(x, x2);
  }
  bool bj_violated(Element x, Element a0, Element a1, Element b0, Element b1) const {
    if (!le(x, j(a0, a1)) || !le(x, j(b0, b1))) return false;
    if (le(x, a0) || le(x, a1) || le(x, b0) || le(x, b1)) return false;
    if (le(x, j(a0, b0)) && le(x, j(a1, b1))) return false;
    if (le(x, j(a0, b1)) && le(x, j(a1, b0))) return false;
    return true;
  }
  bool d2dj_violated(Element p, Element a, Element b, Element c) const {
    if (!le(p, j(j(a, b), c))) return false;
    return !le(p, j(a, b)) && !le(p, j(a, c)) && !le(p, j(b, c));
  }
};

// Fixed-width bit masks over lattice elements.
template <std::size_t W>
struct Mask {
  std::array<std::uint64_t, W> w{};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return w[i >> 6] >> (i & 63) & 1; }
  Mask operator&(const Mask& o) const {
    Mask r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  Mask& operator&=(const Mask& o) {
    for (std::size_t k = 0; k < W; ++k) w[k] &= o.w[k];
    return *this;
  }
  Mask andnot(const Mask& o) const {
    Mask r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  bool none() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  // Lowest set bit at or after i, or npos.
  std::size_t next(std::size_t i) const {
    for (std::size_t k = i >> 6; k < W; ++k) {
      std::uint64_t x = w[k];
      if (k == (i >> 6)) x &= ~std::uint64_t{0} << (i & 63);
      if (x) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(x));
    }
    return npos;
  }
  // The r-th set bit (0-based).
  std::size_t select(std::size_t r) const {
    for (std::size_t k = 0; k < W; ++k) {
      std::size_t c = static_cast<std::size_t>(__builtin_popcountll(w[k]));
      if (r < c) {
        std::uint64_t x = w[k];
        for (std::size_t s = 0; s < r; ++s) x &= x - 1;
        return k * 64 + static_cast<std::size_t>(__builtin_ctzll(x));
      }
      r -= c;
    }
    return npos;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Tables for theta: up(x), down(x), cov(y, x) = {w : y <= w | x} and
// mb(x, y) = {w : x & w <= y}.
template <std::size_t W>
struct ThetaTables {
  std::size_t n;
  std::vector<Mask<W>> up, down, cov, mb;

  explicit ThetaTables(const FiniteLattice& l) : n(l.size()), up(n), down(n), cov(n * n), mb(n * n) {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (l.leq(x, y)) {
          up[x].set(y);
          down[y].set(x);
        }
    for (Element y = 0; y < n; ++y)
      for (Element x = 0; x < n; ++x)
        for (Element w = 0; w < n; ++w) {
          if (l.leq(y, l.join(w, x))) cov[y * n + x].set(w);
          if (l.leq(l.meet(y, w), x)) mb[y * n + x].set(w);
        }
  }
  const Mask<W>& covm(Element y, Element x) const { return cov[y * n + x]; }
  const Mask<W>& meet_below(Element x, Element y) const { return mb[x * n + y]; }
};

template <std::size_t W>
AxiomReport theta_exhaustive(const FiniteLattice& l, const CheckOptions& opts) {
  AxiomReport rep;
  rep.tag = AxiomTag::theta;
  rep.variables = theta_quasi_identity().variables;
  const std::size_t n = l.size();
  ThetaTables<W> t(l);
  std::uint64_t nodes = 0;
  auto tick = [&] {
    if (++nodes > opts.budget)
      throw BudgetError("theta sweep exceeded its budget of " + std::to_string(opts.budget) + " nodes");
  };
  using M = Mask<W>;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) {
        tick();
        Element k = l.join(l.join(l.meet(a, b), l.meet(a, c)), l.meet(b, c));
        M a_cand = (t.up[k] & t.covm(a, b) & t.covm(a, c)).andnot(t.up[a]);
        M b_base = t.up[k] & t.covm(b, a) & t.covm(b, c);
        M c_base = t.up[k] & t.covm(c, a) & t.covm(c, b);
        for (std::size_t ap = a_cand.next(0); ap != M::npos; ap = a_cand.next(ap + 1)) {
          tick();
          Element ap_e = static_cast<Element>(ap);
          Element aa = l.meet(a, ap_e);
          M b_cand = b_base & t.up[aa] & t.meet_below(b, ap_e);
          M c_mid = c_base & t.up[aa] & t.meet_below(c, ap_e);
          for (std::size_t bp = b_cand.next(0); bp != M::npos; bp = b_cand.next(bp + 1)) {
            tick();
            Element bp_e = static_cast<Element>(bp);
            M c_cand = c_mid & t.up[l.meet(b, bp_e)] & t.meet_below(c, bp_e);
            std::size_t cp = c_cand.next(0);
            if (cp != M::npos) {
              rep.holds = false;
              rep.witness = std::vector<Element>{a, b, c, ap_e, bp_e, static_cast<Element>(cp)};
              rep.nodes = nodes;
              return rep;
            }
          }
        }
      }
  rep.nodes = nodes;
  return rep;
}

template <std::size_t W>
ThetaSampling theta_sample(const FiniteLattice& l, std::uint64_t samples, std::uint64_t seed) {
  using M = Mask<W>;
  ThetaSampling out;
  out.seed = seed;
  const std::size_t n = l.size();
  ThetaTables<W> t(l);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  auto pick = [&](const M& m) -> std::size_t {
    std::size_t c = m.count();
    if (c == 0) return M::npos;
    return m.select(std::uniform_int_distribution<std::size_t>(0, c - 1)(rng));
  };
  const std::uint64_t max_attempts = samples * 100 + 1000;
  for (std::uint64_t attempt = 0; attempt < max_attempts && out.samples < samples; ++attempt) {
    Element ap = static_cast<Element>(any(rng)), bp = static_cast<Element>(any(rng)),
            cp = static_cast<Element>(any(rng));
    Element m = l.meet(l.meet(ap, bp), cp);
    M a_set = t.meet_below(ap, m);
    std::size_t a = M::npos;
    if (rng() & 1) a = pick(a_set.andnot(t.down[ap]));
    if (a == M::npos) a = pick(a_set);
    if (a == M::npos) continue;
    Element ae = static_cast<Element>(a);
    M b_set = t.meet_below(bp, m) & t.meet_below(ae, m) & t.covm(ae, ap) & t.down[l.join(bp, ae)];
    std::size_t b = pick(b_set);
    if (b == M::npos) continue;
    Element be = static_cast<Element>(b);
    M c_set = t.meet_below(cp, m) & t.meet_below(ae, m) & t.meet_below(be, m) & t.covm(ae, ap) &
              t.covm(be, bp) & t.down[l.join(cp, ae)] & t.down[l.join(cp, be)];
    std::size_t c = pick(c_set);
    if (c == M::npos) continue;
    ++out.samples;
    if (!l.leq(ae, ap)) {
      out.counterexample = std::vector<Element>{ae, be, static_cast<Element>(c), ap, bp, cp};
      return out;
    }
  }
  return out;
}

}  // namespace

std::string to_string(AxiomTag tag) {
  for (auto& [t, name] : kTagNames)
    if (t == tag) return name;
  throw UnknownTag("unknown axiom tag");
}

AxiomTag parse_axiom_tag(std::string_view name) {
  for (auto& [t, s] : kTagNames)
    if (name == s) return t;
  throw UnknownTag("unknown axiom tag '" + std::string(name) + "'");
}

Identity builtin_identity(std::string_view tag) {
  if (tag == "S") {
    Term a = v("a"), b = v("b"), b0 = v("b0"), b1 = v("b1"), c = v("c");
    Term bp = b & (b0 | b1);
    auto part = [&](const Term& bi) { return a & (bi | c) & ((bp & (a | bi)) | c); };
    return {"S", {"a", "b", "b0", "b1", "c"}, a & (bp | c), (a & bp) | part(b0) | part(b1)};
  }
  if (tag == "U") {
    Term x = v("x"), x0 = v("x0"), x1 = v("x1"), x2 = v("x2");
    return {"U",
            {"x", "x0", "x1", "x2"},
            x & (x0 | x1) & (x1 | x2) & (x0 | x2),
            (x & x0 & (x1 | x2)) | (x & x1 & (x0 | x2)) | (x & x2 & (x0 | x1))};
  }
  if (tag == "B") {
    Term x = v("x"), a0 = v("a0"), a1 = v("a1"), b0 = v("b0"), b1 = v("b1");
    Term as = a0 | a1, bs = b0 | b1;
    Term lhs = x & as & bs;
    Term rhs = ((x & a0 & bs) | (x & b0 & as)) | ((x & a1 & bs) | (x & b1 & as));
    rhs = rhs | (x & as & bs & (a0 | b0) & (a1 | b1)) | (x & as & bs & (a0 | b1) & (a1 | b0));
    return {"B", {"x", "a0", "a1", "b0", "b1"}, lhs, rhs};
  }
  if (tag == "SD2") {
    Term x = v("x"), y = v("y"), z = v("z");
    return {"SD2", {"x", "y", "z"}, x | (y & z), x | (y & (x | (z & (x | y))))};
  }
  if (tag == "D2D") {
    Term a = v("a"), x = v("x"), y = v("y"), z = v("z");
    return {"D2D", {"a", "x", "y", "z"}, a & (x | y | z), (a & (x | y)) | (a & (x | z)) | (a & (y | z))};
  }
  if (tag == "DIST") {
    Term x = v("x"), y = v("y"), z = v("z");
    return {"DIST", {"x", "y", "z"}, x & (y | z), (x & y) | (x & z)};
  }
  if (tag == "MOD") {
    Term x = v("x"), y = v("y"), z = v("z");
    return {"MOD", {"x", "y", "z"}, x & (y | (x & z)), (x & y) | (x & z)};
  }
  throw UnknownTag("no built-in identity '" + std::string(tag) + "'");
}

QuasiIdentity theta_quasi_identity() {
  Term a = v("a"), b = v("b"), c = v("c"), ap = v("a'"), bp = v("b'"), cp = v("c'");
  std::vector<Inequality> premises{
      {a, (ap | b) & (ap | c)},
      {b, (bp | a) & (bp | c)},
      {c, (cp | a) & (cp | b)},
      {(ap & a) | (bp & b) | (cp & c) | (a & b) | (a & c) | (b & c), ap & bp & cp},
  };
  return QuasiIdentity{"theta", {"a", "b", "c", "a'", "b'", "c'"}, std::move(premises), {a, ap}};
}

std::variant<Identity, QuasiIdentity> builtin_term(std::string_view tag) {
  if (tag == "theta") return theta_quasi_identity();
  return builtin_identity(tag);
}

AxiomReport satisfies_identity(const FiniteLattice& l, AxiomTag tag, const CheckOptions& opts) {
  if (!is_identity_tag(tag)) throw UnknownTag(to_string(tag) + " is not an identity");
  Identity id = builtin_identity(to_string(tag));
  CheckResult r = check_identity(l, id, opts);
  AxiomReport rep;
  rep.tag = tag;
  rep.holds = r.holds;
  rep.variables = id.variables;
  rep.witness = r.counterexample;
  rep.nodes = r.nodes;
  return rep;
}

AxiomReport satisfies_jirr_axiom(const FiniteLattice& l, AxiomTag tag) {
  AxiomReport rep;
  rep.tag = tag;
  rep.variables = jirr_variables(tag);
  JirrInfo info = join_irreducibles(l);
  JirrAxioms ax{l, info};
  const auto& J = info.jirr;
  auto fail = [&](std::vector<Element> w) {
    rep.holds = false;
    rep.witness = std::move(w);
    return rep;
  };
  std::uint64_t nodes = 0;
  switch (tag) {
    case AxiomTag::Sj:
      for (Element a : J)
        for (Element b : J)
          for (Element b0 : J)
            for (Element b1 : J) {
              if (!l.leq(b, l.join(b0, b1))) continue;
              for (Element c : J) {
                ++nodes;
                if (ax.sj_violated(a, b, b0, b1, c)) return fail({a, b, b0, b1, c});
              }
            }
      break;
    case AxiomTag::Uj:
      for (Element x : J)
        for (Element x0 : J)
          for (Element x1 : J) {
            if (!l.leq(x, l.join(x0, x1))) continue;
            for (Element x2 : J) {
              ++nodes;
              if (ax.uj_violated(x, x0, x1, x2)) return fail({x, x0, x1, x2});
            }
          }
      break;
    case AxiomTag::Bj:
      for (Element x : J)
        for (Element a0 : J)
          for (Element a1 : J) {
            if (!l.leq(x, l.join(a0, a1))) continue;
            for (Element b0 : J)
              for (Element b1 : J) {
                ++nodes;
                if (ax.bj_violated(x, a0, a1, b0, b1)) return fail({x, a0, a1, b0, b1});
              }
          }
      break;
    case AxiomTag::D2Dj: {
      const auto n = static_cast<Element>(l.size());
      for (Element p : J)
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) {
            if (l.leq(p, l.join(a, b))) continue;
            for (Element c = 0; c < n; ++c) {
              ++nodes;
              if (ax.d2dj_violated(p, a, b, c)) return fail({p, a, b, c});
            }
          }
      break;
    }
    default:
      throw UnknownTag(to_string(tag) + " is not a join-irreducible axiom");
  }
  rep.nodes = nodes;
  return rep;
}

AxiomReport satisfies_SUB_fast(const FiniteLattice& l) {
  AxiomReport last;
  for (AxiomTag t : {AxiomTag::D2Dj, AxiomTag::Sj, AxiomTag::Uj, AxiomTag::Bj}) {
    last = satisfies_jirr_axiom(l, t);
    if (!last.holds) return last;
  }
  return last;
}

AxiomReport satisfies_SUB_bruteforce(const FiniteLattice& l, const CheckOptions& opts) {
  AxiomReport last;
  for (AxiomTag t : {AxiomTag::S, AxiomTag::U, AxiomTag::B}) {
    last = satisfies_identity(l, t, opts);
    if (!last.holds) return last;
  }
  return last;
}

AxiomReport check_theta(const FiniteLattice& l, const CheckOptions& opts) {
  const std::size_t n = l.size();
  if (assignment_count(n, 3) > opts.budget)
    throw BudgetError("theta sweep needs at least " + std::to_string(n) + "^3 nodes");
  if (n <= 64) return theta_exhaustive<1>(l, opts);
  if (n <= 128) return theta_exhaustive<2>(l, opts);
  if (n <= 256) return theta_exhaustive<4>(l, opts);
  if (n <= 512) return theta_exhaustive<8>(l, opts);
  throw BudgetError("theta sweep is limited to lattices with at most 512 elements");
}

ThetaSampling sample_theta(const FiniteLattice& l, std::uint64_t samples, std::uint64_t seed) {
  const std::size_t n = l.size();
  if (n <= 64) return theta_sample<1>(l, samples, seed);
  if (n <= 128) return theta_sample<2>(l, samples, seed);
  if (n <= 256) return theta_sample<4>(l, samples, seed);
  if (n <= 512) return theta_sample<8>(l, samples, seed);
  throw SizeError("theta sampling is limited to lattices with at most 512 elements");
}

bool witness_violates(const FiniteLattice& l, AxiomTag tag, const std::vector<Element>& w) {
  for (Element x : w)
    if (x >= l.size()) return false;
  if (is_identity_tag(tag)) {
    Identity id = builtin_identity(to_string(tag));
    if (w.size() != id.variables.size()) return false;
    std::map<std::string, Element> a;
    for (std::size_t i = 0; i < w.size(); ++i) a[id.variables[i]] = w[i];
    return eval_term(l, id.lhs, a) != eval_term(l, id.rhs, a);
  }
  if (tag == AxiomTag::theta) {
    QuasiIdentity q = theta_quasi_identity();
    if (w.size() != q.variables.size()) return false;
    std::map<std::string, Element> a;
    for (std::size_t i = 0; i < w.size(); ++i) a[q.variables[i]] = w[i];
    for (const auto& p : q.premises)
      if (!l.leq(eval_term(l, p.lhs, a), eval_term(l, p.rhs, a))) return false;
    return !l.leq(eval_term(l, q.conclusion.lhs, a), eval_term(l, q.conclusion.rhs, a));
  }
  JirrInfo info = join_irreducibles(l);
  JirrAxioms ax{l, info};
  if (w.size() != jirr_variables(tag).size()) return false;
  auto all_jirr = [&](std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i)
      if (!info.is_jirr.test(w[i])) return false;
    return true;
  };
  switch (tag) {
    case AxiomTag::Sj: return all_jirr(5) && ax.sj_violated(w[0], w[1], w[2], w[3], w[4]);
    case AxiomTag::Uj: return all_jirr(4) && ax.uj_violated(w[0], w[1], w[2], w[3]);
    case AxiomTag::Bj: return all_jirr(5) && ax.bj_violated(w[0], w[1], w[2], w[3], w[4]);
    case AxiomTag::D2Dj: return all_jirr(1) && ax.d2dj_violated(w[0], w[1], w[2], w[3]);
    default: return false;
  }
}

}  // namespace convexa
