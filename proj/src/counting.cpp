#include "glc/counting.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "glc/error.hpp"

namespace glc::counting {

using poset::Bits;

namespace {

BigInt power(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_gl(const Context& ctx) {
  if (ctx.flavor() != group::Flavor::GL) throw Error(ErrorCode::WrongFlavor, "needs a GL context");
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    small.push_back(d);
    if (d * d != m) large.push_back(m / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

BigInt q_factorial(int n, int q) {
  if (n < 0) throw Error(ErrorCode::InvalidArgs, "negative n");
  BigInt r = 1, bracket = 0, qi = 1;
  for (int i = 1; i <= n; ++i) {
    bracket += qi;
    qi *= q;
    r *= bracket;
  }
  return r;
}

BigInt q_binomial(int n, int x, int q) {
  if (x < 0 || x > n) throw Error(ErrorCode::InvalidArgs, "q_binomial needs 0 <= x <= n");
  return q_factorial(n, q) / (q_factorial(x, q) * q_factorial(n - x, q));
}

BigInt boolean_index(int n, const std::vector<int>& dims, int q) {
  int sum = 0;
  for (int x : dims) {
    if (x < 1) throw Error(ErrorCode::InvalidArgs, "summand dimensions must be positive");
    sum += x;
  }
  if (dims.empty() || sum != n) throw Error(ErrorCode::InvalidArgs, "summand dimensions must sum to n");
  BigInt r = 1;
  int rest = n, eps = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    r *= q_binomial(rest, dims[i], q);
    rest -= dims[i];
    eps += dims[i] * rest;
  }
  return r * power(q, eps);
}

BigInt flag_count(int n, int q, const std::vector<int>& type) {
  int prev = 0;
  for (int d : type) {
    if (d <= prev || d >= n) throw Error(ErrorCode::InvalidArgs, "flag type must satisfy 0 < d_1 < ... < d_k < n");
    prev = d;
  }
  BigInt r = 1;
  int top = n;
  for (auto it = type.rbegin(); it != type.rend(); ++it) {
    r *= q_binomial(top, *it, q);
    top = *it;
  }
  return r;
}

std::vector<std::vector<std::uint64_t>> ordered_factorizations(std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgs, "m must be positive");
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t rest) {
    if (rest == 1) {
      out.push_back(cur);
      return;
    }
    for (std::uint64_t d : divisors(rest)) {
      if (d < 2) continue;
      cur.push_back(d);
      rec(rest / d);
      cur.pop_back();
    }
  };
  rec(m);
  // The bound m^2 only matters while it fits; beyond 2^32 it cannot fail here.
  if (m < (1ULL << 32) && out.size() > m * m)
    throw Error(ErrorCode::CheckFailed, "more than m^2 ordered factorizations of " + std::to_string(m));
  return out;
}

std::uint64_t count_ordered_factorizations(std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgs, "m must be positive");
  const auto ds = divisors(m);
  std::vector<std::uint64_t> h(ds.size(), 0);
  h[0] = 1;
  for (std::size_t i = 1; i < ds.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ds[i] % ds[j] == 0) h[i] += h[j];
  return h.back();
}

// ---- Decompositions ----------------------------------------------------------

std::vector<Decomposition> enumerate_decompositions(const Context& ctx) {
  const auto& subs = ctx.subspaces();
  const int n = ctx.n();
  std::vector<Decomposition> out;
  std::vector<SubId> cur;
  std::function<void(SubId, const linalg::Subspace&)> rec = [&](SubId from, const linalg::Subspace& sum) {
    if (sum.dim() == n) {
      out.push_back({cur});
      return;
    }
    for (SubId w = from; w < subs.size(); ++w) {
      if (subs[w].dim() == 0) continue;
      linalg::Subspace next = linalg::subspace_sum(sum, subs[w]);
      if (next.dim() != sum.dim() + subs[w].dim()) continue;
      cur.push_back(w);
      rec(w + 1, next);
      cur.pop_back();
    }
  };
  rec(0, subs[ctx.zero_subspace()]);
  return out;
}

std::string to_string(Method m) { return m == Method::BruteForce ? "bruteforce" : "constructive"; }

// ---- Censuses ----------------------------------------------------------------

std::size_t CensusRow::boolean() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const CensusEntry& e) { return e.cls.is_boolean(); }));
}

std::size_t CensusRow::flag() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const CensusEntry& e) { return e.cls.is_chain(); }));
}

namespace {

Census empty_census(const Context& ctx, std::size_t m_max, Method method) {
  Census c;
  c.context = ctx.name();
  c.flavor = ctx.flavor();
  c.n = ctx.n();
  c.q = ctx.field().q();
  c.m_max = m_max;
  c.method = method;
  return c;
}

/// Classifies each candidate and keeps the products of chains, bucketed by index.
void tally(Census& census, std::vector<CensusEntry> candidates) {
  std::map<std::size_t, CensusRow> rows;
  for (auto& e : candidates) {
    const auto s = closure::invariant_lattice(e.h);
    e.cls = poset::classify(s.order);
    if (!e.cls.is_product_of_chains()) continue;
    auto& row = rows[e.index];
    row.m = e.index;
    row.entries.push_back(std::move(e));
  }
  for (auto& [m, row] : rows) {
    std::sort(row.entries.begin(), row.entries.end(),
              [](const CensusEntry& a, const CensusEntry& b) { return a.h < b.h; });
    census.rows.push_back(std::move(row));
  }
}

/// Strict chains 0 < W_1 < ... < W_k < W of subspaces inside W, each listed
/// without W itself.
std::vector<std::vector<SubId>> flags_inside(const Context& ctx, SubId top) {
  const auto& subs = ctx.subspaces();
  std::vector<SubId> below;
  for (SubId w = 0; w < subs.size(); ++w)
    if (subs[w].dim() > 0 && w != top && linalg::subspace_leq(subs[w], subs[top])) below.push_back(w);
  std::vector<std::vector<SubId>> out;
  std::vector<SubId> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    out.push_back(cur);
    for (std::size_t i = from; i < below.size(); ++i) {
      const SubId w = below[i];
      if (!cur.empty() && !(subs[cur.back()].dim() < subs[w].dim() && linalg::subspace_leq(subs[cur.back()], subs[w])))
        continue;
      cur.push_back(w);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

Census census_constructive(const Context& ctx, std::size_t m_max) {
  Census census = empty_census(ctx, m_max, Method::Constructive);
  if (m_max == 0) return census;
  const auto& subs = ctx.subspaces();
  const int q = ctx.field().q();
  std::map<SubId, std::vector<std::vector<SubId>>> flag_cache;
  std::map<std::vector<ElemId>, CensusEntry> found;

  for (const auto& d : enumerate_decompositions(ctx)) {
    std::vector<const std::vector<std::vector<SubId>>*> choices;
    for (SubId w : d.summands) {
      auto it = flag_cache.find(w);
      if (it == flag_cache.end()) it = flag_cache.emplace(w, flags_inside(ctx, w)).first;
      choices.push_back(&it->second);
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      std::vector<SubId> family;
      std::vector<BigInt> y;
      for (std::size_t i = 0; i < choices.size(); ++i) {
        const auto& flag = (*choices[i])[pick[i]];
        std::vector<int> type;
        for (SubId w : flag) {
          family.push_back(w);
          type.push_back(subs[w].dim());
        }
        family.push_back(d.summands[i]);
        y.push_back(flag_count(subs[d.summands[i]].dim(), q, type));
      }
      Subgroup h = group::stab_family_ids(ctx, family);
      const std::size_t idx = group::index(h);
      if (idx <= m_max && !found.count(h.members()))
        found.emplace(h.members(), CensusEntry{h, idx, {}, std::move(y)});

      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }

  std::vector<CensusEntry> candidates;
  for (auto& [members, e] : found) {
    if (!closure::is_closed(e.h)) throw Error(ErrorCode::CheckFailed, "stabilizer intersection is not closed");
    candidates.push_back(std::move(e));
  }
  tally(census, std::move(candidates));
  return census;
}

Census census_bruteforce(const Context& ctx, std::size_t m_max) {
  Census census = empty_census(ctx, m_max, Method::BruteForce);
  if (m_max == 0) return census;
  std::vector<CensusEntry> candidates;
  for (const auto& h : ctx.lattice().subgroups) {
    const std::size_t idx = group::index(h);
    if (idx > m_max || !closure::is_closed(h)) continue;
    candidates.push_back(CensusEntry{h, idx, {}, {}});
  }
  tally(census, std::move(candidates));
  return census;
}

bool census_equal(const Census& a, const Census& b) {
  using Key = std::multiset<std::vector<ElemId>>;
  auto sets = [](const Census& c) {
    std::map<std::size_t, std::array<Key, 3>> out;
    for (const auto& row : c.rows)
      for (const auto& e : row.entries) {
        auto& s = out[row.m];
        s[0].insert(e.h.members());
        if (e.cls.is_boolean()) s[1].insert(e.h.members());
        if (e.cls.is_chain()) s[2].insert(e.h.members());
      }
    return out;
  };
  return sets(a) == sets(b);
}

std::vector<BoundRow> bound_check(const Census& census) {
  std::vector<BoundRow> out;
  for (const auto& row : census.rows) {
    BoundRow r;
    r.m = row.m;
    r.x = row.c();
    r.b = row.boolean();
    r.f = row.flag();
    const BigInt m = row.m;
    const BigInt m4 = m * m * m * m;
    r.pass_b = BigInt(r.b) <= m4;
    r.pass_f = BigInt(r.f) <= m4;
    r.pass_x = BigInt(r.x) <= m4 * m4 * m4;
    out.push_back(r);
  }
  return out;
}

// ---- Cyclic matrices ---------------------------------------------------------

CyclicProportion cyclic_proportion(const Context& ctx) {
  require_gl(ctx);
  if (ctx.n() < 2) throw Error(ErrorCode::InvalidArgs, "the bound needs n >= 2");
  CyclicProportion out;
  out.total = ctx.order();
  for (ElemId g = 0; g < ctx.order(); ++g)
    if (linalg::is_cyclic(ctx.element(g))) ++out.cyclic;
  const std::int64_t q = ctx.field().q();
  out.gap = Rational(static_cast<std::int64_t>(out.total - out.cyclic), static_cast<std::int64_t>(out.total));
  out.bound = Rational(1, q * (q * q - 1));
  out.pass = out.gap <= out.bound;
  out.equality = out.gap == out.bound;
  return out;
}

DivisorIsoCheck divisor_lattice_iso_check(const Context& ctx, ElemId xi) {
  require_gl(ctx);
  if (xi >= ctx.order()) throw Error(ErrorCode::InvalidElement, "element id out of range");
  const linalg::Matrix& m = ctx.element(xi);
  if (!linalg::is_cyclic(m)) throw Error(ErrorCode::NotCyclic, "element is not cyclic");

  const linalg::Poly mp = linalg::min_poly(m);
  const auto lattice = linalg::monic_divisors(mp);
  std::vector<SubId> image;
  for (const auto& f : lattice.divisors)
    image.push_back(ctx.subspace_id(linalg::kernel(linalg::poly_eval_matrix(f, m))));

  const Subgroup gen = group::generate_subgroup(ctx, {xi});
  const auto s = closure::invariant_lattice(gen);

  DivisorIsoCheck out;
  out.invariant_count = s.subspaces.size();
  std::vector<SubId> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  out.bijective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted == s.subspaces;

  const auto& subs = ctx.subspaces();
  out.order_preserving = true;
  for (std::size_t a = 0; a < image.size(); ++a)
    for (std::size_t b = 0; b < image.size(); ++b)
      if (lattice.order.leq(a, b) != linalg::subspace_leq(subs[image[a]], subs[image[b]]))
        out.order_preserving = false;

  for (const auto& f : linalg::factor_poly(mp)) out.profile.push_back(f.multiplicity);
  std::sort(out.profile.rbegin(), out.profile.rend());
  out.cls = poset::classify(s.order);
  out.pass = out.bijective && out.order_preserving && out.cls.is_product_of_chains() && out.cls.profile == out.profile;
  return out;
}

ZCensus z_census(const Context& ctx, std::size_t m_max) {
  require_gl(ctx);
  std::set<Subgroup> seen;
  ZCensus out;
  for (ElemId g = 0; g < ctx.order(); ++g) {
    if (!linalg::is_cyclic(ctx.element(g))) continue;
    Subgroup h = closure::cl(group::generate_subgroup(ctx, {g}));
    if (group::index(h) > m_max) continue;
    if (seen.insert(h).second) ++out.counts[group::index(h)];
  }
  out.subgroups.assign(seen.begin(), seen.end());
  return out;
}

std::vector<VerifyRecord> z_within_census(const ZCensus& z, const Census& census) {
  std::map<std::size_t, const CensusRow*> rows;
  for (const auto& row : census.rows) rows[row.m] = &row;
  std::vector<VerifyRecord> out;
  for (const auto& [m, count] : z.counts) {
    const auto it = rows.find(m);
    const std::size_t x = it == rows.end() ? 0 : it->second->c();
    bool contained = true;
    for (const auto& h : z.subgroups) {
      if (group::index(h) != m) continue;
      const bool in = it != rows.end() && std::any_of(it->second->entries.begin(), it->second->entries.end(),
                                                      [&](const CensusEntry& e) { return e.h == h; });
      contained = contained && in;
    }
    out.push_back({census.context, "z_census", "m=" + std::to_string(m), std::to_string(count),
                   std::to_string(x), count <= x && contained});
  }
  return out;
}

// ---- Sweeps ------------------------------------------------------------------

namespace {

std::string profile_text(const std::vector<int>& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "}";
}

}  // namespace

std::vector<VerifyRecord> sweep_divisor_lattices(const Context& ctx) {
  std::vector<VerifyRecord> out;
  for (ElemId g = 0; g < ctx.order(); ++g) {
    if (!linalg::is_cyclic(ctx.element(g))) continue;
    const auto r = divisor_lattice_iso_check(ctx, g);
    std::string lhs = profile_text(r.profile);
    std::string rhs = r.cls.is_product_of_chains() ? profile_text(r.cls.profile) : "Other";
    if (!r.bijective) rhs += " not bijective";
    if (!r.order_preserving) rhs += " not order preserving";
    out.push_back({ctx.name(), "fact43", "xi#" + std::to_string(g), lhs, rhs, r.pass});
  }
  return out;
}

std::vector<VerifyRecord> sweep_cyclic_proportion(const Context& ctx) {
  const auto r = cyclic_proportion(ctx);
  auto text = [](const Rational& x) { return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator()); };
  return {{ctx.name(), "thm48", r.equality ? "gap = bound" : "gap <= bound", text(r.gap), text(r.bound), r.pass}};
}

}  // namespace glc::counting
