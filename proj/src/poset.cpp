#include "glc/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "glc/error.hpp"

namespace glc::poset {

namespace {

template <typename F>
void for_each_bit(const Bits& bits, F&& f) {
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) f(static_cast<Id>(i));
}

void check_id(const FinitePoset& p, Id x) {
  if (x >= p.size())
    throw Error(ErrorCode::InvalidElement, "element " + std::to_string(x) + " not in a poset of size " +
                                               std::to_string(p.size()));
}

}  // namespace

FinitePoset::FinitePoset(std::vector<Bits> up) : up_(std::move(up)) {
  const std::size_t n = up_.size();
  down_.assign(n, Bits(n));
  for (Id i = 0; i < n; ++i) {
    if (up_[i].size() != n) throw Error(ErrorCode::InvalidArgs, "relation row has wrong length");
    if (!up_[i].test(i)) throw Error(ErrorCode::InvalidArgs, "relation is not reflexive");
    for_each_bit(up_[i], [&](Id j) { down_[j].set(i); });
  }
  for (Id i = 0; i < n; ++i) {
    for_each_bit(up_[i], [&](Id j) {
      if (j != i && up_[j].test(i)) throw Error(ErrorCode::InvalidArgs, "relation is not antisymmetric");
      if (!up_[j].is_subset_of(up_[i])) throw Error(ErrorCode::InvalidArgs, "relation is not transitive");
    });
  }
  linear_.resize(n);
  std::iota(linear_.begin(), linear_.end(), Id{0});
  std::stable_sort(linear_.begin(), linear_.end(),
                   [&](Id a, Id b) { return down_[a].count() < down_[b].count(); });
}

FinitePoset FinitePoset::from_relation(std::size_t n, const std::function<bool(Id, Id)>& leq) {
  std::vector<Bits> up(n, Bits(n));
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j)
      if (leq(i, j)) up[i].set(j);
  return FinitePoset(std::move(up));
}

std::optional<Id> FinitePoset::bottom() const {
  for (Id i = 0; i < size(); ++i)
    if (up_[i].all()) return i;
  return std::nullopt;
}

std::optional<Id> FinitePoset::top() const {
  for (Id i = 0; i < size(); ++i)
    if (down_[i].all()) return i;
  return std::nullopt;
}

std::vector<Id> FinitePoset::lower_covers(Id x) const {
  std::vector<Id> out;
  for_each_bit(down_[x], [&](Id s) {
    if (s != x && (up_[s] & down_[x]).count() == 2) out.push_back(s);
  });
  return out;
}

std::vector<std::pair<Id, Id>> FinitePoset::covers() const {
  std::vector<std::pair<Id, Id>> out;
  for (Id x = 0; x < size(); ++x)
    for (Id s : lower_covers(x)) out.emplace_back(s, x);
  std::sort(out.begin(), out.end());
  return out;
}

FinitePoset FinitePoset::subposet(const std::vector<Id>& ids) const {
  return from_relation(ids.size(), [&](Id a, Id b) { return leq(ids[a], ids[b]); });
}

FinitePoset chain(int length) {
  const auto n = static_cast<std::size_t>(length + 1);
  return FinitePoset::from_relation(n, [](Id a, Id b) { return a <= b; });
}

FinitePoset antichain(std::size_t n) {
  return FinitePoset::from_relation(n, [](Id a, Id b) { return a == b; });
}

FinitePoset boolean_lattice(int atoms) {
  const auto n = std::size_t{1} << atoms;
  return FinitePoset::from_relation(n, [](Id a, Id b) { return (a & ~b) == 0; });
}

FinitePoset direct_product(const FinitePoset& p, const FinitePoset& q) {
  const std::size_t m = q.size();
  return FinitePoset::from_relation(p.size() * m, [&](Id a, Id b) {
    return p.leq(a / m, b / m) && q.leq(a % m, b % m);
  });
}

FinitePoset product_of_chains(const std::vector<int>& lengths) {
  FinitePoset acc = chain(0);
  for (int len : lengths) acc = direct_product(acc, chain(len));
  return acc;
}

// ---- Möbius -----------------------------------------------------------------

std::int64_t mobius_in(const FinitePoset& p, const Bits& subset, Id x, Id y) {
  check_id(p, x);
  check_id(p, y);
  if (!p.leq(x, y)) return 0;
  if (!subset.test(x) || !subset.test(y))
    throw Error(ErrorCode::InvalidElement, "interval ends must lie in the subposet");
  // mu(y,y) = 1 and mu(t,y) = -sum_{t<s<=y} mu(s,y), top down.
  const Bits interval = subset & p.up(x) & p.down(y);
  std::vector<std::int64_t> mu(p.size(), 0);
  const auto& lin = p.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const Id t = *it;
    if (!interval.test(t)) continue;
    if (t == y) {
      mu[t] = 1;
      continue;
    }
    std::int64_t sum = 0;
    for_each_bit(interval & p.up(t), [&](Id s) {
      if (s != t) sum += mu[s];
    });
    mu[t] = -sum;
  }
  return mu[x];
}

std::int64_t mobius(const FinitePoset& p, Id x, Id y) {
  Bits all(p.size());
  all.set();
  return mobius_in(p, all, x, y);
}

std::vector<std::int64_t> mobius_to(const FinitePoset& p, Id y) {
  check_id(p, y);
  std::vector<std::int64_t> mu(p.size(), 0);
  const auto& lin = p.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const Id x = *it;
    if (!p.leq(x, y)) continue;
    if (x == y) {
      mu[x] = 1;
      continue;
    }
    std::int64_t sum = 0;
    for_each_bit(p.up(x) & p.down(y), [&](Id s) {
      if (s != x) sum += mu[s];
    });
    mu[x] = -sum;
  }
  return mu;
}

std::vector<std::int64_t> mobius_from(const FinitePoset& p, Id x) {
  check_id(p, x);
  std::vector<std::int64_t> mu(p.size(), 0);
  for (Id t : p.linear_extension()) {
    if (!p.leq(x, t)) continue;
    if (t == x) {
      mu[t] = 1;
      continue;
    }
    std::int64_t sum = 0;
    for_each_bit(p.up(x) & p.down(t), [&](Id s) {
      if (s != t) sum += mu[s];
    });
    mu[t] = -sum;
  }
  return mu;
}

std::vector<std::vector<std::int64_t>> mobius_all(const FinitePoset& p) {
  std::vector<std::vector<std::int64_t>> table(p.size(), std::vector<std::int64_t>(p.size(), 0));
  for (Id y = 0; y < p.size(); ++y) {
    const auto column = mobius_to(p, y);
    for (Id x = 0; x < p.size(); ++x) table[x][y] = column[x];
  }
  return table;
}

// ---- Lattices ---------------------------------------------------------------

LatticeInfo lattice_info(const FinitePoset& p) {
  const std::size_t n = p.size();
  auto b = p.bottom();
  auto t = p.top();
  if (n == 0 || !b || !t) throw Error(ErrorCode::NotALattice, "poset lacks a bottom or a top");
  LatticeInfo info;
  info.bottom = *b;
  info.top = *t;
  info.join.assign(n, std::vector<Id>(n));
  info.meet.assign(n, std::vector<Id>(n));

  auto least = [&](const Bits& set, bool upward) -> Id {
    // The least element of `set` (upward) or the greatest (downward).
    Id best = Bits::npos;
    std::size_t best_rank = 0;
    for_each_bit(set, [&](Id z) {
      const std::size_t rank = upward ? p.down(z).count() : p.up(z).count();
      if (best == Bits::npos || rank < best_rank) {
        best = z;
        best_rank = rank;
      }
    });
    if (best == Bits::npos || !set.is_subset_of(upward ? p.up(best) : p.down(best)))
      throw Error(ErrorCode::NotALattice, "missing join or meet");
    return best;
  };

  for (Id x = 0; x < n; ++x) {
    for (Id y = x; y < n; ++y) {
      info.join[x][y] = info.join[y][x] = least(p.up(x) & p.up(y), true);
      info.meet[x][y] = info.meet[y][x] = least(p.down(x) & p.down(y), false);
    }
  }
  return info;
}

bool is_lattice(const FinitePoset& p) {
  try {
    lattice_info(p);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotALattice) throw;
    return false;
  }
}

bool is_distributive(const LatticeInfo& info) {
  const std::size_t n = info.join.size();
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y)
      for (Id z = 0; z < n; ++z)
        if (info.meet[x][info.join[y][z]] != info.join[info.meet[x][y]][info.meet[x][z]]) return false;
  return true;
}

Bits join_irreducibles(const FinitePoset& p) {
  const LatticeInfo info = lattice_info(p);
  Bits out(p.size());
  // In a finite lattice u is join-irreducible iff it has exactly one lower cover.
  for (Id u = 0; u < p.size(); ++u)
    if (u != info.bottom && p.lower_covers(u).size() == 1) out.set(u);
  return out;
}

Bits order_ideal_generated(const FinitePoset& p, const Bits& generators) {
  if (generators.size() != p.size()) throw Error(ErrorCode::InvalidElement, "generator set has wrong size");
  Bits out(p.size());
  for_each_bit(generators, [&](Id a) { out |= p.down(a); });
  return out;
}

bool is_order_ideal(const FinitePoset& p, const Bits& set) {
  if (set.size() != p.size()) return false;
  bool ok = true;
  for_each_bit(set, [&](Id a) { ok = ok && p.down(a).is_subset_of(set); });
  return ok;
}

IdealDecomposition ideal_decomposition_check(const FinitePoset& p, const Bits& ideal) {
  auto b = p.bottom();
  auto t = p.top();
  if (!b || !t) throw Error(ErrorCode::NotALattice, "ideal decomposition needs a bottom and a top");
  if (!is_order_ideal(p, ideal) || !ideal.test(*b))
    throw Error(ErrorCode::NotAnIdeal, "set is not a nonempty order ideal");

  IdealDecomposition result;
  const auto mu_to_top = mobius_to(p, *t);
  result.lhs = mu_to_top[*b];

  Bits hat = ideal;
  hat.set(*t);
  result.rhs = mobius_in(p, hat, *b, *t);
  for (Id y = 0; y < p.size(); ++y) {
    if (hat.test(y) || mu_to_top[y] == 0) continue;
    Bits below = ideal & p.down(y);
    below.set(y);
    result.rhs += mobius_in(p, below, *b, y) * mu_to_top[y];
  }
  return result;
}

// ---- Isomorphism ------------------------------------------------------------

namespace {

struct Signature {
  std::size_t down;
  std::size_t up;
  std::size_t lower_covers;
  std::size_t upper_covers;
  auto operator<=>(const Signature&) const = default;
};

std::vector<Signature> signatures(const FinitePoset& p) {
  std::vector<Signature> sig(p.size());
  std::vector<std::size_t> upper(p.size(), 0);
  for (auto [lo, hi] : p.covers()) ++upper[lo];
  for (Id x = 0; x < p.size(); ++x)
    sig[x] = {p.down(x).count(), p.up(x).count(), p.lower_covers(x).size(), upper[x]};
  return sig;
}

bool isomorphic_unbounded(const FinitePoset& a, const FinitePoset& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  const auto sa = signatures(a);
  const auto sb = signatures(b);
  {
    auto x = sa;
    auto y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  const auto& order = a.linear_extension();
  std::vector<Id> image(n, Bits::npos);
  std::vector<bool> used(n, false);

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const Id x = order[depth];
    for (Id y = 0; y < n; ++y) {
      if (used[y] || !(sa[x] == sb[y])) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Id u = order[d];
        const Id v = image[u];
        ok = a.leq(u, x) == b.leq(v, y) && a.leq(x, u) == b.leq(y, v);
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (extend(depth + 1)) return true;
      used[y] = false;
      image[x] = Bits::npos;
    }
    return false;
  };
  return extend(0);
}

}  // namespace

bool is_isomorphic(const FinitePoset& a, const FinitePoset& b, std::size_t cap) {
  if (a.size() > cap || b.size() > cap)
    throw Error(ErrorCode::CapExceeded, "isomorphism test limited to posets of size " + std::to_string(cap));
  return isomorphic_unbounded(a, b);
}

bool LatticeClass::is_boolean() const {
  if (kind == Kind::Boolean) return true;
  return kind == Kind::Chain && !profile.empty() && profile[0] <= 1;
}

std::string to_string(LatticeClass::Kind kind) {
  switch (kind) {
    case LatticeClass::Kind::Chain: return "Chain";
    case LatticeClass::Kind::Boolean: return "Boolean";
    case LatticeClass::Kind::ProductOfChains: return "ProductOfChains";
    case LatticeClass::Kind::Other: return "Other";
  }
  return "Other";
}

LatticeClass classify(const FinitePoset& p) {
  const LatticeInfo info = lattice_info(p);
  const std::size_t n = p.size();
  LatticeClass result;

  bool total = true;
  for (Id x = 0; x < n && total; ++x)
    total = (p.up(x) | p.down(x)).all();
  if (total) {
    result.kind = LatticeClass::Kind::Chain;
    result.profile = {static_cast<int>(n) - 1};
    return result;
  }
  if (!is_distributive(info)) return result;

  const Bits ji = join_irreducibles(p);
  std::vector<Id> members;
  for (auto i = ji.find_first(); i != Bits::npos; i = ji.find_next(i)) members.push_back(i);

  // Components of the comparability graph on JI(L); each must be a chain.
  std::vector<std::size_t> component(members.size());
  std::iota(component.begin(), component.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return component[i] == i ? i : component[i] = find(component[i]);
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (p.leq(members[i], members[j]) || p.leq(members[j], members[i])) component[find(i)] = find(j);

  std::vector<std::vector<Id>> groups(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) groups[find(i)].push_back(members[i]);
  std::vector<int> profile;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    for (Id x : g)
      for (Id y : g)
        if (!p.leq(x, y) && !p.leq(y, x)) return result;
    profile.push_back(static_cast<int>(g.size()));
  }
  std::sort(profile.rbegin(), profile.rend());

  std::size_t expected = 1;
  for (int w : profile) expected *= static_cast<std::size_t>(w + 1);
  if (expected != n || !isomorphic_unbounded(p, product_of_chains(profile))) return result;

  const bool boolean = std::all_of(profile.begin(), profile.end(), [](int w) { return w == 1; });
  result.kind = boolean ? LatticeClass::Kind::Boolean : LatticeClass::Kind::ProductOfChains;
  result.profile = std::move(profile);
  return result;
}

std::string to_edge_list(const FinitePoset& p) {
  std::ostringstream out;
  out << "poset " << p.size() << '\n';
  for (auto [lo, hi] : p.covers()) out << lo << ' ' << hi << '\n';
  return out.str();
}

}  // namespace glc::poset
