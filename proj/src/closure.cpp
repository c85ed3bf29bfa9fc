#include "glc/closure.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "glc/error.hpp"

namespace glc::closure {

using group::ElemId;
using poset::Bits;

namespace {

void require_pair(const Subgroup& h, const Subgroup& k) {
  if (&h.context() != &k.context() || !h.is_subgroup_of(k))
    throw Error(ErrorCode::NotASubgroupPair, "H is not a subgroup of K");
}

void require_irreducible(const Subgroup& k) {
  if (!group::is_irreducible(k)) throw Error(ErrorCode::NotIrreducible, "K must act irreducibly");
}

/// Proper nonzero H-invariant subspaces.
std::vector<SubId> star(const Subgroup& h) {
  auto ids = group::invariant_subspace_ids(h);
  const Context& ctx = h.context();
  std::vector<SubId> out;
  for (SubId w : ids)
    if (w != ctx.zero_subspace() && w != ctx.full_subspace()) out.push_back(w);
  return out;
}

Bits stab_in(const Subgroup& k, SubId w) {
  const Context& ctx = k.context();
  Bits b(ctx.order());
  for (ElemId x : k.members())
    if (ctx.act(x, w) == w) b.set(x);
  return b;
}

std::vector<ElemId> ids_of(const Bits& b) {
  std::vector<ElemId> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<ElemId>(i));
  return out;
}

std::string tag(std::size_t id) { return "#" + std::to_string(id); }

std::int64_t mu_ideal_unchecked(const Context& ctx, const Subgroup& k, const Subgroup& h) {
  if (h == k) return 1;
  const IdealPoset ideal = ideal_hat(k, h);
  return poset::mobius_in(ctx.lattice().order, ideal.members, ideal.h_id, ideal.k_id);
}

MuDecomposition decompose(const Subgroup& h, const std::vector<std::int64_t>& mu_to_top) {
  const auto& lat = h.context().lattice();
  MuDecomposition out;
  out.direct = mu_to_top[lat.index_of(h)];
  const bool h_is_top = lat.index_of(h) + 1 == lat.subgroups.size();
  for (auto& k : irr_overgroups(h)) {
    // An irreducible H sits at the bottom of Î(G,H), so its own term is
    // already counted by the G term; only H = G contributes itself.
    if (k == h && !h_is_top) continue;
    MuTerm term{k, mu_to_top[lat.index_of(k)], mu_ideal_unchecked(h.context(), k, h)};
    out.total += term.mu_k_g * term.mu_ideal;
    out.terms.push_back(std::move(term));
  }
  return out;
}

std::vector<std::int64_t> mu_to_top(const Context& ctx) {
  const auto& order = ctx.lattice().order;
  return poset::mobius_to(order, *order.top());
}

template <typename Visit>
void walk_psi(const std::vector<Bits>& stabs, const Bits& h_bits, std::size_t i, const Bits& cur, std::uint64_t mask,
              Visit& visit) {
  visit(mask);
  for (std::size_t j = i; j < stabs.size(); ++j) {
    Bits next = cur & stabs[j];
    // Intersections only shrink, so once H is reached no superset is in Ψ.
    if (next != h_bits) walk_psi(stabs, h_bits, j + 1, next, mask | (std::uint64_t{1} << j), visit);
  }
}

template <typename Visit>
std::vector<SubId> run_psi(const Subgroup& k, const Subgroup& h, std::size_t cap, Visit& visit) {
  require_pair(h, k);
  if (h == k) throw Error(ErrorCode::InvalidArgs, "Ψ(K,H) needs H strictly below K");
  require_irreducible(k);
  auto s = star(h);
  if (s.size() > cap || s.size() > 63)
    throw Error(ErrorCode::CapExceeded, std::to_string(s.size()) + " proper invariant subspaces exceed the Ψ cap of " +
                                            std::to_string(cap));
  std::vector<Bits> stabs;
  for (SubId w : s) stabs.push_back(stab_in(k, w));
  walk_psi(stabs, h.bits(), 0, k.bits(), 0, visit);
  return s;
}

}  // namespace

InvariantLattice invariant_lattice(const Subgroup& h) {
  const Context& ctx = h.context();
  InvariantLattice out;
  out.subspaces = group::invariant_subspace_ids(h);
  const auto& subs = ctx.subspaces();
  const auto& ids = out.subspaces;
  out.order = poset::FinitePoset::from_relation(
      ids.size(), [&](poset::Id a, poset::Id b) { return linalg::subspace_leq(subs[ids[a]], subs[ids[b]]); });
  out.ji = poset::join_irreducibles(out.order);
  return out;
}

Subgroup cl(const Subgroup& h) {
  const Context& ctx = h.context();
  const InvariantLattice s = invariant_lattice(h);
  Subgroup full = group::stab_family_ids(ctx, s.subspaces);
  std::vector<SubId> ji;
  for (auto i = s.ji.find_first(); i != Bits::npos; i = s.ji.find_next(i)) ji.push_back(s.subspaces[i]);
  if (!(group::stab_family_ids(ctx, ji) == full))
    throw Error(ErrorCode::CheckFailed, "closure over join-irreducibles differs from closure over S(V,H)");
  return full;
}

bool is_closed(const Subgroup& h) { return cl(h) == h; }

Subgroup cl_in(const Subgroup& h, const Subgroup& k) {
  require_pair(h, k);
  return group::intersect(cl(h), k);
}

bool is_closed_in(const Subgroup& h, const Subgroup& k) { return cl_in(h, k) == h; }

std::vector<Subgroup> c_set(const Subgroup& k, const Subgroup& h) {
  require_pair(h, k);
  require_irreducible(k);
  std::set<Bits> seen;
  for (SubId w : star(h)) seen.insert(stab_in(k, w));
  std::vector<Subgroup> out;
  for (const auto& b : seen) out.emplace_back(k.context(), ids_of(b));
  std::sort(out.begin(), out.end());
  return out;
}

poset::FinitePoset IdealPoset::as_poset(const Context& ctx) const {
  std::vector<poset::Id> ids;
  for (auto i = members.find_first(); i != Bits::npos; i = members.find_next(i)) ids.push_back(i);
  return ctx.lattice().order.subposet(ids);
}

IdealPoset ideal_hat(const Subgroup& k, const Subgroup& h) {
  const Context& ctx = h.context();
  const auto& lat = ctx.lattice();
  const auto cs = c_set(k, h);
  IdealPoset out;
  out.h_id = lat.index_of(h);
  out.k_id = lat.index_of(k);
  out.members = Bits(lat.subgroups.size());
  const Bits& above_h = lat.order.up(out.h_id);
  for (const auto& m : cs) out.members |= lat.order.down(lat.index_of(m)) & above_h;
  out.members.set(out.h_id);
  out.members.set(out.k_id);
  return out;
}

std::int64_t mu_ideal_hat(const Subgroup& k, const Subgroup& h) {
  require_pair(h, k);
  require_irreducible(k);
  return mu_ideal_unchecked(h.context(), k, h);
}

PsiFamily psi(const Subgroup& k, const Subgroup& h, std::size_t cap) {
  PsiFamily out;
  auto visit = [&](std::uint64_t mask) { out.members.push_back(mask); };
  out.star = run_psi(k, h, cap, visit);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::int64_t psi_sum(const Subgroup& k, const Subgroup& h, std::size_t cap) {
  std::int64_t sum = 0;
  auto visit = [&](std::uint64_t mask) { sum += (std::popcount(mask) % 2 == 0) ? 1 : -1; };
  run_psi(k, h, cap, visit);
  return sum;
}

std::vector<Subgroup> irr_overgroups(const Subgroup& h) {
  const auto& lat = h.context().lattice();
  const std::size_t hid = lat.index_of(h);
  std::vector<Subgroup> out;
  const Bits& up = lat.order.up(hid);
  for (auto i = up.find_first(); i != Bits::npos; i = up.find_next(i))
    if (group::is_irreducible(lat.subgroups[i])) out.push_back(lat.subgroups[i]);
  return out;
}

MuDecomposition mu_via_irreducibles(const Subgroup& h) {
  MuDecomposition out = decompose(h, mu_to_top(h.context()));
  if (out.total != out.direct)
    throw Error(ErrorCode::CheckFailed, "sum over irreducible overgroups " + std::to_string(out.total) +
                                            " differs from mu(H,G) = " + std::to_string(out.direct));
  return out;
}

bool check_nonclosed_vanishing(const Subgroup& h, const Subgroup& k) {
  require_pair(h, k);
  require_irreducible(k);
  return is_closed_in(h, k) || mu_ideal_hat(k, h) == 0;
}

std::optional<std::pair<Subgroup, Subgroup>> decompose_mu_nonzero(const Subgroup& h) {
  const Context& ctx = h.context();
  const auto mu = mu_to_top(ctx);
  const auto& lat = ctx.lattice();
  if (mu[lat.index_of(h)] == 0) return std::nullopt;
  Subgroup y = cl(h);
  for (auto& k : irr_overgroups(h))
    if (mu[lat.index_of(k)] != 0 && group::intersect(k, y) == h) return std::make_pair(std::move(k), std::move(y));
  throw Error(ErrorCode::NotFound, "no irreducible overgroup K with mu(K,G) != 0 and H = K ∩ cl(H)");
}

std::size_t b_count(const Context& ctx, std::size_t m) {
  const auto mu = mu_to_top(ctx);
  const auto& subs = ctx.lattice().subgroups;
  std::size_t count = 0;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (group::index(subs[i]) == m && mu[i] != 0) ++count;
  return count;
}

// ---- Sweeps ------------------------------------------------------------------

namespace {

std::vector<char> irreducible_flags(const Context& ctx) {
  const auto& subs = ctx.lattice().subgroups;
  std::vector<char> out(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) out[i] = group::is_irreducible(subs[i]);
  return out;
}

VerifyRecord record(const Context& ctx, const char* theorem, std::string instance, std::int64_t lhs,
                    std::int64_t rhs) {
  return {ctx.name(), theorem, std::move(instance), std::to_string(lhs), std::to_string(rhs), lhs == rhs};
}

}  // namespace

std::vector<VerifyRecord> sweep_ideal_decomposition(const Context& ctx) {
  const auto& lat = ctx.lattice();
  const auto irr = irreducible_flags(ctx);
  std::vector<VerifyRecord> out;
  for (std::size_t h = 0; h < lat.subgroups.size(); ++h) {
    std::vector<poset::Id> ids;
    const Bits& up = lat.order.up(h);
    for (auto i = up.find_first(); i != Bits::npos; i = up.find_next(i)) ids.push_back(i);
    const poset::FinitePoset interval = lat.order.subposet(ids);
    Bits ideal(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!irr[ids[i]] || ids[i] == h) ideal.set(i);
    const auto d = poset::ideal_decomposition_check(interval, ideal);
    out.push_back(record(ctx, "lemma22", "H" + tag(h), d.lhs, d.rhs));
  }
  return out;
}

std::vector<VerifyRecord> sweep_mu_via_irreducibles(const Context& ctx) {
  const auto& subs = ctx.lattice().subgroups;
  const auto mu = mu_to_top(ctx);
  std::vector<VerifyRecord> out;
  for (std::size_t h = 0; h < subs.size(); ++h) {
    const MuDecomposition d = decompose(subs[h], mu);
    out.push_back(record(ctx, "thm34", "H" + tag(h), d.total, d.direct));
  }
  return out;
}

std::vector<VerifyRecord> sweep_psi_identity(const Context& ctx, std::size_t cap) {
  const auto& lat = ctx.lattice();
  const auto irr = irreducible_flags(ctx);
  std::vector<VerifyRecord> out;
  for (std::size_t k = 0; k < lat.subgroups.size(); ++k) {
    if (!irr[k]) continue;
    const Bits& down = lat.order.down(k);
    for (auto h = down.find_first(); h != Bits::npos; h = down.find_next(h)) {
      if (h == k) continue;
      const auto& hs = lat.subgroups[h];
      const auto& ks = lat.subgroups[k];
      out.push_back(record(ctx, "thm35", "H" + tag(h) + " K" + tag(k), -mu_ideal_unchecked(ctx, ks, hs),
                           psi_sum(ks, hs, cap)));
    }
  }
  return out;
}

std::vector<VerifyRecord> sweep_nonclosed_vanishing(const Context& ctx) {
  const auto& lat = ctx.lattice();
  const auto irr = irreducible_flags(ctx);
  std::vector<Subgroup> closures;
  for (const auto& h : lat.subgroups) closures.push_back(cl(h));
  std::vector<VerifyRecord> out;
  for (std::size_t k = 0; k < lat.subgroups.size(); ++k) {
    if (!irr[k]) continue;
    const auto& ks = lat.subgroups[k];
    const Bits& down = lat.order.down(k);
    for (auto h = down.find_first(); h != Bits::npos; h = down.find_next(h)) {
      const auto& hs = lat.subgroups[h];
      if (group::intersect(closures[h], ks) == hs) continue;
      out.push_back(record(ctx, "prop11", "H" + tag(h) + " K" + tag(k), mu_ideal_unchecked(ctx, ks, hs), 0));
    }
  }
  return out;
}

std::vector<VerifyRecord> sweep_mu_nonzero_decomposition(const Context& ctx) {
  const auto& lat = ctx.lattice();
  const auto mu = mu_to_top(ctx);
  std::vector<VerifyRecord> out;
  for (std::size_t h = 0; h < lat.subgroups.size(); ++h) {
    if (mu[h] == 0) continue;
    const auto& hs = lat.subgroups[h];
    const Subgroup y = cl(hs);
    VerifyRecord r{ctx.name(), "prop36", "H" + tag(h) + " Y" + tag(lat.index_of(y)), "none", tag(h), false};
    for (const auto& k : irr_overgroups(hs)) {
      const std::size_t kid = lat.index_of(k);
      if (mu[kid] == 0) continue;
      const std::size_t meet = lat.index_of(group::intersect(k, y));
      if (meet != h) continue;
      r.instance += " K" + tag(kid);
      r.lhs = tag(meet);
      r.pass = is_closed(y);
      break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace glc::closure
