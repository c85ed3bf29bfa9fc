#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "glc/group.hpp"
#include "glc/poset.hpp"
#include "glc/report.hpp"

namespace glc::closure {

using group::Context;
using group::SubId;
using group::Subgroup;

inline constexpr std::size_t kDefaultPsiCap = 20;

/// S(V,H): the H-invariant subspaces, as ids into Context::subspaces().
struct InvariantLattice {
  std::vector<SubId> subspaces;  // ascending, so 0 first and V last
  poset::FinitePoset order;      // inclusion, indexed like `subspaces`
  poset::Bits ji;                // join-irreducible positions
};

InvariantLattice invariant_lattice(const Subgroup& h);

/// Intersection of the G-stabilizers of every H-invariant subspace. Also
/// computed over the join-irreducibles alone; a mismatch throws CheckFailed.
Subgroup cl(const Subgroup& h);
bool is_closed(const Subgroup& h);
/// cl(H) ∩ K. Throws NotASubgroupPair unless H <= K.
Subgroup cl_in(const Subgroup& h, const Subgroup& k);
bool is_closed_in(const Subgroup& h, const Subgroup& k);

/// Stabilizers in K of the proper nonzero H-invariant subspaces, deduped and
/// sorted. Throws NotASubgroupPair, NotIrreducible (K reducible).
std::vector<Subgroup> c_set(const Subgroup& k, const Subgroup& h);

/// {H, K} together with every subgroup L with H <= L <= M for some M in
/// C(K,H). Members are positions in the context's subgroup lattice.
struct IdealPoset {
  poset::Bits members;  // over the full subgroup list
  std::size_t h_id = 0;
  std::size_t k_id = 0;
  /// The members as an explicit poset, ordered like the subgroup list.
  poset::FinitePoset as_poset(const Context& ctx) const;
};

IdealPoset ideal_hat(const Subgroup& k, const Subgroup& h);
/// Möbius value from H to K inside ideal_hat(K,H); 1 when H = K.
std::int64_t mu_ideal_hat(const Subgroup& k, const Subgroup& h);

/// Subsets E of the proper nonzero H-invariant subspaces whose joint
/// K-stabilizer is strictly larger than H. Bit i of a member refers to
/// star[i]. The empty intersection is K.
struct PsiFamily {
  std::vector<SubId> star;
  std::vector<std::uint64_t> members;  // ascending
};

/// Requires H < K and K irreducible; throws CapExceeded when |star| > cap.
PsiFamily psi(const Subgroup& k, const Subgroup& h, std::size_t cap = kDefaultPsiCap);
/// Sum over Ψ of (-1)^|E|.
std::int64_t psi_sum(const Subgroup& k, const Subgroup& h, std::size_t cap = kDefaultPsiCap);

/// Irreducible subgroups containing H, in lattice order (G is last).
std::vector<Subgroup> irr_overgroups(const Subgroup& h);

struct MuTerm {
  Subgroup k;
  std::int64_t mu_k_g;
  std::int64_t mu_ideal;
};

struct MuDecomposition {
  std::int64_t total = 0;   // sum of mu_k_g * mu_ideal over the terms
  std::int64_t direct = 0;  // mu(H,G) on the subgroup lattice
  std::vector<MuTerm> terms;
};

/// Throws CheckFailed if total != direct.
MuDecomposition mu_via_irreducibles(const Subgroup& h);

/// True iff H is closed in K or mu_ideal_hat(K,H) = 0.
bool check_nonclosed_vanishing(const Subgroup& h, const Subgroup& k);

/// For mu(H,G) != 0: some K in Irr(G,H) with mu(K,G) != 0 and a nonzero
/// ideal term, paired with Y = cl(H). Empty when mu(H,G) = 0. Throws
/// NotFound if no such K exists and CheckFailed if H != K ∩ Y.
std::optional<std::pair<Subgroup, Subgroup>> decompose_mu_nonzero(const Subgroup& h);

/// Subgroups of index m with mu(H,G) != 0.
std::size_t b_count(const Context& ctx, std::size_t m);

// ---- Sweeps ------------------------------------------------------------------
// Each returns one record per checked instance. Instances name subgroups by
// their position in the context's subgroup list, e.g. "H#3".

/// Ideal decomposition of mu(H,G) along the reducible overgroups of H (plus
/// H), in the interval [H,G], for every H.
std::vector<VerifyRecord> sweep_ideal_decomposition(const Context& ctx);
/// mu(H,G) against the sum over irreducible overgroups, every H.
std::vector<VerifyRecord> sweep_mu_via_irreducibles(const Context& ctx);
/// -mu_ideal_hat(K,H) against psi_sum(K,H), every H < K with K irreducible.
std::vector<VerifyRecord> sweep_psi_identity(const Context& ctx, std::size_t cap = kDefaultPsiCap);
/// mu_ideal_hat(K,H) = 0 for every H <= K, K irreducible, H not closed in K.
std::vector<VerifyRecord> sweep_nonclosed_vanishing(const Context& ctx);
/// The (K, cl(H)) decomposition for every H with mu(H,G) != 0.
std::vector<VerifyRecord> sweep_mu_nonzero_decomposition(const Context& ctx);

}  // namespace glc::closure
