#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "glc/linalg.hpp"
#include "glc/poset.hpp"

namespace glc::group {

using BigInt = boost::multiprecision::cpp_int;
using linalg::Matrix;
using linalg::Subspace;
using ElemId = std::uint32_t;
/// Index into Context::subspaces().
using SubId = std::uint32_t;

enum class Flavor { GL, PGL };

std::string to_string(Flavor f);

struct Caps {
  /// Bound on |G| for subgroup-lattice operations.
  std::uint64_t max_group_order = 2500;
  std::uint64_t max_subgroup_count = 20000;
  /// Bound on |G| for plain element enumeration (stabilizer filters only).
  std::uint64_t max_elements = 600000;
  std::uint64_t max_subspaces = linalg::kDefaultSubspaceCap;
};

/// |GL(n,q)| = [n]_q! (q-1)^n q^(n(n-1)/2).
BigInt gl_order(int n, int q);

class Subgroup;
struct SubgroupLattice;

/// GL(n,q) or PGL(n,q) with every element enumerated. Elements are sorted by
/// their row-major entry sequence; a PGL element is the representative whose
/// first nonzero entry is 1. Caches are filled on first use and the object
/// is not safe for concurrent use.
class Context {
 public:
  /// Throws CapExceeded when |G| > caps.max_elements.
  static std::shared_ptr<const Context> build(Flavor flavor, int n, int q, Caps caps = {});

  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
  ~Context();

  Flavor flavor() const { return flavor_; }
  int n() const { return n_; }
  const linalg::Field& field() const { return *field_; }
  const Caps& caps() const { return caps_; }
  std::size_t order() const { return elements_.size(); }
  std::string name() const;

  const Matrix& element(ElemId g) const { return elements_[g]; }
  ElemId identity() const { return identity_; }
  ElemId mul(ElemId a, ElemId b) const;
  ElemId inv(ElemId a) const { return inverse_[a]; }
  /// Scalar representative for PGL, unchanged for GL.
  Matrix normalize(const Matrix& m) const;
  std::optional<ElemId> find(const Matrix& m) const;
  /// Throws InvalidElement for a singular matrix or wrong field/dimension.
  ElemId id_of(const Matrix& m) const;
  /// Ids of the scalar matrices (just the identity for PGL).
  const std::vector<ElemId>& scalars() const { return scalars_; }

  /// Every subspace of V in linalg order. Throws CapExceeded.
  const std::vector<Subspace>& subspaces() const;
  SubId subspace_id(const Subspace& w) const;
  SubId zero_subspace() const { return 0; }
  SubId full_subspace() const { return static_cast<SubId>(subspaces().size() - 1); }
  /// Id of W^g.
  SubId act(ElemId g, SubId w) const;

  /// Every subgroup, ordered by (order, member ids). Throws CapExceeded when
  /// |G| > caps.max_group_order or the count passes caps.max_subgroup_count.
  const SubgroupLattice& lattice() const;

  void require_lattice_scale() const;

 private:
  Context(Flavor flavor, int n, const linalg::Field& field, Caps caps);
  std::uint64_t key(const Matrix& m) const;

  Flavor flavor_;
  int n_;
  const linalg::Field* field_;
  Caps caps_;
  std::vector<Matrix> elements_;
  std::vector<std::uint64_t> keys_;
  std::vector<ElemId> inverse_;
  std::vector<ElemId> scalars_;
  ElemId identity_ = 0;

  mutable std::vector<ElemId> mul_table_;
  mutable std::optional<std::vector<Subspace>> subspaces_;
  mutable std::vector<SubId> action_;
  mutable std::unique_ptr<SubgroupLattice> lattice_;
};

using ContextPtr = std::shared_ptr<const Context>;

/// A subgroup as its sorted member ids plus a membership bitset. Equality and
/// ordering look only at the members; generators are informational.
class Subgroup {
 public:
  Subgroup(const Context& ctx, std::vector<ElemId> members, std::vector<ElemId> generators = {});

  const Context& context() const { return *ctx_; }
  std::size_t order() const { return members_.size(); }
  const std::vector<ElemId>& members() const { return members_; }
  const poset::Bits& bits() const { return bits_; }
  const std::vector<ElemId>& generators() const { return generators_; }
  bool contains(ElemId g) const { return bits_.test(g); }
  bool is_subgroup_of(const Subgroup& other) const { return bits_.is_subset_of(other.bits_); }

  bool operator==(const Subgroup& o) const { return members_ == o.members_; }
  /// Order first, then member ids.
  bool operator<(const Subgroup& o) const;

 private:
  const Context* ctx_;
  std::vector<ElemId> members_;
  poset::Bits bits_;
  std::vector<ElemId> generators_;
};

struct SubgroupLattice {
  std::vector<Subgroup> subgroups;
  poset::FinitePoset order;  // inclusion
  /// Position of a subgroup in `subgroups`. Throws NotFound.
  std::size_t index_of(const Subgroup& h) const;
};

/// Throws InvalidElement on an id out of range.
Subgroup generate_subgroup(const Context& ctx, const std::vector<ElemId>& generators);
Subgroup trivial_subgroup(const Context& ctx);
Subgroup whole_group(const Context& ctx);
/// Subgroup from an explicit member set, checked for closure. Throws InvalidArgs.
Subgroup subgroup_from_members(const Context& ctx, poset::Bits members);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);

/// Returns the lattice's subgroup list; see Context::lattice().
const std::vector<Subgroup>& all_subgroups(const Context& ctx);
const poset::FinitePoset& subgroup_lattice(const Context& ctx);

/// { g : W^g = W for every W }. Throws DimensionMismatch.
Subgroup stab_subspace(const Context& ctx, const Subspace& w);
Subgroup stab_family(const Context& ctx, const std::vector<Subspace>& ws);
Subgroup stab_family_ids(const Context& ctx, const std::vector<SubId>& ws);

/// Ids of the subspaces fixed by every generator of H (every member when H
/// carries no generators), ascending.
std::vector<SubId> invariant_subspace_ids(const Subgroup& h);
bool is_irreducible(const Subgroup& h);

std::size_t index(const Subgroup& h);
/// The conjugacy class of H, sorted.
std::vector<Subgroup> conjugates(const Subgroup& h);

/// Every scalar multiple of every representative of Y.
Subgroup pgl_preimage(const Context& gl, const Context& pgl, const Subgroup& y);
/// Throws NotScalarSaturated unless H contains the scalars.
Subgroup pgl_image(const Context& gl, const Context& pgl, const Subgroup& h);

}  // namespace glc::group
