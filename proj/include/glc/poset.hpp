#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace glc::poset {

using Bits = boost::dynamic_bitset<std::uint64_t>;
using Id = std::size_t;

/// Finite poset on dense ids 0..N-1. Both the up-set and the down-set of
/// every element are stored as bitsets; the relation is validated on
/// construction and the object is immutable afterwards.
class FinitePoset {
 public:
  FinitePoset() = default;
  /// up[i] = { j : i <= j }. Throws InvalidArgs unless the relation is a
  /// partial order.
  explicit FinitePoset(std::vector<Bits> up);
  static FinitePoset from_relation(std::size_t n, const std::function<bool(Id, Id)>& leq);

  std::size_t size() const { return up_.size(); }
  bool leq(Id x, Id y) const { return up_[x].test(y); }
  bool lt(Id x, Id y) const { return x != y && up_[x].test(y); }
  const Bits& up(Id x) const { return up_[x]; }
  const Bits& down(Id x) const { return down_[x]; }

  /// Ids sorted by down-set size, a linear extension of the order.
  const std::vector<Id>& linear_extension() const { return linear_; }
  std::optional<Id> bottom() const;
  std::optional<Id> top() const;

  /// Lower covers of x.
  std::vector<Id> lower_covers(Id x) const;
  std::vector<std::pair<Id, Id>> covers() const;

  /// Induced subposet; element i of the result is ids[i].
  FinitePoset subposet(const std::vector<Id>& ids) const;

  /// Opaque tags, never used by any operation.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

 private:
  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::vector<Id> linear_;
  std::vector<std::string> labels_;
};

FinitePoset chain(int length);
FinitePoset antichain(std::size_t n);
FinitePoset boolean_lattice(int atoms);
FinitePoset direct_product(const FinitePoset& p, const FinitePoset& q);
FinitePoset product_of_chains(const std::vector<int>& lengths);

// ---- Möbius function -------------------------------------------------------

/// mu(x, y); 0 unless x <= y. Throws InvalidElement.
std::int64_t mobius(const FinitePoset& p, Id x, Id y);
/// mu(x, y) for every x, fixed y.
std::vector<std::int64_t> mobius_to(const FinitePoset& p, Id y);
/// mu(x, y) for every y, fixed x.
std::vector<std::int64_t> mobius_from(const FinitePoset& p, Id x);
/// Full table, the inverse of the zeta matrix.
std::vector<std::vector<std::int64_t>> mobius_all(const FinitePoset& p);
/// mu(x, y) in the subposet induced on `subset`, which must contain x and y.
std::int64_t mobius_in(const FinitePoset& p, const Bits& subset, Id x, Id y);

// ---- Lattices ---------------------------------------------------------------

struct LatticeInfo {
  std::vector<std::vector<Id>> join;
  std::vector<std::vector<Id>> meet;
  Id bottom = 0;
  Id top = 0;
};

/// Throws NotALattice.
LatticeInfo lattice_info(const FinitePoset& p);
bool is_lattice(const FinitePoset& p);
bool is_distributive(const LatticeInfo& info);

/// Non-bottom elements u with u = x v y => u in {x, y}. Throws NotALattice.
Bits join_irreducibles(const FinitePoset& p);

/// Downward closure. Throws InvalidElement on a size mismatch.
Bits order_ideal_generated(const FinitePoset& p, const Bits& generators);
bool is_order_ideal(const FinitePoset& p, const Bits& set);

struct IdealDecomposition {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool equal() const { return lhs == rhs; }
};

/// Both sides of the decomposition of mu(0,1) along an order ideal I:
///   mu_L(0,1) = mu_{I+1}(0,1) + sum_{y not in I+1} mu_{I<y + y}(0,y) * mu_L(y,1).
/// Needs a bottom and a top; throws NotALattice otherwise, NotAnIdeal unless
/// I is downward closed and contains the bottom.
IdealDecomposition ideal_decomposition_check(const FinitePoset& p, const Bits& ideal);

// ---- Isomorphism and shape -------------------------------------------------

inline constexpr std::size_t kDefaultIsoCap = 40;

/// Exact backtracking search. Throws CapExceeded if a size exceeds cap.
bool is_isomorphic(const FinitePoset& a, const FinitePoset& b, std::size_t cap = kDefaultIsoCap);

struct LatticeClass {
  enum class Kind { Chain, Boolean, ProductOfChains, Other };
  Kind kind = Kind::Other;
  /// Chain: {length}; Boolean: r ones; ProductOfChains: lengths, descending.
  std::vector<int> profile;

  bool is_product_of_chains() const { return kind != Kind::Other; }
  bool is_boolean() const;
  bool is_chain() const { return kind == Kind::Chain; }
  bool operator==(const LatticeClass&) const = default;
};

std::string to_string(LatticeClass::Kind kind);

/// Chain if totally ordered; Boolean if a product of length-1 chains;
/// ProductOfChains if distributive with join-irreducibles forming disjoint
/// chains (confirmed by an explicit isomorphism); else Other.
LatticeClass classify(const FinitePoset& p);

/// Cover relation as text: a header line "poset <N>", then one "<lower> <upper>"
/// line per cover pair in ascending order.
std::string to_edge_list(const FinitePoset& p);

}  // namespace glc::poset
