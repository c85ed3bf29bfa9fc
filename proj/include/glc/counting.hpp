#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "glc/closure.hpp"
#include "glc/group.hpp"
#include "glc/poset.hpp"
#include "glc/report.hpp"

namespace glc::counting {

using group::BigInt;
using group::Context;
using group::ElemId;
using group::SubId;
using group::Subgroup;
using Rational = boost::rational<std::int64_t>;

// ---- q-combinatorics ---------------------------------------------------------

/// [n]_q! = prod_{i=1..n} (1 + q + ... + q^(i-1)).
BigInt q_factorial(int n, int q);
/// Throws InvalidArgs unless 0 <= x <= n.
BigInt q_binomial(int n, int x, int q);
/// |GL(n,q)| / prod |GL(x_i,q)| for a decomposition with dimensions x_i,
/// via prod_i C(n - x_1 - ... - x_(i-1), x_i)_q * q^eps, eps = sum_{i<j} x_i x_j.
/// Throws InvalidArgs unless every x_i >= 1 and they sum to n.
BigInt boolean_index(int n, const std::vector<int>& dims, int q);
/// Number of flags of the given type, C(n,d_k)_q C(d_k,d_(k-1))_q ... C(d_2,d_1)_q.
/// Throws InvalidArgs unless 0 < d_1 < ... < d_k < n.
BigInt flag_count(int n, int q, const std::vector<int>& type);

/// Ordered factorizations of m into factors >= 2; {()} for m = 1. Throws
/// CheckFailed if there are more than m^2 of them.
std::vector<std::vector<std::uint64_t>> ordered_factorizations(std::uint64_t m);
/// Same count by dynamic programming over divisors.
std::uint64_t count_ordered_factorizations(std::uint64_t m);

// ---- Decompositions and censuses ---------------------------------------------

/// An unordered direct-sum decomposition of V; summands are ascending ids.
struct Decomposition {
  std::vector<SubId> summands;
};

std::vector<Decomposition> enumerate_decompositions(const Context& ctx);

enum class Method { BruteForce, Constructive };
std::string to_string(Method m);

struct CensusEntry {
  Subgroup h;
  std::size_t index = 0;
  poset::LatticeClass cls;
  /// Constructive only: the flag counts y_i of the first candidate that
  /// produced the subgroup, one per summand.
  std::vector<BigInt> y_factors;
};

struct CensusRow {
  std::size_t m = 0;
  std::vector<CensusEntry> entries;  // X_m, sorted by subgroup
  std::size_t c() const { return entries.size(); }
  std::size_t boolean() const;
  std::size_t flag() const;
};

struct Census {
  std::string context;
  group::Flavor flavor = group::Flavor::GL;
  int n = 0;
  int q = 0;
  std::size_t m_max = 0;
  Method method = Method::BruteForce;
  std::vector<CensusRow> rows;  // ascending m, only m with c(m) > 0
};

/// Stabilizers of every flag-in-each-summand configuration, deduped and
/// filtered to index <= m_max and a product-of-chains invariant lattice.
/// Needs only element and subspace enumeration. Empty for m_max = 0.
Census census_constructive(const Context& ctx, std::size_t m_max);
/// Closed subgroups of the full subgroup lattice, same filters.
Census census_bruteforce(const Context& ctx, std::size_t m_max);

/// Member-set multisets of X_m, B_m and F_m agree for every m.
bool census_equal(const Census& a, const Census& b);

struct BoundRow {
  std::size_t m = 0;
  std::size_t x = 0;
  std::size_t b = 0;
  std::size_t f = 0;
  bool pass_b = false;  // |B_m| <= m^4
  bool pass_f = false;  // |F_m| <= m^4
  bool pass_x = false;  // |X_m| <= m^12
  bool pass() const { return pass_b && pass_f && pass_x; }
};

std::vector<BoundRow> bound_check(const Census& census);

// ---- Cyclic matrices ---------------------------------------------------------

struct CyclicProportion {
  std::size_t cyclic = 0;
  std::size_t total = 0;
  Rational gap;    // 1 - cyclic/total
  Rational bound;  // 1/(q(q^2-1))
  bool pass = false;
  bool equality = false;
};

/// Throws WrongFlavor for PGL and InvalidArgs for n < 2.
CyclicProportion cyclic_proportion(const Context& ctx);

struct DivisorIsoCheck {
  std::vector<int> profile;  // factor multiplicities, descending
  std::size_t invariant_count = 0;
  poset::LatticeClass cls;
  bool bijective = false;
  bool order_preserving = false;
  bool pass = false;
};

/// f |-> ker f(xi) from the monic divisors of the minimal polynomial onto
/// S(V,<xi>). Throws NotCyclic.
DivisorIsoCheck divisor_lattice_iso_check(const Context& ctx, ElemId xi);

struct ZCensus {
  std::map<std::size_t, std::size_t> counts;  // index -> number of subgroups
  std::vector<Subgroup> subgroups;            // sorted
};

/// Distinct cl(<xi>) over cyclic xi with index <= m_max. Throws WrongFlavor.
ZCensus z_census(const Context& ctx, std::size_t m_max);
/// One record per index: z(m) <= |X_m| with every counted subgroup in X_m.
std::vector<VerifyRecord> z_within_census(const ZCensus& z, const Census& census);

// ---- Sweeps ------------------------------------------------------------------

/// Divisor-lattice check for every cyclic element.
std::vector<VerifyRecord> sweep_divisor_lattices(const Context& ctx);
/// The cyclic-proportion bound as a single record.
std::vector<VerifyRecord> sweep_cyclic_proportion(const Context& ctx);

}  // namespace glc::counting
