#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace glc::gf {

/// Field element encoded as its index in [0, q-1]: the base-p digits of the
/// index are the coefficients (little-endian) of the polynomial representative.
using Fe = std::uint8_t;

inline constexpr int kMaxFieldOrder = 64;

/// The finite field GF(p^k) with a fixed monic irreducible modulus.
///
/// Arithmetic is polynomial arithmetic modulo (modulus, p); since q <= 64
/// every binary operation is served from a q*q table built once from that
/// arithmetic. Instances live for the whole process and are obtained through
/// field_new(); pointers to them are stable.
class Field {
 public:
  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }

  /// Little-endian coefficients of the modulus, length k + 1, monic.
  std::span<const int> modulus() const { return modulus_; }

  bool valid(int a) const { return a >= 0 && a < q_; }

  Fe add(Fe a, Fe b) const { return add_[a * q_ + b]; }
  Fe sub(Fe a, Fe b) const { return add_[a * q_ + neg_[b]]; }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe mul(Fe a, Fe b) const { return mul_[a * q_ + b]; }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, std::uint64_t e) const;

  /// Smallest e >= 1 with a^e = 1. Throws DivisionByZero for a = 0.
  int multiplicative_order(Fe a) const;

  /// Base-p digits of an element, little-endian, length k.
  std::vector<int> digits(Fe a) const;

 private:
  friend const Field& field_new(int q);
  Field(int p, int k, std::vector<int> modulus);

  int p_;
  int k_;
  int q_;
  std::vector<int> modulus_;
  std::vector<Fe> add_;
  std::vector<Fe> mul_;
  std::vector<Fe> neg_;
  std::vector<Fe> inv_;
};

/// Canonical field of order q. Throws NotAPrimePower unless q is a prime
/// power in [2, 64]. The same q always yields the same object and modulus.
const Field& field_new(int q);

/// Decomposes q = p^k; returns false when q is not a prime power >= 2.
bool prime_power(int q, int& p, int& k);

}  // namespace glc::gf
