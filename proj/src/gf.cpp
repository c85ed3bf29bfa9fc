#include "glc/gf.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>

#include "glc/error.hpp"

namespace glc::gf {

namespace {

// Conway polynomials, little-endian. Prime fields use the modulus t.
struct ModulusEntry {
  int q;
  std::vector<int> coeffs;
};

const std::vector<ModulusEntry>& extension_moduli() {
  static const std::vector<ModulusEntry> table = {
      {4, {1, 1, 1}},          {8, {1, 1, 0, 1}},  {9, {2, 2, 1}},
      {16, {1, 1, 0, 0, 1}},   {25, {2, 4, 1}},    {27, {1, 2, 0, 1}},
      {32, {1, 0, 1, 0, 0, 1}}, {49, {3, 6, 1}},   {64, {1, 1, 0, 1, 1, 0, 1}},
  };
  return table;
}

std::vector<int> to_digits(int a, int p, int k) {
  std::vector<int> d(k, 0);
  for (int i = 0; i < k; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

// Product of two residues modulo (modulus, p), on digit vectors.
int poly_mulmod(int a, int b, int p, int k, const std::vector<int>& modulus) {
  auto x = to_digits(a, p, k);
  auto y = to_digits(b, p, k);
  std::vector<int> prod(2 * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  // modulus is monic of degree k
  for (int d = 2 * k - 1; d >= k; --d) {
    int c = prod[d];
    if (c == 0) continue;
    for (int i = 0; i <= k; ++i) {
      int idx = d - k + i;
      prod[idx] = ((prod[idx] - c * modulus[i]) % p + p) % p;
    }
  }
  prod.resize(k);
  return from_digits(prod, p);
}

}  // namespace

bool prime_power(int q, int& p, int& k) {
  if (q < 2) return false;
  int base = 0;
  for (int d = 2; d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  int e = 0;
  int rest = q;
  while (rest % base == 0) {
    rest /= base;
    ++e;
  }
  if (rest != 1) return false;
  p = base;
  k = e;
  return true;
}

Field::Field(int p, int k, std::vector<int> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < k; ++i) q_ *= p;
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    auto da = to_digits(a, p, k);
    std::vector<int> dn(k);
    for (int i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Fe>(from_digits(dn, p));
    for (int b = 0; b < q_; ++b) {
      auto db = to_digits(b, p, k);
      std::vector<int> ds(k);
      for (int i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q_ + b] = static_cast<Fe>(from_digits(ds, p));
      mul_[a * q_ + b] = static_cast<Fe>(poly_mulmod(a, b, p, k, modulus_));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Fe>(b);
}

Fe Field::inv(Fe a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in GF(" + std::to_string(q_) + ")");
  return inv_[a];
}

Fe Field::pow(Fe a, std::uint64_t e) const {
  Fe result = 1;
  Fe base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

int Field::multiplicative_order(Fe a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "multiplicative order of zero");
  int e = 1;
  Fe x = a;
  while (x != 1) {
    x = mul(x, a);
    ++e;
  }
  return e;
}

std::vector<int> Field::digits(Fe a) const { return to_digits(a, p_, k_); }

const Field& field_new(int q) {
  int p = 0;
  int k = 0;
  if (q < 2 || q > kMaxFieldOrder || !prime_power(q, p, k))
    throw Error(ErrorCode::NotAPrimePower, "q = " + std::to_string(q) + " is not a prime power in [2, 64]");

  static std::array<std::unique_ptr<Field>, kMaxFieldOrder + 1> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  if (!cache[q]) {
    std::vector<int> modulus;
    if (k == 1) {
      modulus = {0, 1};
    } else {
      for (const auto& entry : extension_moduli())
        if (entry.q == q) modulus = entry.coeffs;
    }
    cache[q].reset(new Field(p, k, std::move(modulus)));
  }
  return *cache[q];
}

}  // namespace glc::gf
