#include <algorithm>
#include <functional>
#include <optional>
#include <string>

#include "glc/error.hpp"
#include "glc/linalg.hpp"

namespace glc::linalg {

Poly::Poly(const Field& field, std::vector<Fe> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
  for (Fe c : coeffs_)
    if (!field.valid(c)) throw Error(ErrorCode::InvalidElement, "coefficient outside the field");
  trim();
}

Poly Poly::constant(const Field& field, Fe c) { return Poly(field, {c}); }

Poly Poly::monomial(const Field& field, int degree) {
  std::vector<Fe> c(static_cast<std::size_t>(degree + 1), 0);
  c.back() = 1;
  return Poly(field, std::move(c));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  Poly out(*field_);
  out.coeffs_.assign(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] = field_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  out.trim();
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out(*field_);
  out.coeffs_.assign(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] = field_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  out.trim();
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out(*field_);
  if (is_zero() || o.is_zero()) return out;
  out.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out.coeffs_[i + j] = field_->add(out.coeffs_[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
  }
  out.trim();
  return out;
}

Poly Poly::scaled(Fe c) const {
  Poly out(*field_);
  out.coeffs_ = coeffs_;
  for (Fe& x : out.coeffs_) x = field_->mul(x, c);
  out.trim();
  return out;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const Field& f = *field_;
  Poly rem = *this;
  Poly quot(f);
  if (rem.degree() < divisor.degree()) return {quot, rem};
  quot.coeffs_.assign(static_cast<std::size_t>(rem.degree() - divisor.degree() + 1), 0);
  const Fe lead_inv = f.inv(divisor.lead());
  for (int d = rem.degree(); d >= divisor.degree(); --d) {
    const Fe c = f.mul(rem.coeffs_[d], lead_inv);
    if (c == 0) continue;
    const int shift = d - divisor.degree();
    quot.coeffs_[shift] = c;
    for (int i = 0; i <= divisor.degree(); ++i)
      rem.coeffs_[shift + i] = f.sub(rem.coeffs_[shift + i], f.mul(c, divisor.coeffs_[i]));
  }
  rem.trim();
  quot.trim();
  return {quot, rem};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(lead()));
}

bool Poly::divides(const Poly& other) const { return other.divmod(*this).second.is_zero(); }

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return std::lexicographical_compare(coeffs_.rbegin(), coeffs_.rend(), o.coeffs_.rbegin(), o.coeffs_.rend());
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x.divmod(y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return (a * b).divmod(poly_gcd(a, b)).first.monic();
}

// ---- Characteristic and minimal polynomials ---------------------------------

namespace {

void check_poly_dim(const Matrix& m) {
  if (m.n() > kMaxPolyMatrixDim)
    throw Error(ErrorCode::DimensionTooLarge, "polynomial matrix algorithms limited to n <= 8");
}

// Entries of tI - M.
std::vector<Poly> char_matrix(const Matrix& m) {
  const Field& f = m.field();
  const int n = m.n();
  std::vector<Poly> a;
  a.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly entry(f, {f.neg(m.at(i, j))});
      if (i == j) entry = entry + Poly::monomial(f, 1);
      a.push_back(std::move(entry));
    }
  return a;
}

}  // namespace

Poly char_poly_cofactor(const Matrix& m) {
  check_poly_dim(m);
  const Field& f = m.field();
  const int n = m.n();
  const auto a = char_matrix(m);
  // det of rows n-|mask|..n-1 restricted to the columns in mask, expanded
  // along its first row and memoized on the column mask.
  std::vector<std::optional<Poly>> memo(std::size_t{1} << n);
  std::function<Poly(unsigned)> det = [&](unsigned mask) -> Poly {
    if (mask == 0) return Poly::constant(f, 1);
    if (memo[mask]) return *memo[mask];
    const int row = n - __builtin_popcount(mask);
    Poly acc(f);
    int position = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const Poly& entry = a[row * n + c];
      if (!entry.is_zero()) {
        Poly term = entry * det(mask & ~(1u << c));
        acc = (position % 2 == 0) ? acc + term : acc - term;
      }
      ++position;
    }
    memo[mask] = acc;
    return acc;
  };
  return det((1u << n) - 1);
}

Poly char_poly_bareiss(const Matrix& m) {
  check_poly_dim(m);
  const Field& f = m.field();
  const int n = m.n();
  auto a = char_matrix(m);
  bool negate = false;
  Poly prev = Poly::constant(f, 1);
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k * n + k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (!a[r * n + k].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return Poly(f);
      for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly num = a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j];
        a[i * n + j] = num.divmod(prev).first;
      }
      a[i * n + k] = Poly(f);
    }
    prev = a[k * n + k];
  }
  Poly det = a[(n - 1) * n + (n - 1)];
  return negate ? det.scaled(f.neg(1)) : det;
}

Poly char_poly(const Matrix& m) {
  check_poly_dim(m);
  return m.n() <= 5 ? char_poly_cofactor(m) : char_poly_bareiss(m);
}

Poly min_poly(const Matrix& m) {
  check_poly_dim(m);
  const Field& f = m.field();
  const int n = m.n();
  Poly result = Poly::constant(f, 1);
  for (int i = 0; i < n; ++i) {
    // Reduced Krylov vectors with the polynomial p such that r = e_i * p(M).
    struct Reduced {
      Vec r;
      int pivot;
      Poly p;
    };
    std::vector<Reduced> basis;
    Vec v(n, 0);
    v[i] = 1;
    for (int j = 0;; ++j) {
      Vec w = v;
      Poly p = Poly::monomial(f, j);
      for (const auto& b : basis) {
        const Fe c = w[b.pivot];
        if (c == 0) continue;
        for (int t = 0; t < n; ++t) w[t] = f.sub(w[t], f.mul(c, b.r[t]));
        p = p - b.p.scaled(c);
      }
      int pivot = -1;
      for (int t = 0; t < n; ++t)
        if (w[t] != 0) {
          pivot = t;
          break;
        }
      if (pivot < 0) {
        result = poly_lcm(result, p.monic());
        break;
      }
      const Fe inv = f.inv(w[pivot]);
      for (Fe& x : w) x = f.mul(x, inv);
      basis.push_back({w, pivot, p.scaled(inv)});
      v = row_times(v, m);
    }
  }
  return result;
}

bool is_cyclic(const Matrix& m) {
  if (!m.invertible()) throw Error(ErrorCode::SingularMatrix, "cyclic test requires an invertible matrix");
  return min_poly(m).degree() == m.n();
}

// ---- Factorization and divisors ---------------------------------------------

std::vector<Factor> factor_poly(const Poly& f) {
  if (!f.is_monic()) throw Error(ErrorCode::NotMonic, "factorization requires a monic polynomial");
  if (f.degree() > kMaxPolyMatrixDim) throw Error(ErrorCode::DimensionTooLarge, "factorization limited to degree <= 8");
  const Field& field = f.field();
  const int q = field.q();
  std::vector<Factor> out;
  Poly rest = f;
  // Monic candidates by increasing degree: the first divisor found in each
  // degree is necessarily irreducible.
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    std::vector<Fe> lower(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<Fe> c = lower;
      c.push_back(1);
      Poly g(field, std::move(c));
      int mult = 0;
      while (true) {
        auto [quot, rem] = rest.divmod(g);
        if (!rem.is_zero()) break;
        rest = quot;
        ++mult;
      }
      if (mult > 0) out.push_back({g, mult});
      if (2 * d > rest.degree()) break;
      int pos = 0;
      while (pos < d && ++lower[pos] == q) lower[pos++] = 0;
      if (pos == d) break;
    }
  }
  if (rest.degree() >= 1) out.push_back({rest, 1});
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.irreducible < b.irreducible; });
  return out;
}

DivisorLattice monic_divisors(const Poly& f) {
  const auto factors = factor_poly(f);
  std::vector<Poly> divisors = {Poly::constant(f.field(), 1)};
  for (const auto& fac : factors) {
    std::vector<Poly> next;
    for (const auto& d : divisors) {
      Poly power = d;
      for (int e = 0; e <= fac.multiplicity; ++e) {
        next.push_back(power);
        power = power * fac.irreducible;
      }
    }
    divisors = std::move(next);
  }
  std::sort(divisors.begin(), divisors.end());
  auto order = poset::FinitePoset::from_relation(
      divisors.size(), [&](poset::Id a, poset::Id b) { return divisors[a].divides(divisors[b]); });
  return {std::move(divisors), std::move(order)};
}

}  // namespace glc::linalg
