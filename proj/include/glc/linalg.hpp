#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glc/gf.hpp"
#include "glc/poset.hpp"

namespace glc::linalg {

using gf::Fe;
using gf::Field;

/// Row vector over a field. Group elements act on the right: v -> v * g.
using Vec = std::vector<Fe>;

inline constexpr int kMaxPolyMatrixDim = 8;

class Matrix {
 public:
  Matrix(const Field& field, int n);
  Matrix(const Field& field, int n, std::vector<Fe> entries);

  static Matrix identity(const Field& field, int n);
  static Matrix scalar(const Field& field, int n, Fe lambda);
  /// Companion matrix of a monic polynomial given little-endian coefficients
  /// c_0..c_{n-1} (the leading 1 omitted). Acting on row vectors, e_i -> e_{i+1}.
  static Matrix companion(const Field& field, std::span<const Fe> lower_coeffs);

  int n() const { return n_; }
  const Field& field() const { return *field_; }
  Fe at(int r, int c) const { return entries_[r * n_ + c]; }
  Fe& at(int r, int c) { return entries_[r * n_ + c]; }
  std::span<const Fe> row(int r) const { return {entries_.data() + r * n_, static_cast<std::size_t>(n_)}; }
  const std::vector<Fe>& entries() const { return entries_; }

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix scaled(Fe lambda) const;
  bool operator==(const Matrix& other) const;

  bool is_zero() const;
  Fe determinant() const;
  bool invertible() const { return determinant() != 0; }
  /// Throws SingularMatrix.
  Matrix inverse() const;

 private:
  const Field* field_;
  int n_;
  std::vector<Fe> entries_;
};

/// v * m for a row vector v.
Vec row_times(const Vec& v, const Matrix& m);

/// Polynomial over F_q with little-endian coefficients and no trailing zeros.
class Poly {
 public:
  explicit Poly(const Field& field) : field_(&field) {}
  Poly(const Field& field, std::vector<Fe> coeffs);

  static Poly constant(const Field& field, Fe c);
  static Poly monomial(const Field& field, int degree);

  const Field& field() const { return *field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  Fe coeff(int i) const { return i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : Fe{0}; }
  Fe lead() const { return coeffs_.empty() ? Fe{0} : coeffs_.back(); }
  const std::vector<Fe>& coeffs() const { return coeffs_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(Fe c) const;
  /// Quotient and remainder; throws DivisionByZero on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly monic() const;
  bool divides(const Poly& other) const;

  bool operator==(const Poly& o) const { return field_ == o.field_ && coeffs_ == o.coeffs_; }
  /// Degree first, then coefficients from the top down.
  bool operator<(const Poly& o) const;

 private:
  void trim();
  const Field* field_;
  std::vector<Fe> coeffs_;
};

Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);

/// A subspace of F_q^n stored as its reduced row-echelon basis. The RREF is
/// unique, so structural equality is subspace equality.
class Subspace {
 public:
  Subspace(const Field& field, int n) : field_(&field), n_(n) {}

  const Field& field() const { return *field_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }
  bool contains(const Vec& v) const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && field_ == o.field_ && basis_ == o.basis_; }
  /// Dimension first, then lexicographic on the flattened RREF basis.
  bool operator<(const Subspace& o) const;

 private:
  friend Subspace rref(const Field& field, int n, std::vector<Vec> rows);
  const Field* field_;
  int n_;
  std::vector<Vec> basis_;
};

/// Canonical span of the rows. Throws DimensionMismatch on a length mismatch.
Subspace rref(const Field& field, int n, std::vector<Vec> rows);
Subspace full_space(const Field& field, int n);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool subspace_leq(const Subspace& a, const Subspace& b);

inline constexpr std::uint64_t kDefaultSubspaceCap = 10000;

/// Every subspace of F_q^n once, ordered by dimension then RREF. Throws
/// CapExceeded when the total count exceeds cap.
std::vector<Subspace> all_subspaces(int n, const Field& field, std::uint64_t cap = kDefaultSubspaceCap);

/// W^g = { v * g : v in W }. Throws SingularMatrix for a singular g.
Subspace image(const Subspace& w, const Matrix& g);
/// Same as image() without the invertibility check; for callers that
/// already hold group elements.
Subspace image_unchecked(const Subspace& w, const Matrix& g);

/// { v : v * m = 0 }, the kernel for the right action on row vectors.
Subspace kernel(const Matrix& m);
/// { c : c * rows = 0 } for an arbitrary list of rows of length ncols.
Subspace left_null_space(const Field& field, const std::vector<Vec>& rows, int ncols);

/// det(tI - M). Cofactor expansion for n <= 5, Bareiss over F_q[t] above.
/// Throws DimensionTooLarge for n > 8.
Poly char_poly(const Matrix& m);
Poly char_poly_cofactor(const Matrix& m);
Poly char_poly_bareiss(const Matrix& m);

/// LCM of the Krylov minimal polynomials of the standard basis vectors.
Poly min_poly(const Matrix& m);

/// Throws SingularMatrix.
bool is_cyclic(const Matrix& m);

Matrix poly_eval_matrix(const Poly& f, const Matrix& m);

struct Factor {
  Poly irreducible;
  int multiplicity;
};

/// Trial division by monic polynomials of increasing degree. Throws NotMonic
/// and DimensionTooLarge (degree > 8).
std::vector<Factor> factor_poly(const Poly& f);

struct DivisorLattice {
  std::vector<Poly> divisors;
  poset::FinitePoset order;  // divisibility
};

DivisorLattice monic_divisors(const Poly& f);

// Text formats: matrices "a,b;c,d" (rows by ';', entries by ','), polynomials
// and vectors as comma-separated little-endian coefficients.
Matrix parse_matrix(const Field& field, std::string_view text);
std::string format_matrix(const Matrix& m);
Poly parse_poly(const Field& field, std::string_view text);
std::string format_poly(const Poly& f);
std::string format_vec(const Vec& v);
std::string format_subspace(const Subspace& s);

}  // namespace glc::linalg
