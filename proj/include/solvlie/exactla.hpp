#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace solvlie {

/// Exact rational scalar. GMP keeps numerator/denominator canonical after
/// every operation.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Rational> diag);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Rational>& entries() const { return data_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  bool is_zero() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix scaled(const Rational& s) const;
  bool operator==(const Matrix& o) const = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Rational& s, const Matrix& m);

bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const Rational& s);
Vector unit_vector(std::size_t n, std::size_t i);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
Matrix power(const Matrix& m, unsigned k);

/// A linear subspace of Q^n held as the nonzero rows of its reduced row
/// echelon form, so equal subspaces have equal representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in `basis()`; empty optional when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;
  /// v minus its projection along the pivot coordinates.
  Vector reduce(const Vector& v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace nullspace(const Matrix& m);
Subspace column_space(const Matrix& m);
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

/// Dense polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial monomial(unsigned degree, const Rational& c = 1);
  static Polynomial linear_root(const Rational& root);  // t - root

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }
  bool is_zero() const { return c_.empty(); }

  Rational operator()(const Rational& t) const;
  Matrix evaluate(const Matrix& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  bool operator==(const Polynomial& o) const = default;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};
PolyDivision divide(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

Polynomial char_poly(const Matrix& m);

class IrreducibleFactorDegreeTooHigh : public std::runtime_error {
 public:
  explicit IrreducibleFactorDegreeTooHigh(int degree);
  int degree;
};

/// Real quadratic irrationalities (e.g. t^2 - 2) are outside the supported
/// eigenvalue field as well.
class IrrationalRealEigenvalue : public std::runtime_error {
 public:
  explicit IrrationalRealEigenvalue(Rational discriminant);
  Rational discriminant;
};

struct Factor {
  Polynomial poly;  // monic, degree 1 or 2 (irreducible over Q)
  unsigned multiplicity = 0;
};

/// Factors a nonzero polynomial over Q into linear and irreducible quadratic
/// factors with negative discriminant. Throws when another factor appears.
std::vector<Factor> factor_supported(const Polynomial& p);

enum class EigenKind { Rational = 0, ComplexPair = 1 };

/// Either a rational eigenvalue or a conjugate pair p +- i q stored as (p, q^2).
struct QuadraticEigenvalue {
  EigenKind kind = EigenKind::Rational;
  Rational value;      // rational eigenvalue, or real part p
  Rational imag_sq;    // q^2 > 0 for pairs, 0 otherwise
  unsigned multiplicity = 0;

  Polynomial min_factor() const;
  bool same_point(const QuadraticEigenvalue& o) const {
    return kind == o.kind && value == o.value && imag_sq == o.imag_sq;
  }
};

struct EigenStructureEntry {
  QuadraticEigenvalue eigen;
  std::vector<unsigned> block_sizes;  // descending; pair blocks counted in complex size
};

/// Spectrum with Jordan partitions, entries ordered by
/// (kind, value, imag_sq).
using EigenStructure = std::vector<EigenStructureEntry>;

EigenStructure eigen_structure(const Matrix& m);

struct RealJordanForm {
  Matrix form;             // J
  Matrix change_of_basis;  // S with S^-1 m S = J
  EigenStructure structure;
};

/// Block of an irrational-q pair uses the rational companion-style block
/// [[p, 1], [-q^2, p]]; rational q gives [[p, q], [-q, p]].
Matrix jordan_matrix(const EigenStructure& structure);
RealJordanForm real_jordan_form(const Matrix& m);

std::optional<Rational> rational_sqrt(const Rational& q);

/// Finds an invertible element of a matrix subspace (basis given as n*n
/// row-major vectors) by trying deterministic integer combinations.
std::optional<Matrix> invertible_element(const Subspace& space, std::size_t n);

/// {X : a_i X = X b_i for all i}, as n*m row-major vectors.
Subspace intertwiners(std::span<const Matrix> a, std::span<const Matrix> b);
Subspace intertwiners(const Matrix& a, const Matrix& b);

Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

}  // namespace solvlie
