#pragma once

#include <map>
#include <optional>
#include <string>

#include "solvlie/exactla.hpp"

namespace solvlie {

class JacobiViolation : public std::runtime_error {
 public:
  JacobiViolation(std::size_t i, std::size_t j, std::size_t k, Vector residual);
  std::size_t i, j, k;  // 1-based
  Vector residual;
};

class NotAnIdeal : public std::runtime_error {
 public:
  NotAnIdeal() : std::runtime_error("subspace is not an ideal") {}
};

/// One bracket [x_i, x_j] = sum_k coeffs[k] x_k, 1-based indices, i < j.
struct BracketEntry {
  std::size_t i = 0, j = 0;
  std::map<std::size_t, Rational> coeffs;
};

/// Structure constants over Q. Only i < j is stored; [x_j, x_i] = -[x_i, x_j].
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Validates Jacobi on all basis triples.
  static LieAlgebra make(std::size_t dim, const std::vector<BracketEntry>& brackets, std::string name = {});
  /// Only for negative tests and --skip-jacobi.
  static LieAlgebra make_unchecked(std::size_t dim, const std::vector<BracketEntry>& brackets, std::string name = {});
  static LieAlgebra abelian(std::size_t dim);

  std::size_t dim() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// [x_i, x_j] as a vector, 0-based, any order.
  Vector basis_bracket(std::size_t i, std::size_t j) const;
  Vector bracket(const Vector& u, const Vector& v) const;
  void set_basis_bracket(std::size_t i, std::size_t j, const Vector& value);  // 0-based, i < j

  /// First failing triple, or nullopt.
  std::optional<JacobiViolation> find_jacobi_violation() const;
  void validate() const;

  std::vector<BracketEntry> brackets() const;  // 1-based, nonzero only
  bool operator==(const LieAlgebra& o) const { return n_ == o.n_ && c_ == o.c_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;
  std::size_t n_ = 0;
  std::string name_;
  std::vector<Vector> c_;  // pairs i<j in lexicographic order
};

bool is_ideal(const LieAlgebra& l, const Subspace& s);

Subspace bracket_space(const LieAlgebra& l, const Subspace& a, const Subspace& b);
Subspace derived_subalgebra(const LieAlgebra& l);
/// L, L^1, L^2, ... until stable (the last entry repeats nothing).
std::vector<Subspace> derived_series(const LieAlgebra& l);
std::vector<Subspace> lower_central_series(const LieAlgebra& l);
bool is_solvable(const LieAlgebra& l);
bool is_nilpotent(const LieAlgebra& l);
Subspace center(const LieAlgebra& l);

/// Column j is [v, x_j].
Matrix adjoint_matrix(const LieAlgebra& l, const Vector& v);
/// ad_v restricted to an invariant subspace, in the subspace's reduced basis.
Matrix restricted_matrix(const Matrix& m, const Subspace& s);
Matrix restricted_adjoint(const LieAlgebra& l, const Vector& v);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Quotient basis: the standard vectors at non-pivot positions of the ideal.
struct QuotientMap {
  LieAlgebra algebra;
  std::vector<std::size_t> complement;  // ambient indices representing the quotient basis
  Subspace ideal;
  Vector project(const Vector& v) const;
};
QuotientMap quotient(const LieAlgebra& l, const Subspace& ideal);

/// Brackets relative to a new basis (columns of `basis`); basis must be invertible.
LieAlgebra change_basis(const LieAlgebra& l, const Matrix& basis);

/// Common catalog constructors.
LieAlgebra heisenberg3();
LieAlgebra filiform4();

}  // namespace solvlie
