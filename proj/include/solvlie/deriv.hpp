#pragma once

#include "solvlie/liealg.hpp"

namespace solvlie {

class NotADerivation : public std::runtime_error {
 public:
  NotADerivation(std::size_t i, std::size_t j, Vector residual);
  std::size_t i, j;  // 1-based basis pair
  Vector residual;
};

class IdealNotInvariant : public std::runtime_error {
 public:
  IdealNotInvariant() : std::runtime_error("subspace is not invariant under the map") {}
};

/// Subspaces of n x n matrices flattened row-major.
struct DerivationSpace {
  std::size_t n = 0;
  Subspace full;        // Der(L)
  Subspace inner;       // ad(L)
  Subspace complement;  // H^1 transversal: elements of Der vanishing at the pivots of ad(L)

  std::size_t h1_dim() const { return complement.dim(); }
  std::vector<Matrix> full_basis() const;
  std::vector<Matrix> inner_basis() const;
  std::vector<Matrix> h1_basis() const;
};

/// The n^2-unknown Leibniz system; its nullspace is Der(L).
Matrix leibniz_system(const LieAlgebra& l);

/// First pair (i, j) where Leibniz fails, or nullopt.
std::optional<NotADerivation> leibniz_violation(const LieAlgebra& l, const Matrix& d);
bool is_derivation(const LieAlgebra& l, const Matrix& d);
void require_derivation(const LieAlgebra& l, const Matrix& d);

DerivationSpace derivation_space(const LieAlgebra& l);

/// Representative in the complement with d - rep inner.
Matrix project_to_h1(const DerivationSpace& space, const LieAlgebra& l, const Matrix& d);
bool is_outer(const DerivationSpace& space, const LieAlgebra& l, const Matrix& d);

/// Coordinates of a complement element in `h1_basis()`.
Vector h1_coordinates(const DerivationSpace& space, const Matrix& rep);

/// Matrix of the map induced by d on L / I, in the quotient basis of `quotient`.
Matrix induced_quotient_map(const LieAlgebra& l, const Matrix& d, const Subspace& ideal);

/// Matrix commutator ab - ba.
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace solvlie
