#pragma once

#include "solvlie/classify.hpp"

namespace solvlie::detail {

bool all_rational(const std::vector<QuadScalar>& v);
std::vector<Rational> rationals(const std::vector<QuadScalar>& v);
Matrix unit_matrix(std::size_t n, std::size_t r, std::size_t c);
std::vector<std::vector<bool>> full_pattern(std::size_t m);

/// Template whose read hook runs the registered reducer for (key, mode).
FamilyTemplate make_family(const std::string& key, Mode mode, std::string name, std::vector<std::string> params,
                           std::size_t dim, const std::function<Matrix(const std::vector<Rational>&)>& gen,
                           std::string domain, std::function<bool(const std::vector<QuadScalar>&)> in_domain);

/// |x| <= 1.
bool within_unit(const QuadScalar& x);
bool positive(const QuadScalar& x);

/// Basis of derivations of K = H (+) Ry (y last) with d(K) in H, modulo ad(K).
std::vector<Matrix> ext2ad_coordinates(const LieAlgebra& k);

}  // namespace solvlie::detail
