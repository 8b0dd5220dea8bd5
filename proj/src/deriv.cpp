#include "solvlie/deriv.hpp"

#include <sstream>

namespace solvlie {

NotADerivation::NotADerivation(std::size_t i_, std::size_t j_, Vector r)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "not a derivation: Leibniz rule fails on pair (" << i_ << "," << j_ << "), residual [";
        for (std::size_t t = 0; t < r.size(); ++t) os << (t ? ", " : "") << to_string(r[t]);
        os << "]";
        return os.str();
      }()),
      i(i_), j(j_), residual(std::move(r)) {}

Matrix leibniz_system(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  const std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
  Matrix sys(pairs * n, n * n);
  std::size_t block = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++block) {
      const Vector cij = l.basis_bracket(i, j);
      for (std::size_t r = 0; r < n; ++r) {
        const Vector rj = l.basis_bracket(r, j), ir = l.basis_bracket(i, r);
        for (std::size_t k = 0; k < n; ++k) {
          std::size_t row = block * n + k;
          // d([x_i,x_j])_k - [d x_i, x_j]_k - [x_i, d x_j]_k
          sys(row, k * n + r) += cij[r];
          sys(row, r * n + i) -= rj[k];
          sys(row, r * n + j) -= ir[k];
        }
      }
    }
  return sys;
}

std::optional<NotADerivation> leibniz_violation(const LieAlgebra& l, const Matrix& d) {
  const std::size_t n = l.dim();
  if (d.rows() != n || d.cols() != n) throw std::invalid_argument("derivation matrix has wrong shape");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = d * l.basis_bracket(i, j);
      Vector rhs = add(l.bracket(d.column(i), unit_vector(n, j)), l.bracket(unit_vector(n, i), d.column(j)));
      Vector r = sub(lhs, rhs);
      if (!is_zero(r)) return NotADerivation(i + 1, j + 1, r);
    }
  return std::nullopt;
}

bool is_derivation(const LieAlgebra& l, const Matrix& d) { return !leibniz_violation(l, d); }

void require_derivation(const LieAlgebra& l, const Matrix& d) {
  if (auto v = leibniz_violation(l, d)) throw *v;
}

namespace {

std::vector<Matrix> as_matrices(const Subspace& s, std::size_t n) {
  std::vector<Matrix> out;
  for (const auto& v : s.basis()) out.push_back(unflatten(v, n, n));
  return out;
}

}  // namespace

std::vector<Matrix> DerivationSpace::full_basis() const { return as_matrices(full, n); }
std::vector<Matrix> DerivationSpace::inner_basis() const { return as_matrices(inner, n); }
std::vector<Matrix> DerivationSpace::h1_basis() const { return as_matrices(complement, n); }

DerivationSpace derivation_space(const LieAlgebra& l) {
  DerivationSpace s;
  s.n = l.dim();
  const std::size_t n = s.n;
  if (n == 0) return s;
  s.full = nullspace(leibniz_system(l));
  std::vector<Vector> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(flatten(adjoint_matrix(l, unit_vector(n, i))));
  s.inner = Subspace::span(n * n, ads);
  std::vector<Vector> reps;
  for (const auto& v : s.full.basis()) reps.push_back(s.inner.reduce(v));
  s.complement = Subspace::span(n * n, reps);
  if (!s.full.contains(s.inner) || s.complement.dim() + s.inner.dim() != s.full.dim())
    throw std::logic_error("derivation_space: inconsistent decomposition");
  return s;
}

Matrix project_to_h1(const DerivationSpace& space, const LieAlgebra& l, const Matrix& d) {
  require_derivation(l, d);
  return unflatten(space.inner.reduce(flatten(d)), space.n, space.n);
}

bool is_outer(const DerivationSpace& space, const LieAlgebra& l, const Matrix& d) {
  return !project_to_h1(space, l, d).is_zero();
}

Vector h1_coordinates(const DerivationSpace& space, const Matrix& rep) {
  auto c = space.complement.coordinates(flatten(rep));
  if (!c) throw std::invalid_argument("matrix is not in the H^1 transversal");
  return *c;
}

Matrix induced_quotient_map(const LieAlgebra& l, const Matrix& d, const Subspace& ideal) {
  for (const auto& v : ideal.basis())
    if (!ideal.contains(d * v)) throw IdealNotInvariant();
  QuotientMap q = quotient(l, ideal);
  const std::size_t m = q.complement.size();
  Matrix out(m, m);
  for (std::size_t b = 0; b < m; ++b) {
    Vector img = q.project(d.column(q.complement[b]));
    for (std::size_t a = 0; a < m; ++a) out(a, b) = img[a];
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace solvlie
