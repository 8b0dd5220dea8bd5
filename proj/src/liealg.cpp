#include "solvlie/liealg.hpp"

#include <sstream>

namespace solvlie {

namespace {

std::string describe_violation(std::size_t i, std::size_t j, std::size_t k, const Vector& r) {
  std::ostringstream os;
  os << "Jacobi identity fails on (" << i << "," << j << "," << k << "), residual [";
  for (std::size_t t = 0; t < r.size(); ++t) os << (t ? ", " : "") << to_string(r[t]);
  os << "]";
  return os.str();
}

}  // namespace

JacobiViolation::JacobiViolation(std::size_t i_, std::size_t j_, std::size_t k_, Vector r)
    : std::runtime_error(describe_violation(i_, j_, k_, r)), i(i_), j(j_), k(k_), residual(std::move(r)) {}

std::size_t LieAlgebra::index(std::size_t i, std::size_t j) const {
  // position of (i, j), i < j, in lexicographic order
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

LieAlgebra LieAlgebra::make_unchecked(std::size_t dim, const std::vector<BracketEntry>& brackets, std::string name) {
  LieAlgebra l = abelian(dim);
  l.name_ = std::move(name);
  for (const auto& b : brackets) {
    if (b.i < 1 || b.j > dim || b.i >= b.j) throw std::invalid_argument("bracket indices must satisfy 1 <= i < j <= dim");
    Vector v(dim);
    for (const auto& [k, q] : b.coeffs) {
      if (k < 1 || k > dim) throw std::invalid_argument("bracket coefficient index out of range");
      v[k - 1] = q;
    }
    l.c_[l.index(b.i - 1, b.j - 1)] = v;
  }
  return l;
}

LieAlgebra LieAlgebra::make(std::size_t dim, const std::vector<BracketEntry>& brackets, std::string name) {
  LieAlgebra l = make_unchecked(dim, brackets, std::move(name));
  l.validate();
  return l;
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
  LieAlgebra l;
  l.n_ = dim;
  l.c_.assign(dim * (dim - (dim ? 1 : 0)) / 2, Vector(dim));
  return l;
}

Vector LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  if (i == j) return Vector(n_);
  if (i < j) return c_[index(i, j)];
  return scale(c_[index(j, i)], -1);
}

void LieAlgebra::set_basis_bracket(std::size_t i, std::size_t j, const Vector& value) {
  if (i >= j || j >= n_ || value.size() != n_) throw std::invalid_argument("set_basis_bracket: bad arguments");
  c_[index(i, j)] = value;
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const {
  if (u.size() != n_ || v.size() != n_) throw std::invalid_argument("bracket: vector length mismatch");
  Vector r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j || v[j] == 0) continue;
      Rational f = u[i] * v[j];
      const Vector& c = c_[index(std::min(i, j), std::max(i, j))];
      if (i > j) f = -f;
      for (std::size_t k = 0; k < n_; ++k)
        if (c[k] != 0) r[k] += f * c[k];
    }
  }
  return r;
}

std::optional<JacobiViolation> LieAlgebra::find_jacobi_violation() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t k = j + 1; k < n_; ++k) {
        Vector xi = unit_vector(n_, i), xj = unit_vector(n_, j), xk = unit_vector(n_, k);
        Vector r = add(add(bracket(xi, basis_bracket(j, k)), bracket(xj, basis_bracket(k, i))),
                       bracket(xk, basis_bracket(i, j)));
        if (!is_zero(r)) return JacobiViolation(i + 1, j + 1, k + 1, r);
      }
  return std::nullopt;
}

void LieAlgebra::validate() const {
  if (auto v = find_jacobi_violation()) throw *v;
}

std::vector<BracketEntry> LieAlgebra::brackets() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Vector& c = c_[index(i, j)];
      if (is_zero(c)) continue;
      BracketEntry b{i + 1, j + 1, {}};
      for (std::size_t k = 0; k < n_; ++k)
        if (c[k] != 0) b.coeffs[k + 1] = c[k];
      out.push_back(std::move(b));
    }
  return out;
}

bool is_ideal(const LieAlgebra& l, const Subspace& s) {
  for (const auto& v : s.basis())
    for (std::size_t i = 0; i < l.dim(); ++i)
      if (!s.contains(l.bracket(unit_vector(l.dim(), i), v))) return false;
  return true;
}

Subspace bracket_space(const LieAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<Vector> vs;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) vs.push_back(l.bracket(u, v));
  return Subspace::span(l.dim(), vs);
}

Subspace derived_subalgebra(const LieAlgebra& l) {
  auto full = Subspace::full(l.dim());
  return bracket_space(l, full, full);
}

std::vector<Subspace> derived_series(const LieAlgebra& l) {
  std::vector<Subspace> out{Subspace::full(l.dim())};
  for (;;) {
    Subspace next = bracket_space(l, out.back(), out.back());
    if (next.dim() == out.back().dim()) break;
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& l) {
  auto full = Subspace::full(l.dim());
  std::vector<Subspace> out{full};
  for (;;) {
    Subspace next = bracket_space(l, full, out.back());
    if (next.dim() == out.back().dim()) break;
    out.push_back(std::move(next));
  }
  return out;
}

bool is_solvable(const LieAlgebra& l) { return derived_series(l).back().dim() == 0; }
bool is_nilpotent(const LieAlgebra& l) { return lower_central_series(l).back().dim() == 0; }

Matrix adjoint_matrix(const LieAlgebra& l, const Vector& v) {
  const std::size_t n = l.dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector c = l.bracket(v, unit_vector(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
  }
  return m;
}

Subspace center(const LieAlgebra& l) {
  // v is central iff ad_{x_i} v = 0 for every i.
  const std::size_t n = l.dim();
  Matrix sys(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix a = adjoint_matrix(l, unit_vector(n, i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) sys(i * n + r, c) = a(r, c);
  }
  return nullspace(sys);
}

Matrix restricted_matrix(const Matrix& m, const Subspace& s) {
  const std::size_t k = s.dim();
  Matrix r(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto coords = s.coordinates(m * s.basis()[j]);
    if (!coords) throw NotAnIdeal();
    for (std::size_t i = 0; i < k; ++i) r(i, j) = (*coords)[i];
  }
  return r;
}

Matrix restricted_adjoint(const LieAlgebra& l, const Vector& v) {
  return restricted_matrix(adjoint_matrix(l, v), derived_subalgebra(l));
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim() + b.dim();
  LieAlgebra l = LieAlgebra::abelian(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      Vector v(n), c = a.basis_bracket(i, j);
      for (std::size_t k = 0; k < a.dim(); ++k) v[k] = c[k];
      l.set_basis_bracket(i, j, v);
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = i + 1; j < b.dim(); ++j) {
      Vector v(n), c = b.basis_bracket(i, j);
      for (std::size_t k = 0; k < b.dim(); ++k) v[a.dim() + k] = c[k];
      l.set_basis_bracket(a.dim() + i, a.dim() + j, v);
    }
  return l;
}

Vector QuotientMap::project(const Vector& v) const {
  Vector r = ideal.reduce(v);
  Vector out(complement.size());
  for (std::size_t t = 0; t < complement.size(); ++t) out[t] = r[complement[t]];
  return out;
}

QuotientMap quotient(const LieAlgebra& l, const Subspace& ideal) {
  if (!is_ideal(l, ideal)) throw NotAnIdeal();
  QuotientMap q;
  q.ideal = ideal;
  std::vector<bool> piv(l.dim(), false);
  for (auto p : ideal.pivots()) piv[p] = true;
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (!piv[i]) q.complement.push_back(i);
  const std::size_t m = q.complement.size();
  q.algebra = LieAlgebra::abelian(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      q.algebra.set_basis_bracket(a, b, q.project(l.basis_bracket(q.complement[a], q.complement[b])));
  return q;
}

LieAlgebra change_basis(const LieAlgebra& l, const Matrix& basis) {
  auto inv = inverse(basis);
  if (!inv) throw std::invalid_argument("change_basis: basis is singular");
  const std::size_t n = l.dim();
  LieAlgebra out = LieAlgebra::abelian(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.set_basis_bracket(i, j, *inv * l.bracket(basis.column(i), basis.column(j)));
  out.set_name(l.name());
  return out;
}

LieAlgebra heisenberg3() {
  return LieAlgebra::make(3, {{2, 3, {{1, Rational(1)}}}}, "h3");
}

LieAlgebra filiform4() {
  return LieAlgebra::make(4, {{2, 4, {{1, Rational(1)}}}, {3, 4, {{2, Rational(1)}}}}, "g4");
}

}  // namespace solvlie
