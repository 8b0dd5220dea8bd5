#include <algorithm>

#include "solvlie/exactla.hpp"

namespace solvlie {

Polynomial QuadraticEigenvalue::min_factor() const {
  if (kind == EigenKind::Rational) return Polynomial::linear_root(value);
  // (t - p)^2 + q^2
  return Polynomial({value * value + imag_sq, -2 * value, 1});
}

namespace {

QuadraticEigenvalue eigen_of(const Factor& f) {
  QuadraticEigenvalue e;
  e.multiplicity = f.multiplicity;
  const auto& c = f.poly.coeffs();
  if (f.poly.degree() == 1) {
    e.kind = EigenKind::Rational;
    e.value = -c[0];
  } else {
    e.kind = EigenKind::ComplexPair;
    e.value = -c[1] / 2;
    e.imag_sq = c[0] - e.value * e.value;
  }
  return e;
}

bool eigen_less(const QuadraticEigenvalue& a, const QuadraticEigenvalue& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.value != b.value) return a.value < b.value;
  return a.imag_sq < b.imag_sq;
}

}  // namespace

EigenStructure eigen_structure(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("eigen_structure of non-square matrix");
  EigenStructure out;
  for (const auto& f : factor_supported(char_poly(m))) {
    EigenStructureEntry entry;
    entry.eigen = eigen_of(f);
    const auto d = static_cast<std::size_t>(f.poly.degree());
    const Matrix fm = f.poly.evaluate(m);
    // Blocks of size >= k number (r_{k-1} - r_k) / d.
    std::vector<std::size_t> at_least;
    std::size_t prev = m.rows(), covered = 0;
    Matrix pw = Matrix::identity(m.rows());
    while (covered < f.multiplicity) {
      pw = pw * fm;
      std::size_t r = rank(pw);
      std::size_t cnt = (prev - r) / d;
      if (cnt == 0) throw std::logic_error("eigen_structure: rank sequence stalled");
      at_least.push_back(cnt);
      covered += cnt;
      prev = r;
    }
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      std::size_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (std::size_t i = 0; i < at_least[k] - next; ++i) entry.block_sizes.push_back(static_cast<unsigned>(k + 1));
    }
    std::sort(entry.block_sizes.rbegin(), entry.block_sizes.rend());
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return eigen_less(a.eigen, b.eigen); });
  return out;
}

Matrix jordan_matrix(const EigenStructure& structure) {
  std::size_t n = 0;
  for (const auto& e : structure)
    for (unsigned s : e.block_sizes) n += s * (e.eigen.kind == EigenKind::ComplexPair ? 2 : 1);
  Matrix j(n, n);
  std::size_t at = 0;
  for (const auto& e : structure) {
    const bool pair = e.eigen.kind == EigenKind::ComplexPair;
    std::optional<Rational> q;
    if (pair) q = rational_sqrt(e.eigen.imag_sq);
    for (unsigned s : e.block_sizes) {
      if (!pair) {
        for (unsigned i = 0; i < s; ++i) {
          j(at + i, at + i) = e.eigen.value;
          if (i + 1 < s) j(at + i, at + i + 1) = 1;
        }
        at += s;
        continue;
      }
      for (unsigned i = 0; i < s; ++i) {
        std::size_t b = at + 2 * i;
        j(b, b) = e.eigen.value;
        j(b + 1, b + 1) = e.eigen.value;
        j(b, b + 1) = q ? *q : Rational(1);
        j(b + 1, b) = q ? Rational(-*q) : Rational(-e.eigen.imag_sq);
        if (i + 1 < s) {
          j(b, b + 2) = 1;
          j(b + 1, b + 3) = 1;
        }
      }
      at += 2 * s;
    }
  }
  return j;
}

Subspace intertwiners(std::span<const Matrix> a, std::span<const Matrix> b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("intertwiners: mismatched lists");
  const std::size_t n = a[0].rows(), m = b[0].rows();
  Matrix sys(a.size() * n * m, n * m);
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t row = t * n * m + i * m + j;
        for (std::size_t k = 0; k < n; ++k) sys(row, k * m + j) += a[t](i, k);
        for (std::size_t k = 0; k < m; ++k) sys(row, i * m + k) -= b[t](k, j);
      }
  }
  return nullspace(sys);
}

Subspace intertwiners(const Matrix& a, const Matrix& b) {
  return intertwiners(std::span<const Matrix>(&a, 1), std::span<const Matrix>(&b, 1));
}

RealJordanForm real_jordan_form(const Matrix& m) {
  RealJordanForm out;
  out.structure = eigen_structure(m);
  out.form = jordan_matrix(out.structure);
  auto s = invertible_element(intertwiners(m, out.form), m.rows());
  if (!s) throw std::logic_error("real_jordan_form: no invertible intertwiner found");
  out.change_of_basis = *s;
  return out;
}

}  // namespace solvlie
