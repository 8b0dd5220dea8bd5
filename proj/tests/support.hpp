#pragma once

#include <algorithm>
#include <numeric>
#include <random>

#include "solvlie/exactla.hpp"

namespace testsupport {

using solvlie::Matrix;
using solvlie::Rational;

inline Matrix M(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  return Matrix::from_rows(r);
}

inline Rational rand_rational(std::mt19937_64& rng, int span = 3) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational rand_nonzero(std::mt19937_64& rng, int span = 3) {
  Rational q;
  do q = rand_rational(rng, span);
  while (q == 0);
  return q;
}

inline Matrix rand_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span = 3) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_rational(rng, span);
  return m;
}

inline Matrix rand_invertible(std::mt19937_64& rng, std::size_t n, int span = 2) {
  for (;;) {
    Matrix m = rand_matrix(rng, n, n, span);
    if (solvlie::determinant(m) != 0) return m;
  }
}

// Determinant by permutation expansion; independent of elimination.
inline Rational leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    Rational term = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace testsupport
