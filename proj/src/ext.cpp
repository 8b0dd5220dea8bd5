#include "solvlie/ext.hpp"

namespace solvlie {

LieAlgebra extend_by_derivation(const LieAlgebra& k, const Matrix& d) {
  require_derivation(k, d);
  const std::size_t n = k.dim();
  LieAlgebra l = LieAlgebra::abelian(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector v = k.basis_bracket(i, j);
      v.push_back(0);
      l.set_basis_bracket(i, j, v);
    }
  for (std::size_t j = 0; j < n; ++j) {
    // [x_j, y] = -d(x_j)
    Vector v = scale(d.column(j), -1);
    v.push_back(0);
    l.set_basis_bracket(j, n, v);
  }
  l.validate();
  return l;
}

namespace {

std::vector<std::size_t> complement_indices(const Subspace& s) {
  std::vector<bool> piv(s.ambient_dim(), false);
  for (auto p : s.pivots()) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.ambient_dim(); ++i)
    if (!piv[i]) out.push_back(i);
  return out;
}

Subspace columns(const Matrix& m) { return column_space(m); }

}  // namespace

Codim1Verdict check_codim1_condition(const LieAlgebra& k, const Matrix& d) {
  require_derivation(k, d);
  const std::size_t n = k.dim();
  Subspace k1 = derived_subalgebra(k);
  Codim1Verdict v;
  v.m = k1.dim();
  auto comp = complement_indices(k1);

  Subspace image = columns(d) + k1;
  v.span_condition = true;
  for (auto i : comp) v.span_condition = v.span_condition && image.contains(unit_vector(n, i));

  // Basis adapted to K^1: the lower (n - m) rows of d in it must have full rank.
  std::vector<Vector> cols = k1.basis();
  for (auto i : comp) cols.push_back(unit_vector(n, i));
  Matrix p = Matrix::from_columns(cols);
  Matrix dp = *inverse(p) * d * p;
  std::vector<std::size_t> lower, all;
  for (std::size_t i = v.m; i < n; ++i) lower.push_back(i);
  for (std::size_t i = 0; i < n; ++i) all.push_back(i);
  v.rank_condition = rank(dp.submatrix(lower, all)) == n - v.m;

  Matrix q = induced_quotient_map(k, d, k1);
  v.quotient_invertible = q.rows() == 0 || determinant(q) != 0;

  if (v.span_condition != v.rank_condition || v.rank_condition != v.quotient_invertible)
    throw ConditionDisagreement("codim-1 membership criteria");
  return v;
}

Matrix double_derivation(const Matrix& d, const Vector& zy) {
  const std::size_t n = d.rows();
  if (zy.size() != n) throw std::invalid_argument("[z,y] vector has wrong length");
  Matrix out(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = d(i, j);
    out(i, n) = zy[i];
  }
  return out;
}

LieAlgebra build_double_extension(const LieAlgebra& h, const Matrix& d_prime, const Matrix& d, const Vector& zy) {
  LieAlgebra k = extend_by_derivation(h, d_prime);
  return extend_by_derivation(k, double_derivation(d, zy));
}

LieAlgebra build(const ExtensionSpec& spec) {
  if (spec.is_double()) return build_double_extension(spec.base, *spec.d_prime, spec.d, spec.bracket_zy);
  return extend_by_derivation(spec.base, spec.d);
}

Codim2Verdict check_codim2_condition(const LieAlgebra& h, const Matrix& d_prime, const Matrix& d, const Vector& zy) {
  require_derivation(h, d_prime);
  require_derivation(extend_by_derivation(h, d_prime), double_derivation(d, zy));
  const std::size_t n = h.dim();
  Subspace h1 = derived_subalgebra(h);
  Codim2Verdict v;
  v.m = h1.dim();

  Subspace image = columns(d) + columns(d_prime) + Subspace::span(n, {zy}) + h1;
  v.span_condition = true;
  for (auto i : complement_indices(h1)) v.span_condition = v.span_condition && image.contains(unit_vector(n, i));

  QuotientMap q = quotient(h, h1);
  std::vector<Vector> imgs;
  for (std::size_t j = 0; j < n; ++j) {
    imgs.push_back(q.project(d.column(j)));
    imgs.push_back(q.project(d_prime.column(j)));
  }
  imgs.push_back(q.project(zy));
  v.image_condition = Subspace::span(n - v.m, imgs).dim() == n - v.m;

  if (v.span_condition != v.image_condition) throw ConditionDisagreement("codim-2 membership criteria");
  return v;
}

DecomposabilityCertificate is_decomposable_double(const LieAlgebra& h, const ExtensionSpec& spec) {
  if (!spec.is_double() || !spec.d_prime->is_zero())
    throw PreconditionViolated("expected a double extension with d' normalized to zero");
  const std::size_t n = h.dim();
  DecomposabilityCertificate c;
  Subspace z = center(h);
  std::vector<Vector> imgs;
  for (const auto& b : z.basis()) imgs.push_back(spec.d * b);
  if (imgs.empty()) {
    c.decomposable = is_zero(spec.bracket_zy);
    if (c.decomposable) c.central_preimage = Vector(n);
  } else {
    auto coef = solve(Matrix::from_columns(imgs), spec.bracket_zy);
    c.decomposable = coef.has_value();
    if (coef) {
      Vector x(n);
      for (std::size_t t = 0; t < coef->size(); ++t) x = add(x, scale(z.basis()[t], (*coef)[t]));
      c.central_preimage = x;
    }
  }
  bool abelian = h.brackets().empty();
  if (abelian && check_codim2_condition(h, *spec.d_prime, spec.d, spec.bracket_zy).member()) {
    c.nonsingular_crosscheck = determinant(spec.d) != 0;
    if (*c.nonsingular_crosscheck != c.decomposable) throw ConditionDisagreement("abelian decomposability");
  }
  return c;
}

bool verify_double_split(const LieAlgebra& h, const ExtensionSpec& spec, const Subspace& h1, const Subspace& h2) {
  if (!spec.is_double() || !is_zero(spec.bracket_zy)) return false;
  if (h1.dim() + h2.dim() != h.dim() || (h1 + h2).dim() != h.dim()) return false;
  for (const auto& a : h1.basis())
    for (const auto& b : h2.basis())
      if (!is_zero(h.bracket(a, b))) return false;
  if (!h1.contains(bracket_space(h, h1, h1))) return false;
  if (!h2.contains(bracket_space(h, h2, h2))) return false;
  for (const auto& a : h1.basis())
    if (!h1.contains(spec.d * a) || !is_zero(*spec.d_prime * a)) return false;
  for (const auto& b : h2.basis())
    if (!is_zero(spec.d * b) || !h2.contains(*spec.d_prime * b)) return false;
  return true;
}

bool verify_iso_witness_full(const LieAlgebra& l1, const LieAlgebra& l2, const Matrix& t) {
  const std::size_t n = l1.dim();
  if (l2.dim() != n || t.rows() != n || t.cols() != n) throw std::invalid_argument("witness dimension mismatch");
  if (determinant(t) == 0) throw NotInvertible("witness matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t * l1.basis_bracket(i, j) != l2.bracket(t.column(i), t.column(j))) return false;
  return true;
}

bool is_automorphism(const LieAlgebra& k, const Matrix& sigma) {
  if (determinant(sigma) == 0) return false;
  return verify_iso_witness_full(k, k, sigma);
}

AssembledWitness witness_from_triple(const LieAlgebra& k, const Matrix& d1, const Matrix& d2, const TripleWitness& w) {
  if (w.alpha == 0) throw std::invalid_argument("alpha must be nonzero");
  if (!is_automorphism(k, w.sigma)) throw NotAutomorphism();
  const std::size_t n = k.dim();
  Matrix residual = w.sigma * d1 * *inverse(w.sigma) - d2.scaled(w.alpha) - adjoint_matrix(k, w.u);
  if (!residual.is_zero()) throw IdentityFails(residual);
  AssembledWitness out;
  out.t = Matrix(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.t(i, j) = w.sigma(i, j);
    out.t(i, n) = w.u[i];
  }
  out.t(n, n) = w.alpha;
  out.verified = verify_iso_witness_full(extend_by_derivation(k, d1), extend_by_derivation(k, d2), out.t);
  if (!out.verified) throw ConditionDisagreement("triple identity holds but the assembled map is not an isomorphism");
  return out;
}

bool verify_weak_similarity_witness(const std::pair<Matrix, Matrix>& pair1, const std::pair<Matrix, Matrix>& pair2,
                                    const Matrix& s, const Matrix& coeffs) {
  auto sinv = inverse(s);
  if (!sinv) throw NotInvertible("S");
  if (coeffs.rows() != 2 || coeffs.cols() != 2 || determinant(coeffs) == 0) throw NotInvertible("coefficient matrix");
  const auto& [a, b] = pair1;
  Matrix a2 = *sinv * (a.scaled(coeffs(0, 0)) + b.scaled(coeffs(0, 1))) * s;
  Matrix b2 = *sinv * (a.scaled(coeffs(1, 0)) + b.scaled(coeffs(1, 1))) * s;
  return a2 == pair2.first && b2 == pair2.second;
}

LieAlgebra build_lie_c(const LieCSpec& spec) {
  const std::size_t n = spec.d.rows();
  return build_double_extension(LieAlgebra::abelian(n), spec.d_prime, spec.d, Vector(n));
}

bool lie_c_iso_check(const LieCSpec& l1, const LieCSpec& l2, const Matrix& sigma, const Matrix& coeffs) {
  for (const auto* s : {&l1, &l2})
    if (Subspace::span(s->d.rows() * s->d.rows(), {flatten(s->d), flatten(s->d_prime)}).dim() != 2)
      throw PreconditionViolated("derivation pair is proportional");
  const std::size_t n = l1.d.rows();
  auto sinv = inverse(sigma);
  if (!sinv) throw NotInvertible("sigma");
  if (determinant(coeffs) == 0) throw NotInvertible("coefficient matrix");
  const Rational &alpha = coeffs(0, 0), &beta = coeffs(0, 1), &gamma = coeffs(1, 0), &delta = coeffs(1, 1);

  bool pair_ok = sigma * l1.d * *sinv == l2.d.scaled(gamma) + l2.d_prime.scaled(alpha) &&
                 sigma * l1.d_prime * *sinv == l2.d.scaled(delta) + l2.d_prime.scaled(beta);
  Matrix weak_coeffs = Matrix::from_rows({{gamma, alpha}, {delta, beta}});
  bool weak_ok = verify_weak_similarity_witness({l2.d, l2.d_prime}, {l1.d, l1.d_prime}, sigma, weak_coeffs);

  // x -> sigma x, y -> delta z + beta y, z -> gamma z + alpha y.
  Matrix t(n + 2, n + 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = sigma(i, j);
  t(n, n) = beta;
  t(n + 1, n) = delta;
  t(n, n + 1) = alpha;
  t(n + 1, n + 1) = gamma;
  bool full_ok = verify_iso_witness_full(build_lie_c(l1), build_lie_c(l2), t);
  if (pair_ok != full_ok || pair_ok != weak_ok) throw ConditionDisagreement("Lie_c witness checks");
  return pair_ok;
}

std::vector<Matrix> lie_c_candidates(const std::vector<Rational>& values) {
  std::vector<Matrix> out;
  for (const auto& a : values)
    for (const auto& b : values)
      for (const auto& c : values)
        for (const auto& d : values)
          if (a * d - b * c != 0) out.push_back(Matrix::from_rows({{a, b}, {c, d}}));
  return out;
}

std::optional<LieCWitness> lie_c_witness_search(const LieCSpec& l1, const LieCSpec& l2,
                                                const std::vector<Matrix>& candidates) {
  const std::size_t n = l1.d.rows();
  if (l2.d.rows() != n) return std::nullopt;
  for (const auto& c : candidates) {
    // sigma d1 = (gamma d2 + alpha d2') sigma and sigma d1' = (delta d2 + beta d2') sigma.
    std::vector<Matrix> lhs{l2.d.scaled(c(1, 0)) + l2.d_prime.scaled(c(0, 0)),
                            l2.d.scaled(c(1, 1)) + l2.d_prime.scaled(c(0, 1))};
    std::vector<Matrix> rhs{l1.d, l1.d_prime};
    Subspace sols = intertwiners(lhs, rhs);
    if (sols.dim() == 0) continue;
    auto sigma = invertible_element(sols, n);
    if (sigma && lie_c_iso_check(l1, l2, *sigma, c)) return LieCWitness{*sigma, c};
  }
  return std::nullopt;
}

}  // namespace solvlie
