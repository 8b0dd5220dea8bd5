#pragma once

#include "solvlie/deriv.hpp"

namespace solvlie {

/// Two independently coded forms of one criterion disagreed: a bug, never a verdict.
class ConditionDisagreement : public std::logic_error {
 public:
  explicit ConditionDisagreement(const std::string& what) : std::logic_error("condition disagreement: " + what) {}
};
class NotAutomorphism : public std::runtime_error {
 public:
  NotAutomorphism() : std::runtime_error("sigma does not preserve the brackets of K") {}
};
class IdentityFails : public std::runtime_error {
 public:
  explicit IdentityFails(Matrix r) : std::runtime_error("sigma d1 sigma^-1 != alpha d2 + ad_u"), residual(std::move(r)) {}
  Matrix residual;
};
class NotInvertible : public std::runtime_error {
 public:
  explicit NotInvertible(const std::string& what) : std::runtime_error(what + " is not invertible") {}
};
class PreconditionViolated : public std::runtime_error {
 public:
  explicit PreconditionViolated(const std::string& what) : std::runtime_error("precondition violated: " + what) {}
};

/// Codim-1 extension: L = Ry (+)_d K, basis x1..xn, y.
/// A derivation d of K together with, in the double case, the [z,y] vector.
struct ExtensionSpec {
  LieAlgebra base;  // K, or H in the double case
  Matrix d;
  std::optional<Matrix> d_prime;  // double case: L = Rz (+)_d (Ry (+)_{d'} H)
  Vector bracket_zy;
  bool is_double() const { return d_prime.has_value(); }
};

/// Basis x1..xn, y with [y, x] = d(x).
LieAlgebra extend_by_derivation(const LieAlgebra& k, const Matrix& d);

struct Codim1Verdict {
  std::size_t m = 0;             // dim K^1
  bool span_condition = false;   // complement of K^1 inside d(K) + K^1
  bool rank_condition = false;   // rank of the lower block is n - m
  bool quotient_invertible = false;
  bool member() const { return span_condition; }
};
/// Membership of Ry (+)_d K in Lie(n+1, n); the three criteria must agree.
Codim1Verdict check_codim1_condition(const LieAlgebra& k, const Matrix& d);

/// The (n+1)x(n+1) derivation of K = Ry (+)_{d'} H acting by d on H and sending y to zy.
Matrix double_derivation(const Matrix& d, const Vector& zy);

/// Basis x1..xn, y, z with [y,x] = d'(x), [z,x] = d(x), [z,y] = zy.
LieAlgebra build_double_extension(const LieAlgebra& h, const Matrix& d_prime, const Matrix& d, const Vector& zy);
LieAlgebra build(const ExtensionSpec& spec);

struct Codim2Verdict {
  std::size_t m = 0;            // dim H^1
  bool span_condition = false;  // complement of H^1 inside d(K) + d'(H) + H^1
  bool image_condition = false; // H/H^1 = Im d~ + Im d~'
  bool member() const { return span_condition; }
};
Codim2Verdict check_codim2_condition(const LieAlgebra& h, const Matrix& d_prime, const Matrix& d, const Vector& zy);

struct DecomposabilityCertificate {
  bool decomposable = false;
  std::optional<Vector> central_preimage;  // x' in Z(H) with d(x') = [z,y]
  std::optional<bool> nonsingular_crosscheck;  // abelian H only
};
/// Lie_ad form (d' = 0): decomposable iff [z,y] lies in d(Z(H)).
DecomposabilityCertificate is_decomposable_double(const LieAlgebra& h, const ExtensionSpec& spec);

/// Verification direction of the general splitting criterion: given H = H1 (+) H2
/// (as column bases) and [z,y] = 0, checks the invariance/annihilation conditions.
bool verify_double_split(const LieAlgebra& h, const ExtensionSpec& spec, const Subspace& h1, const Subspace& h2);

/// T maps L1 to L2: T[u,v] = [Tu,Tv] on all basis pairs.
bool verify_iso_witness_full(const LieAlgebra& l1, const LieAlgebra& l2, const Matrix& t);
bool is_automorphism(const LieAlgebra& k, const Matrix& sigma);

struct TripleWitness {
  Matrix sigma;
  Rational alpha;
  Vector u;
};
struct AssembledWitness {
  Matrix t;  // (n+1)x(n+1) map from Ry (+)_{d1} K to Ry (+)_{d2} K
  bool verified = false;
};
/// Checks sigma d1 sigma^-1 = alpha d2 + ad_u, then assembles y -> alpha y + u.
AssembledWitness witness_from_triple(const LieAlgebra& k, const Matrix& d1, const Matrix& d2, const TripleWitness& w);

/// (A', B') = S^-1 (aA + bB, cA + dB) S with coeffs [[a, b], [c, d]].
bool verify_weak_similarity_witness(const std::pair<Matrix, Matrix>& pair1, const std::pair<Matrix, Matrix>& pair2,
                                    const Matrix& s, const Matrix& coeffs);

/// Lie_c data: H = R^n, [z,y] = 0, d = a_z and d' = a_y.
struct LieCSpec {
  Matrix d, d_prime;
};
LieAlgebra build_lie_c(const LieCSpec& spec);
/// Witness sigma on R^n and [[alpha, beta], [gamma, delta]]; the pair identities and the
/// assembled full isomorphism are checked independently and must agree.
bool lie_c_iso_check(const LieCSpec& l1, const LieCSpec& l2, const Matrix& sigma, const Matrix& coeffs);

struct LieCWitness {
  Matrix sigma, coeffs;
};
/// Invertible 2x2 coefficient matrices with entries from `values`.
std::vector<Matrix> lie_c_candidates(const std::vector<Rational>& values);
/// For each candidate, solves the linear intertwining system for sigma and keeps the
/// first invertible solution that lie_c_iso_check accepts. Nothing found is not a proof.
std::optional<LieCWitness> lie_c_witness_search(const LieCSpec& l1, const LieCSpec& l2,
                                                const std::vector<Matrix>& candidates);

}  // namespace solvlie
