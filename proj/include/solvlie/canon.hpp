#pragma once

#include <functional>

#include "solvlie/deriv.hpp"

namespace solvlie {

/// sign * sqrt(square); closed under products and inverses, enough for
/// eigenvalue ratios once complex pairs are normalized to q = 1.
struct QuadScalar {
  int sign = 0;
  Rational square;

  static QuadScalar of(const Rational& q);
  static QuadScalar root(const Rational& sq, int sign = 1);  // sign * sqrt(sq)

  bool is_zero() const { return sign == 0; }
  bool is_rational() const { return sign == 0 || rational_sqrt(square).has_value(); }
  Rational rational() const;  // throws when irrational
  QuadScalar operator*(const QuadScalar& o) const;
  QuadScalar inverse() const;
  QuadScalar operator-() const { return {-sign, square}; }
  QuadScalar abs() const { return {sign == 0 ? 0 : 1, square}; }
  bool operator==(const QuadScalar& o) const { return sign == o.sign && (sign == 0 || square == o.square); }
  bool operator<(const QuadScalar& o) const;
  std::string str() const;
};

class NoLegalPlacement : public std::runtime_error {
 public:
  explicit NoLegalPlacement(const std::string& what) : std::runtime_error("no legal placement: " + what) {}
};

enum class ZeroPolicy { Forbid, SingleTrailingBlock };

/// How Jordan blocks may be laid out for a given base algebra.
struct PlacementConstraints {
  bool lower = false;  // off-diagonal 1s below the diagonal
  ZeroPolicy zeros = ZeroPolicy::Forbid;
  // When set, the scaling is fixed by the principal submatrix on these
  // coordinates (an invariant quotient block) instead of the full spectrum.
  std::vector<std::size_t> pivot_slots;
};

struct NormalizedBlock {
  EigenKind kind = EigenKind::Rational;
  unsigned size = 1;
  QuadScalar value;  // scaled eigenvalue, or scaled real part of a pair
  QuadScalar imag;   // scaled q for pairs (positive)
  bool operator==(const NormalizedBlock& o) const = default;
};

struct CanonicalForm {
  std::vector<NormalizedBlock> blocks;  // canonical order, zero block (if any) last
  QuadScalar scaling;                   // c in c * m ~ normalized form
  std::string shape;                    // e.g. "R1 R1 C1", "R2(0)"
  Matrix representative;                // rational real Jordan form of m, blocks in canonical order
  Matrix change_of_basis;               // S with S^-1 m S = representative
};

/// Normalization of a spectrum up to a common nonzero scalar; zero
/// eigenvalues are ignored for the pivot choice.
struct SpectrumNormalization {
  QuadScalar scaling;
  std::vector<NormalizedBlock> blocks;
  std::vector<std::size_t> order;  // permutation of (entry, block) pairs into canonical order
};
SpectrumNormalization normalize_spectrum(const EigenStructure& s);

/// Real Jordan block of one (entry, size), oriented per `lower`.
Matrix jordan_block(const QuadraticEigenvalue& e, unsigned size, bool lower);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

CanonicalForm proportional_normalize(const Matrix& m, const PlacementConstraints& constraints = {});

struct ProportionalWitness {
  Rational c;
  Matrix conj;  // c * a = conj^-1 * b * conj
};
/// Rational witnesses only; pairs related solely by an irrational scalar report none.
std::optional<ProportionalWitness> proportional_similar(const Matrix& a, const Matrix& b);
bool verify_proportional(const Matrix& a, const Matrix& b, const ProportionalWitness& w);

/// Similarity of real Jordan data after normalization: the proportional
/// invariant used when no rational witness exists.
bool same_proportional_class(const Matrix& a, const Matrix& b);

/// Affine expression constant + sum coeffs[i] * param_i.
struct AffineEntry {
  Rational constant;
  std::vector<Rational> coeffs;
};

struct FamilyTemplate {
  std::string name;
  std::string base;  // catalog key
  std::string mode;  // "ext1" | "ext2ad"
  std::vector<std::string> params;
  std::size_t dim = 0;
  std::vector<AffineEntry> entries;  // row-major dim x dim
  std::string domain;                // human readable
  std::function<bool(const std::vector<QuadScalar>&)> in_domain;
  // Stratum reader for the base: (template name, parameters) of an H^1 representative.
  std::function<std::optional<std::pair<std::string, std::vector<QuadScalar>>>(const Matrix&)> read;

  Matrix instantiate(const std::vector<Rational>& values) const;
};

class NoMatch : public std::runtime_error {
 public:
  explicit NoMatch(const std::string& what) : std::runtime_error("no matching family: " + what) {}
};
class AmbiguousMatch : public std::logic_error {
 public:
  explicit AmbiguousMatch(const std::string& what) : std::logic_error("ambiguous family match: " + what) {}
};

struct FamilyMatch {
  const FamilyTemplate* family = nullptr;
  std::vector<QuadScalar> params;
};
/// The unique template whose stratum contains m; parameters lie in its domain.
FamilyMatch family_match(const Matrix& m, const std::vector<FamilyTemplate>& templates);

/// Builds a template from a generator evaluated symbolically on unit parameter vectors.
FamilyTemplate make_template(std::string name, std::string base, std::string mode, std::vector<std::string> params,
                             std::size_t dim, const std::function<Matrix(const std::vector<Rational>&)>& gen,
                             std::string domain, std::function<bool(const std::vector<QuadScalar>&)> in_domain);

}  // namespace solvlie
