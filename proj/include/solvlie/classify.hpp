#pragma once

#include <map>

#include "solvlie/canon.hpp"
#include "solvlie/ext.hpp"

namespace solvlie {

enum class Mode { Ext1, Ext2Ad };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// What the stratum reader extracts from a derivation before any witness is built.
struct Readout {
  std::string name;
  std::vector<QuadScalar> params;
  QuadScalar scaling;  // c with c * d ~ template
  // Variant used when the distinguished slot cannot be cleared.
  std::optional<std::string> kappa_name;
  std::vector<QuadScalar> kappa_params;
  // Rational stand-in for the target when the scaling or a parameter is irrational.
  Matrix raw;
};

/// A slot that survives the linear clean-up stage; when nonzero it is scaled to
/// the template value by `rescale(p)`, an automorphism dividing the slot by p.
struct KappaSlot {
  std::size_t row = 0, col = 0;
  std::function<Matrix(const Rational&)> rescale;
};

struct Reduction {
  std::string name;
  std::vector<QuadScalar> params;
  QuadScalar scaling;
  bool exact = false;  // target is the template instance scaled by 1/c
  Matrix target;       // sigma d sigma^-1 = target + ad_u
  TripleWitness witness;
};

/// Per catalog entry: the algebra, its quotient data and the stratum reader.
struct BaseModel {
  std::string key;
  Mode mode = Mode::Ext1;
  LieAlgebra k;       // the algebra extended by d (K = R y (+) H in ext2ad mode)
  LieAlgebra h;       // ext2ad: H; ext1: same as k
  Subspace ideal;     // K^1; the quotient K/K^1 drives the first stage
  std::vector<std::vector<bool>> pattern;     // admissible entries on K/K^1
  std::function<Matrix(const Matrix&)> lift;  // pattern element -> automorphism of K
  std::vector<Matrix> nudges;                 // automorphisms I + N with N^2 = 0, as N
  std::optional<KappaSlot> kappa;
  std::function<Readout(const Matrix&)> read;
  std::vector<Matrix> coordinates;  // sweep coordinates (transversal basis)
  std::vector<FamilyTemplate> templates;
  std::vector<std::string> golden;  // expected template names
  // Abelian entries sweep a block-triangular slice instead of a product grid.
  bool abelian_slice = false;

  const FamilyTemplate& find(const std::string& name) const;
};

/// Runs the stratum reader and builds the witness; throws on out-of-field
/// spectra, NoMatch outside the classified strata, and logic_error if any stage fails.
Reduction reduce(const BaseModel& b, const Matrix& d);

/// Membership in the class being classified (condition, indecomposability, outer d|H).
bool admissible(const BaseModel& b, const Matrix& d);

// Catalog -----------------------------------------------------------------

std::vector<std::string> catalog_keys();
LieAlgebra catalog_algebra(const std::string& key);
/// Throws std::out_of_range for unknown keys or unsupported (key, mode) pairs.
const BaseModel& base_model(const std::string& key, Mode mode);

BaseModel make_abelian_ext1(std::size_t n);
BaseModel make_abelian_ext2ad(std::size_t n);
BaseModel make_h3_ext1();
BaseModel make_r_plus_h3_ext1();
BaseModel make_g4_ext1();
BaseModel make_h3_ext2ad();

// Sweep and report -----------------------------------------------------------

struct GridSpec {
  std::vector<Rational> values;  // per-coordinate values (product grid)
  std::size_t sample = 0;        // 0 = full product, else seeded sample of this many points
  std::uint64_t seed = 1;
  static GridSpec parse(const std::string& spec);  // "values=0,1,-1,2;sample=5000;seed=3"
  std::string str() const;
};
GridSpec default_grid(const BaseModel& b);
GridSpec dense_grid(const BaseModel& b);

struct Fingerprint {
  std::vector<std::size_t> derived_dims, lower_central_dims;
  std::size_t center_dim = 0, h1_dim = 0;
  std::string ay_shape;  // normalized Jordan data of a_y on L^1
  bool operator==(const Fingerprint& o) const = default;
  std::string str() const;
};
Fingerprint fingerprint(const LieAlgebra& l);

struct FamilyReport {
  std::string name, domain;
  std::vector<std::string> params;
  std::size_t hits = 0, witnessed = 0, formal = 0;
  std::vector<std::string> samples;  // first sampled parameter points
  std::size_t instance_checks = 0;   // template instances verified (Jacobi, membership, read-back)
  Fingerprint fingerprint;           // at a generic instance
};

struct ClassificationReport {
  std::string base;
  Mode mode = Mode::Ext1;
  std::string grid;
  std::size_t h1_dim = 0;
  std::size_t points = 0, members = 0, rejected = 0, out_of_field = 0, unmatched = 0;
  std::vector<FamilyReport> families;  // in template order
  std::vector<std::string> expected;
  bool golden_match = false;
  std::vector<std::string> names() const;
};

class GoldenMismatch : public std::runtime_error {
 public:
  GoldenMismatch(const std::vector<std::string>& found, const std::vector<std::string>& expected);
};

struct SweepOptions {
  unsigned jobs = 1;
  bool throw_on_mismatch = false;
};
ClassificationReport classify(const BaseModel& b, const GridSpec& grid, const SweepOptions& opts = {});
ClassificationReport classify_ext1(const std::string& key, const GridSpec* grid = nullptr, const SweepOptions& opts = {});
ClassificationReport classify_ext2_ad(const std::string& key, const GridSpec* grid = nullptr, const SweepOptions& opts = {});

/// In-domain rational parameter points for a template (at most `limit`).
std::vector<std::vector<Rational>> domain_samples(const FamilyTemplate& t, std::size_t limit);
/// The extension built from a template instance.
LieAlgebra family_algebra(const BaseModel& b, const Matrix& instance);

struct DistinctnessRow {
  std::string a, b, evidence;  // evidence "UNRESOLVED" when nothing separates them
};
std::vector<DistinctnessRow> distinctness_evidence(const BaseModel& b, const ClassificationReport& report);

}  // namespace solvlie
