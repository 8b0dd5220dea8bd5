#include <memory>
#include <mutex>

#include "strata_internal.hpp"

namespace solvlie {

std::string to_string(Mode m) { return m == Mode::Ext1 ? "ext1" : "ext2ad"; }

Mode parse_mode(const std::string& s) {
  if (s == "ext1") return Mode::Ext1;
  if (s == "ext2ad" || s == "ext2_ad") return Mode::Ext2Ad;
  throw std::invalid_argument("unknown mode: " + s);
}

const FamilyTemplate& BaseModel::find(const std::string& name) const {
  for (const auto& t : templates)
    if (t.name == name) return t;
  throw std::logic_error(key + ": no template named " + name);
}

namespace detail {

bool all_rational(const std::vector<QuadScalar>& v) {
  for (const auto& x : v)
    if (!x.is_rational()) return false;
  return true;
}

std::vector<Rational> rationals(const std::vector<QuadScalar>& v) {
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(x.rational());
  return out;
}

Matrix unit_matrix(std::size_t n, std::size_t r, std::size_t c) {
  Matrix m(n, n);
  m(r, c) = 1;
  return m;
}

std::vector<std::vector<bool>> full_pattern(std::size_t m) {
  return std::vector<std::vector<bool>>(m, std::vector<bool>(m, true));
}

FamilyTemplate make_family(const std::string& key, Mode mode, std::string name, std::vector<std::string> params,
                           std::size_t dim, const std::function<Matrix(const std::vector<Rational>&)>& gen,
                           std::string domain, std::function<bool(const std::vector<QuadScalar>&)> in_domain) {
  FamilyTemplate t = make_template(std::move(name), key, to_string(mode), std::move(params), dim, gen,
                                   std::move(domain), std::move(in_domain));
  t.read = [key, mode](const Matrix& m) -> std::optional<std::pair<std::string, std::vector<QuadScalar>>> {
    try {
      Reduction r = reduce(base_model(key, mode), m);
      return std::make_pair(r.name, r.params);
    } catch (const NoMatch&) {
    } catch (const NoLegalPlacement&) {
    } catch (const IrrationalRealEigenvalue&) {
    } catch (const IrreducibleFactorDegreeTooHigh&) {
    } catch (const NotADerivation&) {
    }
    return std::nullopt;
  };
  return t;
}

bool within_unit(const QuadScalar& x) { return !(QuadScalar::of(1) < x.abs()); }
bool positive(const QuadScalar& x) { return x.sign > 0; }

std::vector<Matrix> ext2ad_coordinates(const LieAlgebra& k) {
  const std::size_t n = k.dim();
  DerivationSpace s = derivation_space(k);
  std::vector<Vector> lrz;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lrz.push_back(flatten(unit_matrix(n, i, j)));
  Subspace allowed = s.full.intersect(Subspace::span(n * n, lrz));
  if (!allowed.contains(s.inner)) throw std::logic_error("inner derivations leave the last row");
  std::vector<Vector> reps;
  for (const auto& v : allowed.basis()) reps.push_back(s.inner.reduce(v));
  std::vector<Matrix> out;
  Subspace h1 = Subspace::span(n * n, reps);
  for (const auto& v : h1.basis()) out.push_back(unflatten(v, n, n));
  return out;
}

}  // namespace detail

using namespace detail;

namespace {

struct Targets {
  Matrix base;                  // kappa slot cleared
  std::optional<Rational> slot;  // slot value in the kappa variant
  bool exact = false;
};

Targets targets(const BaseModel& b, const Readout& r) {
  Targets t;
  bool rational_scale = r.scaling.is_rational();
  if (r.kappa_name) {
    bool ok = rational_scale && all_rational(r.kappa_params);
    Matrix km;
    if (ok) {
      km = b.find(*r.kappa_name).instantiate(rationals(r.kappa_params)).scaled(1 / r.scaling.rational());
    } else {
      km = r.raw;
      km(b.kappa->row, b.kappa->col) = 1;
    }
    t.slot = km(b.kappa->row, b.kappa->col);
    km(b.kappa->row, b.kappa->col) = 0;
    t.base = km;
    t.exact = ok;
  }
  if (!r.name.empty()) {
    bool ok = rational_scale && all_rational(r.params);
    Matrix m = ok ? b.find(r.name).instantiate(rationals(r.params)).scaled(1 / r.scaling.rational()) : r.raw;
    if (r.kappa_name && m != t.base) throw std::logic_error(b.key + ": kappa variant of " + r.name + " disagrees off the slot");
    t.base = m;
    t.exact = ok && (!r.kappa_name || t.exact);
  }
  if (t.base.rows() == 0) throw std::logic_error(b.key + ": readout produced no target");
  return t;
}

}  // namespace

Reduction reduce(const BaseModel& b, const Matrix& d) {
  require_derivation(b.k, d);
  const std::size_t n = b.k.dim();
  Readout r = b.read(d);
  Targets tg = targets(b, r);

  // Stage 1: match the induced map on K/K^1 inside the pattern, then lift.
  Matrix q = induced_quotient_map(b.k, d, b.ideal);
  Matrix qr = induced_quotient_map(b.k, tg.base, b.ideal);
  const std::size_t m = q.rows();
  std::vector<Vector> allowed;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (b.pattern[i][j]) allowed.push_back(flatten(unit_matrix(m, i, j)));
  Subspace xs = intertwiners(qr, q).intersect(Subspace::span(m * m, allowed));
  auto x = invertible_element(xs, m);
  if (!x) throw std::logic_error(b.key + ": no quotient intertwiner for " + r.name);
  Matrix sigma0 = b.lift(*x);
  Matrix d1 = sigma0 * d * *inverse(sigma0);

  // Stage 2: (I + N) d1 (I - N) = target + ad_u [+ kappa E], N in the nudge span.
  std::vector<Vector> cols;
  for (const auto& nm : b.nudges) cols.push_back(flatten(nm * d1 - d1 * nm));
  for (std::size_t j = 0; j < n; ++j) cols.push_back(flatten(adjoint_matrix(b.k, unit_vector(n, j)).scaled(-1)));
  Vector rhs = flatten(tg.base - d1);
  auto sol = cols.empty() ? std::optional<Vector>() : solve(Matrix::from_columns(cols), rhs);
  if (!sol && is_zero(rhs)) sol = Vector(cols.size());
  Rational kappa = 0;
  if (!sol && b.kappa && tg.slot) {
    cols.push_back(flatten(unit_matrix(n, b.kappa->row, b.kappa->col).scaled(-1)));
    sol = solve(Matrix::from_columns(cols), rhs);
    if (sol) kappa = sol->back();
  }
  if (!sol) throw std::logic_error(b.key + ": clean-up stage failed for " + r.name);
  Matrix nn(n, n);
  for (std::size_t i = 0; i < b.nudges.size(); ++i) nn = nn + b.nudges[i].scaled((*sol)[i]);
  Vector u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = (*sol)[b.nudges.size() + j];
  Matrix sigma = (Matrix::identity(n) + nn) * sigma0;

  Reduction out;
  out.scaling = r.scaling;
  out.target = tg.base;
  if (kappa != 0) {
    if (!r.kappa_name && !r.raw.rows()) throw std::logic_error(b.key + ": surviving slot without a variant");
    Matrix p = b.kappa->rescale(kappa / *tg.slot);
    sigma = p * sigma;
    u = p * u;
    out.target(b.kappa->row, b.kappa->col) = *tg.slot;
    out.name = *r.kappa_name;
    out.params = r.kappa_params;
  } else {
    if (r.name.empty()) throw std::logic_error(b.key + ": slot vanished for a variant-only stratum");
    out.name = r.name;
    out.params = r.params;
  }
  out.exact = tg.exact;
  Matrix t2 = out.target;
  Rational alpha = 1;
  if (out.exact) {
    alpha = 1 / r.scaling.rational();
    t2 = b.find(out.name).instantiate(rationals(out.params));
  }
  out.witness = TripleWitness{sigma, alpha, u};
  witness_from_triple(b.k, d, t2, out.witness);  // throws unless exact
  return out;
}

bool admissible(const BaseModel& b, const Matrix& d) {
  if (b.mode == Mode::Ext1) return check_codim1_condition(b.k, d).member();
  const std::size_t n = b.h.dim();
  for (std::size_t j = 0; j <= n; ++j)
    if (d(n, j) != 0) return false;
  std::vector<std::size_t> hs(n);
  for (std::size_t i = 0; i < n; ++i) hs[i] = i;
  Matrix dh = d.submatrix(hs, hs);
  Vector zy(n);
  for (std::size_t i = 0; i < n; ++i) zy[i] = d(i, n);
  Matrix zero(n, n);
  if (!check_codim2_condition(b.h, zero, dh, zy).member()) return false;
  ExtensionSpec spec{b.h, dh, zero, zy};
  if (is_decomposable_double(b.h, spec).decomposable) return false;
  return is_outer(derivation_space(b.h), b.h, dh);
}

std::vector<std::string> catalog_keys() { return {"r1", "r2", "r3", "r4", "h3", "r_plus_h3", "g4"}; }

LieAlgebra catalog_algebra(const std::string& key) {
  if (key.size() == 2 && key[0] == 'r' && key[1] >= '1' && key[1] <= '4') {
    LieAlgebra a = LieAlgebra::abelian(key[1] - '0');
    a.set_name(key);
    return a;
  }
  if (key == "h3") return heisenberg3();
  if (key == "g4") return filiform4();
  if (key == "r_plus_h3") {
    LieAlgebra a = direct_sum(heisenberg3(), LieAlgebra::abelian(1));
    a.set_name(key);
    return a;
  }
  throw std::out_of_range("unknown catalog key: " + key);
}

const BaseModel& base_model(const std::string& key, Mode mode) {
  static std::mutex mu;
  static std::map<std::pair<std::string, Mode>, std::unique_ptr<BaseModel>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{key, mode}];
  if (!slot) {
    BaseModel b;
    if (mode == Mode::Ext1) {
      if (key.size() == 2 && key[0] == 'r' && key[1] >= '1' && key[1] <= '4')
        b = make_abelian_ext1(key[1] - '0');
      else if (key == "h3")
        b = make_h3_ext1();
      else if (key == "r_plus_h3")
        b = make_r_plus_h3_ext1();
      else if (key == "g4")
        b = make_g4_ext1();
      else
        throw std::out_of_range("no ext1 model for " + key);
    } else {
      if (key == "r2" || key == "r3")
        b = make_abelian_ext2ad(key[1] - '0');
      else if (key == "h3")
        b = make_h3_ext2ad();
      else
        throw std::out_of_range("no ext2ad model for " + key);
    }
    slot = std::make_unique<BaseModel>(std::move(b));
  }
  return *slot;
}

}  // namespace solvlie
