#include "solvlie/canon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace solvlie {

QuadScalar QuadScalar::of(const Rational& q) {
  if (q == 0) return {};
  return {q > 0 ? 1 : -1, q * q};
}

QuadScalar QuadScalar::root(const Rational& sq, int sign) {
  if (sq < 0) throw std::invalid_argument("QuadScalar::root of negative");
  if (sq == 0 || sign == 0) return {};
  return {sign > 0 ? 1 : -1, sq};
}

Rational QuadScalar::rational() const {
  if (sign == 0) return 0;
  auto r = rational_sqrt(square);
  if (!r) throw std::domain_error("QuadScalar is irrational: " + str());
  return sign > 0 ? *r : Rational(-*r);
}

QuadScalar QuadScalar::operator*(const QuadScalar& o) const {
  if (sign == 0 || o.sign == 0) return {};
  return {sign * o.sign, square * o.square};
}

QuadScalar QuadScalar::inverse() const {
  if (sign == 0) throw std::domain_error("inverse of zero");
  return {sign, 1 / square};
}

bool QuadScalar::operator<(const QuadScalar& o) const {
  if (sign != o.sign) return sign < o.sign;
  if (sign == 0) return false;
  return sign > 0 ? square < o.square : square > o.square;
}

std::string QuadScalar::str() const {
  if (sign == 0) return "0";
  if (auto r = rational_sqrt(square)) return to_string(sign > 0 ? *r : Rational(-*r));
  return std::string(sign < 0 ? "-" : "") + "sqrt(" + to_string(square) + ")";
}

namespace {

struct Item {
  std::size_t entry;
  unsigned size;
  NormalizedBlock raw;
  bool zero() const { return raw.kind == EigenKind::Rational && raw.value.is_zero(); }
};

// Blocks compare by (non-zero first, kind desc, size desc, then value desc
// for real blocks, imag desc then value desc for pairs) so the pivot leads.
int compare_blocks(const NormalizedBlock& a, const NormalizedBlock& b) {
  const bool za = a.kind == EigenKind::Rational && a.value.is_zero();
  const bool zb = b.kind == EigenKind::Rational && b.value.is_zero();
  if (za != zb) return za ? -1 : 1;
  if (a.kind != b.kind) return a.kind > b.kind ? 1 : -1;
  if (a.size != b.size) return a.size > b.size ? 1 : -1;
  if (!(a.imag == b.imag)) return b.imag < a.imag ? 1 : -1;
  if (!(a.value == b.value)) return b.value < a.value ? 1 : -1;
  return 0;
}

NormalizedBlock scaled(const NormalizedBlock& b, const QuadScalar& c) {
  NormalizedBlock r = b;
  r.value = b.value * c;
  r.imag = (b.imag * c).abs();
  return r;
}

bool admissible(const std::vector<Item>& items, const QuadScalar& c) {
  bool has_pair = std::any_of(items.begin(), items.end(), [](const Item& i) { return i.raw.kind == EigenKind::ComplexPair; });
  unsigned max_size = 0;
  for (const auto& i : items)
    if (!i.zero() && (!has_pair || i.raw.kind == EigenKind::ComplexPair)) max_size = std::max(max_size, i.size);
  const QuadScalar one = QuadScalar::of(1);
  bool hit = false;
  for (const auto& i : items) {
    if (i.zero() || i.size != max_size) continue;
    if (has_pair && i.raw.kind != EigenKind::ComplexPair) continue;
    NormalizedBlock s = scaled(i.raw, c);
    QuadScalar mag = has_pair ? s.imag : s.value.abs();
    if (one < mag) return false;
    if (has_pair ? (mag == one && !(s.value < QuadScalar{})) : s.value == one) hit = true;
  }
  return hit;
}

}  // namespace

SpectrumNormalization normalize_spectrum(const EigenStructure& s) {
  std::vector<Item> items;
  for (std::size_t e = 0; e < s.size(); ++e)
    for (unsigned size : s[e].block_sizes) {
      NormalizedBlock b;
      b.kind = s[e].eigen.kind;
      b.size = size;
      b.value = QuadScalar::of(s[e].eigen.value);
      if (b.kind == EigenKind::ComplexPair) b.imag = QuadScalar::root(s[e].eigen.imag_sq);
      items.push_back({e, size, b});
    }
  std::vector<QuadScalar> candidates;
  for (const auto& i : items) {
    if (i.zero()) continue;
    if (i.raw.kind == EigenKind::Rational) {
      candidates.push_back(i.raw.value.inverse());
    } else {
      candidates.push_back(i.raw.imag.inverse());
      candidates.push_back(-i.raw.imag.inverse());
    }
  }
  if (candidates.empty()) candidates.push_back(QuadScalar::of(1));

  SpectrumNormalization best;
  bool have = false;
  for (const auto& c : candidates) {
    if (!(items.empty() || candidates.size() == 1 || admissible(items, c))) continue;
    std::vector<std::size_t> order(items.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::vector<NormalizedBlock> blocks;
    for (const auto& i : items) blocks.push_back(scaled(i.raw, c));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return compare_blocks(blocks[x], blocks[y]) > 0; });
    std::vector<NormalizedBlock> sorted;
    for (auto k : order) sorted.push_back(blocks[k]);
    bool better = !have;
    if (have) {
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        int cmp = compare_blocks(sorted[k], best.blocks[k]);
        if (cmp != 0) {
          better = cmp > 0;
          break;
        }
      }
    }
    if (better) {
      best.scaling = c;
      best.blocks = std::move(sorted);
      best.order = std::move(order);
      have = true;
    }
  }
  if (!have) throw std::logic_error("normalize_spectrum: no admissible scaling");
  // Translate order indices into (entry, size) positions.
  std::vector<std::size_t> entry_order;
  for (auto k : best.order) entry_order.push_back(k);
  best.order = entry_order;
  return best;
}

Matrix jordan_block(const QuadraticEigenvalue& e, unsigned size, bool lower) {
  EigenStructure one{{e, {size}}};
  Matrix j = jordan_matrix(one);
  return lower ? j.transpose() : j;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix m(n, n);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(at + i, at + j) = b(i, j);
    at += b.rows();
  }
  return m;
}

CanonicalForm proportional_normalize(const Matrix& m, const PlacementConstraints& constraints) {
  EigenStructure s = eigen_structure(m);
  std::size_t zero_blocks = 0;
  for (const auto& e : s)
    if (e.eigen.kind == EigenKind::Rational && e.eigen.value == 0) zero_blocks += e.block_sizes.size();
  if (constraints.zeros == ZeroPolicy::Forbid && zero_blocks > 0) throw NoLegalPlacement("matrix is singular");
  if (constraints.zeros == ZeroPolicy::SingleTrailingBlock && zero_blocks != 1)
    throw NoLegalPlacement("expected exactly one nilpotent Jordan block");

  SpectrumNormalization norm = normalize_spectrum(s);
  if (!constraints.pivot_slots.empty()) {
    const auto& sl = constraints.pivot_slots;
    QuadScalar c = normalize_spectrum(eigen_structure(m.submatrix(sl, sl))).scaling;
    std::vector<std::pair<NormalizedBlock, std::size_t>> tagged;
    std::size_t k = 0;
    for (const auto& e : s)
      for (unsigned size : e.block_sizes) {
        NormalizedBlock b{e.eigen.kind, size, QuadScalar::of(e.eigen.value), {}};
        if (b.kind == EigenKind::ComplexPair) b.imag = QuadScalar::root(e.eigen.imag_sq);
        tagged.emplace_back(scaled(b, c), k++);
      }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& x, const auto& y) { return compare_blocks(x.first, y.first) > 0; });
    norm.scaling = c;
    norm.blocks.clear();
    norm.order.clear();
    for (auto& [b, idx] : tagged) {
      norm.blocks.push_back(b);
      norm.order.push_back(idx);
    }
  }
  std::vector<std::pair<std::size_t, unsigned>> items;
  for (std::size_t e = 0; e < s.size(); ++e)
    for (unsigned size : s[e].block_sizes) items.emplace_back(e, size);

  CanonicalForm out;
  out.blocks = norm.blocks;
  out.scaling = norm.scaling;
  std::vector<Matrix> parts;
  std::ostringstream shape;
  for (std::size_t k = 0; k < norm.order.size(); ++k) {
    auto [e, size] = items[norm.order[k]];
    parts.push_back(jordan_block(s[e].eigen, size, constraints.lower));
    const auto& b = norm.blocks[k];
    bool zero = b.kind == EigenKind::Rational && b.value.is_zero();
    shape << (k ? " " : "") << (zero ? "N" : b.kind == EigenKind::ComplexPair ? "C" : "R") << size;
  }
  out.shape = shape.str();
  out.representative = block_diagonal(parts);
  auto c = invertible_element(intertwiners(m, out.representative), m.rows());
  if (!c) throw std::logic_error("proportional_normalize: no change of basis");
  out.change_of_basis = *c;
  return out;
}

bool verify_proportional(const Matrix& a, const Matrix& b, const ProportionalWitness& w) {
  auto inv = inverse(w.conj);
  if (!inv || w.c == 0) return false;
  return a.scaled(w.c) == *inv * b * w.conj;
}

std::optional<ProportionalWitness> proportional_similar(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || !b.is_square()) return std::nullopt;
  EigenStructure sa = eigen_structure(a), sb = eigen_structure(b);
  std::set<Rational> cands;
  for (const auto& ea : sa)
    for (const auto& eb : sb) {
      if (ea.eigen.kind != eb.eigen.kind) continue;
      if (ea.eigen.value != 0 && eb.eigen.value != 0) cands.insert(eb.eigen.value / ea.eigen.value);
      if (ea.eigen.kind == EigenKind::ComplexPair)
        if (auto r = rational_sqrt(eb.eigen.imag_sq / ea.eigen.imag_sq)) {
          cands.insert(*r);
          cands.insert(-*r);
        }
    }
  cands.insert(1);
  for (const auto& c : cands) {
    if (c == 0) continue;
    Matrix ca = a.scaled(c);
    EigenStructure sc = eigen_structure(ca);
    if (sc.size() != sb.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < sc.size() && same; ++i)
      same = sc[i].eigen.same_point(sb[i].eigen) && sc[i].block_sizes == sb[i].block_sizes;
    if (!same) continue;
    auto x = invertible_element(intertwiners(b, ca), a.rows());
    if (!x) continue;
    ProportionalWitness w{c, *x};
    if (!verify_proportional(a, b, w)) throw std::logic_error("proportional_similar: witness failed verification");
    return w;
  }
  return std::nullopt;
}

bool same_proportional_class(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) return false;
  return normalize_spectrum(eigen_structure(a)).blocks == normalize_spectrum(eigen_structure(b)).blocks;
}

FamilyMatch family_match(const Matrix& m, const std::vector<FamilyTemplate>& templates) {
  FamilyMatch out;
  for (const auto& t : templates) {
    if (!t.read) continue;
    auto r = t.read(m);
    if (!r || r->first != t.name) continue;
    if (out.family) throw AmbiguousMatch(out.family->name + " and " + t.name);
    if (t.in_domain && !t.in_domain(r->second))
      throw std::logic_error("family_match: " + t.name + " read parameters outside its domain");
    out.family = &t;
    out.params = r->second;
  }
  if (!out.family) throw NoMatch("matrix is outside every classified stratum");
  return out;
}

Matrix FamilyTemplate::instantiate(const std::vector<Rational>& values) const {
  if (values.size() != params.size()) throw std::invalid_argument("template " + name + ": wrong parameter count");
  Matrix m(dim, dim);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    Rational v = entries[k].constant;
    for (std::size_t p = 0; p < values.size(); ++p) v += entries[k].coeffs[p] * values[p];
    m(k / dim, k % dim) = v;
  }
  return m;
}

FamilyTemplate make_template(std::string name, std::string base, std::string mode, std::vector<std::string> params,
                             std::size_t dim, const std::function<Matrix(const std::vector<Rational>&)>& gen,
                             std::string domain, std::function<bool(const std::vector<QuadScalar>&)> in_domain) {
  FamilyTemplate t{std::move(name), std::move(base), std::move(mode), std::move(params), dim, {}, std::move(domain),
                   std::move(in_domain)};
  const std::size_t np = t.params.size();
  Matrix c0 = gen(std::vector<Rational>(np));
  std::vector<Matrix> partial;
  for (std::size_t p = 0; p < np; ++p) {
    std::vector<Rational> e(np);
    e[p] = 1;
    partial.push_back(gen(e) - c0);
  }
  for (std::size_t k = 0; k < dim * dim; ++k) {
    AffineEntry a{c0(k / dim, k % dim), {}};
    for (std::size_t p = 0; p < np; ++p) a.coeffs.push_back(partial[p](k / dim, k % dim));
    t.entries.push_back(std::move(a));
  }
  // Affine check at a second point guards against non-affine generators.
  std::vector<Rational> probe(np);
  for (std::size_t p = 0; p < np; ++p) probe[p] = Rational(static_cast<long>(p) + 2, 3);
  if (np && !(t.instantiate(probe) == gen(probe))) throw std::logic_error("template " + t.name + " is not affine");
  return t;
}

}  // namespace solvlie
