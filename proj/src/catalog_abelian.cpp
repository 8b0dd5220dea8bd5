#include <sstream>

#include "strata_internal.hpp"

namespace solvlie {

using namespace detail;

namespace {

struct Block {
  EigenKind kind;
  unsigned size;
};

struct Shape {
  std::string name;
  std::vector<Block> blocks;  // nonzero blocks, canonical order
  unsigned zero = 0;          // trailing nilpotent block size
};

std::string shape_key(const std::vector<Block>& blocks, unsigned zero) {
  std::ostringstream s;
  bool first = true;
  for (const auto& b : blocks) {
    s << (first ? "" : " ") << (b.kind == EigenKind::ComplexPair ? "C" : "R") << b.size;
    first = false;
  }
  if (zero) s << (first ? "" : " ") << "N" << zero;
  return s.str();
}

std::vector<std::string> param_names(const std::vector<Block>& blocks) {
  std::vector<std::string> out;
  char letter = 'a';
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    bool pair = blocks[k].kind == EigenKind::ComplexPair;
    if (k == 0) {
      if (pair) out.push_back("p");
    } else if (pair) {
      out.push_back("p" + std::to_string(k + 1));
      out.push_back("q" + std::to_string(k + 1));
    } else {
      out.push_back(std::string(1, letter++));
    }
  }
  return out;
}

// Real block J_s(v), or a pair block of complex size s with entries [[p, q], [-q, p]].
Matrix block(const Block& b, const Rational& p, const Rational& q) {
  if (b.kind == EigenKind::Rational) {
    Matrix m(b.size, b.size);
    for (unsigned i = 0; i < b.size; ++i) {
      m(i, i) = p;
      if (i + 1 < b.size) m(i, i + 1) = 1;
    }
    return m;
  }
  Matrix m(2 * b.size, 2 * b.size);
  for (unsigned i = 0; i < b.size; ++i) {
    std::size_t at = 2 * i;
    m(at, at) = p;
    m(at + 1, at + 1) = p;
    m(at, at + 1) = q;
    m(at + 1, at) = -q;
    if (i + 1 < b.size) {
      m(at, at + 2) = 1;
      m(at + 1, at + 3) = 1;
    }
  }
  return m;
}

Matrix generate(const Shape& s, const std::vector<Rational>& v) {
  std::vector<Matrix> parts;
  std::size_t at = 0;
  for (std::size_t k = 0; k < s.blocks.size(); ++k) {
    const Block& b = s.blocks[k];
    bool pair = b.kind == EigenKind::ComplexPair;
    if (k == 0) {
      parts.push_back(pair ? block(b, v[at++], 1) : block(b, 1, 0));
    } else if (pair) {
      parts.push_back(block(b, v[at], v[at + 1]));
      at += 2;
    } else {
      parts.push_back(block(b, v[at++], 0));
    }
  }
  if (s.zero) parts.push_back(block({EigenKind::Rational, s.zero}, 0, 0));
  return block_diagonal(parts);
}

Readout read_abelian(const std::vector<Shape>& shapes, bool with_zero, const Matrix& d) {
  EigenStructure es = eigen_structure(d);
  SpectrumNormalization norm = normalize_spectrum(es);
  std::vector<std::pair<std::size_t, unsigned>> items;
  for (std::size_t e = 0; e < es.size(); ++e)
    for (unsigned size : es[e].block_sizes) items.emplace_back(e, size);

  std::vector<Block> nonzero;
  unsigned zero = 0, zero_blocks = 0;
  Readout r;
  r.scaling = norm.scaling;
  std::vector<Matrix> parts;
  for (std::size_t k = 0; k < norm.order.size(); ++k) {
    const auto& nb = norm.blocks[k];
    auto [e, size] = items[norm.order[k]];
    parts.push_back(jordan_block(es[e].eigen, size, false));
    if (nb.kind == EigenKind::Rational && nb.value.is_zero()) {
      zero = nb.size;
      ++zero_blocks;
      continue;
    }
    bool pair = nb.kind == EigenKind::ComplexPair;
    if (nonzero.empty()) {
      if (pair) r.params.push_back(nb.value);
    } else if (pair) {
      r.params.push_back(nb.value);
      r.params.push_back(nb.imag);
    } else {
      r.params.push_back(nb.value);
    }
    nonzero.push_back({nb.kind, nb.size});
  }
  if (with_zero ? zero_blocks != 1 : zero_blocks != 0) throw NoMatch("nilpotent part has the wrong block count");
  r.raw = block_diagonal(parts);
  std::string key = shape_key(nonzero, zero);
  for (const auto& s : shapes)
    if (shape_key(s.blocks, s.zero) == key) {
      r.name = s.name;
      return r;
    }
  throw NoMatch("shape " + key);
}

std::vector<Shape> shapes_for(std::size_t n, bool ext2ad) {
  const EigenKind R = EigenKind::Rational, C = EigenKind::ComplexPair;
  if (!ext2ad) {
    switch (n) {
      case 1: return {{"A", {{R, 1}}}};
      case 2: return {{"A", {{R, 1}, {R, 1}}}, {"B", {{R, 2}}}, {"C", {{C, 1}}}};
      case 3:
        return {{"A", {{R, 1}, {R, 1}, {R, 1}}}, {"B", {{R, 2}, {R, 1}}}, {"C", {{R, 3}}}, {"D", {{C, 1}, {R, 1}}}};
      case 4:
        return {{"A", {{R, 1}, {R, 1}, {R, 1}, {R, 1}}},
                {"B", {{R, 2}, {R, 1}, {R, 1}}},
                {"C", {{R, 2}, {R, 2}}},
                {"D", {{R, 3}, {R, 1}}},
                {"E", {{R, 4}}},
                {"F", {{C, 1}, {R, 1}, {R, 1}}},
                {"G", {{C, 1}, {R, 2}}},
                {"H", {{C, 1}, {C, 1}}},
                {"I", {{C, 2}}}};
    }
  } else {
    switch (n) {
      case 2: return {{"A", {{R, 1}}, 2}, {"B", {}, 3}};
      case 3:
        return {{"A", {{R, 1}, {R, 1}}, 2}, {"B", {{R, 2}}, 2}, {"C", {{R, 1}}, 3}, {"D", {}, 4}, {"E", {{C, 1}}, 2}};
    }
  }
  throw std::out_of_range("no abelian model of this dimension");
}

BaseModel abelian_model(std::size_t n, bool ext2ad) {
  const std::size_t dim = ext2ad ? n + 1 : n;
  const std::string key = "r" + std::to_string(n);
  const Mode mode = ext2ad ? Mode::Ext2Ad : Mode::Ext1;
  BaseModel b;
  b.key = key;
  b.mode = mode;
  b.k = LieAlgebra::abelian(dim);
  b.h = catalog_algebra(key);
  b.ideal = Subspace(dim);
  b.pattern = full_pattern(dim);
  b.lift = [](const Matrix& x) { return x; };
  b.abelian_slice = true;
  auto shapes = shapes_for(n, ext2ad);
  b.read = [shapes, ext2ad](const Matrix& d) { return read_abelian(shapes, ext2ad, d); };
  b.coordinates = ext2ad ? ext2ad_coordinates(b.k) : derivation_space(b.k).h1_basis();
  for (const auto& s : shapes) {
    auto gen = [s](const std::vector<Rational>& v) { return generate(s, v); };
    // Normalized data is a fixed point of the reader; irrational points are taken formally.
    auto in_domain = [s, shapes, ext2ad, gen](const std::vector<QuadScalar>& p) {
      if (!all_rational(p)) return true;
      try {
        Readout r = read_abelian(shapes, ext2ad, gen(rationals(p)));
        return r.name == s.name && r.params == p && r.scaling == QuadScalar::of(1);
      } catch (const std::exception&) {
        return false;
      }
    };
    std::string domain = shape_key(s.blocks, s.zero) +
                         "; pivot block normalized to 1 (pairs: q = 1, p >= 0), blocks in canonical order, "
                         "same-size values in [-1, 1], all nonzero";
    b.templates.push_back(make_family(key, mode, s.name, param_names(s.blocks), dim, gen, domain, in_domain));
    b.golden.push_back(s.name);
  }
  return b;
}

}  // namespace

BaseModel make_abelian_ext1(std::size_t n) { return abelian_model(n, false); }
BaseModel make_abelian_ext2ad(std::size_t n) { return abelian_model(n, true); }

}  // namespace solvlie
