#include "strata_internal.hpp"

namespace solvlie {

using namespace detail;

namespace {

const std::vector<std::size_t> kX23{1, 2};

// Spectrum of a 2x2 block: two reals (|mu1| >= |mu2|, positive first on ties),
// a single non-semisimple eigenvalue, or a pair p +- i q.
struct Spec2 {
  enum Kind { Real, Jordan, Pair } kind = Real;
  Rational a, b;  // Real: mu1, mu2; Jordan: mu; Pair: p, q^2
};

Spec2 spec2(const Matrix& m) {
  Rational tr = m(0, 0) + m(1, 1), det = determinant(m);
  Rational disc = tr * tr - 4 * det;
  Spec2 s;
  if (disc < 0) {
    s.kind = Spec2::Pair;
    s.a = tr / 2;
    s.b = -disc / 4;
  } else if (disc == 0) {
    s.a = s.b = tr / 2;
    if (m(0, 1) != 0 || m(1, 0) != 0) s.kind = Spec2::Jordan;
  } else {
    auto r = rational_sqrt(disc);
    if (!r) throw IrrationalRealEigenvalue(disc);
    Rational x = (tr + *r) / 2, y = (tr - *r) / 2;
    if (abs(y) > abs(x) || (abs(y) == abs(x) && y > 0)) std::swap(x, y);
    s.a = x;
    s.b = y;
  }
  return s;
}

QuadScalar inv(const Rational& x) { return QuadScalar::of(1 / x); }
QuadScalar q(const Rational& x) { return QuadScalar::of(x); }
int sgn(const Rational& x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }

// Pair scaling c = s / q and the normalized real part |p| / q.
QuadScalar pair_scale(const Spec2& s, int sign) { return QuadScalar::root(1 / s.b, sign); }
QuadScalar pair_lambda(const Spec2& s) { return QuadScalar::root(s.a * s.a / s.b, s.a != 0 ? 1 : 0); }

Matrix rows(const std::vector<std::vector<Rational>>& r) { return Matrix::from_rows(r); }

Matrix lift_det(const Matrix& x, std::size_t n) {
  // x acts on (x2, x3[, x4]) and x1 = [x2, x3] scales by the determinant of the h3 part.
  Matrix s(n, n);
  std::vector<std::size_t> two{0, 1};
  s(0, 0) = determinant(x.submatrix(two, two));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s(i + 1, j + 1) = x(i, j);
  return s;
}

// Shared data for K = h3 (+) R with x4 central.
void setup_r_plus_h3(BaseModel& b) {
  b.k = catalog_algebra("r_plus_h3");
  b.ideal = derived_subalgebra(b.k);
  b.pattern = full_pattern(3);
  b.pattern[0][2] = b.pattern[1][2] = false;
  b.lift = [](const Matrix& x) { return lift_det(x, 4); };
  b.nudges = {unit_matrix(4, 0, 1), unit_matrix(4, 0, 2), unit_matrix(4, 0, 3)};
  b.kappa = KappaSlot{0, 3, [](const Rational& p) {
                        Matrix m = Matrix::identity(4);
                        m(3, 3) = p;
                        return m;
                      }};
}

Matrix with_slot(Matrix m) {
  m(0, 3) = 1;
  return m;
}

}  // namespace

BaseModel make_h3_ext1() {
  BaseModel b;
  b.key = "h3";
  b.k = b.h = heisenberg3();
  b.ideal = derived_subalgebra(b.k);
  b.pattern = full_pattern(2);
  b.lift = [](const Matrix& x) { return lift_det(x, 3); };
  b.nudges = {unit_matrix(3, 0, 1), unit_matrix(3, 0, 2)};
  b.coordinates = derivation_space(b.k).h1_basis();
  b.read = [](const Matrix& d) {
    Spec2 s = spec2(d.submatrix(kX23, kX23));
    Readout r;
    if (s.kind == Spec2::Pair) {
      r.name = "C";
      r.scaling = pair_scale(s, s.a < 0 ? -1 : 1);
      r.params = {pair_lambda(s)};
      r.raw = rows({{2 * s.a, 0, 0}, {0, s.a, 1}, {0, -s.b, s.a}});
      return r;
    }
    if (s.a == 0 || s.b == 0) throw NoMatch("singular quotient map");
    r.scaling = inv(s.a);
    if (s.kind == Spec2::Jordan) {
      r.name = "B";
    } else {
      r.name = "A";
      r.params = {q(s.b / s.a)};
    }
    return r;
  };
  const std::string k = b.key;
  b.templates = {
      make_family(k, Mode::Ext1, "A", {"l"}, 3,
                  [](const auto& v) { return rows({{1 + v[0], 0, 0}, {0, 1, 0}, {0, 0, v[0]}}); }, "0 < |l| <= 1",
                  [](const auto& p) { return !p[0].is_zero() && within_unit(p[0]); }),
      make_family(k, Mode::Ext1, "B", {}, 3, [](const auto&) { return rows({{2, 0, 0}, {0, 1, 1}, {0, 0, 1}}); }, "-",
                  nullptr),
      make_family(k, Mode::Ext1, "C", {"l"}, 3,
                  [](const auto& v) { return rows({{2 * v[0], 0, 0}, {0, v[0], 1}, {0, -1, v[0]}}); }, "l >= 0",
                  [](const auto& p) { return p[0].sign >= 0; }),
  };
  b.golden = {"A", "B", "C"};
  return b;
}

BaseModel make_r_plus_h3_ext1() {
  BaseModel b;
  b.key = "r_plus_h3";
  setup_r_plus_h3(b);
  b.h = b.k;
  b.coordinates = derivation_space(b.k).h1_basis();
  b.read = [](const Matrix& d) {
    Matrix m = d.submatrix(kX23, kX23);
    const Rational c = d(3, 3);
    if (c == 0 || determinant(m) == 0) throw NoMatch("singular quotient map");
    const std::vector<std::size_t> q3{1, 2, 3};
    Matrix qm = d.submatrix(q3, q3);
    auto coupled = [&](const Rational& ev) {
      return rank(qm - Matrix::identity(3).scaled(ev)) > rank(m - Matrix::identity(2).scaled(ev));
    };
    Spec2 s = spec2(m);
    Readout r;
    if (s.kind == Spec2::Pair) {
      r.scaling = pair_scale(s, s.a != 0 ? sgn(s.a) : sgn(c));
      QuadScalar l = pair_lambda(s), beta = q(c) * r.scaling;
      r.name = "G";
      r.params = {l, beta};
      if (beta == q(2) * l) {
        r.kappa_name = "H";
        r.kappa_params = {l};
      }
      r.raw = rows({{2 * s.a, 0, 0, 0}, {0, s.a, 1, 0}, {0, -s.b, s.a, 0}, {0, 0, 0, c}});
      return r;
    }
    if (s.kind == Spec2::Jordan) {
      r.scaling = inv(s.a);
      Rational beta = c / s.a;
      if (beta == 1 && coupled(s.a)) {
        r.name = "F";
      } else {
        r.name = "D";
        r.params = {q(beta)};
        if (beta == 2) r.kappa_name = "E";
      }
      return r;
    }
    if ((c == s.a || c == s.b) && coupled(c)) {
      Rational other = c == s.a ? s.b : s.a;
      r.name = "C";
      r.scaling = inv(c);
      r.params = {q(other / c)};
      return r;
    }
    Rational pivot = s.a;
    if (s.a == -s.b && sgn(c) != sgn(pivot)) pivot = s.b;
    Rational alpha = (pivot == s.a ? s.b : s.a) / pivot, beta = c / pivot;
    r.name = "A";
    r.scaling = inv(pivot);
    r.params = {q(alpha), q(beta)};
    if (beta == 1 + alpha) {
      r.kappa_name = "B";
      r.kappa_params = {q(alpha)};
    }
    return r;
  };
  const std::string k = b.key;
  const Mode e = Mode::Ext1;
  auto diag4 = [](const Rational& a, const Rational& b2, const Rational& c, const Rational& d) {
    return rows({{a, 0, 0, 0}, {0, b2, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}});
  };
  auto dj = [](const Rational& beta, const Rational& coupling) {
    return rows({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, coupling, beta}});
  };
  auto gm = [](const Rational& l, const Rational& c) {
    return rows({{2 * l, 0, 0, 0}, {0, l, 1, 0}, {0, -1, l, 0}, {0, 0, 0, c}});
  };
  auto alpha_ok = [](const QuadScalar& a) { return !a.is_zero() && within_unit(a); };
  b.templates = {
      make_family(k, e, "A", {"a", "b"}, 4, [=](const auto& v) { return diag4(1 + v[0], 1, v[0], v[1]); },
                  "0 < |a| <= 1, b != 0, b > 0 when a = -1",
                  [=](const auto& p) {
                    return alpha_ok(p[0]) && !p[1].is_zero() && (!(p[0] == q(-1)) || positive(p[1]));
                  }),
      make_family(k, e, "B", {"a"}, 4, [=](const auto& v) { return with_slot(diag4(1 + v[0], 1, v[0], 1 + v[0])); },
                  "0 < |a| <= 1, a != -1", [=](const auto& p) { return alpha_ok(p[0]) && !(p[0] == q(-1)); }),
      make_family(k, e, "C", {"a"}, 4,
                  [](const auto& v) { return rows({{1 + v[0], 0, 0, 0}, {0, v[0], 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}}); },
                  "a != 0", [](const auto& p) { return !p[0].is_zero(); }),
      make_family(k, e, "D", {"b"}, 4, [=](const auto& v) { return dj(v[0], 0); }, "b != 0",
                  [](const auto& p) { return !p[0].is_zero(); }),
      make_family(k, e, "E", {}, 4, [=](const auto&) { return with_slot(dj(2, 0)); }, "-", nullptr),
      make_family(k, e, "F", {}, 4, [=](const auto&) { return dj(1, 1); }, "-", nullptr),
      make_family(k, e, "G", {"l", "c"}, 4, [=](const auto& v) { return gm(v[0], v[1]); },
                  "l > 0 and c != 0, or l = 0 and c > 0",
                  [](const auto& p) { return p[0].sign > 0 ? !p[1].is_zero() : p[0].is_zero() && positive(p[1]); }),
      make_family(k, e, "H", {"l"}, 4, [=](const auto& v) { return with_slot(gm(v[0], 2 * v[0])); }, "l > 0",
                  [](const auto& p) { return positive(p[0]); }),
  };
  b.golden = {"A", "B", "C", "D", "E", "F", "G", "H"};
  return b;
}

BaseModel make_g4_ext1() {
  BaseModel b;
  b.key = "g4";
  b.k = b.h = filiform4();
  b.ideal = derived_subalgebra(b.k);
  b.pattern = {{true, true}, {false, true}};
  b.lift = [](const Matrix& x) {
    const Rational &r = x(0, 0), &t = x(0, 1), &s = x(1, 1);
    return rows({{r * s * s, 0, 0, 0}, {0, r * s, 0, 0}, {0, 0, r, t}, {0, 0, 0, s}});
  };
  b.nudges = {unit_matrix(4, 0, 2), unit_matrix(4, 0, 3)};
  b.coordinates = derivation_space(b.k).h1_basis();
  b.read = [](const Matrix& d) {
    const Rational &l = d(2, 2), &t = d(2, 3), &s = d(3, 3);
    if (l == 0 || s == 0) throw NoMatch("singular quotient map");
    Readout r;
    r.scaling = inv(s);
    if (l == s && t != 0) {
      r.name = "J";
    } else {
      r.name = "I";
      r.params = {q(l / s)};
    }
    return r;
  };
  b.templates = {
      make_family(b.key, Mode::Ext1, "I", {"l"}, 4,
                  [](const auto& v) { return rows({{v[0] + 2, 0, 0, 0}, {0, v[0] + 1, 0, 0}, {0, 0, v[0], 0}, {0, 0, 0, 1}}); },
                  "l != 0", [](const auto& p) { return !p[0].is_zero(); }),
      make_family(b.key, Mode::Ext1, "J", {}, 4,
                  [](const auto&) { return rows({{3, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}); }, "-", nullptr),
  };
  b.golden = {"I", "J"};
  return b;
}

BaseModel make_h3_ext2ad() {
  BaseModel b;
  b.key = "h3";
  b.mode = Mode::Ext2Ad;
  setup_r_plus_h3(b);
  b.h = heisenberg3();
  b.coordinates = ext2ad_coordinates(b.k);
  b.read = [](const Matrix& d) {
    for (std::size_t j = 0; j < 4; ++j)
      if (d(3, j) != 0) throw NoMatch("derivation leaves H");
    Matrix m = d.submatrix(kX23, kX23);
    if (m(0, 0) + m(1, 1) != 0 || determinant(m) == 0) throw NoMatch("quotient block not traceless invertible");
    Spec2 s = spec2(m);
    Readout r;
    if (s.kind == Spec2::Pair) {
      r.kappa_name = "G";
      r.scaling = pair_scale(s, 1);
      r.raw = rows({{0, 0, 0, 0}, {0, 0, 1, 0}, {0, -s.b, 0, 0}, {0, 0, 0, 0}});
    } else {
      r.kappa_name = "F";
      r.scaling = inv(s.a);
    }
    return r;
  };
  b.templates = {
      make_family(b.key, Mode::Ext2Ad, "F", {}, 4,
                  [](const auto&) { return rows({{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 0}}); }, "-",
                  nullptr),
      make_family(b.key, Mode::Ext2Ad, "G", {}, 4,
                  [](const auto&) { return rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, 0}}); }, "-",
                  nullptr),
  };
  b.golden = {"F", "G"};
  return b;
}

}  // namespace solvlie
