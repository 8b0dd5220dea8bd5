#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "solvlie/exactla.hpp"

namespace solvlie {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::monomial(unsigned degree, const Rational& c) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const Rational& root) { return Polynomial({-root, 1}); }

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Matrix Polynomial::evaluate(const Matrix& m) const {
  Matrix acc(m.rows(), m.cols());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  std::vector<Rational> v(c_);
  for (auto& q : v) q *= inv;
  return Polynomial(std::move(v));
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = c_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    Rational a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (a != 1 || d == 0) os << to_string(a);
    if (d >= 1) os << "t";
    if (d >= 2) os << "^" << d;
    first = false;
  }
  return os.str();
}

PolyDivision divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  for (int d = a.degree(); d >= db; --d) {
    Rational f = rem[static_cast<std::size_t>(d)] / b.leading();
    quo[static_cast<std::size_t>(d - db)] = f;
    if (f == 0) continue;
    for (int k = 0; k <= db; ++k) rem[static_cast<std::size_t>(d - db + k)] -= f * b.coeffs()[static_cast<std::size_t>(k)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divide(x, y).remainder;
    x = y;
    y = r;
  }
  return x.monic();
}

Polynomial char_poly(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("char_poly of non-square matrix");
  // Faddeev-LeVerrier: exact over Q since we only divide by k.
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix prod = m * mk;
    for (std::size_t i = 0; i < n; ++i) prod(i, i) += c[n - k + 1];
    mk = prod;
    Matrix amk = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

IrreducibleFactorDegreeTooHigh::IrreducibleFactorDegreeTooHigh(int deg)
    : std::runtime_error("irreducible factor of degree " + std::to_string(deg) + " over Q is not supported"),
      degree(deg) {}

IrrationalRealEigenvalue::IrrationalRealEigenvalue(Rational disc)
    : std::runtime_error("irrational real eigenvalues (discriminant " + to_string(disc) + ") are not supported"),
      discriminant(std::move(disc)) {}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

namespace {

using IntPoly = std::vector<mpz_class>;  // increasing degree, monic

// Squarefree decomposition (Yun). Returns factors f_i with p = prod f_i^i.
std::vector<std::pair<Polynomial, unsigned>> squarefree(const Polynomial& p) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  Polynomial a = p.monic();
  Polynomial b = gcd(a, a.derivative());
  Polynomial c = divide(a, b).quotient;
  Polynomial d = divide(a.derivative(), b).quotient - c.derivative();
  unsigned i = 1;
  while (c.degree() > 0) {
    Polynomial g = gcd(c, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    c = divide(c, g).quotient;
    d = divide(d, g).quotient - c.derivative();
    ++i;
  }
  return out;
}

// Substitutes t = u / D so the monic rational polynomial becomes monic integral.
IntPoly integerize(const Polynomial& monic, mpz_class& scale) {
  scale = 1;
  for (const auto& c : monic.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
  const int n = monic.degree();
  IntPoly q(static_cast<std::size_t>(n + 1));
  mpz_class pw = 1;
  for (int i = n; i >= 0; --i) {
    Rational v = monic.coeffs()[static_cast<std::size_t>(i)] * Rational(pw);
    v.canonicalize();
    if (v.get_den() != 1) throw std::logic_error("integerize produced a fraction");
    q[static_cast<std::size_t>(i)] = v.get_num();
    pw *= scale;
  }
  return q;
}

mpz_class eval_int(const IntPoly& q, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::complex<long double>> approx_roots(const IntPoly& q) {
  const std::size_t n = q.size() - 1;
  std::vector<long double> c(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) c[i] = static_cast<long double>(q[i].get_d());
  // Fujiwara bound on the root moduli; a coefficient-size bound would make the
  // stopping tolerance far too loose after integerization.
  long double bound = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    long double r = std::pow(std::fabs(c[n - k]), 1.0L / static_cast<long double>(k));
    bound = std::max(bound, k == n ? r / 2 : r);
  }
  bound = std::max(2 * bound, 1.0L);
  std::vector<std::complex<long double>> z(n);
  const std::complex<long double> seed(0.4L, 0.9L);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<long double>(i)) * (bound / 2);
  auto eval = [&](std::complex<long double> x) {
    std::complex<long double> acc = 0;
    for (std::size_t i = q.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  for (int iter = 0; iter < 5000; ++iter) {
    long double delta = 0, scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (std::abs(den) == 0) den = 1e-18L;
      auto step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
      scale = std::max(scale, std::abs(z[i]));
    }
    if (delta < 1e-17L * scale) break;
  }
  return z;
}

mpz_class round_to_int(long double x) {
  mpz_class r;
  long double rounded = std::nearbyint(x);
  r = static_cast<double>(rounded);
  return r;
}

// Exact integer roots of a squarefree monic integer polynomial.
std::vector<mpz_class> integer_roots(const IntPoly& q) {
  std::vector<mpz_class> roots;
  for (const auto& z : approx_roots(q)) {
    for (int off = -1; off <= 1; ++off) {
      mpz_class cand = round_to_int(z.real()) + off;
      if (eval_int(q, cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
    }
  }
  return roots;
}

std::optional<std::pair<IntPoly, IntPoly>> split_quartic(const IntPoly& q) {
  auto z = approx_roots(q);
  const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (const auto& pr : pairings) {
    auto s1 = z[pr[0]] + z[pr[1]], p1 = z[pr[0]] * z[pr[1]];
    IntPoly f = {round_to_int(p1.real()), -round_to_int(s1.real()), 1};
    // Divide q by f exactly over Z.
    IntPoly rem(q), quo(3);
    for (int d = 4; d >= 2; --d) {
      mpz_class coef = rem[static_cast<std::size_t>(d)];
      quo[static_cast<std::size_t>(d - 2)] = coef;
      for (int k = 0; k <= 2; ++k) rem[static_cast<std::size_t>(d - 2 + k)] -= coef * f[static_cast<std::size_t>(k)];
    }
    if (rem[0] == 0 && rem[1] == 0) return std::make_pair(f, quo);
  }
  return std::nullopt;
}

Polynomial rescale_back(const IntPoly& f, const mpz_class& scale) {
  // f(u) with u = D t, divided by D^deg to stay monic.
  const std::size_t n = f.size() - 1;
  std::vector<Rational> c(f.size());
  for (std::size_t i = 0; i <= n; ++i) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(n - i));
    c[i] = Rational(f[i], pw);
    c[i].canonicalize();
  }
  return Polynomial(std::move(c));
}

void classify_quadratic(const Polynomial& f) {
  const auto& c = f.coeffs();
  Rational disc = c[1] * c[1] - 4 * c[0];
  if (disc > 0) throw IrrationalRealEigenvalue(disc);
}

}  // namespace

std::vector<Factor> factor_supported(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  std::vector<Factor> out;
  for (auto& [sf, mult] : squarefree(p)) {
    mpz_class scale;
    IntPoly q = integerize(sf, scale);
    Polynomial rest = sf;
    for (const auto& r : integer_roots(q)) {
      Rational root(r, scale);
      root.canonicalize();
      Polynomial lin = Polynomial::linear_root(root);
      rest = divide(rest, lin).quotient;
      out.push_back({lin, mult});
    }
    if (rest.degree() <= 0) continue;
    if (rest.degree() == 2) {
      classify_quadratic(rest);
      out.push_back({rest, mult});
    } else if (rest.degree() == 4) {
      IntPoly rq = integerize(rest, scale);
      auto split = split_quartic(rq);
      if (!split) throw IrreducibleFactorDegreeTooHigh(4);
      for (const auto& f : {split->first, split->second}) {
        Polynomial g = rescale_back(f, scale);
        classify_quadratic(g);
        out.push_back({g, mult});
      }
    } else {
      throw IrreducibleFactorDegreeTooHigh(rest.degree());
    }
  }
  return out;
}

}  // namespace solvlie
