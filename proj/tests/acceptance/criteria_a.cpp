#include <sstream>

#include "acceptance.hpp"

using namespace solvlie;
using testsupport::M;

namespace acceptance {

namespace {

std::mt19937_64 rng_for(int criterion) { return std::mt19937_64(1000 + criterion); }

Matrix random_derivation(std::mt19937_64& rng, const DerivationSpace& s) {
  std::uniform_int_distribution<int> c(-2, 2);
  Vector v(s.n * s.n);
  for (const auto& b : s.full.basis()) v = add(v, scale(b, c(rng) * (c(rng) != 0)));
  return unflatten(v, s.n, s.n);
}

std::vector<QuadScalar> quad(const std::vector<Rational>& v) {
  std::vector<QuadScalar> out;
  for (const auto& x : v) out.push_back(QuadScalar::of(x));
  return out;
}

const std::vector<Rational> kProbe = {-3, -2, -1, Rational(-1, 2), 0, Rational(1, 3), Rational(1, 2), 1, 2, 3};

}  // namespace

Outcome derivation_dims() {
  auto t0 = std::chrono::steady_clock::now();
  auto h3 = derivation_space(catalog_algebra("h3"));
  auto rh = derivation_space(catalog_algebra("r_plus_h3"));
  auto g4 = derivation_space(catalog_algebra("g4"));
  const double secs = seconds_since(t0);
  std::ostringstream s;
  s << "h3 (" << h3.full.dim() << "," << h3.inner.dim() << "," << h3.h1_dim() << "), H1(R+h3)=" << rh.h1_dim()
    << ", H1(g4)=" << g4.h1_dim() << ", " << secs << "s";
  bool ok = h3.full.dim() == 6 && h3.inner.dim() == 2 && h3.h1_dim() == 4 && rh.h1_dim() == 8 && g4.h1_dim() == 4 &&
            secs < 1.0;
  return {ok, s.str()};
}

Outcome golden_counts() {
  struct Row {
    const char* key;
    Mode mode;
    std::size_t expected;
  };
  const Row rows[] = {{"r3", Mode::Ext1, 4},   {"h3", Mode::Ext1, 3},   {"r4", Mode::Ext1, 14},
                      {"r_plus_h3", Mode::Ext1, 8}, {"g4", Mode::Ext1, 2}, {"r2", Mode::Ext2Ad, 2},
                      {"r3", Mode::Ext2Ad, 5}, {"h3", Mode::Ext2Ad, 2}};
  bool ok = true;
  std::ostringstream s;
  for (const auto& r : rows) {
    const BaseModel& b = base_model(r.key, r.mode);
    auto t0 = std::chrono::steady_clock::now();
    ClassificationReport rep = classify(b, default_grid(b));
    const double secs = seconds_since(t0);
    const std::size_t got = rep.names().size();
    const bool row_ok = got == r.expected && rep.unmatched == 0 && secs < 60;
    ok = ok && row_ok;
    s << r.key << "/" << to_string(r.mode) << "=" << got << (row_ok ? "" : "(want " + std::to_string(r.expected) + ")")
      << " ";
  }
  return {ok, s.str()};
}

Outcome parameter_domains() {
  // The stated domains, as predicates on sampled parameters.
  struct Row {
    const char* key;
    const char* name;
    std::function<bool(const std::vector<Rational>&)> stated;
  };
  const Row rows[] = {
      {"h3", "A", [](const auto& v) { return v[0] != 0 && abs(v[0]) <= 1; }},
      {"h3", "C", [](const auto& v) { return v[0] >= 0; }},
      {"r_plus_h3", "B", [](const auto& v) { return v[0] > -1 && v[0] <= 1 && v[0] != 0; }},
      {"r_plus_h3", "G", [](const auto& v) { return v[0] >= 0 && v[1] > 0; }},
      {"r_plus_h3", "H", [](const auto& v) { return v[0] > 0; }},
  };
  bool ok = true;
  std::ostringstream s;
  for (const auto& r : rows) {
    const FamilyTemplate& t = base_model(r.key, Mode::Ext1).find(r.name);
    std::size_t mismatches = 0, probes = 0;
    std::vector<Rational> v(t.params.size());
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == v.size()) {
        ++probes;
        mismatches += t.in_domain(quad(v)) != r.stated(v);
        return;
      }
      for (const auto& x : kProbe) {
        v[i] = x;
        walk(i + 1);
      }
    };
    walk(0);
    ok = ok && mismatches == 0;
    s << r.name << (mismatches ? "[" + t.domain + ": " + std::to_string(mismatches) + "/" + std::to_string(probes) + " differ]" : "") << " ";
  }
  return {ok, s.str()};
}

Outcome witnesses() {
  const BaseModel& rh = base_model("r_plus_h3", Mode::Ext1);
  const LieAlgebra k = catalog_algebra("r_plus_h3");
  int checked = 0, failed = 0;
  auto tally = [&](bool v) { ++checked, failed += !v; };
  // diag(1+a, 1, a, b) against diag(1+1/a, 1, 1/a, b/a), T = diag(1, rot, 1/a, a).
  auto diag4 = [](Rational x, Rational y) { return Matrix::from_rows({{1 + x, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, x, 0}, {0, 0, 0, y}}); };
  const std::pair<Rational, Rational> pts[] = {{2, 1},  {3, -1}, {-2, 5}, {Rational(1, 2), 2}, {-3, Rational(1, 3)},
                                               {4, 4},  {5, -2}, {-4, 1}, {Rational(2, 3), 3}, {7, Rational(-1, 2)}};
  for (const auto& [a, b] : pts) {
    Matrix t = Matrix::from_rows({{1, 0, 0, 0, 0}, {0, 0, -1, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 1 / a, 0}, {0, 0, 0, 0, a}});
    tally(verify_iso_witness_full(extend_by_derivation(k, diag4(a, b)), extend_by_derivation(k, diag4(1 / a, b / a)), t));
  }
  // G(l, c) against G(-l, -c), T = diag(-1, -1, 1, 1, -1).
  const Matrix flip = Matrix::diagonal(std::vector<Rational>{-1, -1, 1, 1, -1});
  const FamilyTemplate& g = rh.find("G");
  const std::pair<Rational, Rational> gp[] = {{1, 1}, {2, 3}, {0, 1}, {Rational(1, 2), 2}, {3, Rational(1, 3)},
                                              {1, 5}, {2, 1}, {0, 4}, {Rational(5, 2), 1}, {4, 2}};
  for (const auto& [l, c] : gp)
    tally(verify_iso_witness_full(family_algebra(rh, g.instantiate({l, c})), family_algebra(rh, g.instantiate({-l, -c})), flip));
  // The x1-x4 slot with both signs (E and H): x4 -> -x4 is the witness.
  const Matrix sign4 = Matrix::diagonal(std::vector<Rational>{1, 1, 1, -1, 1});
  auto with_sign = [](Matrix d, int sgn) {
    d(0, 3) = sgn;
    return d;
  };
  Matrix e = rh.find("E").instantiate({});
  tally(verify_iso_witness_full(family_algebra(rh, with_sign(e, -1)), family_algebra(rh, with_sign(e, 1)), sign4));
  for (Rational l : {Rational(1), Rational(2), Rational(1, 2)}) {
    Matrix h = rh.find("H").instantiate({l});
    tally(verify_iso_witness_full(family_algebra(rh, with_sign(h, -1)), family_algebra(rh, with_sign(h, 1)), sign4));
  }
  return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) + " witnesses verify"};
}

Outcome condition_suites() {
  auto rng = rng_for(5);
  int codim1 = 0, codim2 = 0, disagreements = 0, members = 0;
  const std::vector<std::string> keys = catalog_keys();
  for (std::size_t ki = 0; ki < keys.size(); ++ki) {
    const LieAlgebra k = catalog_algebra(keys[ki]);
    const auto s = derivation_space(k);
    const Subspace z = center(k);
    for (int t = 0; t < 200; ++t) {
      Matrix d = random_derivation(rng, s);
      try {
        members += check_codim1_condition(k, d).member();
      } catch (const ConditionDisagreement&) {
        ++disagreements;
      }
      ++codim1;
    }
    for (int t = 0, here = 0; here < 200 && t < 4000; ++t) {
      Matrix d = random_derivation(rng, s);
      Matrix dp = t % 4 ? Matrix(k.dim(), k.dim()) : random_derivation(rng, s);
      Vector zy(k.dim());
      if (z.dim() && t % 2) zy = scale(z.basis()[0], t % 5);
      if (!is_derivation(extend_by_derivation(k, dp), double_derivation(d, zy))) continue;
      try {
        check_codim2_condition(k, dp, d, zy);
      } catch (const ConditionDisagreement&) {
        ++disagreements;
      }
      ++codim2, ++here;
    }
  }
  std::ostringstream s;
  s << codim1 << " codim-1 (" << members << " members) and " << codim2 << " codim-2 checks, " << disagreements
    << " disagreements";
  return {disagreements == 0 && codim2 == 200 * static_cast<int>(keys.size()), s.str()};
}

}  // namespace acceptance
