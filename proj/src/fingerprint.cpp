#include <sstream>

#include "strata_internal.hpp"

namespace solvlie {

std::string Fingerprint::str() const {
  std::ostringstream s;
  auto list = [&](const std::vector<std::size_t>& v) {
    s << "[";
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << "]";
  };
  s << "derived=";
  list(derived_dims);
  s << " lcs=";
  list(lower_central_dims);
  s << " center=" << center_dim << " h1=" << h1_dim << " ay=" << ay_shape;
  return s.str();
}

namespace {

std::string block_text(const NormalizedBlock& b) {
  std::string s = (b.kind == EigenKind::ComplexPair ? "C" : "R") + std::to_string(b.size) + ":" + b.value.str();
  if (b.kind == EigenKind::ComplexPair) s += "~" + b.imag.str();
  return s;
}

}  // namespace

Fingerprint fingerprint(const LieAlgebra& l) {
  Fingerprint f;
  for (const auto& s : derived_series(l)) f.derived_dims.push_back(s.dim());
  for (const auto& s : lower_central_series(l)) f.lower_central_dims.push_back(s.dim());
  f.center_dim = center(l).dim();
  f.h1_dim = derivation_space(l).h1_dim();
  // a_y on L^1 for the last basis vector outside L^1, up to a common scalar.
  Subspace l1 = derived_subalgebra(l);
  std::vector<bool> piv(l.dim(), false);
  for (auto p : l1.pivots()) piv[p] = true;
  std::size_t y = l.dim();
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (!piv[i]) y = i;
  if (y == l.dim() || l1.dim() == 0) {
    f.ay_shape = "-";
    return f;
  }
  try {
    Matrix a = restricted_matrix(adjoint_matrix(l, unit_vector(l.dim(), y)), l1);
    std::string s;
    SpectrumNormalization norm = normalize_spectrum(eigen_structure(a));
    for (const auto& b : norm.blocks) s += (s.empty() ? "" : " ") + block_text(b);
    f.ay_shape = s;
  } catch (const IrrationalRealEigenvalue&) {
    f.ay_shape = "out-of-field";
  } catch (const IrreducibleFactorDegreeTooHigh&) {
    f.ay_shape = "out-of-field";
  }
  return f;
}

std::vector<std::vector<Rational>> domain_samples(const FamilyTemplate& t, std::size_t limit) {
  const std::size_t k = t.params.size();
  if (k == 0) return {{}};
  // Small rationals ordered roughly by height.
  std::vector<Rational> cand;
  for (const char* x : {"1", "-1", "0", "2", "-2", "1/2", "-1/2", "3", "-3", "1/3", "-1/3", "3/2", "-3/2", "2/3",
                        "-2/3", "4", "-4", "1/4", "-1/4", "5", "-5", "1/5", "-1/5", "4/3", "-4/3", "3/4", "-3/4",
                        "5/2", "-5/2", "2/5", "-2/5", "3/5", "-3/5", "4/5", "-4/5", "1/6", "-1/6", "5/6", "-5/6",
                        "6", "-6", "2/7", "-2/7"})
    cand.push_back(parse_rational(x));
  const std::size_t base = k == 1 ? cand.size() : k == 2 ? 16 : 12;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= base;
  std::vector<std::vector<Rational>> out;
  // A stride coprime to the grid size spreads the picks across the product.
  const std::size_t stride = total > 7 ? 7 : 1;
  for (std::size_t step = 0; step < total && out.size() < limit; ++step) {
    std::size_t idx = (step * stride) % total;
    std::vector<Rational> v;
    std::vector<QuadScalar> qv;
    for (std::size_t i = 0; i < k; ++i) {
      v.push_back(cand[idx % base]);
      qv.push_back(QuadScalar::of(v.back()));
      idx /= base;
    }
    if (!t.in_domain || t.in_domain(qv)) out.push_back(std::move(v));
  }
  return out;
}

LieAlgebra family_algebra(const BaseModel& b, const Matrix& instance) { return extend_by_derivation(b.k, instance); }

std::vector<DistinctnessRow> distinctness_evidence(const BaseModel& b, const ClassificationReport& report) {
  struct Gen {
    std::string name;
    Matrix inst;
    Fingerprint fp;
  };
  std::vector<Gen> gens;
  for (const auto& name : report.names()) {
    const FamilyTemplate& t = b.find(name);
    auto s = domain_samples(t, 1);
    if (s.empty()) continue;
    Matrix inst = t.instantiate(s.front());
    gens.push_back({name, inst, fingerprint(family_algebra(b, inst))});
  }
  std::vector<DistinctnessRow> rows;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Gen &a = gens[i], &c = gens[j];
      DistinctnessRow r{a.name, c.name, "UNRESOLVED"};
      if (a.fp.derived_dims != c.fp.derived_dims) r.evidence = "fingerprint: derived series";
      else if (a.fp.lower_central_dims != c.fp.lower_central_dims) r.evidence = "fingerprint: lower central series";
      else if (a.fp.center_dim != c.fp.center_dim) r.evidence = "fingerprint: center";
      else if (a.fp.h1_dim != c.fp.h1_dim) r.evidence = "fingerprint: outer derivations";
      else if (a.fp.ay_shape != c.fp.ay_shape) r.evidence = "fingerprint: a_y on L^1";
      else if (b.mode == Mode::Ext1 &&
               !same_proportional_class(induced_quotient_map(b.k, a.inst, b.ideal),
                                        induced_quotient_map(b.k, c.inst, b.ideal)))
        r.evidence = "induced map on K/K^1 not proportionally similar";
      rows.push_back(std::move(r));
    }
  return rows;
}

}  // namespace solvlie
