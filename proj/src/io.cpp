#include "solvlie/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace solvlie {

using json = nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(e.byte), e.what());
  }
}

Rational rational_field(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw ParseError(ctx, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(ctx, e.what());
  }
}

std::size_t index_field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long>() < 1)
    throw ParseError(ctx + "." + key, "expected a positive integer");
  return j[key].get<std::size_t>();
}

json matrix_json(const Matrix& m) {
  json e = json::array();
  for (const auto& x : m.entries()) e.push_back(to_string(x));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

json matrices_json(const std::vector<Matrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(matrix_json(m));
  return a;
}

json algebra_json(const LieAlgebra& l) {
  json br = json::array();
  for (const auto& b : l.brackets()) {
    json c = json::object();
    for (const auto& [k, v] : b.coeffs) c[std::to_string(k)] = to_string(v);
    br.push_back({{"i", b.i}, {"j", b.j}, {"coeffs", c}});
  }
  json j = {{"dim", l.dim()}, {"brackets", br}};
  if (!l.name().empty()) j["name"] = l.name();
  return j;
}

LieAlgebra algebra_from_json(const json& j, bool skip_jacobi) {
  if (!j.is_object()) throw ParseError("document", "expected an object");
  const std::size_t n = index_field(j, "dim", "document");
  std::vector<BracketEntry> entries;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("brackets", "expected a list");
    for (std::size_t k = 0; k < j["brackets"].size(); ++k) {
      const json& b = j["brackets"][k];
      const std::string ctx = "brackets[" + std::to_string(k) + "]";
      BracketEntry e;
      e.i = index_field(b, "i", ctx);
      e.j = index_field(b, "j", ctx);
      if (e.i >= e.j || e.j > n) throw ParseError(ctx, "need 1 <= i < j <= dim");
      if (!b.contains("coeffs") || !b["coeffs"].is_object()) throw ParseError(ctx + ".coeffs", "expected a map");
      for (const auto& [key, val] : b["coeffs"].items()) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(key);
        } catch (const std::exception&) {
          throw ParseError(ctx + ".coeffs", "bad index " + key);
        }
        if (idx < 1 || idx > n) throw ParseError(ctx + ".coeffs", "index out of range: " + key);
        Rational q = rational_field(val, ctx + ".coeffs." + key);
        if (q != 0) e.coeffs[idx] = q;
      }
      entries.push_back(std::move(e));
    }
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  return skip_jacobi ? LieAlgebra::make_unchecked(n, entries, name) : LieAlgebra::make(n, entries, name);
}

json flag_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

}  // namespace

LieAlgebra parse_algebra(const std::string& text, bool skip_jacobi) {
  return algebra_from_json(parse_json(text), skip_jacobi);
}

std::string serialize_algebra(const LieAlgebra& l) { return dump(algebra_json(l)); }

Matrix parse_matrix(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ParseError("matrix", "expected an object");
  if (!j.contains("rows") || !j["rows"].is_number_unsigned() || !j.contains("cols") || !j["cols"].is_number_unsigned())
    throw ParseError("matrix", "rows and cols are required");
  const std::size_t r = j["rows"], c = j["cols"];
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != r * c)
    throw ParseError("matrix.entries", "expected rows*cols entries");
  Matrix m(r, c);
  for (std::size_t k = 0; k < r * c; ++k)
    m(k / c, k % c) = rational_field(j["entries"][k], "matrix.entries[" + std::to_string(k) + "]");
  return m;
}

std::string serialize_matrix(const Matrix& m) { return dump(matrix_json(m)); }

Vector parse_vector_list(const std::string& text) {
  Vector v;
  std::stringstream ss(text);
  std::string part;
  std::size_t k = 0;
  while (std::getline(ss, part, ',')) {
    try {
      v.push_back(parse_rational(part));
    } catch (const std::exception& e) {
      throw ParseError("vector[" + std::to_string(k) + "]", e.what());
    }
    ++k;
  }
  if (v.empty()) throw ParseError("vector", "empty");
  return v;
}

std::string derivation_report(const LieAlgebra& l, bool with_h1) {
  DerivationSpace s = derivation_space(l);
  json j = {{"kind", "derivations"},
            {"algebra", algebra_json(l)},
            {"dim_der", s.full.dim()},
            {"dim_inner", s.inner.dim()},
            {"dim_h1", s.h1_dim()},
            {"der_basis", matrices_json(s.full_basis())},
            {"inner_basis", matrices_json(s.inner_basis())}};
  if (with_h1) j["h1_basis"] = matrices_json(s.h1_basis());
  return dump(j);
}

std::string codim1_report(const LieAlgebra& extended, const Codim1Verdict& v) {
  json j = {{"kind", "extension"},
            {"algebra", algebra_json(extended)},
            {"verdicts",
             {{"member", v.member()},
              {"span_condition", v.span_condition},
              {"rank_condition", v.rank_condition},
              {"quotient_invertible", v.quotient_invertible},
              {"derived_dim_of_base", v.m}}}};
  return dump(j);
}

std::string codim2_report(const LieAlgebra& extended, const Codim2Verdict& v,
                          const std::optional<DecomposabilityCertificate>& dec) {
  json verdicts = {{"member", v.member()},
                   {"span_condition", v.span_condition},
                   {"image_condition", v.image_condition},
                   {"derived_dim_of_base", v.m}};
  if (dec) {
    verdicts["decomposable"] = dec->decomposable;
    verdicts["nonsingular_crosscheck"] = flag_json(dec->nonsingular_crosscheck);
    if (dec->central_preimage) {
      json p = json::array();
      for (const auto& x : *dec->central_preimage) p.push_back(to_string(x));
      verdicts["central_preimage"] = p;
    }
  }
  return dump({{"kind", "double_extension"}, {"algebra", algebra_json(extended)}, {"verdicts", verdicts}});
}

std::string classification_report(const ClassificationReport& r, const std::vector<DistinctnessRow>& distinct) {
  json fams = json::array();
  for (const auto& f : r.families)
    fams.push_back({{"name", f.name},
                    {"params", f.params},
                    {"domain", f.domain},
                    {"hits", f.hits},
                    {"witnessed", f.witnessed},
                    {"formal", f.formal},
                    {"samples", f.samples},
                    {"instance_checks", f.instance_checks},
                    {"fingerprint", f.fingerprint.str()}});
  json dist = json::array();
  for (const auto& d : distinct) dist.push_back({{"a", d.a}, {"b", d.b}, {"evidence", d.evidence}});
  json j = {{"kind", "classification"},
            {"base", r.base},
            {"mode", to_string(r.mode)},
            {"grid", r.grid},
            {"h1_dim", r.h1_dim},
            {"points", r.points},
            {"members", r.members},
            {"rejected", r.rejected},
            {"out_of_field", r.out_of_field},
            {"unmatched", r.unmatched},
            {"found", r.names()},
            {"expected", r.expected},
            {"golden_match", r.golden_match},
            {"families", fams},
            {"distinctness", dist}};
  return dump(j);
}

std::string canonicalize_document(const std::string& text) { return dump(parse_json(text)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace solvlie
