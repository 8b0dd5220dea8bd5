#pragma once

#include "solvlie/classify.hpp"

namespace solvlie {

/// Malformed input; `context` names the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& context, const std::string& what)
      : std::runtime_error(context + ": " + what), context(context) {}
  std::string context;
};

// Documents are JSON with sorted keys and rationals as "p/q" strings.

/// {"dim": n, "name": s, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}]}
LieAlgebra parse_algebra(const std::string& text, bool skip_jacobi = false);
std::string serialize_algebra(const LieAlgebra& l);

/// {"rows": r, "cols": c, "entries": ["1", "0", ...]} row-major.
Matrix parse_matrix(const std::string& text);
std::string serialize_matrix(const Matrix& m);

/// "1,0,-1/2" -> vector.
Vector parse_vector_list(const std::string& text);

std::string derivation_report(const LieAlgebra& l, bool with_h1);
std::string codim1_report(const LieAlgebra& extended, const Codim1Verdict& v);
std::string codim2_report(const LieAlgebra& extended, const Codim2Verdict& v,
                          const std::optional<DecomposabilityCertificate>& dec);
std::string classification_report(const ClassificationReport& r, const std::vector<DistinctnessRow>& distinct);

/// Parse then re-serialize any document; identity on canonical documents.
std::string canonicalize_document(const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace solvlie
