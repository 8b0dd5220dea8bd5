#include "solvlie/cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "solvlie/io.hpp"

namespace solvlie {

namespace {

constexpr int kOk = 0, kUsage = 1, kNegative = 2, kTrap = 3;

LieAlgebra load_algebra(const std::string& path, bool skip_jacobi) {
  return parse_algebra(read_text_file(path), skip_jacobi);
}

std::string triple(const JacobiViolation& v) {
  return "(" + std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) + ")";
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  LieAlgebra l = load_algebra(file, true);
  if (auto v = l.find_jacobi_violation()) {
    err << "jacobi violated at triple " << triple(*v) << "\n";
    return kNegative;
  }
  out << "valid: dim " << l.dim() << (l.name().empty() ? "" : ", " + l.name()) << "\n";
  return kOk;
}

int cmd_der(const std::string& file, bool h1, bool skip, std::ostream& out) {
  out << derivation_report(load_algebra(file, skip), h1);
  return kOk;
}

struct ExtendArgs {
  std::string file, derivation, second, zy;
  bool skip = false;
};

int cmd_extend(const ExtendArgs& a, std::ostream& out, std::ostream& err) {
  LieAlgebra h = load_algebra(a.file, a.skip);
  Matrix d1 = parse_matrix(read_text_file(a.derivation));
  auto check = [&](const Matrix& d, const char* what) {
    if (d.rows() != h.dim() || d.cols() != h.dim())
      throw ParseError(what, "expected a " + std::to_string(h.dim()) + "x" + std::to_string(h.dim()) + " matrix");
    if (auto v = leibniz_violation(h, d)) {
      err << what << " is not a derivation: Leibniz fails on pair (" << v->i << "," << v->j << ")\n";
      return false;
    }
    return true;
  };
  if (!check(d1, "--derivation")) return kNegative;
  if (a.second.empty()) {
    if (!a.zy.empty()) throw ParseError("--zy", "requires --second");
    Codim1Verdict v = check_codim1_condition(h, d1);
    out << codim1_report(extend_by_derivation(h, d1), v);
    return v.member() ? kOk : kNegative;
  }
  // --derivation acts as d' (for y), --second as d (for z); [z,y] = zy.
  Matrix d2 = parse_matrix(read_text_file(a.second));
  if (!check(d2, "--second")) return kNegative;
  Vector zy = a.zy.empty() ? Vector(h.dim()) : parse_vector_list(a.zy);
  if (zy.size() != h.dim()) throw ParseError("--zy", "expected " + std::to_string(h.dim()) + " entries");
  LieAlgebra l = build_double_extension(h, d1, d2, zy);
  Codim2Verdict v = check_codim2_condition(h, d1, d2, zy);
  std::optional<DecomposabilityCertificate> dec;
  if (d1.is_zero()) dec = is_decomposable_double(h, ExtensionSpec{h, d2, d1, zy});
  out << codim2_report(l, v, dec);
  return v.member() ? kOk : kNegative;
}

int cmd_classify(const std::string& key, const std::string& grid, const std::string& mode, unsigned jobs,
                 std::ostream& out, std::ostream& err) {
  const BaseModel& b = base_model(key, parse_mode(mode));
  GridSpec g = grid.empty() ? default_grid(b) : GridSpec::parse(grid);
  ClassificationReport r = classify(b, g, {jobs == 0 ? 1u : jobs, false});
  out << classification_report(r, distinctness_evidence(b, r));
  if (!r.golden_match) {
    err << "golden mismatch for " << key << " (" << mode << ")\n";
    return kNegative;
  }
  return kOk;
}

int cmd_verify_witness(const std::string& f1, const std::string& f2, const std::string& wfile, bool skip,
                       std::ostream& out, std::ostream& err) {
  LieAlgebra l1 = load_algebra(f1, skip), l2 = load_algebra(f2, skip);
  Matrix t = parse_matrix(read_text_file(wfile));
  if (l1.dim() != l2.dim() || t.rows() != l1.dim() || t.cols() != l1.dim())
    throw ParseError("--witness", "dimension mismatch");
  if (determinant(t) == 0) {
    err << "witness is not invertible\n";
    return kNegative;
  }
  if (!verify_iso_witness_full(l1, l2, t)) {
    err << "witness does not preserve brackets\n";
    return kNegative;
  }
  out << "witness verified\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with solvable Lie algebras of codimension one and two"};
  app.require_subcommand(1);
  bool skip = false;
  app.add_flag("--skip-jacobi", skip, "Accept documents violating Jacobi (negative testing only)");

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check an algebra document");
  validate->add_option("file", file)->required();

  bool h1 = false;
  auto* der = app.add_subcommand("der", "Derivations, inner derivations and H^1");
  der->add_option("file", file)->required();
  der->add_flag("--h1", h1, "Also print a basis of the H^1 transversal");

  ExtendArgs ext;
  auto* extend = app.add_subcommand("extend", "Build an extension and report its verdicts");
  extend->add_option("file", ext.file)->required();
  extend->add_option("--derivation", ext.derivation, "Matrix file")->required();
  extend->add_option("--second", ext.second, "Matrix file of the second derivation");
  extend->add_option("--zy", ext.zy, "Comma separated [z,y] coordinates");

  std::string key, grid, mode = "ext1";
  unsigned jobs = 1;
  auto* cls = app.add_subcommand("classify", "Sweep a catalog base");
  cls->add_option("--base", key)->required();
  cls->add_option("--grid", grid, "values=..;sample=..;seed=..");
  cls->add_option("--mode", mode)->check(CLI::IsMember({"ext1", "ext2ad"}));
  cls->add_option("--jobs", jobs);

  std::string f1, f2, witness;
  auto* vw = app.add_subcommand("verify-witness", "Check an isomorphism matrix between two algebras");
  vw->add_option("file1", f1)->required();
  vw->add_option("file2", f2)->required();
  vw->add_option("--witness", witness)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  try {
    if (*validate) return cmd_validate(file, out, err);
    if (*der) return cmd_der(file, h1, skip, out);
    if (*extend) {
      ext.skip = skip;
      return cmd_extend(ext, out, err);
    }
    if (*cls) return cmd_classify(key, grid, mode, jobs, out, err);
    if (*vw) return cmd_verify_witness(f1, f2, witness, skip, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const JacobiViolation& e) {
    err << "jacobi violated at triple " << triple(e) << "\n";
    return kNegative;
  } catch (const std::out_of_range& e) {
    err << "unknown base: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kTrap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}

}  // namespace solvlie
