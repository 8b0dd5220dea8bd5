#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "solvlie/cli.hpp"
#include "solvlie/io.hpp"

namespace py = pybind11;
using namespace solvlie;

namespace {

// Entries may be int, str or fractions.Fraction; str() of each is parsed exactly.
Matrix to_matrix(const py::sequence& rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    std::vector<Rational> r;
    for (const auto& x : py::reinterpret_borrow<py::sequence>(row)) r.push_back(parse_rational(py::str(x)));
    out.push_back(std::move(r));
  }
  return Matrix::from_rows(out);
}

std::vector<std::vector<std::string>> from_matrix(const Matrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solvable Lie algebra classification";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<JacobiViolation>(m, "JacobiViolation", PyExc_ValueError);
  py::register_exception<NotADerivation>(m, "NotADerivation", PyExc_ValueError);

  m.def("catalog_keys", &catalog_keys);
  m.def("catalog_document", [](const std::string& key) {
    LieAlgebra l = catalog_algebra(key);
    l.set_name(key);
    return serialize_algebra(l);
  });
  m.def("canonicalize", &canonicalize_document, py::arg("document"));
  m.def("validate", [](const std::string& doc) { parse_algebra(doc).validate(); }, py::arg("document"));
  m.def(
      "derivation_dims",
      [](const std::string& doc) {
        DerivationSpace s = derivation_space(parse_algebra(doc));
        return py::make_tuple(s.full.dim(), s.inner.dim(), s.h1_dim());
      },
      py::arg("document"));
  m.def(
      "derivation_report", [](const std::string& doc, bool h1) { return derivation_report(parse_algebra(doc), h1); },
      py::arg("document"), py::arg("h1") = false);
  m.def(
      "h1_basis", [](const std::string& doc) {
        std::vector<std::vector<std::vector<std::string>>> out;
        for (const auto& b : derivation_space(parse_algebra(doc)).h1_basis()) out.push_back(from_matrix(b));
        return out;
      },
      py::arg("document"));
  m.def(
      "extend",
      [](const std::string& doc, const py::sequence& d) {
        LieAlgebra k = parse_algebra(doc);
        Matrix dm = to_matrix(d);
        return codim1_report(extend_by_derivation(k, dm), check_codim1_condition(k, dm));
      },
      py::arg("document"), py::arg("derivation"));
  m.def(
      "is_member",
      [](const std::string& doc, const py::sequence& d) {
        LieAlgebra k = parse_algebra(doc);
        Matrix dm = to_matrix(d);
        require_derivation(k, dm);
        return check_codim1_condition(k, dm).member();
      },
      py::arg("document"), py::arg("derivation"));
  m.def(
      "verify_witness",
      [](const std::string& a, const std::string& b, const py::sequence& t) {
        Matrix tm = to_matrix(t);
        return determinant(tm) != 0 && verify_iso_witness_full(parse_algebra(a), parse_algebra(b), tm);
      },
      py::arg("document1"), py::arg("document2"), py::arg("witness"));
  m.def(
      "classify",
      [](const std::string& base, const std::string& mode, const std::optional<std::string>& grid, unsigned jobs) {
        py::gil_scoped_release release;
        const BaseModel& b = base_model(base, parse_mode(mode));
        GridSpec g = grid ? GridSpec::parse(*grid) : default_grid(b);
        ClassificationReport r = classify(b, g, {jobs, false});
        return classification_report(r, distinctness_evidence(b, r));
      },
      py::arg("base"), py::arg("mode") = "ext1", py::arg("grid") = std::nullopt, py::arg("jobs") = 1);
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "solvlie");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
