#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lslab/clt.hpp"
#include "lslab/edgeworth.hpp"
#include "lslab/errors.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/export.hpp"
#include "lslab/poly_engine.hpp"
#include "lslab/verify.hpp"

namespace py = pybind11;
using namespace lslab;

namespace {

// Exact values cross the boundary as decimal text and become Python ints or
// fractions.Fraction on arrival.
py::object to_py(const BigInt& z) { return py::module_::import("builtins").attr("int")(z.get_str(10)); }

py::object to_py(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_fraction_string(q));
}

GammaParam gamma_from(const std::string& text) { return GammaParam(parse_rational(text)); }

py::list coefficient_list(const IntegerPolynomial& p) {
  py::list out;
  for (const auto& c : p.coefficients()) out.append(to_py(c));
  return out;
}

std::string real_text(const Real& x) { return format_fixed(x, decimal_digits(x.precision())); }

}  // namespace

PYBIND11_MODULE(_lslab, m) {
  auto base = py::register_exception<Error>(m, "LslabError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<DegenerateVarianceError>(m, "DegenerateVarianceError", base.ptr());
  py::register_exception<CacheError>(m, "CacheError", base.ptr());

  m.def("js_number", [](std::size_t n, std::size_t j, const std::string& gamma) {
    return to_py(js_recurrence(n, j, gamma_from(gamma)));
  }, py::arg("n"), py::arg("j"), py::arg("gamma") = "1");

  m.def("modified_ls", [](std::size_t n, std::size_t j) { return to_py(modified_ls(n, j)); });

  m.def("triangle", [](std::size_t n_max, const std::string& gamma) {
    StirlingTriangle t = StirlingTriangle::build(gamma_from(gamma), n_max);
    py::list rows;
    for (std::size_t n = 0; n <= n_max; ++n) {
      py::list row;
      for (const auto& v : t.row(n)) row.append(to_py(v));
      rows.append(row);
    }
    return rows;
  }, py::arg("n_max"), py::arg("gamma") = "1");

  m.def("m_polynomial", [](std::size_t n) { return coefficient_list(build_M_recurrence(n)); });
  m.def("l_polynomial", [](std::size_t n) { return coefficient_list(build_L(n)); });

  m.def("certify_roots", [](std::size_t n) {
    RootCertificate cert = certify_roots(n);
    py::list intervals;
    for (const auto& iv : cert.isolating_intervals) intervals.append(py::make_tuple(to_py(iv.lo), to_py(iv.hi)));
    py::dict out;
    out["n"] = n;
    out["intervals"] = intervals;
    out["sign_at_quarter"] = cert.sign_at_quarter;
    return out;
  });

  m.def("refine_roots", [](std::size_t n, long bits, unsigned threads) {
    std::vector<std::string> out;
    for (const auto& r : refine_roots(certify_roots(n), bits, threads)) out.push_back(real_text(r));
    return out;
  }, py::arg("n"), py::arg("precision_bits") = kDefaultPrecisionBits, py::arg("threads") = 1);

  m.def("unimodality", [](std::size_t n) {
    UnimodalityReport r = unimodality_report(n);
    return py::make_tuple(r.mode, r.plateau);
  });

  m.def("omega", [](long bits) { return real_text(omega(bits)); }, py::arg("precision_bits") = kDefaultPrecisionBits);

  m.def("mu_sigma", [](std::size_t n) {
    MeanVariance mv = mu_sigma_exact(n);
    return py::make_tuple(to_py(mv.mean), to_py(mv.variance));
  });

  m.def("ratio_check", [](std::size_t n, std::size_t j, long bits) {
    RatioReport r = ratio_check(n, j, bits, true);
    py::dict out;
    out["n"] = n;
    out["j"] = j;
    out["exact"] = to_py(r.exact);
    out["approximation"] = real_text(r.approximation);
    out["ratio"] = real_text(r.ratio);
    out["cross_checked"] = r.cross_checked;
    return out;
  }, py::arg("n"), py::arg("j"), py::arg("precision_bits") = kDefaultPrecisionBits);

  m.def("local_residual", [](std::size_t n, long bits) {
    ResidualResult r = local_limit_residual(n, bits);
    return py::make_tuple(r.max_residual.to_double(), r.argmax);
  }, py::arg("n"), py::arg("precision_bits") = kDefaultPrecisionBits);

  m.def("cdf", [](std::size_t n, const std::string& y, long bits) {
    return row_cdf(n, Real::parse(y, bits), bits).value.to_double();
  }, py::arg("n"), py::arg("y"), py::arg("precision_bits") = kDefaultPrecisionBits);

  m.def("expansion_errors", [](std::size_t n, long bits) {
    const std::vector<BigInt> row = modified_ls_row(n);
    const BigInt total = derivatives_at_one(row).value;
    std::vector<Rational> dist;
    for (const auto& c : row) {
      Rational p(c, total);
      p.canonicalize();
      dist.push_back(p);
    }
    CumulantProfile profile = cumulants_from_factorial_moments(row, 6, bits);
    ExpansionErrors e = max_expansion_errors(expansion_table(dist, profile));
    return py::make_tuple(e.max_error2.to_double(), e.max_error3.to_double());
  }, py::arg("n"), py::arg("precision_bits") = kDefaultPrecisionBits);

  m.def("verify", [](const std::string& suite, std::size_t n, std::size_t j, std::size_t n_max, long bits) {
    VerifyConfig config;
    config.n = n;
    config.j = j;
    config.n_max = n_max;
    config.precision_bits = bits;
    std::vector<py::tuple> out;
    for (const auto& r : run_suite(suite, config, {})) out.push_back(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  }, py::arg("suite"), py::arg("n") = 1000, py::arg("j") = 930, py::arg("n_max") = 30,
        py::arg("precision_bits") = kDefaultPrecisionBits);
}
