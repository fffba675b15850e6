#include "pslab/asymptotics.hpp"
#include "pslab/cli.hpp"
#include "pslab/counting.hpp"
#include "pslab/errors.hpp"
#include "pslab/exppair.hpp"
#include "pslab/expsum.hpp"
#include "pslab/hbdecomp.hpp"
#include "pslab/sieve.hpp"
#include "pslab/vaaler.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pslab;

namespace {

ExactC exponent(const std::string& c, bool relaxed) {
  return ExactC::parse(c, relaxed ? RangeMode::Relaxed : RangeMode::Theorem);
}

SieveOptions sieve_opts(unsigned workers) {
  SieveOptions o;
  o.workers = workers;
  return o;
}

}  // namespace

PYBIND11_MODULE(_pslab, m) {
  m.doc() = "Exact counts and diagnostics for primes of the form [n^c]";

  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  m.def("floor_pow", [](std::uint64_t n, const std::string& c, bool relaxed) {
    return floor_pow(n, exponent(c, relaxed));
  }, py::arg("n"), py::arg("c"), py::arg("relaxed") = false);

  m.def("count", [](const std::string& c, std::uint64_t x, const std::string& variant, const std::string& method,
                    bool relaxed, unsigned workers) {
    const ExactC cc = exponent(c, relaxed);
    const Variant v = parse_variant(variant);
    py::gil_scoped_release release;
    const SieveOptions o = sieve_opts(workers);
    return parse_method(method) == Method::Direct ? count_direct(cc, x, v, o).count : count_interval(cc, x, v, o).count;
  }, py::arg("c"), py::arg("x"), py::arg("variant") = "sqfree", py::arg("method") = "interval",
     py::arg("relaxed") = false, py::arg("workers") = 0);

  m.def("decompose_by_z", [](const std::string& c, std::uint64_t x, unsigned workers) {
    const ZSplit s = decompose_by_z(exponent(c, false), x, sieve_opts(workers));
    return py::dict(py::arg("s1") = s.s1, py::arg("s2") = s.s2, py::arg("z") = s.z, py::arg("total") = s.total);
  }, py::arg("c"), py::arg("x"), py::arg("workers") = 0);

  m.def("sigma_constant", [](std::uint64_t limit) {
    const SigmaInterval s = sigma_constant(limit);
    return py::make_tuple(s.lo, s.hi);
  }, py::arg("prime_limit"));

  m.def("main_term_sqfree", [](const std::string& c, double x) { return main_term_sqfree(exponent(c, true), x); },
        py::arg("c"), py::arg("x"));

  m.def("eval_word", [](const std::string& word) {
    const ExponentPair p = eval_word(PairWord::parse(word));
    return py::make_tuple(p.kappa.str(), p.lambda.str());
  }, py::arg("word"));

  m.def("bilinear_exponents", [](const std::string& word) {
    const auto [e1, e2] = bilinear_exponents(eval_word(PairWord::parse(word)));
    return py::make_tuple(e1.str(), e2.str());
  }, py::arg("word"));

  m.def("vaaler_scan", [](std::uint32_t H, std::uint64_t grid) {
    const ScanStats s = max_error_scan(build_vaaler(H), grid);
    return py::dict(py::arg("max_error") = s.max_error, py::arg("mean_error") = s.mean_error,
                    py::arg("max_violation") = s.max_violation);
  }, py::arg("H"), py::arg("grid") = 100000);

  m.def("prime_expsum", [](const std::string& c, std::uint64_t d, std::int64_t h, std::uint64_t N, std::uint64_t N1) {
    return prime_expsum(exponent(c, false), d, h, N, N1);
  }, py::arg("c"), py::arg("d"), py::arg("h"), py::arg("N"), py::arg("N1"));

  m.def("hb_lambda", [](std::uint64_t n, unsigned k, std::uint64_t z_cut) { return hb_lambda(n, {k, z_cut}); },
        py::arg("n"), py::arg("k"), py::arg("z_cut"));

  m.def("von_mangoldt", [](std::uint64_t n) { return lambda(n); }, py::arg("n"));

  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
