#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ffconv/convolve.hpp"
#include "ffconv/error.hpp"
#include "ffconv/freelimits.hpp"
#include "ffconv/io.hpp"
#include "ffconv/measures.hpp"
#include "ffconv/metrics.hpp"
#include "ffconv/rmt_mc.hpp"
#include "ffconv/sturm.hpp"

namespace py = pybind11;
using namespace ffconv;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints, strings and
// floats (exact dyadic value) are accepted on input.
Rational to_rational(const py::handle& obj) {
  if (py::isinstance<py::float_>(obj)) return rational_from_double(obj.cast<double>());
  return parse_rational(py::str(obj).cast<std::string>());
}

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(r));
}

std::vector<Rational> to_rationals(const py::iterable& items) {
  std::vector<Rational> out;
  for (const auto& x : items) out.push_back(to_rational(x));
  return out;
}

py::list fractions(const std::vector<Rational>& v) {
  py::list out;
  for (const auto& r : v) out.append(to_fraction(r));
  return out;
}

ConvKind kind_of(const std::string& op) {
  if (op == "boxplus" || op == "additive") return ConvKind::additive;
  if (op == "boxtimes" || op == "multiplicative") return ConvKind::multiplicative;
  throw ParseError("op must be boxplus or boxtimes, got '" + op + "'");
}

py::object location(const Location& x) { return x.exact ? to_fraction(*x.exact) : py::float_(x.approx); }

py::dict distance(const DistanceResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["exact_value"] = r.exact_value ? to_fraction(*r.exact_value) : py::none();
  d["exact"] = r.exact;
  d["witness"] = r.witness;
  d["error_bound"] = r.error_bound;
  return d;
}

// A polynomial's CDF, or a named reference law.
AnyCDF cdf_arg(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return parse_target(obj.cast<std::string>());
  return empirical_cdf(obj.cast<const MonicPoly&>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite free convolutions in exact rational arithmetic";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<MonicPoly>(m, "MonicPoly")
      .def(py::init([](const py::iterable& coeffs) { return MonicPoly(to_rationals(coeffs)); }), py::arg("coeffs_desc"))
      .def_static("from_roots", [](const py::iterable& roots) {
        const auto r = to_rationals(roots);
        return MonicPoly::from_roots(std::span<const Rational>(r));
      })
      .def_static("from_json", [](const std::string& text) { return parse_polynomial_json(text); })
      .def_property_readonly("degree", &MonicPoly::degree)
      .def_property_readonly("coeffs", [](const MonicPoly& p) { return fractions(p.coeffs()); })
      .def("__call__", [](const MonicPoly& p, const py::object& x) { return to_fraction(p(to_rational(x))); })
      .def("to_json", &polynomial_to_json)
      .def("__eq__", [](const MonicPoly& a, const MonicPoly& b) { return a == b; })
      .def("__repr__", [](const MonicPoly& p) { return "MonicPoly(" + p.to_string() + ")"; })
      .def("__str__", &MonicPoly::to_string);

  m.def("boxplus", &boxplus);
  m.def("boxtimes", &boxtimes);
  m.def("boxtimes_via_diffop", &boxtimes_via_diffop);
  m.def("e_tilde", [](const MonicPoly& p, int k) { return to_fraction(e_tilde(p, k)); });
  m.def("expand_in_r_basis", [](const MonicPoly& p) { return fractions(expand_in_r_basis(p).coeffs); });
  m.def("shift", [](const MonicPoly& p, const py::object& c) { return shift(p, to_rational(c)); });
  m.def("dilate", [](const MonicPoly& p, const py::object& c) { return dilate(p, to_rational(c)); });
  m.def("reflect", &reflect);
  m.def("reverse", &reverse);
  m.def("derivative_map", &derivative_map);
  m.def("is_real_rooted", &is_real_rooted);
  m.def("sturm_count", [](const MonicPoly& p, const py::object& lo, const py::object& hi) {
    return sturm_count(p, Interval(to_rational(lo), to_rational(hi)));
  });

  m.def(
      "roots",
      [](const MonicPoly& p, double tol) {
        py::list out;
        const EmpiricalMeasure measure = roots_with_multiplicity(p, tol);
        for (const auto& e : measure.entries()) out.append(py::make_tuple(location(e.location), e.multiplicity));
        return out;
      },
      py::arg("p"), py::arg("tol") = kDefaultRootTol, "[(root, multiplicity)], roots as Fraction when rational");
  m.def("empirical_cdf", [](const MonicPoly& p) {
    const StepCDF f = empirical_cdf(p);
    py::list out;
    for (std::size_t i = 0; i < f.size(); ++i) out.append(py::make_tuple(location(f.breakpoints()[i]), to_fraction(f.values()[i])));
    return out;
  });
  m.def("cut", [](const MonicPoly& p, const std::string& mode, const py::object& a) {
    CutMode::Kind k = mode == "up" ? CutMode::Kind::up : mode == "down" ? CutMode::Kind::down : CutMode::Kind::both;
    if (mode != "up" && mode != "down" && mode != "both") throw ParseError("mode must be up, down or both");
    return cut(p, CutMode{k, to_rational(a)});
  });
  m.def("partial_order_le", &partial_order_le);
  m.def("interlaces", &interlaces);
  m.def("interlacing_chain", &interlacing_chain, py::arg("p"), py::arg("q"), py::arg("l"));
  m.def(
      "atom_triplets",
      [](const MonicPoly& p, const MonicPoly& q, const std::string& op) {
        py::list out;
        for (const auto& t : atom_triplets(p, q, kind_of(op))) {
          py::dict d;
          d["alpha"] = to_fraction(t.alpha);
          d["beta"] = to_fraction(t.beta);
          d["gamma"] = to_fraction(t.gamma);
          d["mult"] = t.multiplicity;
          d["mass"] = to_fraction(t.mass);
          d["cdf"] = t.cdf_at_gamma ? to_fraction(*t.cdf_at_gamma) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("p"), py::arg("q"), py::arg("op") = "boxplus");
  m.def("quantile_poly", [](const std::string& target, int d) { return quantile_poly(parse_target(target), d); });

  m.def(
      "kolmogorov", [](const py::object& f, const py::object& g) { return distance(kolmogorov(cdf_arg(f), cdf_arg(g))); },
      "Arguments are MonicPoly values or target strings such as 'arcsine:-2:2'");
  m.def("levy", [](const py::object& f, const py::object& g) { return distance(levy(cdf_arg(f), cdf_arg(g))); });

  m.def(
      "free_atoms",
      [](const std::string& mu, const std::string& nu, const std::string& op) {
        py::list out;
        for (const auto& a : free_atoms(parse_discrete_measure(mu), parse_discrete_measure(nu), kind_of(op))) {
          out.append(py::make_tuple(to_fraction(a.location), to_fraction(a.mass), a.cdf ? to_fraction(*a.cdf) : py::none()));
        }
        return out;
      },
      py::arg("mu"), py::arg("nu"), py::arg("op") = "boxplus");

  m.def(
      "expected_charpoly_mc",
      [](const std::vector<double>& a, const std::vector<double>& b, const std::string& op, long long n,
         std::uint64_t seed) {
        MCEstimate e;
        {
          py::gil_scoped_release release;
          e = expected_charpoly_mc(a, b, kind_of(op), n, seed);
        }
        py::dict d;
        d["means"] = e.coeff_means;
        d["stderrs"] = e.coeff_stderrs;
        d["samples"] = e.samples;
        d["seed"] = e.seed;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("op") = "boxplus", py::arg("n") = 100000, py::arg("seed") = 1);
}
