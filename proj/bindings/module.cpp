#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bl/mixing.hpp"
#include "bl/oracle.hpp"
#include "bl/spectral.hpp"
#include "bl/symmetry.hpp"
#include "bl/verify.hpp"

namespace py = pybind11;
using namespace bl;

namespace {

py::object fraction(const Rational& r) {
  static py::object ctor = py::module_::import("fractions").attr("Fraction");
  return ctor(r.str());
}

py::list fractions(const std::vector<Rational>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(fraction(x));
  return out;
}

py::list fraction_rows(const Matrix<Rational>& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(fraction(m(i, j)));
    rows.append(row);
  }
  return rows;
}

py::list double_rows(const Matrix<double>& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(m(i, j));
    rows.append(row);
  }
  return rows;
}

bool want_exact(const std::string& backend) {
  if (backend == "exact") return true;
  if (backend == "float") return false;
  throw std::invalid_argument("backend must be 'exact' or 'float'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact spectral toolkit for the Bernoulli-Laplace two-urn chain";

  py::register_exception<NeedsCanonicalization>(m, "NeedsCanonicalizationError",
                                                PyExc_ValueError);
  py::register_exception<NotCanonicalizable>(m, "NotCanonicalizableError", PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergenceError", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def_readonly("n1", &ModelParams::n1)
      .def_readonly("n2", &ModelParams::n2)
      .def_readonly("nw", &ModelParams::nw)
      .def_property_readonly("n", &ModelParams::n)
      .def_property_readonly("nb", &ModelParams::nb)
      .def_property_readonly("states", &ModelParams::states)
      .def("__repr__", [](const ModelParams& p) {
        std::ostringstream os;
        os << "ModelParams(n1=" << p.n1 << ", n2=" << p.n2 << ", nw=" << p.nw << ")";
        return os.str();
      });

  m.def("new_model", &new_model, py::arg("n1"), py::arg("n2"), py::arg("nw"));

  m.def(
      "canonicalize",
      [](int n1, int n2, int nw) {
        const auto canon = canonicalize(n1, n2, nw);
        return py::make_tuple(canon.params, canon.map.description());
      },
      py::arg("n1"), py::arg("n2"), py::arg("nw"),
      "Returns (canonical params, human-readable state relabeling).");

  m.def(
      "kernel",
      [](const ModelParams& p, const std::string& backend) -> py::object {
        const auto dense = build_kernel(p).dense();
        return want_exact(backend) ? py::object(fraction_rows(dense))
                                   : py::object(double_rows(to_double(dense)));
      },
      py::arg("params"), py::arg("backend") = "exact",
      "Dense column-stochastic transition matrix, rows = destination states.");

  m.def(
      "stationary",
      [](const ModelParams& p, const std::string& backend) -> py::object {
        const auto pi = stationary_distribution(p);
        if (want_exact(backend)) return fractions(pi);
        return py::cast(to_double(pi));
      },
      py::arg("params"), py::arg("backend") = "exact");

  m.def(
      "spectrum",
      [](const ModelParams& p, const std::string& backend) -> py::object {
        const auto lams = spectrum(p);
        if (want_exact(backend)) return fractions(lams);
        return py::cast(to_double(lams));
      },
      py::arg("params"), py::arg("backend") = "exact");

  m.def(
      "eigenvector",
      [](const ModelParams& p, int k, const std::string& form) {
        if (form == "hypergeometric") return fractions(c_hypergeometric(p, k));
        if (form == "pascal") return fractions(pascal_to_c(b_coefficients(p, k)));
        if (form == "b") return fractions(b_coefficients(p, k).b);
        throw std::invalid_argument("form must be 'hypergeometric', 'pascal', or 'b'");
      },
      py::arg("params"), py::arg("k"), py::arg("form") = "hypergeometric",
      "Exact eigenvector coefficients (as fractions.Fraction).");

  m.def(
      "delta_sq",
      [](const ModelParams& p) {
        const auto sys = symmetric_system(p);
        return fractions(sys.delta_sq);
      },
      py::arg("params"), "Orthogonalizing measure weights Delta_k^2.");

  m.def(
      "spectral_power",
      [](const ModelParams& p, long m, const std::string& backend) -> py::object {
        const auto sys = symmetric_system(p);
        return want_exact(backend) ? py::object(fraction_rows(spectral_power(sys, m)))
                                   : py::object(double_rows(spectral_power_double(sys, m)));
      },
      py::arg("params"), py::arg("m"), py::arg("backend") = "exact",
      "T^m via the spectral decomposition.");

  m.def(
      "distribution_at",
      [](const ModelParams& p, int start, long m, const std::string& backend) -> py::object {
        const auto sys = symmetric_system(p);
        if (want_exact(backend)) return fractions(distribution_at(sys, start, m));
        return py::cast(distribution_at_double(sys, start, m));
      },
      py::arg("params"), py::arg("start"), py::arg("m"), py::arg("backend") = "float");

  m.def(
      "tv_curve",
      [](const ModelParams& p, int start, const std::vector<long>& steps) {
        const auto sys = symmetric_system(p);
        return tv_curve(sys, start, steps).tv;
      },
      py::arg("params"), py::arg("start"), py::arg("steps"),
      "Total-variation distance to stationarity at the given step counts (float).");

  m.def(
      "mixing_bound",
      [](const ModelParams& p, const std::string& kind, double c, double constant) {
        const auto spec = mixing_bound(
            p, kind == "upper" ? BoundKind::kUpper : BoundKind::kLower, c, constant);
        return py::make_tuple(spec.m, spec.bound);
      },
      py::arg("params"), py::arg("kind"), py::arg("c"), py::arg("constant") = 1.0,
      "Returns (step count m, bound value) for the balanced-case theorem.");

  m.def(
      "cutoff_scan",
      [](const ModelParams& p, int start, double epsilon) {
        const auto sys = symmetric_system(p);
        return cutoff_scan(sys, start, epsilon);
      },
      py::arg("params"), py::arg("start"), py::arg("epsilon"),
      "Smallest m with tv(m) <= epsilon.");

  m.def(
      "simulate",
      [](const ModelParams& p, int start, long steps, long walkers, std::uint64_t seed) {
        auto rep = simulate(p, start, steps, walkers, seed);
        const auto exact = distribution_at_double(symmetric_system(p), start, steps);
        rep.tv_vs_exact = tv_distance(rep.empirical, exact);
        py::dict out;
        out["start"] = rep.start;
        out["steps"] = rep.steps;
        out["walkers"] = rep.walkers;
        out["seed"] = rep.seed;
        out["counts"] = rep.counts;
        out["empirical"] = rep.empirical;
        out["tv_vs_exact"] = rep.tv_vs_exact;
        return out;
      },
      py::arg("params"), py::arg("start"), py::arg("m"), py::arg("walkers") = 100000,
      py::arg("seed") = 1);

  m.def(
      "verify",
      [](int max_n) {
        py::list out;
        for (const auto& r : run_verification(max_n)) {
          py::dict d;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["cases"] = r.cases;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("max_n") = 12, "Runs the exact invariant suite; returns one dict per check.");
}
