#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pullsim/asymptotics.hpp"
#include "pullsim/branching.hpp"
#include "pullsim/charfn.hpp"
#include "pullsim/errors.hpp"
#include "pullsim/lambert.hpp"
#include "pullsim/limit_dist.hpp"
#include "pullsim/rumor.hpp"

namespace py = pybind11;
using namespace pullsim;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  return {a.data(), a.data() + a.size()};
}

EmpiricalDistribution to_dist(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  return EmpiricalDistribution(to_vector(a));
}

py::dict pmf_dict(const ExactPmf& p) {
  py::dict d;
  d["offset"] = p.support_offset;
  d["masses"] = to_array(p.masses);
  d["truncation_error"] = p.truncation_error;
  return d;
}

ExactPmf pmf_from(std::int64_t offset, py::array_t<double, py::array::c_style | py::array::forcecast> m,
                  double truncation) {
  return ExactPmf{offset, to_vector(m), truncation};
}

Denominator denom(const std::string& s) { return denominator_from_string(s); }

py::dict report_dict(const VerificationReport& r) {
  return py::module_::import("json").attr("loads")(r.to_json_line());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pull rumor spreading on the complete graph: simulation and numerics";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);

  m.def("run",
        [](std::int64_t n, std::uint64_t seed, const std::string& denominator) {
          Stream rng(seed);
          const RunRecord r = run(n, rng, true, denom(denominator));
          return py::make_tuple(r.runtime, to_array(r.trajectory));
        },
        py::arg("n"), py::arg("seed"), py::arg("denominator") = "n",
        "One run from a single informed vertex: (runtime, informed count per round).");

  m.def("ensemble",
        [](std::int64_t n, std::int64_t runs, std::uint64_t seed, const std::string& denominator) {
          py::gil_scoped_release release;
          const RuntimeEnsemble e = ensemble(n, runs, seed, false, denom(denominator));
          py::gil_scoped_acquire acquire;
          return to_array(e.runtimes);
        },
        py::arg("n"), py::arg("runs"), py::arg("seed"), py::arg("denominator") = "n",
        "Runtimes of `runs` independent runs; a pure function of the arguments.");

  m.def("exact_informed_pmf",
        [](std::int64_t n, std::int64_t rounds, const std::string& denominator) {
          return pmf_dict(exact_informed_pmf(n, rounds, denom(denominator)));
        },
        py::arg("n"), py::arg("rounds"), py::arg("denominator") = "n");

  m.def("exact_J_pmf", [](std::int64_t t, double tol) { return pmf_dict(exact_J_pmf(t, tol)); },
        py::arg("t"), py::arg("tail_tol") = 1e-12);
  m.def("j_moments", &j_moments, py::arg("t"));

  m.def("sample_martingale",
        [](std::int64_t t, std::int64_t samples, std::uint64_t seed) {
          py::gil_scoped_release release;
          auto v = sample_martingale(t, samples, seed);
          py::gil_scoped_acquire acquire;
          return to_array(v);
        },
        py::arg("t"), py::arg("samples"), py::arg("seed"));
  m.def("limit_samples",
        [](std::int64_t t, std::int64_t samples, std::uint64_t seed) {
          py::gil_scoped_release release;
          auto v = limit_samples(t, samples, seed);
          py::gil_scoped_acquire acquire;
          return to_array(v);
        },
        py::arg("t") = kDefaultLimitGeneration, py::arg("samples") = kDefaultLimitSamples,
        py::arg("seed") = 0, "-log2 H_t samples, the surrogate for the limit X.");

  m.def("phi", [](double x, std::int64_t t) { return phi(x, t).as_complex(); }, py::arg("x"),
        py::arg("t"));
  m.def("phi_planar", [](double x, std::int64_t t) { return phi_planar(x, t).as_complex(); },
        py::arg("x"), py::arg("t"));
  m.def("h_iterate", &h_iterate, py::arg("z"), py::arg("times"));
  m.def("modulus_recursion_residual", &modulus_recursion_residual, py::arg("x"), py::arg("t"));

  m.def("lattice_mean", [](py::array_t<double> xs, double shift) {
    return lattice_mean(to_dist(xs), shift);
  }, py::arg("samples"), py::arg("x"));
  m.def("lattice_variance", [](py::array_t<double> xs, double shift) {
    return lattice_variance(to_dist(xs), shift);
  }, py::arg("samples"), py::arg("x"));
  m.def("scott_bandwidth", [](py::array_t<double> xs) { return scott_bandwidth(to_dist(xs)); },
        py::arg("samples"));
  m.def("kde_density",
        [](py::array_t<double> xs, py::array_t<double> grid, std::optional<double> bw) {
          const auto g = to_vector(grid);
          const Bandwidth b = bw ? Bandwidth{*bw} : Bandwidth{ScottRule{}};
          return to_array(kde_density(to_dist(xs), g, b));
        },
        py::arg("samples"), py::arg("grid"), py::arg("bandwidth") = py::none());

  m.def("lambert_w", &lambert_w, py::arg("z"));
  m.def("subsequence",
        [](double x, std::int64_t first, std::int64_t last) {
          py::list out;
          for (const auto& t : subsequence({x, first, last})) {
            out.append(py::make_tuple(t.index, py::int_(py::str(t.n_decimal)), t.frac));
          }
          return out;
        },
        py::arg("x"), py::arg("first"), py::arg("last"),
        "[(i, n_i, frac(log2 n_i + log2 ln n_i))] with n_i exact.");
  m.def("runtime_centering", &runtime_centering, py::arg("n"));

  m.def("tv_distance",
        [](std::int64_t p_off, py::array_t<double> p, std::int64_t q_off, py::array_t<double> q) {
          return tv_distance(pmf_from(p_off, p, 0.0), pmf_from(q_off, q, 0.0)).value;
        },
        py::arg("p_offset"), py::arg("p"), py::arg("q_offset"), py::arg("q"));
  m.def("verify_tv_bound",
        [](std::int64_t n, std::int64_t t_max) {
          py::list out;
          for (const auto& r : verify_tv_bound(n, t_max)) out.append(report_dict(r));
          return out;
        },
        py::arg("n"), py::arg("t_max"));
  m.def("theorem1_distance",
        [](py::array_t<double> runtimes, py::array_t<double> limit, std::int64_t n) {
          return theorem1_distance(to_dist(runtimes), to_dist(limit), n);
        },
        py::arg("runtimes"), py::arg("limit"), py::arg("n"));
}
