#include "pcmk/commands.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pcmk;

namespace {

// Cones are shared and immutable on the C++ side.
struct PyCone {
  ConePtr ptr;
};

std::optional<Vec> opt_vec(const std::optional<Vec>& v) { return v; }

py::dict solve_dict(const SolveReport& r) {
  py::dict d;
  d["converged"] = r.converged;
  d["iterations"] = r.iterations;
  d["restarts"] = r.restarts;
  d["lambda"] = r.lambda;
  d["support_numbers"] = r.solution.support_numbers();
  d["directions"] = r.solution.directions();
  d["surface"] = r.surface;
  d["residuals"] = r.residuals;
  d["max_residual"] = r.max_residual;
  d["b_of_K"] = r.b_of_K;
  d["covolume"] = r.covolume;
  d["phi_trace"] = r.phi_trace;
  d["lemma71_bound"] = r.lemma71_bound;
  d["lemma71_max_ratio"] = r.lemma71_max_ratio;
  return d;
}

QuadratureConfig quad_for(int dim, std::optional<double> tol) {
  QuadratureConfig c = QuadratureConfig::for_dim(dim);
  if (tol) c.tolerance = *tol;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_pcmk, m) {
  m.doc() = "Weighted Minkowski problems for C-pseudo-cones";

  static py::exception<Error> exc(m, "PcmkError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc.ptr(), e.what());
    }
  });

  py::class_<PyCone>(m, "Cone")
      .def_property_readonly("dim", [](const PyCone& c) { return c.ptr->dim(); })
      .def_property_readonly("rays", [](const PyCone& c) { return c.ptr->rays(); })
      .def_property_readonly("facet_normals", [](const PyCone& c) { return c.ptr->facet_normals(); })
      .def_property_readonly("v_frak", [](const PyCone& c) { return c.ptr->v_frak(); })
      .def("contains", [](const PyCone& c, const Vec& y) { return c.ptr->contains(y); })
      .def("delta", [](const PyCone& c, const Vec& u) { return delta_C(*c.ptr, u); },
           "Spherical distance of u from the boundary of the dual directions");

  m.def("cone_from_rays", [](int dim, std::vector<Vec> rays, std::optional<Vec> v) {
    return PyCone{share(make_cone_from_rays(dim, std::move(rays), opt_vec(v)))};
  }, py::arg("dim"), py::arg("rays"), py::arg("v_frak") = py::none());
  m.def("cone_from_normals", [](int dim, std::vector<Vec> normals, std::optional<Vec> v) {
    return PyCone{share(make_cone_from_normals(dim, std::move(normals), opt_vec(v)))};
  }, py::arg("dim"), py::arg("facet_normals"), py::arg("v_frak") = py::none());
  m.def("quadrant_cone", [] { return PyCone{share(quadrant_cone())}; });
  m.def("square_pyramid_cone", [] { return PyCone{share(square_pyramid_cone())}; });

  py::class_<WeightFunction>(m, "Weight")
      .def(py::init([](const std::string& kind, double q, const PyCone& c) {
             return WeightFunction(weight_kind_from_string(kind), q, c.ptr);
           }),
           py::arg("kind"), py::arg("q"), py::arg("cone"))
      .def_property_readonly("q", &WeightFunction::q)
      .def_property_readonly("kind", [](const WeightFunction& w) { return std::string(to_string(w.kind())); })
      .def("__call__", [](const WeightFunction& w, const Vec& y) { return theta_eval(w, y); });

  py::class_<PseudoCone>(m, "PseudoCone")
      .def(py::init([](const PyCone& c, std::vector<Vec> dirs, std::vector<double> h, bool tight) {
             return PseudoCone(c.ptr, std::move(dirs), std::move(h), tight);
           }),
           py::arg("cone"), py::arg("directions"), py::arg("support_numbers"), py::arg("tightened") = false)
      .def_property_readonly("directions", &PseudoCone::directions)
      .def_property_readonly("support_numbers", &PseudoCone::support_numbers)
      .def_property_readonly("tightened", &PseudoCone::tightened)
      .def("scaled", &PseudoCone::scaled)
      .def("radial", [](const PseudoCone& pc, const Vec& v) { return radial_function(pc, v).rho; })
      .def("support", [](const PseudoCone& pc, const Vec& u) { return support_function(pc, u); })
      .def("facets", [](const PseudoCone& pc) {
        std::vector<std::vector<Vec>> out;
        for (const Facet& f : facet_complex(pc).facets) out.push_back(f.vertices);
        return out;
      });

  m.def("tighten", &tighten);
  m.def("surface_measure", [](const PseudoCone& pc, const WeightFunction& w, std::optional<double> tol) {
    return surface_measure(pc, w, quad_for(pc.dim(), tol)).masses;
  }, py::arg("body"), py::arg("weight"), py::arg("tolerance") = py::none());
  m.def("covolume", [](const PseudoCone& pc, const WeightFunction& w, const std::string& method,
                       std::optional<double> tol) {
    const QuadratureConfig cfg = quad_for(pc.dim(), tol);
    if (method == "euler") return covolume_euler(pc, w, cfg).value;
    if (method == "radial") return covolume_radial(pc, w, cfg).value;
    throw Error(Errc::InvalidInput, "method must be 'euler' or 'radial'");
  }, py::arg("body"), py::arg("weight"), py::arg("method") = "euler", py::arg("tolerance") = py::none());

  m.def("solve", [](const PyCone& c, const WeightFunction& w, const std::vector<Vec>& dirs,
                    const std::vector<double>& masses, std::optional<double> tol, std::uint64_t seed) {
    if (dirs.size() != masses.size()) throw Error(Errc::InvalidInput, "directions and masses differ in length");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < dirs.size(); ++i) atoms.push_back({dirs[i], masses[i]});
    SolverOptions o = SolverOptions::defaults_for(c.ptr->dim());
    if (tol) o.tolerance = *tol;
    o.seed = seed;
    const DirectionalMeasure phi(*c.ptr, atoms);
    std::optional<SolveReport> r;
    {
      py::gil_scoped_release release;
      r = solve_minkowski(c.ptr, w, phi, o);
    }
    return solve_dict(*r);
  }, py::arg("cone"), py::arg("weight"), py::arg("directions"), py::arg("masses"),
     py::arg("tolerance") = py::none(), py::arg("seed") = 0);

  m.def("mc_surface_measure", [](const PseudoCone& pc, const WeightFunction& w, std::uint64_t n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    for (const McEstimate& e : mc_surface_measure(pc, w, n, seed)) out.emplace_back(e.estimate, e.std_error);
    return out;
  }, py::arg("body"), py::arg("weight"), py::arg("samples"), py::arg("seed"),
     "(estimate, standard error) per direction");

  m.def("nonuniqueness_pair", [](const PyCone& c, const WeightFunction& w) {
    const NonuniquenessPair pr = nonuniqueness_pair(c.ptr, w, QuadratureConfig::for_dim(c.ptr->dim()));
    py::dict d;
    d["t0"] = pr.t0;
    d["t1"] = pr.t1;
    d["shrink"] = pr.shrink;
    d["mass_K"] = pr.mass_K;
    d["mass_L"] = pr.mass_L;
    d["facet_L"] = pr.facet_L;
    d["hausdorff"] = pr.hausdorff;
    d["passed"] = pr.passed;
    return d;
  });

  // Same behaviour as the command-line tool; returns (exit code, report JSON text, diagnostic).
  m.def("run", [](const std::string& command, const std::string& problem, const std::string& suite,
                  std::optional<std::uint64_t> seed, std::uint64_t samples, bool tighten) {
    RunOptions o;
    o.timing = false;
    o.seed = seed;
    o.samples = samples;
    o.suite = suite;
    o.tighten = tighten;
    const CommandResult r = guarded([&]() -> CommandResult {
      const Problem p = parse_problem(problem);
      if (command == "solve") return cmd_solve(p, o);
      if (command == "evaluate") return cmd_evaluate(p, o);
      if (command == "verify") return cmd_verify(p, o);
      if (command == "demo-nonuniqueness") return cmd_demo_nonuniqueness(p, o);
      throw Error(Errc::InvalidInput, "unknown command '" + command + "'");
    });
    return py::make_tuple(r.exit_code, r.report.is_null() ? std::string() : dump_json(r.report), r.diagnostic);
  }, py::arg("command"), py::arg("problem"), py::arg("suite") = "", py::arg("seed") = py::none(),
     py::arg("samples") = 1000000, py::arg("tighten") = false);
}
