#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "qtraj/ensemble.hpp"
#include "qtraj/errors.hpp"
#include "qtraj/experiment.hpp"
#include "qtraj/matkit.hpp"
#include "qtraj/metrics.hpp"
#include "qtraj/qjump.hpp"
#include "qtraj/telegraph.hpp"

namespace py = pybind11;
using namespace qtraj;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const ComplexArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1) || (a.shape(0) != 2 && a.shape(0) != 4)) {
    throw std::invalid_argument("expected a 2x2 or 4x4 complex matrix");
  }
  const int n = static_cast<int>(a.shape(0));
  CMatrix m(n);
  auto v = a.unchecked<2>();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = v(r, c);
  return m;
}

py::array_t<cplx> to_array(const CMatrix& m) {
  py::array_t<cplx> out({m.dim(), m.dim()});
  auto v = out.mutable_unchecked<2>();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) v(r, c) = m(r, c);
  return out;
}

py::array_t<std::uint8_t> to_array(const std::vector<std::uint8_t>& v) {
  return py::array_t<std::uint8_t>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::span<const std::uint8_t> as_span(const ByteArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d symbol array");
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

std::span<const double> as_span(const DoubleArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

py::dict mean_sem_dict(const MeanSem& m) {
  py::dict d;
  d["mean"] = m.mean;
  d["sem"] = m.sem;
  d["n"] = m.n;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qtraj native core";
  m.attr("__version__") = std::string(version());

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalGuardError>(m, "NumericalGuardError", PyExc_ArithmeticError);
  py::register_exception<UndefinedStatisticError>(m, "UndefinedStatisticError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::enum_<Model>(m, "Model").value("quantum", Model::kQuantum).value("classical", Model::kClassical);
  py::enum_<EmissionConvention>(m, "EmissionConvention")
      .value("any_flip", EmissionConvention::kAnyFlip)
      .value("down_flip", EmissionConvention::kDownFlip);
  py::enum_<MiMode>(m, "MiMode")
      .value("instantaneous", MiMode::kInstantaneous)
      .value("ensemble", MiMode::kEnsemble)
      .value("per_trajectory", MiMode::kPerTrajectory);
  py::enum_<OccupancyMode>(m, "OccupancyMode")
      .value("parity", OccupancyMode::kParity)
      .value("density", OccupancyMode::kDensity);

  py::class_<SimParams>(m, "SimParams")
      .def(py::init([](double omega, double gamma, double coupling, double beta, double dt, std::int64_t steps,
                       std::int64_t n_traj, std::uint64_t seed, std::int64_t sample_stride) {
             SimParams p;
             p.omega = omega;
             p.gamma = gamma;
             p.coupling = coupling;
             p.beta = beta;
             p.dt = dt;
             p.steps = steps;
             p.n_traj = n_traj;
             p.seed = seed;
             p.sample_stride = sample_stride;
             return p;
           }),
           py::kw_only(), py::arg("omega") = 1.0, py::arg("gamma") = 1.0, py::arg("coupling") = 0.0,
           py::arg("beta") = 1.0, py::arg("dt") = 0.01, py::arg("steps") = 100000, py::arg("n_traj") = 200,
           py::arg("seed") = 1, py::arg("sample_stride") = 10)
      .def_readwrite("omega", &SimParams::omega)
      .def_readwrite("gamma", &SimParams::gamma)
      .def_readwrite("coupling", &SimParams::coupling)
      .def_readwrite("beta", &SimParams::beta)
      .def_readwrite("dt", &SimParams::dt)
      .def_readwrite("steps", &SimParams::steps)
      .def_readwrite("n_traj", &SimParams::n_traj)
      .def_readwrite("seed", &SimParams::seed)
      .def_readwrite("sample_stride", &SimParams::sample_stride)
      .def("validate", &SimParams::validate);

  py::class_<AnalysisOptions>(m, "AnalysisOptions")
      .def(py::init<>())
      .def_readwrite("transient_fraction", &AnalysisOptions::transient_fraction)
      .def_readwrite("max_lag", &AnalysisOptions::max_lag)
      .def_readwrite("convention", &AnalysisOptions::convention)
      .def_readwrite("mi_mode", &AnalysisOptions::mi_mode)
      .def_readwrite("occupancy_mode", &AnalysisOptions::occupancy_mode)
      .def_readwrite("threads", &AnalysisOptions::threads)
      .def_readwrite("blocks", &AnalysisOptions::blocks)
      .def("validate", &AnalysisOptions::validate);

  py::class_<EnsembleSummary>(m, "EnsembleSummary")
      .def_readonly("model", &EnsembleSummary::model)
      .def_readonly("window_start", &EnsembleSummary::window_start)
      .def_readonly("window_steps", &EnsembleSummary::window_steps)
      .def_property_readonly("lz", [](const EnsembleSummary& s) { return mean_sem_dict(s.lz); })
      .def_property_readonly("rate1", [](const EnsembleSummary& s) { return mean_sem_dict(s.rate1); })
      .def_property_readonly("rate2", [](const EnsembleSummary& s) { return mean_sem_dict(s.rate2); })
      .def_property_readonly("c11", [](const EnsembleSummary& s) { return to_array(s.c11.values); })
      .def_property_readonly("c22", [](const EnsembleSummary& s) { return to_array(s.c22.values); })
      .def_property_readonly("c12", [](const EnsembleSummary& s) { return to_array(s.c12.values); })
      .def_property_readonly("c12_sem", [](const EnsembleSummary& s) { return to_array(s.c12_sem); })
      .def_property_readonly("occupancy", [](const EnsembleSummary& s) { return s.occupancy.p; })
      .def_property_readonly("occupancy_sem", [](const EnsembleSummary& s) { return s.occupancy_sem; })
      .def_property_readonly("density", [](const EnsembleSummary& s) { return to_array(s.density); })
      .def_readonly("mi", &EnsembleSummary::mi)
      .def_readonly("mi_err", &EnsembleSummary::mi_err)
      .def_property_readonly("trajectory_lz", [](const EnsembleSummary& s) { return to_array(s.trajectory_lz); });

  m.def("basis_index", &basis_index, py::arg("s1"), py::arg("s2"));
  m.def("kron", [](const ComplexArray& a, const ComplexArray& b) { return to_array(kron(to_matrix(a), to_matrix(b))); });
  m.def(
      "mat_exp", [](const ComplexArray& a, cplx scale) { return to_array(mat_exp(to_matrix(a), scale)); },
      py::arg("m"), py::arg("scale") = cplx(1.0, 0.0));
  m.def("herm_eigvals", [](const ComplexArray& a) { return herm_eigvals(to_matrix(a)); });
  m.def(
      "partial_trace",
      [](const ComplexArray& rho, const std::string& keep) {
        if (keep != "A" && keep != "B") throw std::invalid_argument("keep must be 'A' or 'B'");
        return to_array(partial_trace(to_matrix(rho), keep == "A" ? Subsystem::A : Subsystem::B));
      },
      py::arg("rho"), py::arg("keep") = "A");
  m.def("von_neumann_entropy", [](const ComplexArray& rho) { return von_neumann_entropy(to_matrix(rho)); });
  m.def("quantum_mutual_information", [](const ComplexArray& rho) { return quantum_mutual_information(to_matrix(rho)); });

  m.def("hamiltonian", [](const SimParams& p) { return to_array(build_hamiltonian(p)); });
  m.def("effective_hamiltonian", [](const SimParams& p) { return to_array(build_effective_hamiltonian(p)); });
  m.def("propagator", [](const SimParams& p) { return to_array(build_propagator(p)); });
  m.def("effective_drive", &effective_drive);
  m.def("flip_probability", &flip_probability, py::arg("s_i"), py::arg("s_j"), py::arg("params"));
  m.def("classical_mutual_information", [](const std::array<std::array<double, 2>, 2>& p) {
    OccupancyTable t;
    t.p = p;
    return classical_mutual_information(t);
  });

  m.def(
      "run_trajectory",
      [](const SimParams& p, Model model, std::int64_t traj_index, EmissionConvention convention) {
        EmissionRecord rec;
        {
          py::gil_scoped_release release;
          rec = simulate_trajectory(p, model, traj_index, convention);
        }
        return py::make_tuple(to_array(rec.r1), to_array(rec.r2));
      },
      py::arg("params"), py::arg("model") = Model::kQuantum, py::arg("traj_index") = 0,
      py::arg("convention") = EmissionConvention::kAnyFlip,
      "Returns the per-step emission bits (r1, r2) of one trajectory.");
  m.def(
      "run_ensemble",
      [](const SimParams& p, Model model, const AnalysisOptions& opt) {
        py::gil_scoped_release release;
        return run_ensemble(p, model, opt);
      },
      py::arg("params"), py::arg("model"), py::arg("options") = AnalysisOptions{});

  m.def(
      "lz_complexity", [](const ByteArray& s, int k) { return lz_complexity(as_span(s), k); }, py::arg("symbols"),
      py::arg("alphabet_size") = 2);
  m.def(
      "normalized_lz", [](const ByteArray& s, int k) { return normalized_lz(as_span(s), k); }, py::arg("symbols"),
      py::arg("alphabet_size") = 2);
  m.def("joint_encode",
        [](const ByteArray& a, const ByteArray& b) { return to_array(joint_encode(as_span(a), as_span(b))); });
  m.def("spearman", [](const DoubleArray& x, const DoubleArray& y) {
    const SpearmanResult r = spearman(as_span(x), as_span(y));
    return py::make_tuple(r.rho, r.p_value);
  });
  m.def(
      "welch_t_test",
      [](double ma, double sa, std::int64_t na, double mb, double sb, std::int64_t nb) {
        const WelchResult r = welch_t_test(ma, sa, na, mb, sb, nb);
        return py::make_tuple(r.t, r.p_value, r.dof);
      },
      py::arg("mean_a"), py::arg("sem_a"), py::arg("n_a"), py::arg("mean_b"), py::arg("sem_b"), py::arg("n_b"));
}
