#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbrach/bloch.hpp"
#include "qbrach/harness.hpp"
#include "qbrach/hermitian.hpp"
#include "qbrach/mat2.hpp"
#include "qbrach/ptsym.hpp"
#include "qbrach/version.hpp"

namespace py = pybind11;
using namespace qbrach;

namespace {

using Arr3 = std::array<double, 3>;
using Mat22 = std::array<std::array<cplx, 2>, 2>;

Vec3 to_vec3(const Arr3& a) { return {a[0], a[1], a[2]}; }
Arr3 from_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }

Mat2 to_mat2(const Mat22& m) { return Mat2{{m[0][0], m[0][1], m[1][0], m[1][1]}}; }
Mat22 from_mat2(const Mat2& m) { return {{{m.e[0], m.e[1]}, {m.e[2], m.e[3]}}}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-level minimal-time evolution laboratory: Bloch dynamics, "
              "time-optimal Hermitian Hamiltonians and the PT-symmetric sector";
    m.attr("__version__") = kVersion;

    // mat2
    m.def("pauli", [](int i) { return from_mat2(pauli(i)); }, py::arg("index"),
          "Standard Pauli matrix, index in {1,2,3}");
    m.def("mat_exp", [](const Mat22& mat, cplx scale) { return from_mat2(mat_exp(to_mat2(mat), scale)); },
          py::arg("m"), py::arg("scale"), "exp(scale*m) in closed form");
    m.def("decompose", [](const Mat22& mat) {
              const PauliDecomposition d = decompose(to_mat2(mat));
              return py::make_tuple(d.scalar, d.vector);
          },
          py::arg("m"), "Pauli coefficients (scalar, [v1, v2, v3]) of m");
    m.def("eig2", [](const Mat22& mat) {
              const Eig2 e = eig2(to_mat2(mat));
              return py::make_tuple(e.values, e.vectors);
          },
          py::arg("m"), "Eigenvalues (real part ascending) and unit eigenvectors");

    // bloch
    m.def("state_to_bloch", [](const StateVector& psi) { return from_vec3(state_to_bloch(psi)); },
          py::arg("psi"));
    m.def("bloch_to_state", [](const Arr3& p) { return bloch_to_state(to_vec3(p)); }, py::arg("p"));
    m.def("bloch_to_density", [](const Arr3& p) { return from_mat2(bloch_to_density(to_vec3(p)).rho); },
          py::arg("p"));
    m.def("density_to_bloch", [](const Mat22& rho) { return from_vec3(density_to_bloch({to_mat2(rho)})); },
          py::arg("rho"));
    m.def("fs_distance", &fs_distance, py::arg("psi1"), py::arg("psi2"));
    m.def("is_antipodal", [](const Arr3& p1, const Arr3& p2) { return is_antipodal(to_vec3(p1), to_vec3(p2)); },
          py::arg("p1"), py::arg("p2"));

    // hermitian
    py::class_<HermitianHamiltonian>(m, "HermitianHamiltonian")
        .def(py::init([](double o0, const Arr3& axis, double gap) {
                 return HermitianHamiltonian{o0, to_vec3(axis), gap};
             }),
             py::arg("o0"), py::arg("axis"), py::arg("gap"))
        .def_readonly("o0", &HermitianHamiltonian::o0)
        .def_property_readonly("axis", [](const HermitianHamiltonian& h) { return from_vec3(h.axis); })
        .def_readonly("gap", &HermitianHamiltonian::gap)
        .def("matrix", [](const HermitianHamiltonian& h) { return from_mat2(h.matrix()); });

    py::class_<EnergySpectrum>(m, "EnergySpectrum")
        .def_readonly("e1", &EnergySpectrum::e1)
        .def_readonly("e2", &EnergySpectrum::e2)
        .def_readonly("delta_e", &EnergySpectrum::delta_e);

    py::class_<TransportMetrics>(m, "TransportMetrics")
        .def_readonly("distance", &TransportMetrics::distance)
        .def_readonly("speed", &TransportMetrics::speed)
        .def_readonly("time", &TransportMetrics::time);

    m.def("build_optimal_hamiltonian",
          [](const Arr3& p_i, const Arr3& p_f, double delta_e, double o0, double theta) {
              return build_optimal_hamiltonian(to_vec3(p_i), to_vec3(p_f), delta_e, o0, theta);
          },
          py::arg("p_initial"), py::arg("p_final"), py::arg("delta_e"), py::arg("o0") = 0.0,
          py::arg("theta") = 0.0);
    m.def("energy_spectrum", &energy_spectrum, py::arg("h"));
    m.def("speed", &speed, py::arg("h"));
    m.def("transport_metrics", &transport_metrics, py::arg("h"), py::arg("psi_initial"),
          py::arg("psi_final"));
    m.def("evolve_state", &evolve_state, py::arg("h"), py::arg("psi"), py::arg("t"));
    m.def("evolve_bloch_ode",
          [](const HermitianHamiltonian& h, const Arr3& p, double t, int steps) {
              return from_vec3(evolve_bloch_ode(h, to_vec3(p), t, steps));
          },
          py::arg("h"), py::arg("p"), py::arg("t"), py::arg("steps"));
    m.def("passage_time", &passage_time, py::arg("h"), py::arg("psi_initial"), py::arg("psi_final"),
          py::arg("t_max"));
    m.def("round_trip_time", &round_trip_time, py::arg("h"), py::arg("psi_initial"),
          py::arg("psi_via"), py::arg("t_max"));
    m.def("default_t_max", &default_t_max, py::arg("gap"));
    m.def("brute_force_min_passage",
          [](const Arr3& p_i, const Arr3& p_f, double delta_e, int grid_size) {
              const AxisSearchResult r = brute_force_min_passage(to_vec3(p_i), to_vec3(p_f), delta_e, grid_size);
              return py::make_tuple(from_vec3(r.axis), r.time, r.reached);
          },
          py::arg("p_initial"), py::arg("p_final"), py::arg("delta_e"), py::arg("grid_size"),
          "Axis-lattice search; returns (axis, time, reached)");

    // ptsym
    py::class_<PTHamiltonian>(m, "PTHamiltonian")
        .def(py::init([](double r, double s, double theta) { return PTHamiltonian{r, s, theta}; }),
             py::arg("r"), py::arg("s"), py::arg("theta"))
        .def_readonly("r", &PTHamiltonian::r)
        .def_readonly("s", &PTHamiltonian::s)
        .def_readonly("theta", &PTHamiltonian::theta)
        .def("matrix", [](const PTHamiltonian& h) { return from_mat2(h.matrix()); });

    py::class_<PTSpectrum>(m, "PTSpectrum")
        .def_readonly("eps_plus", &PTSpectrum::eps_plus)
        .def_readonly("eps_minus", &PTSpectrum::eps_minus)
        .def_readonly("alpha", &PTSpectrum::alpha)
        .def_readonly("omega", &PTSpectrum::omega);

    py::class_<CPTOperator>(m, "CPTOperator")
        .def_property_readonly("c", [](const CPTOperator& c) { return from_mat2(c.c); });

    m.def("pt_spectrum", &pt_spectrum, py::arg("h"));
    m.def("build_pt_from_alpha", &build_pt_from_alpha, py::arg("alpha"), py::arg("delta_e"),
          py::arg("rcos_offset") = 0.0);
    m.def("c_operator", &c_operator, py::arg("h"));
    m.def("cpt_inner", &cpt_inner, py::arg("u"), py::arg("v"), py::arg("c"));
    m.def("cpt_fidelity", &cpt_fidelity, py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("pt_evolve", &pt_evolve, py::arg("h"), py::arg("psi"), py::arg("t"));
    m.def("nqm_distances", &nqm_distances, py::arg("alpha"));
    m.def("pt_passage_time", &pt_passage_time, py::arg("h"), py::arg("psi_initial"),
          py::arg("psi_final"), py::arg("t_max"));
    m.def("pt_round_trip_time", &pt_round_trip_time, py::arg("h"), py::arg("psi_initial"),
          py::arg("psi_via"), py::arg("t_max"));

    // harness
    m.def("run_config", &run_config, py::arg("config_text"),
          "Load a JSON scenario config, run it and return the emitted table");

    py::register_exception<ValidationError>(m, "ConfigValidationError", PyExc_ValueError);
    py::register_exception<PTBrokenError>(m, "PTBrokenError", PyExc_ValueError);
    py::register_exception<ExceptionalPointError>(m, "ExceptionalPointError", PyExc_ValueError);
}
