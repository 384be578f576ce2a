#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmtopo/phasemap.hpp"

namespace py = pybind11;
using namespace dmtopo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lindbladian dynamics of fermionic Gaussian states: correlation-matrix "
              "evolution, density-matrix topology, and PT phase maps";

    // algebra
    py::class_<PauliForm>(m, "PauliForm")
        .def(py::init([](Complex alpha, const Vector3c& n) {
                 return PauliForm{alpha, n};
             }),
             py::arg("alpha"), py::arg("n"))
        .def_readwrite("alpha", &PauliForm::alpha)
        .def_readwrite("n", &PauliForm::n);
    py::class_<EigenSystem2>(m, "EigenSystem2")
        .def_readonly("eps_plus", &EigenSystem2::eps_plus)
        .def_readonly("eps_minus", &EigenSystem2::eps_minus)
        .def_readonly("R_plus", &EigenSystem2::R_plus)
        .def_readonly("R_minus", &EigenSystem2::R_minus)
        .def_readonly("L_plus", &EigenSystem2::L_plus)
        .def_readonly("L_minus", &EigenSystem2::L_minus)
        .def_readonly("defective", &EigenSystem2::defective);
    m.def("pauli_decompose", &pauli_decompose, py::arg("M"));
    m.def("pauli_compose", &pauli_compose, py::arg("p"));
    m.def("eigensystem",
          py::overload_cast<const Matrix2&, double>(&eigensystem),
          py::arg("M"), py::arg("ep_tol"));
    m.def("eigensystem", py::overload_cast<const Matrix2&>(&eigensystem), py::arg("M"));
    m.def("propagator", &propagator, py::arg("M"), py::arg("t"));
    m.def("hermitian_log", &hermitian_log, py::arg("M"));
    m.def("hermitian_exp", &hermitian_exp, py::arg("M"));

    // model
    py::class_<JumpTerm>(m, "JumpTerm")
        .def(py::init([](int mu, int site, Complex amp) {
                 return JumpTerm{mu, site, amp};
             }),
             py::arg("mu"), py::arg("site"), py::arg("amp"))
        .def_readwrite("mu", &JumpTerm::mu)
        .def_readwrite("site", &JumpTerm::site)
        .def_readwrite("amp", &JumpTerm::amp);
    py::class_<LatticeModel>(m, "LatticeModel")
        .def_readwrite("u", &LatticeModel::u)
        .def_readwrite("w", &LatticeModel::w)
        .def_readwrite("lambda_", &LatticeModel::lambda)
        .def_readwrite("L", &LatticeModel::L)
        .def_readwrite("jump_coefficients", &LatticeModel::jump_coefficients);
    py::class_<BlochBlock>(m, "BlochBlock")
        .def(py::init<>())
        .def_readwrite("k", &BlochBlock::k)
        .def_readwrite("H_k", &BlochBlock::H_k)
        .def_readwrite("M_k", &BlochBlock::M_k)
        .def_readwrite("X_tilde_k", &BlochBlock::X_tilde_k);
    py::class_<PTDecomposition>(m, "PTDecomposition")
        .def_readonly("alpha_X", &PTDecomposition::alpha_X)
        .def_readonly("gamma", &PTDecomposition::gamma)
        .def_readonly("rho", &PTDecomposition::rho)
        .def_readonly("theta", &PTDecomposition::theta)
        .def_readonly("n1", &PTDecomposition::n1)
        .def_readonly("n2", &PTDecomposition::n2)
        .def_readonly("n3", &PTDecomposition::n3);
    py::class_<ChiralFrame>(m, "ChiralFrame")
        .def_readonly("n_gamma", &ChiralFrame::n_gamma)
        .def_readonly("e1", &ChiralFrame::e1)
        .def_readonly("e2", &ChiralFrame::e2);
    py::enum_<KSectorLabel>(m, "KSectorLabel")
        .value("Unbroken", KSectorLabel::Unbroken)
        .value("Broken", KSectorLabel::Broken)
        .value("ExceptionalPoint", KSectorLabel::ExceptionalPoint);
    py::enum_<PTGlobalLabel>(m, "PTGlobalLabel")
        .value("FullyUnbroken", PTGlobalLabel::FullyUnbroken)
        .value("PartiallyBroken", PTGlobalLabel::PartiallyBroken)
        .value("FullyBroken", PTGlobalLabel::FullyBroken);
    py::class_<PTClassification>(m, "PTClassification")
        .def_readonly("per_k", &PTClassification::per_k)
        .def_readonly("global_", &PTClassification::global);
    m.def("build_ssh_model", &build_ssh_model, py::arg("u"), py::arg("w"), py::arg("lam"),
          py::arg("L"));
    m.def("k_grid", &k_grid, py::arg("n_k"));
    m.def("bloch_blocks", &bloch_blocks, py::arg("model"), py::arg("n_k"));
    m.def("real_space_damping", &real_space_damping, py::arg("model"));
    m.def("pt_classify", &pt_classify, py::arg("blocks"), py::arg("ep_tol"));
    m.def("pt_decompose", &pt_decompose, py::arg("block"));
    m.def("chiral_axis", &chiral_axis, py::arg("blocks"), py::arg("tol"));
    m.def("frame_from_axis", &frame_from_axis, py::arg("axis"));

    // dynamics
    py::class_<CorrelationField>(m, "CorrelationField")
        .def(py::init<>())
        .def_readwrite("kgrid", &CorrelationField::kgrid)
        .def_readwrite("blocks", &CorrelationField::blocks)
        .def_readwrite("time", &CorrelationField::time);
    py::class_<InitialStateSpec>(m, "InitialStateSpec")
        .def(py::init([](double a, double b) { return InitialStateSpec{a, b}; }),
             py::arg("a"), py::arg("b"))
        .def_readwrite("a", &InitialStateSpec::a)
        .def_readwrite("b", &InitialStateSpec::b);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("fields", &Trajectory::fields);
    m.def("initial_state", &initial_state, py::arg("spec"), py::arg("kgrid"));
    m.def("evolve_propagator", &evolve_propagator, py::arg("blocks"), py::arg("C0"),
          py::arg("t"));
    m.def("evolve_spectral", &evolve_spectral, py::arg("blocks"), py::arg("C0"), py::arg("t"));
    m.def("evolve_bloch_ode", &evolve_bloch_ode, py::arg("blocks"), py::arg("C0"),
          py::arg("times"), py::arg("dt_max"));
    m.def("evolve_realspace_oracle", &evolve_realspace_oracle, py::arg("model"),
          py::arg("C0_real"), py::arg("t"));
    m.def("steady_direction", &steady_direction, py::arg("block"));
    m.def("correlation_bloch", &correlation_bloch, py::arg("C"));
    m.def("to_bloch_basis", &to_bloch_basis, py::arg("O"), py::arg("L"));
    m.def("from_bloch_basis", &from_bloch_basis, py::arg("blocks"));

    // topology
    py::class_<ModularField>(m, "ModularField")
        .def_readonly("kgrid", &ModularField::kgrid)
        .def_readonly("blocks", &ModularField::blocks)
        .def_readonly("alpha_K", &ModularField::alpha_K)
        .def_readonly("n_K", &ModularField::n_K);
    py::class_<WindingResult>(m, "WindingResult")
        .def_readonly("nu", &WindingResult::nu)
        .def_readonly("min_amp", &WindingResult::min_amp);
    py::class_<ChiralReport>(m, "ChiralReport")
        .def_readonly("max_axis_component", &ChiralReport::max_axis_component)
        .def_readonly("ok", &ChiralReport::ok);
    py::class_<TopologyTrace>(m, "TopologyTrace")
        .def_readonly("times", &TopologyTrace::times)
        .def_readonly("nu", &TopologyTrace::nu)
        .def_readonly("min_planar_amplitude", &TopologyTrace::min_planar_amplitude)
        .def_readonly("transitions", &TopologyTrace::transitions);
    m.def("modular_from_correlation", &modular_from_correlation, py::arg("C"));
    m.def("correlation_from_modular", &correlation_from_modular, py::arg("K"));
    m.def("check_chiral", &check_chiral, py::arg("C"), py::arg("frame"), py::arg("tol"));
    m.def("winding_number", &winding_number, py::arg("C"), py::arg("frame"),
          py::arg("gap_tol"));
    m.def("winding_of_vectors", &winding_of_vectors, py::arg("n"), py::arg("frame"),
          py::arg("gap_tol"));
    m.def("min_planar_amplitude", &min_planar_amplitude, py::arg("C"), py::arg("frame"));
    m.def("transition_scan", &transition_scan, py::arg("blocks"), py::arg("C0"),
          py::arg("frame"), py::arg("t_max"), py::arg("n_samples"), py::arg("gap_tol"));
    m.def("nk_nc_antiparallel_check", &nk_nc_antiparallel_check, py::arg("C"));

    // phasemap
    py::enum_<Region>(m, "Region")
        .value("I", Region::I)
        .value("II", Region::II)
        .value("III", Region::III)
        .value("IV", Region::IV);
    py::enum_<TransitionBehavior>(m, "TransitionBehavior")
        .value("AtLeastOnce", TransitionBehavior::AtLeastOnce)
        .value("Repeated", TransitionBehavior::Repeated)
        .value("None_", TransitionBehavior::None)
        .value("Mixed", TransitionBehavior::Mixed);
    py::class_<RegionLabel>(m, "RegionLabel")
        .def_readonly("region", &RegionLabel::region)
        .def_readonly("pt_part", &RegionLabel::pt_part)
        .def_readonly("transition_behavior", &RegionLabel::transition_behavior);
    py::class_<SweepMetadata>(m, "SweepMetadata")
        .def(py::init<>())
        .def_readwrite("lambda_", &SweepMetadata::lambda)
        .def_readwrite("a", &SweepMetadata::a)
        .def_readwrite("b", &SweepMetadata::b)
        .def_readwrite("t_max", &SweepMetadata::t_max)
        .def_readwrite("n_k", &SweepMetadata::n_k)
        .def_readwrite("n_samples", &SweepMetadata::n_samples)
        .def_readwrite("ep_tol", &SweepMetadata::ep_tol)
        .def_readwrite("gap_tol", &SweepMetadata::gap_tol);
    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("u", &SweepPoint::u)
        .def_readonly("w", &SweepPoint::w)
        .def_readonly("label", &SweepPoint::label)
        .def_readonly("transition_times", &SweepPoint::transition_times);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("u_values", &SweepResult::u_values)
        .def_readonly("w_values", &SweepResult::w_values)
        .def_readonly("points", &SweepResult::points)
        .def_readonly("meta", &SweepResult::meta);
    m.def("classify_point", &classify_point, py::arg("u"), py::arg("w"), py::arg("lam"),
          py::arg("spec"), py::arg("t_max"), py::arg("n_k"), py::arg("n_samples"),
          py::arg("ep_tol") = 1e-8, py::arg("gap_tol") = 1e-6);
    m.def("scan_point", &scan_point, py::arg("u"), py::arg("w"), py::arg("meta"));
    m.def("sweep", &sweep, py::arg("u_min"), py::arg("u_max"), py::arg("u_resolution"),
          py::arg("w_min"), py::arg("w_max"), py::arg("w_resolution"), py::arg("meta"));
    m.def("find_uc", &find_uc, py::arg("lam"), py::arg("spec"), py::arg("w"),
          py::arg("search_lo"), py::arg("search_hi"), py::arg("tol"),
          py::arg("meta") = SweepMetadata{});
}
