#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bgsusy/bilayer.hpp"
#include "bgsusy/errors.hpp"
#include "bgsusy/fd_oracle.hpp"
#include "bgsusy/numerics.hpp"
#include "bgsusy/observables.hpp"
#include "bgsusy/potentials.hpp"
#include "bgsusy/susy.hpp"

namespace py = pybind11;
using namespace bgsusy;

PYBIND11_MODULE(_bgsusy, m) {
    m.doc() = "second-order partner potentials and electron states for bilayer "
              "graphene in a position-dependent magnetic field";

    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<NoSuchLevel>(m, "NoSuchLevel");
    py::register_exception<TransformSingular>(m, "TransformSingular");
    py::register_exception<SingularPoint>(m, "SingularPoint");
    py::register_exception<NoBranch>(m, "NoBranch");
    py::register_exception<RelationInconsistent>(m, "RelationInconsistent");

    py::class_<Grid>(m, "Grid")
        .def_readonly("x_min", &Grid::x_min)
        .def_readonly("x_max", &Grid::x_max)
        .def_readonly("n_points", &Grid::n_points)
        .def_readonly("h", &Grid::h)
        .def_readonly("points", &Grid::points);
    m.def("make_grid", &make_grid, py::arg("x_min"), py::arg("x_max"),
          py::arg("n_points"));

    py::class_<SampledFunction>(m, "SampledFunction")
        .def_readonly("grid", &SampledFunction::grid)
        .def_readonly("values", &SampledFunction::values);

    py::enum_<Family>(m, "Family")
        .value("ShiftedHO", Family::ShiftedHO)
        .value("TrigRM", Family::TrigRM)
        .value("HypRM", Family::HypRM);

    py::class_<PotentialModel>(m, "PotentialModel")
        .def_static("shifted_ho", &PotentialModel::shifted_ho, py::arg("omega"),
                    py::arg("kappa"))
        .def_static("trig_rm", &PotentialModel::trig_rm, py::arg("D"),
                    py::arg("alpha"), py::arg("kappa"))
        .def_static("hyp_rm", &PotentialModel::hyp_rm, py::arg("D"), py::arg("alpha"),
                    py::arg("kappa"))
        .def_readonly("family", &PotentialModel::family)
        .def_readonly("omega", &PotentialModel::omega)
        .def_readonly("kappa", &PotentialModel::kappa)
        .def_readonly("D", &PotentialModel::D)
        .def_readonly("alpha", &PotentialModel::alpha);

    m.def("potential_value", &potential_value, py::arg("model"), py::arg("x"));
    m.def("eigenvalue0", &eigenvalue0, py::arg("model"), py::arg("n"));
    m.def("bound_state_count", &bound_state_count, py::arg("model"));
    m.def("default_grid", &default_grid, py::arg("model"));

    py::class_<BoundState>(m, "BoundState")
        .def(py::init<const PotentialModel&, int>(), py::arg("model"), py::arg("n"))
        .def("value", &BoundState::value)
        .def("derivative", &BoundState::derivative)
        .def_property_readonly("energy", &BoundState::energy)
        .def_property_readonly("level", &BoundState::level);

    py::class_<SusyTransform>(m, "SusyTransform")
        .def_static("consecutive",
                    py::overload_cast<const PotentialModel&, int>(
                        &SusyTransform::consecutive),
                    py::arg("model"), py::arg("j"))
        .def_static("confluent",
                    py::overload_cast<const PotentialModel&, int, double>(
                        &SusyTransform::confluent),
                    py::arg("model"), py::arg("j"), py::arg("w0"))
        .def_property_readonly("j", &SusyTransform::j)
        .def_property_readonly("eps1", &SusyTransform::eps1)
        .def_property_readonly("eps2", &SusyTransform::eps2)
        .def_property_readonly("w0", &SusyTransform::w0)
        .def_property_readonly("grid", &SusyTransform::grid)
        .def("eta", &SusyTransform::eta)
        .def("eta_prime", &SusyTransform::eta_prime)
        .def("gamma_coefficient", &SusyTransform::gamma_coefficient)
        .def("reconstruct_v0", &SusyTransform::reconstruct_v0)
        .def("extra_term_f", &SusyTransform::extra_term_f)
        .def("w", &SusyTransform::w);

    py::class_<MagneticProfile>(m, "MagneticProfile")
        .def_readonly("grid", &MagneticProfile::grid)
        .def_readonly("V0", &MagneticProfile::V0)
        .def_readonly("V2", &MagneticProfile::V2)
        .def_readonly("B", &MagneticProfile::B)
        .def_readonly("A", &MagneticProfile::A)
        .def_readonly("f_extra", &MagneticProfile::f_extra)
        .def_readonly("masked", &MagneticProfile::masked);
    m.def(
        "partner_profile",
        [](const SusyTransform& t) { return partner_profile(t, t.grid()); },
        py::arg("transform"));

    py::class_<ClosedFormB>(m, "ClosedFormB")
        .def_readonly("available", &ClosedFormB::available)
        .def_readonly("value", &ClosedFormB::value);
    m.def("closed_form_B", &closed_form_B, py::arg("transform"), py::arg("x"));

    py::class_<OracleSpectrum>(m, "OracleSpectrum")
        .def_readonly("eigenvalues", &OracleSpectrum::eigenvalues);
    m.def("fd_spectrum", &fd_spectrum, py::arg("V"), py::arg("count"));
    m.def(
        "sampled",
        [](const Grid& g, std::vector<double> v) {
            if (static_cast<int>(v.size()) != g.n_points)
                throw std::invalid_argument("values do not match the grid");
            return SampledFunction{g, std::move(v)};
        },
        py::arg("grid"), py::arg("values"));

    py::class_<SpinorState>(m, "SpinorState")
        .def_readonly("n_aux", &SpinorState::n_aux)
        .def_readonly("m_std", &SpinorState::m_std)
        .def_readonly("energy", &SpinorState::energy)
        .def_readonly("upper", &SpinorState::upper)
        .def_readonly("lower", &SpinorState::lower)
        .def_readonly("has_upper", &SpinorState::has_upper)
        .def_readonly("k", &SpinorState::k)
        .def_readonly("degenerate_with", &SpinorState::degenerate_with);

    m.def("electron_energy", &electron_energy, py::arg("model"), py::arg("transform"),
          py::arg("n"));
    m.def("spinor_state", &spinor_state, py::arg("model"), py::arg("transform"),
          py::arg("n"), py::arg("k"));
    m.def("standard_ordering", &standard_ordering, py::arg("states"));

    py::class_<KappaBranch>(m, "KappaBranch")
        .def_readonly("kappa", &KappaBranch::kappa)
        .def_readonly("physical", &KappaBranch::physical);
    py::class_<WavenumberRelation>(m, "WavenumberRelation")
        .def_readonly("C1", &WavenumberRelation::C1)
        .def_readonly("C2", &WavenumberRelation::C2)
        .def_readonly("k", &WavenumberRelation::k)
        .def_readonly("constancy_std", &WavenumberRelation::constancy_std)
        .def_readonly("branches", &WavenumberRelation::branches);
    m.def("wavenumber_constancy", &wavenumber_constancy, py::arg("transform"));
    m.def("has_wavenumber_relation", &has_wavenumber_relation, py::arg("model"),
          py::arg("transform"));
    m.def("kappa_to_k", &kappa_to_k, py::arg("model"), py::arg("transform"));
    m.def("k_to_kappa", &k_to_kappa, py::arg("model"), py::arg("transform"),
          py::arg("k"));

    py::class_<CurrentDensity>(m, "CurrentDensity")
        .def_readonly("Jx", &CurrentDensity::Jx)
        .def_readonly("Jy", &CurrentDensity::Jy);
    py::class_<DensityProfile>(m, "DensityProfile")
        .def_readonly("grid", &DensityProfile::grid)
        .def_readonly("rho", &DensityProfile::rho)
        .def_readonly("Jx", &DensityProfile::Jx)
        .def_readonly("Jy", &DensityProfile::Jy)
        .def_readonly("k", &DensityProfile::k)
        .def_readonly("n_aux", &DensityProfile::n_aux)
        .def_readonly("m_std", &DensityProfile::m_std);

    m.def("probability_density", &probability_density, py::arg("state"));
    m.def("current_density",
          py::overload_cast<const SpinorState&, const SampledFunction&, bool>(
              &current_density),
          py::arg("state"), py::arg("A"), py::arg("include_gauge_term") = true);
    m.def("continuity_residual",
          py::overload_cast<const SpinorState&, const SampledFunction&>(
              &continuity_residual),
          py::arg("state"), py::arg("A"));
    m.def("physical_vector_potential", &physical_vector_potential,
          py::arg("transform"), py::arg("k"));
    m.def("density_profile", &density_profile, py::arg("state"), py::arg("A"));
}
