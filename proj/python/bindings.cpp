// Python bindings for the paramlc core: model parameters, exact steady-state
// observables, Fock-space entanglement diagnostics, the Liouvillian oracle,
// semiclassical dynamics and the phase-diffusion Monte Carlo.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paramlc/exact_ness.hpp"
#include "paramlc/fockspace.hpp"
#include "paramlc/liouville.hpp"
#include "paramlc/model.hpp"
#include "paramlc/semiclassics.hpp"
#include "paramlc/specfun.hpp"
#include "paramlc/stochastics.hpp"
#include "paramlc/vdp.hpp"

namespace py = pybind11;
using namespace paramlc;

PYBIND11_MODULE(paramlc, m) {
    m.doc() = "Steady states, limit cycles and phase diffusion of parametrically "
              "driven O(N)-symmetric Kerr oscillator arrays";

    py::register_exception<Error>(m, "ParamlcError");

    // ---- model ----
    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("n_modes", &ModelParams::n_modes)
        .def_readwrite("u", &ModelParams::u)
        .def_readwrite("drive", &ModelParams::drive)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("h", &ModelParams::h)
        .def_readwrite("coupling", &ModelParams::coupling)
        .def_static("two_mode", &ModelParams::two_mode, py::arg("u"), py::arg("drive"),
                    py::arg("kappa"), py::arg("h") = 0.0)
        .def("validate", &ModelParams::validate)
        .def_property_readonly("n_ss", &ModelParams::n_ss)
        .def_property_readonly("delta", &ModelParams::delta)
        .def_property_readonly("lam", &ModelParams::lambda)
        .def_property_readonly("frame_angle", &ModelParams::frame_angle)
        .def_property_readonly("threshold", &ModelParams::threshold);

    // ---- specfun ----
    auto sf = m.def_submodule("specfun");
    py::class_<specfun::SeriesResult>(sf, "SeriesResult")
        .def_readonly("value", &specfun::SeriesResult::value)
        .def_readonly("log_scale", &specfun::SeriesResult::log_scale)
        .def_readonly("terms_used", &specfun::SeriesResult::terms_used)
        .def_readonly("truncation_estimate", &specfun::SeriesResult::truncation_estimate)
        .def("full", &specfun::SeriesResult::full)
        .def("log_abs", &specfun::SeriesResult::log_abs);
    sf.def("pochhammer", &specfun::pochhammer, py::arg("z"), py::arg("m"));
    sf.def(
        "hyp1f2",
        [](std::complex<double> a, std::complex<double> b, std::complex<double> c, double x,
           double tol) {
            specfun::SeriesOptions opts;
            opts.tol = tol;
            return specfun::hyp1f2(a, b, c, x, opts);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"), py::arg("tol") = 1e-12);
    sf.def(
        "hyp1f1",
        [](std::complex<double> a, std::complex<double> b, double x, double tol) {
            specfun::SeriesOptions opts;
            opts.tol = tol;
            return specfun::hyp1f1(a, b, x, opts);
        },
        py::arg("a"), py::arg("b"), py::arg("x"), py::arg("tol") = 1e-12);

    // ---- exact steady state ----
    auto ness = m.def_submodule("ness");
    py::class_<exact_ness::NessDescriptor>(ness, "NessDescriptor")
        .def_readonly("delta", &exact_ness::NessDescriptor::delta)
        .def_readonly("lam", &exact_ness::NessDescriptor::lambda)
        .def_readonly("norm_z", &exact_ness::NessDescriptor::norm_z)
        .def_readonly("log_norm_z", &exact_ness::NessDescriptor::log_norm_z)
        .def_readonly("coefficients", &exact_ness::NessDescriptor::coefficients);
    py::enum_<exact_ness::Phase>(ness, "Phase")
        .value("symmetric", exact_ness::Phase::symmetric)
        .value("ssb_static", exact_ness::Phase::ssb_static)
        .value("limit_cycle_or_torus", exact_ness::Phase::limit_cycle_or_torus);
    py::class_<exact_ness::PhaseClassification>(ness, "PhaseClassification")
        .def_readonly("phase", &exact_ness::PhaseClassification::phase)
        .def_readonly("at_boundary", &exact_ness::PhaseClassification::at_boundary);
    py::class_<exact_ness::PairMoments>(ness, "PairMoments")
        .def_readonly("mean_m", &exact_ness::PairMoments::mean_m)
        .def_readonly("m_mminus1", &exact_ness::PairMoments::m_mminus1)
        .def_readonly("var_m", &exact_ness::PairMoments::var_m);
    ness.def("descriptor", &exact_ness::descriptor, py::arg("params"), py::arg("m_max"));
    ness.def("auto_m_max", &exact_ness::auto_m_max);
    ness.def("mean_photon_number", &exact_ness::mean_photon_number);
    ness.def("pair_moments", &exact_ness::pair_moments);
    ness.def("fano", &exact_ness::fano);
    ness.def("order_parameter", &exact_ness::order_parameter);
    ness.def("classify_phase", &exact_ness::classify_phase);
    ness.def("semiclassical_nss", &exact_ness::semiclassical_nss);

    // ---- Fock space ----
    auto fock = m.def_submodule("fock");
    py::enum_<fockspace::BasisTag>(fock, "BasisTag")
        .value("a_basis", fockspace::BasisTag::a_basis)
        .value("b_basis", fockspace::BasisTag::b_basis);
    py::class_<fockspace::DensityMatrix>(fock, "DensityMatrix")
        .def_readonly("mode_cutoffs", &fockspace::DensityMatrix::mode_cutoffs)
        .def_readonly("basis", &fockspace::DensityMatrix::basis)
        .def_readonly("matrix", &fockspace::DensityMatrix::matrix)
        .def_property_readonly("dim", &fockspace::DensityMatrix::dim)
        .def("trace", &fockspace::DensityMatrix::trace)
        .def("hermiticity_error", &fockspace::DensityMatrix::hermiticity_error);
    py::class_<fockspace::TmstReference>(fock, "TmstReference")
        .def_readonly("r", &fockspace::TmstReference::r)
        .def_readonly("n_th", &fockspace::TmstReference::n_th)
        .def_readonly("log_negativity", &fockspace::TmstReference::log_negativity);
    py::class_<fockspace::IntermodeCovariances>(fock, "IntermodeCovariances")
        .def_readonly("a1a2", &fockspace::IntermodeCovariances::a1a2)
        .def_readonly("a1a2dag", &fockspace::IntermodeCovariances::a1a2dag)
        .def_readonly("a1", &fockspace::IntermodeCovariances::a1)
        .def_readonly("a2", &fockspace::IntermodeCovariances::a2);
    fock.def("build_ness_density_matrix", &fockspace::build_ness_density_matrix,
             py::arg("params"), py::arg("cutoff"));
    fock.def("to_b_basis", &fockspace::to_b_basis, py::arg("params"), py::arg("cutoff"));
    fock.def("partial_transpose", &fockspace::partial_transpose, py::arg("rho"),
             py::arg("mode_index"));
    fock.def("log_negativity", &fockspace::log_negativity, py::arg("rho"),
             py::arg("mode_index"));
    fock.def("tmst_reference", &fockspace::tmst_reference, py::arg("purity"),
             py::arg("total_photons"));
    fock.def("intermode_covariances", &fockspace::intermode_covariances);
    fock.def("purity", &fockspace::purity);
    fock.def("mean_total_photons", &fockspace::mean_total_photons);
    fock.def("suggested_cutoff", &fockspace::suggested_cutoff);

    // ---- Liouvillian oracle ----
    auto liou = m.def_submodule("liouville");
    py::class_<liouville::LiouvillianMatrix>(liou, "LiouvillianMatrix")
        .def_readonly("cutoff", &liouville::LiouvillianMatrix::cutoff)
        .def_property_readonly("hilbert_dim", &liouville::LiouvillianMatrix::hilbert_dim)
        .def_property_readonly(
            "matrix", [](const liouville::LiouvillianMatrix& l) { return l.matrix; });
    py::class_<liouville::SteadyStateSolution>(liou, "SteadyStateSolution")
        .def_readonly("rho", &liouville::SteadyStateSolution::rho)
        .def_readonly("residual", &liouville::SteadyStateSolution::residual)
        .def_readonly("gap_estimate", &liouville::SteadyStateSolution::gap_estimate);
    py::class_<liouville::OracleObservables>(liou, "OracleObservables")
        .def_readonly("mean_n", &liouville::OracleObservables::mean_n)
        .def_readonly("fano", &liouville::OracleObservables::fano)
        .def_readonly("log_negativity", &liouville::OracleObservables::log_negativity);
    liou.def("build_liouvillian", &liouville::build_liouvillian, py::arg("params"),
             py::arg("cutoff"));
    liou.def("steady_state_nullvector", &liouville::steady_state_nullvector);
    liou.def("observables", &liouville::observables);

    // ---- semiclassics ----
    auto semi = m.def_submodule("semiclassics");
    py::class_<semiclassics::QuadratureTrajectory>(semi, "QuadratureTrajectory")
        .def_readonly("times", &semiclassics::QuadratureTrajectory::times)
        .def_readonly("x", &semiclassics::QuadratureTrajectory::x)
        .def_readonly("y", &semiclassics::QuadratureTrajectory::y)
        .def_readonly("photon_number", &semiclassics::QuadratureTrajectory::photon_number)
        .def_readonly("theta", &semiclassics::QuadratureTrajectory::theta);
    py::class_<semiclassics::BlockForm>(semi, "BlockForm")
        .def_readonly("rotation", &semiclassics::BlockForm::rotation)
        .def_readonly("lambdas", &semiclassics::BlockForm::lambdas)
        .def_readonly("has_zero_mode", &semiclassics::BlockForm::has_zero_mode);
    py::class_<semiclassics::TorusState>(semi, "TorusState")
        .def_readonly("t", &semiclassics::TorusState::t)
        .def_readonly("rho", &semiclassics::TorusState::rho)
        .def_readonly("theta", &semiclassics::TorusState::theta)
        .def_readonly("sigma_leftover", &semiclassics::TorusState::sigma_leftover);
    py::class_<semiclassics::StabilityReport>(semi, "StabilityReport")
        .def_readonly("n_zero_modes", &semiclassics::StabilityReport::n_zero_modes)
        .def_readonly("tangential_decay", &semiclassics::StabilityReport::tangential_decay)
        .def_readonly("radial_plus", &semiclassics::StabilityReport::radial_plus)
        .def_readonly("radial_minus", &semiclassics::StabilityReport::radial_minus);
    py::enum_<semiclassics::TorusKind>(semi, "TorusKind")
        .value("periodic", semiclassics::TorusKind::periodic)
        .value("quasiperiodic", semiclassics::TorusKind::quasiperiodic);
    semi.def("complex_rhs", &semiclassics::complex_rhs, py::arg("params"), py::arg("a"));
    semi.def("default_dt", &semiclassics::default_dt);
    semi.def("integrate", &semiclassics::integrate, py::arg("params"), py::arg("a0"),
             py::arg("total_time"), py::arg("dt"), py::arg("record_stride") = 1);
    semi.def("linear_stability", &semiclassics::linear_stability);
    semi.def("block_canonical_form", &semiclassics::block_canonical_form);
    semi.def("torus_trajectory", &semiclassics::torus_trajectory, py::arg("params"),
             py::arg("a0"), py::arg("total_time"), py::arg("dt"),
             py::arg("record_stride") = 1);
    semi.def("torus_frequencies", &semiclassics::torus_frequencies);
    semi.def("torus_classify", &semiclassics::torus_classify, py::arg("lambdas"),
             py::arg("max_denominator"));
    semi.def("adler_rhs", &semiclassics::adler_rhs, py::arg("params"), py::arg("delta_u"),
             py::arg("phi"));
    semi.def("integrate_adler", &semiclassics::integrate_adler, py::arg("params"),
             py::arg("delta_u"), py::arg("phi0"), py::arg("total_time"), py::arg("dt"));
    semi.def("locking_boundary", &semiclassics::locking_boundary, py::arg("params"),
             py::arg("delta_u"));
    semi.def("mechanical_rhs", &semiclassics::mechanical_rhs, py::arg("params"), py::arg("x"),
             py::arg("xdot"));

    // ---- stochastics ----
    auto sto = m.def_submodule("stochastics");
    py::class_<stochastics::DiffusionEstimate>(sto, "DiffusionEstimate")
        .def_readonly("d_phi_hat", &stochastics::DiffusionEstimate::d_phi_hat)
        .def_readonly("std_error", &stochastics::DiffusionEstimate::std_error)
        .def_readonly("n_trajectories", &stochastics::DiffusionEstimate::n_trajectories)
        .def_readonly("analytic", &stochastics::DiffusionEstimate::analytic)
        .def_readonly("seed", &stochastics::DiffusionEstimate::seed)
        .def_readonly("sample_times", &stochastics::DiffusionEstimate::sample_times)
        .def_readonly("var_phi", &stochastics::DiffusionEstimate::var_phi)
        .def_readonly("mean_phi", &stochastics::DiffusionEstimate::mean_phi);
    py::class_<stochastics::SdeOptions>(sto, "SdeOptions")
        .def(py::init<>())
        .def_readwrite("coupling_scale", &stochastics::SdeOptions::coupling_scale)
        .def_readwrite("noise_scale", &stochastics::SdeOptions::noise_scale)
        .def_readwrite("sample_interval", &stochastics::SdeOptions::sample_interval)
        .def_readwrite("n_batches", &stochastics::SdeOptions::n_batches)
        .def_readwrite("threads", &stochastics::SdeOptions::threads);
    py::class_<stochastics::LyapunovResult>(sto, "LyapunovResult")
        .def_readonly("covariance", &stochastics::LyapunovResult::covariance)
        .def_readonly("fano_semi", &stochastics::LyapunovResult::fano_semi)
        .def_readonly("residual", &stochastics::LyapunovResult::residual);
    sto.def("analytic_phase_diffusion", &stochastics::analytic_phase_diffusion);
    sto.def("analytic_phase_diffusion_r_form", &stochastics::analytic_phase_diffusion_r_form);
    sto.def("schawlow_townes_ratio", &stochastics::schawlow_townes_ratio);
    sto.def("simulate_phase_sde", &stochastics::simulate_phase_sde, py::arg("params"),
            py::arg("n_traj"), py::arg("total_time"), py::arg("dt"), py::arg("seed"),
            py::arg("options") = stochastics::SdeOptions{},
            py::call_guard<py::gil_scoped_release>());
    sto.def("lyapunov_covariance", &stochastics::lyapunov_covariance);

    // ---- van der Pol reference ----
    auto vdpm = m.def_submodule("vdp");
    py::class_<vdp::VdpParams>(vdpm, "VdpParams")
        .def(py::init<>())
        .def(py::init([](double kappa, double gamma1, double gamma2) {
                 return vdp::VdpParams{kappa, gamma1, gamma2};
             }),
             py::arg("kappa"), py::arg("gamma1"), py::arg("gamma2"))
        .def_readwrite("kappa", &vdp::VdpParams::kappa)
        .def_readwrite("gamma1", &vdp::VdpParams::gamma1)
        .def_readwrite("gamma2", &vdp::VdpParams::gamma2)
        .def_property_readonly("a", &vdp::VdpParams::a)
        .def_property_readonly("b", &vdp::VdpParams::b);
    vdpm.def("fock_distribution", &vdp::vdp_fock_distribution, py::arg("params"),
             py::arg("m_max"));
    vdpm.def("mean_photon", &vdp::vdp_mean_photon);
    vdpm.def("fano", &vdp::vdp_fano);
    vdpm.def("recursion_residual", &vdp::vdp_recursion_residual, py::arg("params"),
             py::arg("rho"));

    m.attr("__version__") = "0.1.0";
}
