#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nkl/bounds.hpp"
#include "nkl/common.hpp"
#include "nkl/config.hpp"
#include "nkl/fractional.hpp"
#include "nkl/nash.hpp"
#include "nkl/verify.hpp"

namespace py = pybind11;
using namespace nkl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral verification laboratory for fractional drift-diffusion kernels";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<NumericalDiagnostic>(m, "NumericalDiagnostic", PyExc_RuntimeError);

    py::enum_<Family>(m, "Family")
        .value("Cauchy", Family::Cauchy)
        .value("ExpSmooth", Family::ExpSmooth)
        .value("ExpPower", Family::ExpPower)
        .value("Gauss", Family::Gauss);

    py::enum_<Boundary>(m, "Boundary")
        .value("Neumann", Boundary::Neumann)
        .value("Dirichlet", Boundary::Dirichlet);

    py::class_<DensityModel>(m, "DensityModel")
        .def_static("cauchy", &DensityModel::cauchy, py::arg("beta"), py::arg("d") = 1)
        .def_static("exp_smooth", &DensityModel::exp_smooth, py::arg("a"), py::arg("d") = 1)
        .def_static("exp_power", &DensityModel::exp_power, py::arg("a"), py::arg("d") = 1,
                    py::arg("K_cut") = 0.0)
        .def_static("gauss", &DensityModel::gauss, py::arg("d") = 1)
        .def_readonly("beta", &DensityModel::beta)
        .def_readonly("a", &DensityModel::a)
        .def_readonly("d", &DensityModel::d)
        .def_readonly("K_cut", &DensityModel::K_cut)
        .def("rho", &DensityModel::rho)
        .def("log_rho", &DensityModel::log_rho)
        .def("grad_log_rho", &DensityModel::grad_log_rho)
        .def("log_rho_second", &DensityModel::log_rho_second)
        .def("V", &DensityModel::V)
        .def("minus_AV_over_V", &DensityModel::minus_AV_over_V)
        .def("lyapunov_constant", &DensityModel::lyapunov_constant)
        .def("hessian_logrho_bound", &DensityModel::hessian_logrho_bound)
        .def("schrodinger_potential", &DensityModel::schrodinger_potential)
        .def("family_name", &DensityModel::family_name);

    py::class_<Grid1D>(m, "Grid1D")
        .def_static("build", &Grid1D::build, py::arg("L"), py::arg("n"))
        .def_readonly("L", &Grid1D::L)
        .def_readonly("n", &Grid1D::n)
        .def_readonly("h", &Grid1D::h)
        .def_readonly("nodes", &Grid1D::nodes);

    py::class_<DiscreteOperator>(m, "DiscreteOperator")
        .def_readonly("grid", &DiscreteOperator::grid)
        .def_readonly("diag", &DiscreteOperator::diag)
        .def_readonly("sub", &DiscreteOperator::sub)
        .def_readonly("weights", &DiscreteOperator::weights)
        .def("apply", &DiscreteOperator::apply)
        .def("apply_sym", &DiscreteOperator::apply_sym);

    m.def("assemble_divergence_form", &assemble_divergence_form, py::arg("model"),
          py::arg("grid"), py::arg("bc") = Boundary::Neumann);
    m.def("assemble_schrodinger", &assemble_schrodinger);
    m.def("weighted_inner", &weighted_inner);
    m.def("weighted_norm2", &weighted_norm2);

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
        .def_readonly("weights", &SpectralDecomposition::weights)
        .def("n", &SpectralDecomposition::n)
        .def("phi", &SpectralDecomposition::phi)
        .def("coefficients", &SpectralDecomposition::coefficients);

    m.def("eigendecompose", &eigendecompose);
    m.def("apply_function", &apply_function);
    m.def("quadratic_form", &quadratic_form);
    m.def("fractional_symbol", &fractional_symbol);

    py::class_<KernelMatrix>(m, "KernelMatrix")
        .def_readonly("t", &KernelMatrix::t)
        .def_readonly("alpha", &KernelMatrix::alpha)
        .def_readonly("n", &KernelMatrix::n)
        .def_readonly("values", &KernelMatrix::values)
        .def_readonly("min_entry", &KernelMatrix::min_entry)
        .def("at", &KernelMatrix::at);

    m.def("kernel", &kernel);
    m.def("kernel_diagonal", &kernel_diagonal);
    m.def("matrix_exponential_oracle", &matrix_exponential_oracle);

    py::class_<QuadratureRule>(m, "QuadratureRule")
        .def_readonly("nodes", &QuadratureRule::nodes)
        .def_readonly("weights", &QuadratureRule::weights)
        .def("integrate_one_over_one_plus", &QuadratureRule::integrate_one_over_one_plus);

    m.def("balakrishnan_rule", &balakrishnan_rule);
    m.def("balakrishnan_scalar", &balakrishnan_scalar);
    m.def("balakrishnan_apply", &balakrishnan_apply);

    py::class_<SubordinationMeasure>(m, "SubordinationMeasure")
        .def_readonly("t", &SubordinationMeasure::t)
        .def_readonly("alpha", &SubordinationMeasure::alpha)
        .def_readonly("nodes", &SubordinationMeasure::nodes)
        .def_readonly("weights", &SubordinationMeasure::weights)
        .def_readonly("identity_error", &SubordinationMeasure::identity_error)
        .def("transform", &SubordinationMeasure::transform)
        .def("mass", &SubordinationMeasure::mass);

    m.def("subordination_measure", &subordination_measure);
    m.def("subordinate_semigroup", &subordinate_semigroup);

    py::class_<NashRate>(m, "NashRate")
        .def(py::init([](int d, double C) {
                 return NashRate{d, C};
             }),
             py::arg("d") = 1, py::arg("C") = 1.0)
        .def_readonly("d", &NashRate::d)
        .def_readonly("C", &NashRate::C)
        .def("B", &NashRate::B);

    py::class_<GammaCertificate>(m, "GammaCertificate")
        .def_readonly("alpha", &GammaCertificate::alpha)
        .def_readonly("epsilon", &GammaCertificate::epsilon)
        .def_readonly("n_steps", &GammaCertificate::n_steps)
        .def_readonly("a_n", &GammaCertificate::a_n)
        .def_readonly("b_n", &GammaCertificate::b_n)
        .def_readonly("alpha_n", &GammaCertificate::alpha_n)
        .def_readonly("gamma", &GammaCertificate::gamma);

    m.def("gamma_certificate", &gamma_certificate);
    m.def("nash_gap", &nash_gap);
    m.def("fractional_nash_gap", &fractional_nash_gap);
    m.def("alpha_ge1_gap", &alpha_ge1_gap);

    py::class_<ScalarSplit>(m, "ScalarSplit")
        .def_readonly("lhs", &ScalarSplit::lhs)
        .def_readonly("rhs", &ScalarSplit::rhs)
        .def_readonly("ok", &ScalarSplit::ok);
    m.def("scalar_power_split", &scalar_power_split);

    py::class_<JensenResult>(m, "JensenResult")
        .def_readonly("lhs", &JensenResult::lhs)
        .def_readonly("rhs", &JensenResult::rhs)
        .def_readonly("ok", &JensenResult::ok);
    m.def("jensen_check", &jensen_check);

    py::class_<Probe>(m, "Probe")
        .def_readonly("id", &Probe::id)
        .def_readonly("f", &Probe::f);
    m.def("probe_family", &probe_family);
    m.def("estimate_nash_constant", &estimate_nash_constant);

    py::class_<RateFunctions>(m, "RateFunctions")
        .def(py::init([](double alpha, double gamma, int d, double C, double M, bool ge1) {
                 RateFunctions r;
                 r.alpha = alpha;
                 r.gamma = gamma;
                 r.d = d;
                 r.C = C;
                 r.M = M;
                 r.ge1 = ge1;
                 return r;
             }),
             py::arg("alpha"), py::arg("gamma") = 1.0, py::arg("d") = 1, py::arg("C") = 1.0,
             py::arg("M") = 0.0, py::arg("ge1") = false)
        .def("coeff_U", &RateFunctions::coeff_U)
        .def("U", &RateFunctions::U)
        .def("K", &RateFunctions::K);

    m.def("rate_U", &rate_U);
    m.def("rate_K", &rate_K);
    m.def("rate_U_quadrature", &rate_U_quadrature);
    m.def("bound_ratio", &bound_ratio);

    py::class_<ExponentFit>(m, "ExponentFit")
        .def_readonly("slope", &ExponentFit::slope)
        .def_readonly("C_fit", &ExponentFit::C_fit);
    m.def("fit_exponent", &fit_exponent);
    m.def("c_alpha_estimate", &c_alpha_estimate);
    m.def("bound_ratio_alpha_ge1", &bound_ratio_alpha_ge1);
    m.def("schrodinger_kernel", &schrodinger_kernel);

    py::class_<RunConfig>(m, "RunConfig")
        .def_static("defaults", &RunConfig::defaults)
        .def_readwrite("L", &RunConfig::L)
        .def_readwrite("n", &RunConfig::n)
        .def_readwrite("model", &RunConfig::model)
        .def_readwrite("bc", &RunConfig::bc)
        .def_readwrite("alpha_list", &RunConfig::alpha_list)
        .def_readwrite("t_list", &RunConfig::t_list)
        .def_readwrite("epsilon", &RunConfig::epsilon)
        .def_readwrite("interior_margin", &RunConfig::interior_margin)
        .def_readwrite("output_dir", &RunConfig::output_dir)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("grid_overridden", &RunConfig::grid_overridden)
        .def("digest", &RunConfig::digest);

    m.def("load_config_file", &load_config_file);

    py::class_<Metric>(m, "Metric")
        .def_readonly("name", &Metric::name)
        .def_readonly("value", &Metric::value)
        .def_readonly("tolerance", &Metric::tolerance)
        .def_readonly("reference", &Metric::reference)
        .def_readonly("worst_input", &Metric::worst_input)
        .def("ok", &Metric::ok);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("scenario", &VerificationReport::scenario)
        .def_readonly("pass_", &VerificationReport::pass)
        .def_readonly("metrics", &VerificationReport::metrics)
        .def_readonly("config_digest", &VerificationReport::config_digest)
        .def_readonly("error", &VerificationReport::error);

    m.def("scenario_names", &scenario_names);
    m.def("run_scenario", &run_scenario);
    m.def("run_all", &run_all);
}
