#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "critsolve/analytic.hpp"
#include "critsolve/cn.hpp"
#include "critsolve/coupling.hpp"
#include "critsolve/elliptic.hpp"
#include "critsolve/errors.hpp"
#include "critsolve/model.hpp"

namespace py = pybind11;
using namespace critsolve;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Criticality eigenvalue workbench for the normalized coupled "
              "flux/enthalpy problem";

    py::register_exception<InfeasibleLambda>(m, "InfeasibleLambdaError",
                                             PyExc_ValueError);
    py::register_exception<NearDegenerate>(m, "NearDegenerateError",
                                           PyExc_ArithmeticError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::enum_<SigmaKind>(m, "SigmaKind")
        .value("CONSTANT", SigmaKind::Constant)
        .value("AFFINE", SigmaKind::Affine)
        .value("QUADRATIC", SigmaKind::Quadratic)
        .value("PIECEWISE_AFFINE", SigmaKind::PiecewiseAffine)
        .value("SEMI_ANALYTIC_QUADRATIC", SigmaKind::SemiAnalyticQuadratic)
        .value("SEMI_ANALYTIC_PIECEWISE", SigmaKind::SemiAnalyticPiecewise);

    py::enum_<PsiCase>(m, "PsiCase")
        .value("QUADRATIC_CONSTANT", PsiCase::QuadraticConstant)
        .value("CUBIC_AFFINE", PsiCase::CubicAffine)
        .value("QUARTIC_OPPOSITE_SIGNS", PsiCase::QuarticOppositeSigns)
        .value("QUARTIC_COMPLEX_SIGMA_EQ1", PsiCase::QuarticComplexPairSigmaEq1)
        .value("QUARTIC_COMPLEX_SIGMA_LT1", PsiCase::QuarticComplexPairSigmaLt1)
        .value("QUARTIC_COMPLEX_SIGMA_GT1", PsiCase::QuarticComplexPairSigmaGt1)
        .value("QUARTIC_SAME_SIGN_GT2", PsiCase::QuarticSameSignGt2)
        .value("QUARTIC_SAME_SIGN_LT0", PsiCase::QuarticSameSignLt0)
        .value("PIECEWISE_CUBIC_PAIR", PsiCase::PiecewiseCubicPair)
        .value("QUADRATURE_FALLBACK", PsiCase::QuadratureFallback);

    py::class_<SigmaSamples>(m, "SigmaSamples")
        .def_readonly("sigma0", &SigmaSamples::sigma0)
        .def_readonly("sigma_half", &SigmaSamples::sigma_half)
        .def_readonly("sigma1", &SigmaSamples::sigma1)
        .def("__repr__", [](const SigmaSamples& s) {
            return "SigmaSamples(" + std::to_string(s.sigma0) + ", " +
                   std::to_string(s.sigma_half) + ", " +
                   std::to_string(s.sigma1) + ")";
        });

    py::class_<SigmaModel>(m, "SigmaModel")
        .def_readonly("kind", &SigmaModel::kind)
        .def_readonly("samples", &SigmaModel::samples)
        .def_readonly("mu", &SigmaModel::mu)
        .def_readonly("alpha", &SigmaModel::alpha)
        .def_readonly("delta", &SigmaModel::delta)
        .def_readonly("beta", &SigmaModel::beta);

    py::class_<HalfCubicFactors> half(m, "HalfCubicFactors");
    py::enum_<HalfCubicFactors::Kind>(half, "Kind")
        .value("LINEAR", HalfCubicFactors::Kind::Linear)
        .value("REAL_STRADDLE", HalfCubicFactors::Kind::RealStraddle)
        .value("COMPLEX_PAIR", HalfCubicFactors::Kind::ComplexPair)
        .value("REAL_POSITIVE_PAIR", HalfCubicFactors::Kind::RealPositivePair)
        .value("REAL_NEGATIVE_PAIR", HalfCubicFactors::Kind::RealNegativePair);
    half.def_readonly("kind", &HalfCubicFactors::kind)
        .def_readonly("a0", &HalfCubicFactors::a0)
        .def_readonly("xi", &HalfCubicFactors::xi)
        .def_readonly("b0", &HalfCubicFactors::b0)
        .def_readonly("r_minus", &HalfCubicFactors::r_minus)
        .def_readonly("r_plus", &HalfCubicFactors::r_plus)
        .def_readonly("q_linear", &HalfCubicFactors::q_linear)
        .def_readonly("q_const", &HalfCubicFactors::q_const);

    py::class_<PsiFactorization>(m, "PsiFactorization")
        .def_readonly("case_tag", &PsiFactorization::case_tag)
        .def_readonly("leading", &PsiFactorization::leading)
        .def_readonly("p", &PsiFactorization::p)
        .def_readonly("g", &PsiFactorization::g)
        .def_readonly("sum_sigma", &PsiFactorization::sum_sigma)
        .def_readonly("prod_pi", &PsiFactorization::prod_pi)
        .def_readonly("discriminant", &PsiFactorization::discriminant)
        .def_readonly("left", &PsiFactorization::left)
        .def_readonly("right", &PsiFactorization::right);

    py::class_<HomographicMap>(m, "HomographicMap")
        .def_readonly("a", &HomographicMap::a)
        .def_readonly("b", &HomographicMap::b)
        .def_readonly("c", &HomographicMap::c)
        .def_readonly("d", &HomographicMap::d)
        .def_readonly("A", &HomographicMap::A)
        .def_readonly("B", &HomographicMap::B)
        .def_readonly("m", &HomographicMap::m);

    py::class_<ProfilePoint>(m, "ProfilePoint")
        .def_readonly("z", &ProfilePoint::z)
        .def_readonly("h", &ProfilePoint::h)
        .def_readonly("phi", &ProfilePoint::phi);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("lambda_", &SolveResult::lambda)
        .def_readonly("keff", &SolveResult::keff)
        .def_readonly("case_tag", &SolveResult::case_tag)
        .def_readonly("used_quadrature_fallback",
                      &SolveResult::used_quadrature_fallback)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("residual", &SolveResult::residual)
        .def_readonly("profile", &SolveResult::profile);

    py::class_<DiscreteSolution>(m, "DiscreteSolution")
        .def_readonly("n", &DiscreteSolution::n)
        .def_readonly("lambda_n", &DiscreteSolution::lambda_n)
        .def_readonly("h_nodes", &DiscreteSolution::h_nodes)
        .def_readonly("z_nodes", &DiscreteSolution::z_nodes)
        .def_readonly("phi_nodes", &DiscreteSolution::phi_nodes)
        .def_readonly("residual", &DiscreteSolution::residual)
        .def_readonly("iterations", &DiscreteSolution::iterations);

    py::class_<ConvergencePoint>(m, "ConvergencePoint")
        .def_readonly("n", &ConvergencePoint::n)
        .def_readonly("error", &ConvergencePoint::error)
        .def_readonly("order", &ConvergencePoint::order);

    py::class_<GeneralizedEigenResult>(m, "GeneralizedEigenResult")
        .def_readonly("lambda_", &GeneralizedEigenResult::lambda)
        .def_readonly("phi", &GeneralizedEigenResult::phi)
        .def_readonly("iterations", &GeneralizedEigenResult::iterations);

    py::class_<CouplingState>(m, "CouplingState")
        .def_readonly("grid_m", &CouplingState::grid_m)
        .def_readonly("z_nodes", &CouplingState::z_nodes)
        .def_readonly("h_field", &CouplingState::h_field)
        .def_readonly("phi_field", &CouplingState::phi_field)
        .def_readonly("lambda_seq", &CouplingState::lambda_seq)
        .def_readonly("h_delta_seq", &CouplingState::h_delta_seq)
        .def_readonly("psi_norm_seq", &CouplingState::psi_norm_seq)
        .def_readonly("converged", &CouplingState::converged);

    m.def("make_samples", &make_samples, py::arg("sigma0"),
          py::arg("sigma_half"), py::arg("sigma1"));
    m.def("build_model", &build_model, py::arg("samples"), py::arg("kind"));
    m.def("sigma_eval", &sigma_eval, py::arg("model"), py::arg("h"));
    m.def("v_eval", &v_eval, py::arg("model"), py::arg("h"));
    m.def("v_prime", &v_prime, py::arg("model"), py::arg("h"));
    m.def("psi_eval", &psi_eval, py::arg("model"), py::arg("lambda_"),
          py::arg("h"));
    m.def("classify_psi", &classify_psi, py::arg("model"), py::arg("lambda_"));
    m.def("psi_from_factorization", &psi_from_factorization, py::arg("fact"),
          py::arg("h"));
    m.def("lambda_lower_bound", &lambda_lower_bound, py::arg("model"));

    m.def("ellik_incomplete", &ellik_incomplete, py::arg("phi"), py::arg("m"));
    m.def("ellik_complete", &ellik_complete, py::arg("m"));

    m.def("build_homographic_map", &build_homographic_map, py::arg("fact"));
    m.def("integral_I", &integral_I, py::arg("model"), py::arg("lambda_"));
    m.def("integral_I_quadrature", &integral_I_quadrature, py::arg("model"),
          py::arg("lambda_"), py::arg("rel_tol") = 1e-10);
    m.def("solve_lambda", &solve_lambda, py::arg("model"),
          py::arg("tol") = 1e-12, py::arg("profile_points") = 201);
    m.def("reconstruct_profiles", &reconstruct_profiles, py::arg("model"),
          py::arg("lambda_"), py::arg("n_points"));

    m.def("build_mesh", &build_mesh, py::arg("n"));
    m.def(
        "discrete_sum",
        [](const SigmaModel& model, double lambda,
           const std::vector<double>& mesh) {
            return discrete_sum(model, lambda, mesh);
        },
        py::arg("model"), py::arg("lambda_"), py::arg("mesh"));
    m.def("solve_lambda_discrete", &solve_lambda_discrete, py::arg("model"),
          py::arg("n"), py::arg("tol") = 1e-12);
    m.def(
        "convergence_study",
        [](const SigmaModel& model, const std::vector<int>& n_list,
           double lambda_ref) {
            return convergence_study(model, n_list, lambda_ref);
        },
        py::arg("model"), py::arg("n_list"), py::arg("lambda_ref"));

    m.def(
        "smallest_generalized_eigen",
        [](const std::vector<double>& sigma_field, int grid_m) {
            return smallest_generalized_eigen(sigma_field, grid_m);
        },
        py::arg("sigma_field"), py::arg("grid_m"));
    m.def("coupling_iterate", &coupling_iterate, py::arg("model"),
          py::arg("grid_m"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 200);
}
