#include <cmath>

#include <doctest.h>

#include "critsolve/analytic.hpp"
#include "critsolve/cn.hpp"
#include "critsolve/errors.hpp"

using namespace critsolve;

namespace {

SigmaModel ref_model(SigmaKind kind) {
    return build_model(make_samples(8.0, 6.0, 3.0), kind);
}

} // namespace

TEST_CASE("graded mesh") {
    CHECK_THROWS_AS(build_mesh(1), MeshTooSmall);
    const auto m2 = build_mesh(2);
    REQUIRE(m2.size() == 3);
    CHECK(m2[0] == 0.0);
    CHECK(m2[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m2[2] == 1.0);

    const auto m4 = build_mesh(4);
    CHECK(m4[1] == doctest::Approx(0.14644660940672624).epsilon(1e-14));

    const auto m64 = build_mesh(64);
    CHECK(m64.front() == 0.0);
    CHECK(m64.back() == 1.0);
    for (int j = 1; j < 64; ++j) {
        CHECK(m64[j] > m64[j - 1]);
        CHECK(m64[64 - j] == doctest::Approx(1.0 - m64[j]).epsilon(1e-14));
    }
}

TEST_CASE("discrete sum near the exact integral") {
    const SigmaModel cst = ref_model(SigmaKind::Constant);
    const double lambda = (1.0 + M_PI * M_PI) / cst.mu;
    const auto mesh = build_mesh(64);
    CHECK(std::abs(discrete_sum(cst, lambda, mesh) - 1.0) <= 1e-3);

    const SigmaModel quad = ref_model(SigmaKind::Quadratic);
    const auto mesh1024 = build_mesh(1024);
    CHECK(std::abs(discrete_sum(quad, 1.86593, mesh1024) - 1.0) <= 1e-5);
}

TEST_CASE("discrete sum decreases monotonically and drains to zero") {
    const SigmaModel m = ref_model(SigmaKind::PiecewiseAffine);
    const auto mesh = build_mesh(128);
    double prev = std::numeric_limits<double>::infinity();
    double lambda = 0.25;
    for (int i = 0; i < 20; ++i) {
        const double s = discrete_sum(m, lambda, mesh);
        CHECK(s < prev);
        prev = s;
        lambda *= 1.8;
    }
    CHECK(prev < 0.02);  // far ladder end

    CHECK_THROWS_AS(discrete_sum(m, 0.05, mesh), InfeasibleLambda);
}

TEST_CASE("two-cell solve has the hand-computable eigenvalue") {
    // S(lambda) = 2 / sqrt(psi(1/2)) and psi(1/2) = (xi-1)/4, so S = 1 at
    // xi = 17
    const SigmaModel cst = ref_model(SigmaKind::Constant);
    const DiscreteSolution sol = solve_lambda_discrete(cst, 2, 1e-14);
    CHECK(sol.lambda_n == doctest::Approx(17.0 / cst.mu).epsilon(1e-12));
    CHECK(sol.residual <= 1e-14);
}

TEST_CASE("published eigenvalues at n = 512") {
    CHECK(std::abs(solve_lambda_discrete(ref_model(SigmaKind::Constant), 512)
                       .lambda_n -
                   1.89036) <= 5e-4);
    CHECK(std::abs(
              solve_lambda_discrete(ref_model(SigmaKind::PiecewiseAffine), 512)
                  .lambda_n -
              1.89454) <= 5e-4);
}

TEST_CASE("solution fields") {
    const SigmaModel m = ref_model(SigmaKind::Quadratic);
    const DiscreteSolution sol = solve_lambda_discrete(m, 128, 1e-12);
    REQUIRE(sol.h_nodes.size() == 129);
    CHECK(sol.phi_nodes.front() == 0.0);
    CHECK(sol.phi_nodes.back() == 0.0);
    CHECK(sol.z_nodes.front() == 0.0);
    CHECK(sol.z_nodes.back() == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t j = 1; j < sol.z_nodes.size(); ++j) {
        CHECK(sol.z_nodes[j] > sol.z_nodes[j - 1]);
    }
    for (std::size_t j = 1; j + 1 < sol.phi_nodes.size(); ++j) {
        CHECK(sol.phi_nodes[j] > 0.0);
    }
}

TEST_CASE("second-order convergence to the closed-form eigenvalue") {
    const int meshes[] = {40, 80, 160, 320};
    for (SigmaKind kind : {SigmaKind::Constant, SigmaKind::Quadratic}) {
        const SigmaModel m = ref_model(kind);
        const double lambda_ref = solve_lambda(m, 1e-13, 0).lambda;
        const auto study = convergence_study(m, meshes, lambda_ref);
        REQUIRE(study.size() == 4);
        CHECK(!study[0].order.has_value());
        for (std::size_t i = 1; i < study.size(); ++i) {
            REQUIRE(study[i].order.has_value());
            INFO("kind = " << to_string(kind) << " n = " << study[i].n);
            CHECK(*study[i].order >= 1.8);
            CHECK(*study[i].order <= 2.2);
        }
    }

    // repeated mesh size leaves the order undefined
    const int repeated[] = {64, 64};
    const auto study = convergence_study(ref_model(SigmaKind::Constant),
                                         repeated, 1.8903659827981445);
    CHECK(!study[1].order.has_value());
}

TEST_CASE("mesh symmetry for symmetric samples") {
    const SigmaModel m =
        build_model(make_samples(8.0, 5.0, 8.0), SigmaKind::Quadratic);
    const DiscreteSolution sol = solve_lambda_discrete(m, 256, 1e-12);
    const std::size_t n = sol.h_nodes.size() - 1;
    for (std::size_t j = 0; j <= n; ++j) {
        CHECK(sol.z_nodes[j] + sol.z_nodes[n - j] ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sol.phi_nodes[j] ==
              doctest::Approx(sol.phi_nodes[n - j]).epsilon(1e-12));
    }
}
