#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <tuple>
#include <vector>

#include "nkl/common.hpp"
#include "nkl/models.hpp"

using nkl::DensityModel;

TEST_CASE("cauchy closed forms at hand-checked points") {
    const auto m = DensityModel::cauchy(2.0, 1);
    CHECK(m.rho(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.rho(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(m.V(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.grad_log_rho(0.0) == 0.0);
    CHECK(m.grad_log_rho(1.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(m.log_rho_second(0.0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(m.log_rho_second(1.0) == doctest::Approx(0.0));
    CHECK(m.minus_AV_over_V(0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.minus_AV_over_V(1.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(m.schrodinger_potential(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(m.schrodinger_potential(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cauchy potential matches rational closed form") {
    // q(x) = (beta (beta + 2 - d) x^2 - beta d) / (1 + x^2)^2, checked against
    // the generic assembly from the log-density derivatives.
    for (double beta : {1.5, 2.0, 3.0}) {
        const auto m = DensityModel::cauchy(beta, 1);
        for (double x : {0.0, 0.3, 1.0, 2.5, 7.0}) {
            const double s = 1.0 + x * x;
            const double want = (beta * (beta + 1.0) * x * x - beta) / (s * s);
            CHECK(m.schrodinger_potential(x) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("exp_smooth closed forms") {
    const auto m = DensityModel::exp_smooth(1.0, 1);
    CHECK(m.rho(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(m.grad_log_rho(1.0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m.log_rho_second(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(m.minus_AV_over_V(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.lyapunov_constant() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.hessian_logrho_bound() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exp_power and gauss closed forms") {
    const auto p = DensityModel::exp_power(2.0, 1, 1.0);
    CHECK(p.rho(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(p.log_rho_second(0.7) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(p.minus_AV_over_V(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.minus_AV_over_V(2.0) == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(p.schrodinger_potential(0.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(p.lyapunov_constant() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.hessian_logrho_bound() == 0.0);

    const auto g = DensityModel::gauss(1);
    CHECK(g.rho(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(g.minus_AV_over_V(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.minus_AV_over_V(2.0) == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(g.schrodinger_potential(0.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(g.lyapunov_constant() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.hessian_logrho_bound() == 0.0);
}

TEST_CASE("lyapunov constants per family") {
    CHECK(DensityModel::cauchy(3.0, 1).lyapunov_constant() == doctest::Approx(3.0));
    CHECK(DensityModel::cauchy(2.0, 1).lyapunov_constant() == doctest::Approx(2.0));
    CHECK(DensityModel::exp_smooth(0.5, 1).lyapunov_constant() == doctest::Approx(0.25));
    CHECK(DensityModel::exp_power(2.0, 1, 1.0).lyapunov_constant() == doctest::Approx(1.0));
    const double cut = DensityModel::exp_power_min_cut(3.0, 1);
    CHECK(cut == doctest::Approx(std::cbrt(4.0 / 3.0)).epsilon(1e-15));
    CHECK(DensityModel::exp_power(3.0, 1).lyapunov_constant() ==
          doctest::Approx(3.0 * cut).epsilon(1e-14));
}

TEST_CASE("drift bracket stays below the lyapunov constant on a fine grid") {
    std::vector<DensityModel> models = {
        DensityModel::cauchy(1.5, 1), DensityModel::cauchy(3.0, 1),
        DensityModel::exp_smooth(0.5, 1), DensityModel::exp_smooth(1.5, 1),
        DensityModel::exp_power(2.0, 1), DensityModel::exp_power(3.0, 1),
        DensityModel::gauss(1)};
    for (const auto& m : models) {
        const double c = m.lyapunov_constant();
        const double hb = m.hessian_logrho_bound();
        double worst = -1e300;
        double worst_hess = -1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double x = -20.0 + 40.0 * i / 4000.0;
            worst = std::max(worst, m.minus_AV_over_V(x));
            worst_hess = std::max(worst_hess, m.log_rho_second(x));
        }
        CAPTURE(m.family_name());
        CHECK(worst <= c + 1e-12);
        CHECK(worst_hess <= hb + 1e-12);
    }
}

TEST_CASE("decay diagnostics") {
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto rows = decay_condition_check(m, {1.0, 10.0});
    REQUIRE(rows.size() == 2);
    CHECK(std::get<0>(rows[1]) == 10.0);
    CHECK(std::get<1>(rows[1]) == doctest::Approx(1.0 / 101.0).epsilon(1e-14));
    CHECK(std::get<2>(rows[1]) == doctest::Approx(40.0 / 10201.0).epsilon(1e-14));
    CHECK_THROWS_AS(decay_condition_check(m, {2.0, 1.0}), nkl::UsageError);
}

TEST_CASE("inspect_point mirrors the model methods") {
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto r = inspect_point(m, 0.0);
    CHECK(r.x == 0.0);
    CHECK(r.rho == doctest::Approx(1.0));
    CHECK(r.minus_AV_over_V == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.schrodinger_q == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(r.V == doctest::Approx(1.0));
}

TEST_CASE("factories reject out-of-range parameters") {
    CHECK_THROWS_AS(DensityModel::cauchy(1.0, 1), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::cauchy(0.5, 1), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::cauchy(2.0, 0), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::exp_smooth(0.0, 1), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::exp_smooth(2.0, 1), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::exp_power(1.5, 1), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::exp_power(2.0, 1, 0.5), nkl::UsageError);
    CHECK_THROWS_AS(DensityModel::gauss(0), nkl::UsageError);
    CHECK(DensityModel::exp_power(2.0, 1).K_cut == doctest::Approx(1.0));
}

TEST_CASE("family names") {
    CHECK(DensityModel::cauchy(2.0, 1).family_name() == "cauchy");
    CHECK(DensityModel::exp_smooth(1.0, 1).family_name() == "exp_smooth");
    CHECK(DensityModel::exp_power(2.0, 1).family_name() == "exp_power");
    CHECK(DensityModel::gauss(1).family_name() == "gauss");
}
