#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nkl/common.hpp"
#include "nkl/discretization.hpp"
#include "nkl/models.hpp"
#include "nkl/spectral.hpp"

using namespace nkl;

namespace {

DiscreteOperator handmade_operator(std::vector<double> diag, std::vector<double> sub,
                                   std::vector<double> weights, Boundary bc) {
    DiscreteOperator op;
    op.grid = Grid1D::build(1.0, static_cast<int>(diag.size()));
    op.bc = bc;
    op.diag = std::move(diag);
    op.sub = std::move(sub);
    op.weights = std::move(weights);
    return op;
}

}  // namespace

TEST_CASE("three-node eigenvalues by hand") {
    const auto op = handmade_operator({1.0, 2.0, 1.0}, {-1.0, -1.0}, {1.0, 1.0, 1.0},
                                      Boundary::Neumann);
    const auto dec = eigendecompose(op);
    REQUIRE(dec.eigenvalues.size() == 3);
    CHECK(std::fabs(dec.eigenvalues[0]) <= 1e-12);
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("dirichlet laplacian eigenvalues match the toeplitz formula") {
    const int n = 10;
    const double h = 0.5;
    const auto op = handmade_operator(std::vector<double>(n, 2.0 / (h * h)),
                                      std::vector<double>(n - 1, -1.0 / (h * h)),
                                      std::vector<double>(n, h), Boundary::Dirichlet);
    const auto dec = eigendecompose(op);
    for (int k = 1; k <= n; ++k) {
        const double want = 2.0 / (h * h) * (1.0 - std::cos(k * M_PI / (n + 1)));
        CHECK(dec.eigenvalues[k - 1] == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("eigenpairs are residual-accurate and mu-orthonormal") {
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto g = Grid1D::build(8.0, 101);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);

    CHECK(dec.eigenvalues[0] >= -1e-10);
    CHECK(dec.eigenvalues[0] <= 1e-10);
    CHECK(std::is_sorted(dec.eigenvalues.begin(), dec.eigenvalues.end()));

    const double lam_scale = std::max(1.0, std::fabs(dec.eigenvalues.back()));
    for (int k = 0; k < 101; ++k) {
        std::vector<double> psi_k(101);
        for (int i = 0; i < 101; ++i) psi_k[i] = dec.psi[i + static_cast<std::size_t>(k) * 101];
        const auto spsi = op.apply_sym(psi_k);
        double res = 0.0;
        for (int i = 0; i < 101; ++i) {
            const double r = spsi[i] - dec.eigenvalues[k] * psi_k[i];
            res += r * r;
        }
        CHECK(std::sqrt(res) <= 1e-8 * lam_scale);
    }

    for (int k : {0, 3, 50}) {
        std::vector<double> phi_k(101);
        for (int i = 0; i < 101; ++i) phi_k[i] = dec.phi(k, i);
        const auto coef = dec.coefficients(phi_k);
        for (int j = 0; j < 101; ++j) {
            const double want = (j == k) ? 1.0 : 0.0;
            CHECK(std::fabs(coef[j] - want) <= 1e-10);
        }
    }

    // Bottom eigenfunction of the conservative operator is constant in x.
    const double c0 = dec.phi(0, 0);
    for (int i = 0; i < 101; ++i) CHECK(dec.phi(0, i) == doctest::Approx(c0).epsilon(1e-8));
}

TEST_CASE("apply_function reproduces the operator and the quadratic form") {
    const auto m = DensityModel::exp_smooth(1.0, 1);
    const auto g = Grid1D::build(6.0, 81);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);
    SplitMix64 rng(3);
    std::vector<double> f(81);
    for (auto& x : f) x = 2.0 * rng.uniform01() - 1.0;

    const auto direct = op.apply(f);
    const auto viaspec = apply_function(dec, [](double lam) { return lam; }, f);
    double scale = 0.0;
    for (double v : direct) scale = std::max(scale, std::fabs(v));
    for (int i = 0; i < 81; ++i) CHECK(std::fabs(direct[i] - viaspec[i]) <= 1e-10 * scale);

    const double qf = quadratic_form(dec, [](double lam) { return lam; }, f);
    CHECK(qf == doctest::Approx(weighted_inner(op.apply(f), f, op)).epsilon(1e-10));

    const auto ident = apply_function(dec, [](double lam) { return 1.0 + 0.0 * lam; }, f);
    for (int i = 0; i < 81; ++i) CHECK(ident[i] == doctest::Approx(f[i]).epsilon(1e-9));
}

TEST_CASE("fractional symbol clamps roundoff-negative eigenvalues") {
    CHECK(fractional_symbol(-1e-12, 1.0, 0.5) == 1.0);
    CHECK(fractional_symbol(0.0, 2.0, 0.7) == 1.0);
    CHECK(fractional_symbol(4.0, 1.0, 0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(fractional_symbol(9.0, 0.5, 0.5) > fractional_symbol(16.0, 0.5, 0.5));
}

TEST_CASE("kernel matrix matches the rank-sum definition") {
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto g = Grid1D::build(5.0, 41);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);
    const double t = 0.2, alpha = 0.6;
    const auto kern = kernel(dec, t, alpha);
    REQUIRE(kern.n == 41);

    double scale = 0.0;
    for (double v : kern.values) scale = std::max(scale, std::fabs(v));
    double min_seen = kern.values[0];
    for (int i = 0; i < 41; ++i) {
        for (int j = 0; j < 41; ++j) {
            double want = 0.0;
            for (int k = 0; k < 41; ++k)
                want += fractional_symbol(dec.eigenvalues[k], t, alpha) * dec.phi(k, i) *
                        dec.phi(k, j);
            CHECK(std::fabs(kern.at(i, j) - want) <= 1e-11 * scale);
            CHECK(std::fabs(kern.at(i, j) - kern.at(j, i)) <= 1e-11 * scale);
            min_seen = std::min(min_seen, kern.at(i, j));
        }
    }
    CHECK(kern.min_entry == min_seen);

    const auto diag = kernel_diagonal(dec, t, alpha);
    for (int i = 0; i < 41; ++i)
        CHECK(diag[i] == doctest::Approx(kern.at(i, i)).epsilon(1e-11));

    CHECK_THROWS_AS(kernel(dec, 0.0, 0.5), UsageError);
    CHECK_THROWS_AS(kernel(dec, 1.0, -0.5), UsageError);
}

TEST_CASE("conservative kernel has unit mass and contracts the sup norm") {
    const auto m = DensityModel::exp_smooth(1.0, 1);
    const auto g = Grid1D::build(6.0, 81);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);
    for (double alpha : {0.5, 1.0}) {
        const auto kern = kernel(dec, 0.5, alpha);
        CHECK(kern.min_entry >= -1e-10);
        for (int i = 0; i < 81; ++i) {
            double mass = 0.0;
            for (int j = 0; j < 81; ++j) mass += kern.at(i, j) * op.weights[j];
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("kernel composition gives the semigroup law") {
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto g = Grid1D::build(5.0, 61);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);
    const auto p1 = kernel(dec, 0.4, 0.5);
    const auto p2 = kernel(dec, 0.6, 0.5);
    const auto p3 = kernel(dec, 1.0, 0.5);
    double worst = 0.0;
    for (int i = 0; i < 61; ++i) {
        for (int j = 0; j < 61; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 61; ++k) acc += p1.at(i, k) * op.weights[k] * p2.at(k, j);
            worst = std::max(worst, std::fabs(acc - p3.at(i, j)));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("dense exponential oracle agrees with the eigensolver route") {
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto g = Grid1D::build(8.0, 50);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);
    for (double t : {0.1, 1.0}) {
        const auto oracle = matrix_exponential_oracle(op, t);
        double frob = 0.0;
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                double want = 0.0;
                for (int k = 0; k < 50; ++k)
                    want += std::exp(-t * dec.eigenvalues[k]) *
                            dec.psi[i + static_cast<std::size_t>(k) * 50] *
                            dec.psi[j + static_cast<std::size_t>(k) * 50];
                const double diff = oracle[static_cast<std::size_t>(i) * 50 + j] - want;
                frob += diff * diff;
            }
        }
        CHECK(std::sqrt(frob) <= 1e-8);
    }
    CHECK_THROWS_AS(matrix_exponential_oracle(op, -1.0), UsageError);
}

TEST_CASE("pair supremum of the weighted kernel sits on the diagonal") {
    // The kernel matrix is a Gram matrix in the spectral coefficients for any
    // alpha, so the V-weighted sup over pairs equals the diagonal sup.
    const auto m = DensityModel::cauchy(2.0, 1);
    const auto g = Grid1D::build(5.0, 81);
    const auto op = assemble_divergence_form(m, g, Boundary::Neumann);
    const auto dec = eigendecompose(op);
    const auto kern = kernel(dec, 0.3, 1.5);
    std::vector<double> V(81);
    for (int i = 0; i < 81; ++i) V[i] = m.V(g.nodes[i]);
    double pair_sup = -1e300, diag_sup = -1e300;
    for (int i = 0; i < 81; ++i) {
        diag_sup = std::max(diag_sup, kern.at(i, i) / (V[i] * V[i]));
        for (int j = 0; j < 81; ++j)
            pair_sup = std::max(pair_sup, kern.at(i, j) / (V[i] * V[j]));
    }
    CHECK(pair_sup == doctest::Approx(diag_sup).epsilon(1e-12));
}
