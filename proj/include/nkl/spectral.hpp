#pragma once

#include <functional>
#include <vector>

#include "nkl/discretization.hpp"

namespace nkl {

// Full spectrum of S with mu-orthonormal eigenfunctions
// phi_k(x_i) = psi[i + k n]/sqrt(w_i); psi columns are the orthonormal
// eigenvectors of the symmetrized matrix.
struct SpectralDecomposition {
    Grid1D grid;
    Boundary bc = Boundary::Neumann;
    std::vector<double> eigenvalues;  // ascending, as computed
    std::vector<double> psi;          // n*n, column-major
    std::vector<double> weights;
    std::vector<double> sqrt_w;

    int n() const { return grid.n; }
    double phi(int k, int i) const { return psi[i + static_cast<std::size_t>(k) * grid.n] / sqrt_w[i]; }
    // Spectral coefficients <f, phi_k>_mu for all k.
    std::vector<double> coefficients(const std::vector<double>& f) const;
};

SpectralDecomposition eigendecompose(const DiscreteOperator& op);

using ScalarFn = std::function<double(double)>;

std::vector<double> apply_function(const SpectralDecomposition& dec, const ScalarFn& g,
                                   const std::vector<double>& f);
double quadratic_form(const SpectralDecomposition& dec, const ScalarFn& g,
                      const std::vector<double>& f);

// Eigenvalue clamped at zero before the fractional power; keeps the
// functional calculus real for roundoff-negative bottom eigenvalues.
double fractional_symbol(double lambda, double t, double alpha);

struct KernelMatrix {
    double t = 0.0;
    double alpha = 1.0;
    int n = 0;
    std::vector<double> values;  // n*n, symmetric
    double min_entry = 0.0;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

// values[i][j] = sum_k exp(-t max(lambda_k,0)^alpha) phi_k(x_i) phi_k(x_j)
KernelMatrix kernel(const SpectralDecomposition& dec, double t, double alpha);

// Diagonal values p(t, x_i, x_i) without forming the full matrix.
std::vector<double> kernel_diagonal(const SpectralDecomposition& dec, double t, double alpha);

// Dense e^{-tS} by scaling and squaring, independent of the eigensolver.
// Row-major n*n output; n capped at 400.
std::vector<double> matrix_exponential_oracle(const DiscreteOperator& op, double t);

}  // namespace nkl
