#pragma once

#include <vector>

#include "nkl/models.hpp"

namespace nkl {

enum class Boundary { Neumann, Dirichlet };

struct Grid1D {
    double L = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;

    static Grid1D build(double L, int n);
};

// Symmetric tridiagonal approximation of the generator, stored in the
// symmetrized coordinates S = D^{1/2} A_h D^{-1/2}, D = diag(weights).
struct DiscreteOperator {
    Grid1D grid;
    Boundary bc = Boundary::Neumann;
    std::vector<double> diag;     // n entries of S
    std::vector<double> sub;      // n-1 entries of S
    std::vector<double> weights;  // discrete measure w_i

    std::vector<double> apply_sym(const std::vector<double>& u) const;  // S u
    std::vector<double> apply(const std::vector<double>& f) const;      // A_h f
};

// Divergence-form assembly from the Dirichlet energy with midpoint rho and
// trapezoidal (half-endpoint) measure weights.
DiscreteOperator assemble_divergence_form(const DensityModel& model, const Grid1D& grid,
                                          Boundary bc = Boundary::Neumann);

// Ground-state transform operator B = -d^2/dx^2 + q on flat weights,
// Dirichlet ends via ghost nodes.
DiscreteOperator assemble_schrodinger(const DensityModel& model, const Grid1D& grid);

double weighted_inner(const std::vector<double>& f, const std::vector<double>& g,
                      const DiscreteOperator& op);
double weighted_norm2(const std::vector<double>& f, const DiscreteOperator& op);

}  // namespace nkl
