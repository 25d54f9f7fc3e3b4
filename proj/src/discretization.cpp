#include "nkl/discretization.hpp"

#include <cmath>

#include "nkl/common.hpp"

namespace nkl {

Grid1D Grid1D::build(double L, int n) {
    if (!(L > 0.0)) throw UsageError("grid: L must be positive");
    if (n < 3) throw UsageError("grid: n must be at least 3");
    Grid1D g;
    g.L = L;
    g.n = n;
    g.h = 2.0 * L / (n - 1);
    g.nodes.resize(n);
    for (int i = 0; i < n; ++i) g.nodes[i] = -L + g.h * i;
    g.nodes.front() = -L;
    g.nodes.back() = L;
    return g;
}

DiscreteOperator assemble_divergence_form(const DensityModel& model, const Grid1D& grid,
                                          Boundary bc) {
    const int n = grid.n;
    const double h = grid.h;
    DiscreteOperator op;
    op.grid = grid;
    op.bc = bc;
    op.weights.resize(n);
    op.diag.assign(n, 0.0);
    op.sub.assign(n - 1, 0.0);

    std::vector<double> rho_mid(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        rho_mid[i] = model.rho(grid.nodes[i] + 0.5 * h);
        if (!std::isfinite(rho_mid[i])) throw UsageError("assemble: non-finite density value");
    }
    for (int i = 0; i < n; ++i) {
        const double r = model.rho(grid.nodes[i]);
        if (!std::isfinite(r) || r <= 0.0) throw UsageError("assemble: non-finite density value");
        op.weights[i] = r * h;
    }
    op.weights.front() *= 0.5;
    op.weights.back() *= 0.5;

    // Dirichlet energy: form_diag/form_sub is the matrix of
    // sum_i rho_{i+1/2} (f_{i+1}-f_i)(g_{i+1}-g_i)/h, plus boundary jump
    // terms to the pinned exterior value for Dirichlet ends.
    std::vector<double> form_diag(n, 0.0);
    for (int i = 0; i < n - 1; ++i) {
        form_diag[i] += rho_mid[i] / h;
        form_diag[i + 1] += rho_mid[i] / h;
        op.sub[i] = -rho_mid[i] / h;
    }
    if (bc == Boundary::Dirichlet) {
        form_diag.front() += model.rho(grid.nodes.front() - 0.5 * h) / h;
        form_diag.back() += model.rho(grid.nodes.back() + 0.5 * h) / h;
    }
    for (int i = 0; i < n; ++i) op.diag[i] = form_diag[i] / op.weights[i];
    for (int i = 0; i < n - 1; ++i)
        op.sub[i] /= std::sqrt(op.weights[i] * op.weights[i + 1]);
    return op;
}

DiscreteOperator assemble_schrodinger(const DensityModel& model, const Grid1D& grid) {
    const int n = grid.n;
    const double h = grid.h;
    DiscreteOperator op;
    op.grid = grid;
    op.bc = Boundary::Dirichlet;
    op.weights.assign(n, h);
    op.diag.resize(n);
    op.sub.assign(n - 1, -1.0 / (h * h));
    for (int i = 0; i < n; ++i) {
        const double q = model.schrodinger_potential(grid.nodes[i]);
        if (!std::isfinite(q)) throw UsageError("assemble: non-finite potential value");
        op.diag[i] = 2.0 / (h * h) + q;
    }
    return op;
}

std::vector<double> DiscreteOperator::apply_sym(const std::vector<double>& u) const {
    const int n = grid.n;
    if (static_cast<int>(u.size()) != n) throw UsageError("apply: length mismatch");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double v = diag[i] * u[i];
        if (i > 0) v += sub[i - 1] * u[i - 1];
        if (i < n - 1) v += sub[i] * u[i + 1];
        out[i] = v;
    }
    return out;
}

std::vector<double> DiscreteOperator::apply(const std::vector<double>& f) const {
    const int n = grid.n;
    if (static_cast<int>(f.size()) != n) throw UsageError("apply: length mismatch");
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = std::sqrt(weights[i]) * f[i];
    u = apply_sym(u);
    for (int i = 0; i < n; ++i) u[i] /= std::sqrt(weights[i]);
    return u;
}

double weighted_inner(const std::vector<double>& f, const std::vector<double>& g,
                      const DiscreteOperator& op) {
    if (f.size() != g.size() || f.size() != op.weights.size())
        throw UsageError("weighted_inner: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i] * op.weights[i];
    return s;
}

double weighted_norm2(const std::vector<double>& f, const DiscreteOperator& op) {
    return weighted_inner(f, f, op);
}

}  // namespace nkl
