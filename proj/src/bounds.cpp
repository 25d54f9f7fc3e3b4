#include "nkl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nkl/common.hpp"

namespace nkl {

double RateFunctions::coeff_U() const {
    if (ge1) return std::pow(2.0, alpha - 1.0) * std::pow(C, alpha) * d / (2.0 * alpha);
    return std::pow(C, alpha) * d / (2.0 * alpha * std::pow(gamma, 1.0 + 2.0 * alpha / d));
}

double RateFunctions::U(double x) const {
    if (!(x > 0.0)) throw UsageError("RateFunctions::U: argument must be positive");
    return coeff_U() * std::pow(x, -2.0 * alpha / d);
}

double RateFunctions::K(double x) const {
    if (!(x > 0.0)) throw UsageError("RateFunctions::K: argument must be positive");
    if (M > 0.0 && x >= U(M)) return std::sqrt(M);
    return std::pow(coeff_U(), d / (4.0 * alpha)) * std::pow(x, -d / (4.0 * alpha));
}

double rate_U(double x, double alpha, double gamma, int d) {
    RateFunctions r;
    r.alpha = alpha;
    r.gamma = gamma;
    r.d = d;
    r.ge1 = alpha >= 1.0;
    return r.U(x);
}

double rate_K(double x, double alpha, double gamma, int d) {
    RateFunctions r;
    r.alpha = alpha;
    r.gamma = gamma;
    r.d = d;
    r.ge1 = alpha >= 1.0;
    return r.K(x);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double rate_U_quadrature(double x, double alpha, double gamma, int d) {
    if (!(x > 0.0)) throw UsageError("rate_U_quadrature: argument must be positive");
    const bool ge1 = alpha >= 1.0;
    // Substituting u = x e^v turns the tail integral into one over v >= 0
    // with integrand decaying like e^{-2 alpha v / d}.
    std::function<double(double)> g;
    if (ge1) {
        g = [&](double v) {
            const double u = x * std::exp(v);
            return std::pow(2.0, alpha - 1.0) / std::pow(std::pow(u, 2.0 / d), alpha);
        };
    } else {
        g = [&](double v) {
            const double u = x * std::exp(v);
            return 1.0 / (gamma * std::pow(std::pow(gamma * u, 2.0 / d), alpha));
        };
    }
    const double decay = 2.0 * alpha / d;
    double total = 0.0;
    double v0 = 0.0;
    const double step = 4.0 / decay;
    for (int blk = 0; blk < 200; ++blk) {
        const double piece = integrate(g, v0, v0 + step, 1e-13 * std::max(1.0, total));
        total += piece;
        v0 += step;
        if (piece < 1e-14 * total) break;
    }
    return total;
}

namespace {

std::vector<int> interior_indices(const Grid1D& grid, double margin) {
    if (!(margin >= 0.0) || margin > 0.45)
        throw UsageError("interior margin must lie in [0, 0.45]");
    std::vector<int> idx;
    const double cut = (1.0 - margin) * grid.L;
    for (int i = 0; i < grid.n; ++i)
        if (std::fabs(grid.nodes[i]) <= cut) idx.push_back(i);
    if (idx.empty()) throw UsageError("bound_ratio: margin leaves no interior nodes");
    return idx;
}

}  // namespace

double bound_ratio(const Grid1D& grid, const KernelMatrix& kern, const std::vector<double>& V,
                   double c, double margin) {
    if (kern.n != grid.n) throw UsageError("bound_ratio: kernel size does not match grid");
    const auto idx = interior_indices(grid, margin);
    const double growth = std::exp(-std::pow(c, kern.alpha) * kern.t);
    double sup = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const int i = idx[a];
        for (std::size_t b = a; b < idx.size(); ++b) {
            const int j = idx[b];
            const double r = kern.at(i, j) * growth / (V[i] * V[j]);
            sup = std::max(sup, r);
        }
    }
    return sup;
}

ExponentFit fit_exponent(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size()) throw UsageError("fit_exponent: length mismatch");
    if (t.size() < 5) throw UsageError("fit_exponent: need at least 5 points");
    const std::size_t m = t.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(t[i] > 0.0) || !(y[i] > 0.0))
            throw UsageError("fit_exponent: data must be positive");
        const double lx = std::log(t[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    if (!(denom > 1e-12 * (m * sxx + sx * sx + 1.0)))
        throw UsageError("fit_exponent: degenerate abscissae");
    ExponentFit out;
    out.slope = (m * sxy - sx * sy) / denom;
    out.C_fit = std::exp((sy - out.slope * sx) / m);
    return out;
}

double c_alpha_estimate(const SpectralDecomposition& dec, const std::vector<double>& V,
                        double alpha, double margin) {
    const auto af = apply_function(
        dec, [alpha](double lam) { return std::pow(std::max(lam, 0.0), alpha); }, V);
    const auto idx = interior_indices(dec.grid, margin);
    double worst = 0.0;
    for (int i : idx) worst = std::max(worst, -af[i] / V[i]);
    return std::max(0.0, worst);
}

double bound_ratio_alpha_ge1(const Grid1D& grid, const KernelMatrix& kern,
                             const std::vector<double>& V, double c, double c_alpha,
                             double margin) {
    const double branch = std::max(c_alpha, std::pow(c, kern.alpha));
    if (kern.n != grid.n)
        throw UsageError("bound_ratio_alpha_ge1: kernel size does not match grid");
    const auto idx = interior_indices(grid, margin);
    const double growth = std::exp(-branch * kern.t);
    double sup = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const int i = idx[a];
        for (std::size_t b = a; b < idx.size(); ++b) {
            const int j = idx[b];
            sup = std::max(sup, kern.at(i, j) * growth / (V[i] * V[j]));
        }
    }
    return sup;
}

std::vector<double> schrodinger_kernel(const std::vector<double>& rho, const KernelMatrix& kern) {
    if (rho.size() != static_cast<std::size_t>(kern.n))
        throw UsageError("schrodinger_kernel: size mismatch");
    std::vector<double> sq(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (!(rho[i] > 0.0)) throw UsageError("schrodinger_kernel: density must be positive");
        sq[i] = std::sqrt(rho[i]);
    }
    std::vector<double> out(kern.values.size());
    const std::size_t n = static_cast<std::size_t>(kern.n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = sq[i] * sq[j] * kern.values[i * n + j];
    return out;
}

}  // namespace nkl
