#include "nkl/fractional.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nkl/common.hpp"

namespace nkl {

namespace {

constexpr double kPi = std::numbers::pi;

// Log-variable bounds and panel layout for the resolvent rule.
constexpr double kBalaU = 300.0;
constexpr double kBalaPanel = 5.0;

}  // namespace

double QuadratureRule::integrate_one_over_one_plus() const {
    double s = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) s += weights[q] * nodes[q] / (1.0 + nodes[q]);
    return s;
}

QuadratureRule balakrishnan_rule() {
    const int panels = static_cast<int>(2.0 * kBalaU / kBalaPanel);
    std::vector<double> edges(panels + 1);
    for (int k = 0; k <= panels; ++k) edges[k] = -kBalaU + kBalaPanel * k;
    std::vector<double> u, wu;
    composite_gl(edges, gl16(), u, wu);
    QuadratureRule rule;
    rule.kind = RuleKind::LogSubstitutedGL;
    rule.nodes.resize(u.size());
    rule.weights = wu;  // du-weights; node s = e^u carries ds = s du
    for (std::size_t q = 0; q < u.size(); ++q) rule.nodes[q] = std::exp(u[q]);
    return rule;
}

double balakrishnan_scalar(double lambda, double alpha, const QuadratureRule& rule) {
    if (!(lambda > 0.0)) throw UsageError("balakrishnan_scalar: lambda must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("balakrishnan_scalar: alpha must be in (0, 1)");
    if (rule.nodes.size() < 2)
        throw NumericalDiagnostic("balakrishnan_scalar: quadrature rule too narrow");
    // integrand s^{alpha-1} lambda/(s+lambda) ds  ->  e^{alpha u} lambda/(e^u+lambda) du
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s = rule.nodes[q];
        acc += rule.weights[q] * std::pow(s, alpha) * lambda / (s + lambda);
    }
    return std::sin(alpha * kPi) / kPi * acc;
}

std::vector<double> balakrishnan_apply(const DiscreteOperator& op, const std::vector<double>& f,
                                       double alpha, const QuadratureRule& rule) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("balakrishnan_apply: alpha must be in (0, 1)");
    const int n = op.grid.n;
    if (static_cast<int>(f.size()) != n) throw UsageError("balakrishnan_apply: length mismatch");

    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = std::sqrt(op.weights[i]) * f[i];
    const std::vector<double> Sg = op.apply_sym(g);

    // Two equivalent forms of the integrand s^{alpha-1} A(s+A)^{-1} g, picked
    // by scale: for small s solving against s*g keeps the near-kernel modes
    // bounded, for large s solving against A g keeps the residual bounded.
    std::vector<double> acc(n, 0.0);
    std::vector<double> d(n), dl(n - 1), du(n - 1), rhs(n);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s = rule.nodes[q];
        const double coeff = rule.weights[q] * std::pow(s, alpha);
        if (coeff == 0.0) continue;
        for (int i = 0; i < n; ++i) d[i] = op.diag[i] + s;
        for (int i = 0; i < n - 1; ++i) dl[i] = du[i] = op.sub[i];
        const bool small_s = s <= 1.0;
        if (small_s) {
            for (int i = 0; i < n; ++i) rhs[i] = s * g[i];
        } else {
            rhs = Sg;
        }
        lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(),
                                        rhs.data(), n);
        if (info != 0)
            throw NumericalDiagnostic("balakrishnan_apply: tridiagonal solve failed, info=" +
                                      std::to_string(info));
        if (small_s) {
            for (int i = 0; i < n; ++i) acc[i] += coeff * (g[i] - rhs[i]);
        } else {
            for (int i = 0; i < n; ++i) acc[i] += coeff * rhs[i];
        }
    }
    const double pref = std::sin(alpha * kPi) / kPi;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = pref * acc[i] / std::sqrt(op.weights[i]);
    return out;
}

double SubordinationMeasure::transform(double lambda) const {
    double s = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) s += weights[q] * std::exp(-nodes[q] * lambda);
    return s;
}

namespace {

// Integrand profile of the one-sided stable law in the angular representation:
// A(theta) = [sin(alpha theta)^alpha sin((1-alpha) theta)^{1-alpha} / sin(theta)]^{1/(1-alpha)}
// computed in logs for stability.
double log_profile(double theta, double alpha) {
    const double m = 1.0 / (1.0 - alpha);
    return m * (alpha * std::log(std::sin(alpha * theta)) +
                (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * theta)) -
                std::log(std::sin(theta)));
}

std::vector<double> theta_edges(double alpha) {
    const double m = 1.0 / (1.0 - alpha);
    const double ex = (1.0 - alpha) / alpha;
    const double lnr = std::min(std::log(2.0), 1.0 / (ex * m));
    std::vector<double> edges = {0.0, 0.5 * kPi};
    double dist = 0.5 * kPi;
    while (dist / kPi > 1e-9) {
        dist *= std::exp(-lnr);
        edges.push_back(kPi - dist);
    }
    edges.push_back(kPi);
    return edges;
}

SubordinationMeasure measure_general(double t, double alpha) {
    SubordinationMeasure m;
    m.t = t;
    m.alpha = alpha;
    const double tau = std::pow(t, 1.0 / alpha);
    const double ex = (1.0 - alpha) / alpha;

    std::vector<double> th, wth;
    composite_gl(theta_edges(alpha), gl8(), th, wth);

    const double v_lo = std::log(1e-8), v_hi = std::log(45.0);
    const double spacing = std::min(1.3, 2.8 / ex);
    const int panels = std::max(8, static_cast<int>(std::ceil((v_hi - v_lo) / spacing)));
    std::vector<double> vedges(panels + 1);
    for (int k = 0; k <= panels; ++k) vedges[k] = v_lo + (v_hi - v_lo) * k / panels;
    std::vector<double> v, wv;
    composite_gl(vedges, gl8(), v, wv);

    std::vector<double> lnA(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) lnA[i] = log_profile(th[i], alpha);
    std::vector<double> lnxi(v.size()), wxi(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double xi = std::exp(v[j]);
        lnxi[j] = v[j];
        wxi[j] = wv[j] * xi * std::exp(-xi);
    }

    m.nodes.reserve(th.size() * v.size());
    m.weights.reserve(th.size() * v.size());
    for (std::size_t i = 0; i < th.size(); ++i) {
        const double wt = wth[i] / kPi;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double lnS = std::min(std::log(tau) + ex * (lnA[i] - lnxi[j]), 700.0);
            m.nodes.push_back(std::exp(lnS));
            m.weights.push_back(wt * wxi[j]);
        }
    }
    return m;
}

SubordinationMeasure measure_half(double t) {
    // Exact density route for alpha = 1/2 via s = t^2/(4u^2) against the
    // Gaussian weight (2/sqrt(pi)) e^{-u^2} du.
    SubordinationMeasure m;
    m.t = t;
    m.alpha = 0.5;
    std::vector<double> edges = {0.0};
    for (double u = 1e-3; u < 7.0; u *= 1.5) edges.push_back(u);
    edges.push_back(7.0);
    std::vector<double> u, wu;
    composite_gl(edges, gl8(), u, wu);
    m.nodes.resize(u.size());
    m.weights.resize(u.size());
    for (std::size_t q = 0; q < u.size(); ++q) {
        const double uu = std::max(u[q], 1e-300);
        m.nodes[q] = t * t / (4.0 * uu * uu);
        m.weights[q] = 2.0 / std::sqrt(kPi) * std::exp(-u[q] * u[q]) * wu[q];
    }
    return m;
}

}  // namespace

SubordinationMeasure subordination_measure(double t, double alpha) {
    if (!(t > 0.0)) throw UsageError("subordination_measure: t must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("subordination_measure: alpha must be in (0, 1)");
    SubordinationMeasure m = (alpha == 0.5) ? measure_half(t) : measure_general(t, alpha);

    double worst = 0.0, worst_lambda = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double lam = 100.0 * k / 200.0;
        const double err = std::fabs(m.transform(lam) - std::exp(-t * std::pow(lam, alpha)));
        if (err > worst) {
            worst = err;
            worst_lambda = lam;
        }
    }
    m.identity_error = worst;
    m.worst_lambda = worst_lambda;
    if (worst > 1e-6)
        throw NumericalDiagnostic("subordination_measure: Laplace identity defect " +
                                  std::to_string(worst) + " at lambda=" +
                                  std::to_string(worst_lambda));
    return m;
}

std::vector<double> subordinate_semigroup(const SpectralDecomposition& dec,
                                          const SubordinationMeasure& meas,
                                          const std::vector<double>& f) {
    // g(lambda) = sum_q w_q e^{-s_q lambda}, evaluated on the spectrum.
    return apply_function(
        dec,
        [&meas](double lam) { return meas.transform(std::max(lam, 0.0)); },
        f);
}

}  // namespace nkl
