#include "nkl/models.hpp"

#include <cmath>

#include "nkl/common.hpp"

namespace nkl {

namespace {

// |x|^p with |x| clamped below 1e-12 so negative powers stay finite at the origin.
double pow_abs(double x, double p) {
    if (p == 0.0) return 1.0;
    double ax = std::fabs(x);
    if (ax < 1e-12) ax = 1e-12;
    return std::pow(ax, p);
}

}  // namespace

DensityModel DensityModel::cauchy(double beta, int d) {
    if (d < 1) throw UsageError("model: d must be a positive integer");
    if (!(beta > d)) throw UsageError("cauchy model requires beta > d");
    DensityModel m;
    m.family = Family::Cauchy;
    m.beta = beta;
    m.d = d;
    return m;
}

DensityModel DensityModel::exp_smooth(double a, int d) {
    if (d < 1) throw UsageError("model: d must be a positive integer");
    if (!(a > 0.0 && a < 2.0)) throw UsageError("exp_smooth model requires 0 < a < 2");
    DensityModel m;
    m.family = Family::ExpSmooth;
    m.a = a;
    m.d = d;
    return m;
}

double DensityModel::exp_power_min_cut(double a, int d) {
    return std::pow(2.0 * (a + d - 2.0) / a, 1.0 / a);
}

DensityModel DensityModel::exp_power(double a, int d, double K_cut) {
    if (d < 1) throw UsageError("model: d must be a positive integer");
    if (!(a >= 2.0)) throw UsageError("exp_power model requires a >= 2");
    const double kmin = exp_power_min_cut(a, d);
    if (K_cut <= 0.0) K_cut = kmin;
    if (K_cut < kmin - 1e-12)
        throw UsageError("exp_power model requires K_cut >= (2(a+d-2)/a)^{1/a}");
    DensityModel m;
    m.family = Family::ExpPower;
    m.a = a;
    m.d = d;
    m.K_cut = K_cut;
    return m;
}

DensityModel DensityModel::gauss(int d) {
    if (d < 1) throw UsageError("model: d must be a positive integer");
    DensityModel m;
    m.family = Family::Gauss;
    m.d = d;
    return m;
}

double DensityModel::log_rho(double x) const {
    switch (family) {
        case Family::Cauchy:
            return -beta * std::log1p(x * x);
        case Family::ExpSmooth:
            return -std::pow(1.0 + x * x, 0.5 * a);
        case Family::ExpPower:
            return -pow_abs(x, a);
        case Family::Gauss:
            return -x * x;
    }
    return 0.0;
}

double DensityModel::rho(double x) const { return std::exp(log_rho(x)); }

double DensityModel::V(double x) const { return std::exp(-0.5 * log_rho(x)); }

double DensityModel::grad_log_rho(double x) const {
    switch (family) {
        case Family::Cauchy:
            return -2.0 * beta * x / (1.0 + x * x);
        case Family::ExpSmooth:
            return -a * x * std::pow(1.0 + x * x, 0.5 * a - 1.0);
        case Family::ExpPower:
            return -a * pow_abs(x, a - 1.0) * (x < 0.0 ? -1.0 : 1.0);
        case Family::Gauss:
            return -2.0 * x;
    }
    return 0.0;
}

double DensityModel::log_rho_second(double x) const {
    const double s = 1.0 + x * x;
    switch (family) {
        case Family::Cauchy:
            return -2.0 * beta * (1.0 - x * x) / (s * s);
        case Family::ExpSmooth:
            return -a * std::pow(s, 0.5 * a - 2.0) * (1.0 + (a - 1.0) * x * x);
        case Family::ExpPower:
            return -a * (a - 1.0) * pow_abs(x, a - 2.0);
        case Family::Gauss:
            return -2.0;
    }
    return 0.0;
}

double DensityModel::minus_AV_over_V(double x) const {
    const double s = 1.0 + x * x;
    switch (family) {
        case Family::Cauchy:
            return beta * d / s - beta * (beta + 2.0) * x * x / (s * s);
        case Family::ExpSmooth:
            return 0.5 * a * (a - 2.0) * std::pow(s, 0.5 * (a - 4.0)) * x * x +
                   0.5 * a * d * std::pow(s, 0.5 * (a - 2.0)) -
                   0.25 * a * a * std::pow(s, a - 2.0) * x * x;
        case Family::ExpPower:
            return 0.5 * a * (a + d - 2.0) * pow_abs(x, a - 2.0) -
                   0.25 * a * a * pow_abs(x, 2.0 * a - 2.0);
        case Family::Gauss:
            return static_cast<double>(d) - x * x;
    }
    return 0.0;
}

double DensityModel::lyapunov_constant() const {
    switch (family) {
        case Family::Cauchy:
            return beta * d;
        case Family::ExpSmooth:
            return 0.5 * a * d;
        case Family::ExpPower:
            return 0.5 * a * (a + d - 2.0) * std::pow(K_cut, a - 2.0);
        case Family::Gauss:
            return static_cast<double>(d);
    }
    return 0.0;
}

double DensityModel::hessian_logrho_bound() const {
    switch (family) {
        case Family::Cauchy:
            return 4.0 * beta;
        case Family::ExpSmooth:
            return a * (2.0 - a);
        case Family::ExpPower:
        case Family::Gauss:
            return 0.0;
    }
    return 0.0;
}

double DensityModel::schrodinger_potential(double x) const {
    const double g1 = grad_log_rho(x);
    const double g2 = log_rho_second(x);
    // (log rho)'/x has the limit (log rho)''(0) at the origin.
    const double g1_over_x = (std::fabs(x) < 1e-8) ? g2 : g1 / x;
    return 0.25 * g1 * g1 + 0.5 * (g2 + (d - 1.0) * g1_over_x);
}

std::string DensityModel::family_name() const {
    switch (family) {
        case Family::Cauchy:
            return "cauchy";
        case Family::ExpSmooth:
            return "exp_smooth";
        case Family::ExpPower:
            return "exp_power";
        case Family::Gauss:
            return "gauss";
    }
    return "?";
}

ModelPointReport inspect_point(const DensityModel& model, double x) {
    return ModelPointReport{x,
                            model.rho(x),
                            model.grad_log_rho(x),
                            model.V(x),
                            model.minus_AV_over_V(x),
                            model.schrodinger_potential(x)};
}

std::vector<std::tuple<double, double, double>> decay_condition_check(
    const DensityModel& model, const std::vector<double>& radii) {
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1])) throw UsageError("radii must be strictly increasing");
    std::vector<std::tuple<double, double, double>> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const double sq = std::exp(0.5 * model.log_rho(r));
        const double rd = std::pow(r, model.d - 1.0);
        const double s1 = sq * rd;
        const double s2 = std::fabs(model.grad_log_rho(r)) * sq * rd;
        out.emplace_back(r, s1, s2);
    }
    return out;
}

}  // namespace nkl
