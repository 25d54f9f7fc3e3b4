#pragma once

#include <string>
#include <tuple>
#include <vector>

namespace nkl {

enum class Family { Cauchy, ExpSmooth, ExpPower, Gauss };

// Reference density rho with closed-form derivatives and Lyapunov data.
// d is the rate-dimension parameter entering the constants and B(x) = x^{2/d};
// spatially everything lives on a 1D grid.
struct DensityModel {
    Family family = Family::Cauchy;
    double beta = 2.0;   // Cauchy exponent, requires beta > d
    double a = 2.0;      // exponential exponent
    int d = 1;
    double K_cut = 1.0;  // ExpPower threshold radius

    static DensityModel cauchy(double beta, int d = 1);
    static DensityModel exp_smooth(double a, int d = 1);
    // K_cut <= 0 selects the smallest admissible threshold (2(a+d-2)/a)^{1/a}.
    static DensityModel exp_power(double a, int d = 1, double K_cut = 0.0);
    static DensityModel gauss(int d = 1);

    static double exp_power_min_cut(double a, int d);

    double rho(double x) const;
    double log_rho(double x) const;
    double grad_log_rho(double x) const;
    double log_rho_second(double x) const;
    double V(double x) const;  // rho^{-1/2}

    // Closed-form bracket with -A V = bracket * V for the radial operator
    // A = -Delta - grad log rho . grad in dimension d.
    double minus_AV_over_V(double x) const;
    double lyapunov_constant() const;
    double hessian_logrho_bound() const;

    // Additive potential q of the ground-state transform B f = -f'' + q f.
    double schrodinger_potential(double x) const;

    std::string family_name() const;
};

struct ModelPointReport {
    double x, rho, grad_log_rho, V, minus_AV_over_V, schrodinger_q;
};

ModelPointReport inspect_point(const DensityModel& model, double x);

// For each radius r: (r, s1, s2) with s1 = rho(r)^{1/2} r^{d-1} and
// s2 = |rho'(r)| rho(r)^{-1/2} r^{d-1}.
std::vector<std::tuple<double, double, double>> decay_condition_check(
    const DensityModel& model, const std::vector<double>& radii);

}  // namespace nkl
