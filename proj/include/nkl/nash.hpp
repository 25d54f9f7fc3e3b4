#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nkl/discretization.hpp"
#include "nkl/spectral.hpp"

namespace nkl {

// Rate B(x) = x^{2/d} / C. C defaults to 1; the verifier freezes the
// empirically estimated constant into it.
struct NashRate {
    int d = 1;
    double C = 1.0;
    double B(double x) const;
};

struct GammaCertificate {
    double alpha = 0.5;
    double epsilon = 0.5;
    int n_steps = 1;
    double a_n = 0.0;
    double b_n = 0.0;
    double alpha_n = 0.5;  // 2^{-n_steps}
    double gamma = 0.0;
};

// n_steps is the smallest n with 2^{-n} <= alpha; a/b follow the recursion
// a_1 = (1-eps^2)^{1/2}, b_1 = eps, a_{k+1} = (1-eps^2)^{1/2} a_k^{1/2},
// b_{k+1} = eps b_k; gamma = min(a_n^{alpha/alpha_n}, b_n).
GammaCertificate gamma_certificate(double alpha, double epsilon);

// (A f, f) + c ||f||^2 - ||f||^2 B(||f||^2 / ||f V||_1^2), operator route.
double nash_gap(const DiscreteOperator& op, const std::vector<double>& f, double c,
                const NashRate& rate, const std::vector<double>& V);

// (A^alpha f, f) + c^alpha ||f||^2 - gamma ||f||^2 [B(gamma r)]^alpha.
double fractional_nash_gap(const SpectralDecomposition& dec, const std::vector<double>& f,
                           double alpha, const GammaCertificate& cert, double c,
                           const NashRate& rate, const std::vector<double>& V);

// 2^{alpha-1} [(A^alpha f, f) + c^alpha ||f||^2] - ||f||^2 [B(r)]^alpha, alpha >= 1.
double alpha_ge1_gap(const SpectralDecomposition& dec, const std::vector<double>& f, double alpha,
                     double c, const NashRate& rate, const std::vector<double>& V);

struct ScalarSplit {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

// lhs = (lambda + c)^alpha against rhs = lambda^alpha + c^alpha for alpha < 1
// and rhs = 2^{alpha-1}(lambda^alpha + c^alpha) for alpha >= 1.
ScalarSplit scalar_power_split(double lambda, double c, double alpha);

struct JensenResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

// For unit mu-norm f: phi(sum lambda_k p_k) against sum phi(lambda_k) p_k with
// p_k the squared spectral coefficients; phi convex non-decreasing.
JensenResult jensen_check(const SpectralDecomposition& dec, const std::vector<double>& f,
                          const ScalarFn& phi);

struct Probe {
    std::string id;
    std::vector<double> f;
};

// 64-vector family: eigenfunctions 0..7, Gaussian bumps at 8 centers x 2
// widths, and 40 sign vectors smoothed once; filtered to ||f V||_1 > 1e-12.
std::vector<Probe> probe_family(const SpectralDecomposition& dec, const std::vector<double>& V,
                                std::uint64_t seed);

// C_est = max over probes of ||f||^2 (r)^{2/d} / [(A f, f) + c ||f||^2].
double estimate_nash_constant(const DiscreteOperator& op, const std::vector<Probe>& probes,
                              double c, int d, const std::vector<double>& V);

}  // namespace nkl
