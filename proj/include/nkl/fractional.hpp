#pragma once

#include <vector>

#include "nkl/discretization.hpp"
#include "nkl/spectral.hpp"

namespace nkl {

enum class RuleKind { LogSubstitutedGL, HalfLineComposite };

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing, positive
    std::vector<double> weights;  // du-weights of the substituted variable
    RuleKind kind = RuleKind::LogSubstitutedGL;

    // For the log-substituted rule: integral of 1/(1+s) over the design range,
    // used as a construction self-check.
    double integrate_one_over_one_plus() const;
};

// Resolvent-integral rule on s in [e^{-300}, e^{300}] after s = e^u,
// 120 panels of width 5 with 16-point Gauss-Legendre each.
QuadratureRule balakrishnan_rule();

// (sin(alpha pi)/pi) * integral s^{alpha-1} lambda/(s+lambda) ds = lambda^alpha
double balakrishnan_scalar(double lambda, double alpha, const QuadratureRule& rule);

// Same resolvent integral applied to a vector through tridiagonal solves.
std::vector<double> balakrishnan_apply(const DiscreteOperator& op, const std::vector<double>& f,
                                       double alpha, const QuadratureRule& rule);

struct SubordinationMeasure {
    double t = 1.0;
    double alpha = 0.5;
    std::vector<double> nodes;    // s_q > 0
    std::vector<double> weights;  // >= 0, total mass within 1e-6 of 1
    double identity_error = 0.0;  // worst Laplace-transform defect on [0, 100]
    double worst_lambda = 0.0;

    double transform(double lambda) const;  // sum w_q exp(-s_q lambda)
    double mass() const { return transform(0.0); }
};

// Discretization of the subordination measure with Laplace transform
// e^{-t lambda^alpha}. Construction runs the transform identity self-check on
// lambda in [0, 100] and throws NumericalDiagnostic when it exceeds 1e-6.
SubordinationMeasure subordination_measure(double t, double alpha);

// sum_q w_q T(s_q) f evaluated through the spectral heat semigroup.
std::vector<double> subordinate_semigroup(const SpectralDecomposition& dec,
                                          const SubordinationMeasure& meas,
                                          const std::vector<double>& f);

}  // namespace nkl
