#include "nkl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "json.hpp"
#include "nkl/bounds.hpp"
#include "nkl/common.hpp"
#include "nkl/csvio.hpp"
#include "nkl/fractional.hpp"
#include "nkl/nash.hpp"

namespace nkl {

bool Metric::ok() const {
    if (std::isnan(value)) return false;
    return value <= tolerance;
}

void VerificationReport::finalize() {
    pass = error.empty();
    for (const auto& m : metrics)
        if (!m.ok()) pass = false;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Metric checked(std::string name, double value, double tolerance, double reference = 0.0,
               std::string worst = "") {
    return Metric{std::move(name), value, tolerance, reference, std::move(worst)};
}

Metric info(std::string name, double value, double reference = 0.0) {
    return Metric{std::move(name), value, kInf, reference, ""};
}

std::vector<double> log_space(double a, double b, int m) {
    std::vector<double> out(m);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < m; ++i)
        out[i] = std::exp(la + (lb - la) * (m == 1 ? 0.0 : double(i) / (m - 1)));
    return out;
}

struct ModelSetup {
    DensityModel model;
    Grid1D grid;
    DiscreteOperator op;
    SpectralDecomposition dec;
    std::vector<double> V;
    std::vector<double> rho;
    double c = 0.0;
};

ModelSetup build_setup(const DensityModel& model, double L, int n, Boundary bc) {
    ModelSetup s;
    s.model = model;
    s.grid = Grid1D::build(L, n);
    s.op = assemble_divergence_form(model, s.grid, bc);
    s.dec = eigendecompose(s.op);
    s.V.resize(s.grid.n);
    s.rho.resize(s.grid.n);
    for (int i = 0; i < s.grid.n; ++i) {
        s.V[i] = model.V(s.grid.nodes[i]);
        s.rho[i] = model.rho(s.grid.nodes[i]);
    }
    s.c = model.lyapunov_constant();
    return s;
}

ModelSetup build_setup(const RunConfig& cfg) {
    return build_setup(cfg.model, cfg.L, cfg.n, cfg.bc);
}

std::vector<double> random_unit_vector(SplitMix64& rng, const SpectralDecomposition& dec) {
    const int n = dec.n();
    std::vector<double> f(n);
    double n2 = 0.0;
    for (int i = 0; i < n; ++i) f[i] = 2.0 * rng.uniform01() - 1.0;
    for (int i = 0; i < n; ++i) n2 += f[i] * f[i] * dec.weights[i];
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < n; ++i) f[i] *= inv;
    return f;
}

double mu_norm(const std::vector<double>& f, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * f[i] * w[i];
    return std::sqrt(s);
}

double mu_dist(const std::vector<double>& a, const std::vector<double>& b,
               const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d * w[i];
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------- scenarios

std::vector<Metric> scenario_scalar_power_split(const RunConfig&) {
    std::vector<double> lambdas = {0.0};
    for (double v : log_space(1e-3, 1e6, 39)) lambdas.push_back(v);
    const double cs[] = {0.0, 0.5, 3.0, 100.0};
    const double alphas[] = {0.1, 0.5, 0.9, 1.0, 1.5, 3.0};
    int violations = 0;
    double max_excess = -kInf;
    std::string worst;
    for (double lam : lambdas)
        for (double c : cs)
            for (double a : alphas) {
                const ScalarSplit s = scalar_power_split(lam, c, a);
                const double excess = s.lhs - s.rhs;
                if (excess > max_excess) {
                    max_excess = excess;
                    worst = "lambda=" + format_double(lam) + ",c=" + format_double(c) +
                            ",alpha=" + format_double(a);
                }
                if (!s.ok) ++violations;
            }
    return {checked("violations", violations, 0.0, 0.0, worst),
            checked("max_excess", max_excess, 1e-12, 0.0, worst),
            info("checks", 960)};
}

std::vector<Metric> scenario_jensen(const RunConfig& cfg) {
    ModelSetup s = build_setup(cfg);
    const double cap = 30.0;
    const double ecap = std::exp(cap);
    std::vector<std::pair<std::string, ScalarFn>> phis = {
        {"pow1.5", [](double t) { return std::pow(t, 1.5); }},
        {"square", [](double t) { return t * t; }},
        {"clipped_exp",
         [=](double t) { return t <= cap ? std::exp(t) : ecap * (1.0 + (t - cap)); }},
    };
    SplitMix64 rng(cfg.seed ^ 0x6a09e667f3bcc908ULL);
    double worst_excess = -kInf;
    std::string worst;
    for (int k = 0; k < 200; ++k) {
        const std::vector<double> f = random_unit_vector(rng, s.dec);
        for (const auto& [pname, phi] : phis) {
            const JensenResult r = jensen_check(s.dec, f, phi);
            const double excess = r.lhs - r.rhs;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst = "vector=" + std::to_string(k) + ",phi=" + pname;
            }
        }
    }
    return {checked("max_convexity_excess", worst_excess, 1e-10, 0.0, worst),
            info("vectors", 200)};
}

std::vector<Metric> scenario_gamma_recursion(const RunConfig& cfg) {
    std::vector<Metric> out;
    double worst_b = 0.0;
    int range_violations = 0;
    std::string worst;
    for (int k = 1; k <= 19; ++k) {
        const double alpha = 0.05 * k;
        const GammaCertificate cert = gamma_certificate(alpha, cfg.epsilon);
        const double expect_b = std::pow(cfg.epsilon, cert.n_steps);
        const double rel = std::fabs(cert.b_n - expect_b) / expect_b;
        if (rel > worst_b) {
            worst_b = rel;
            worst = "alpha=" + format_double(alpha);
        }
        const bool ok_range = cert.a_n > 0.0 && cert.a_n <= 1.0 && cert.gamma > 0.0 &&
                              cert.gamma <= 1.0 && cert.alpha_n <= alpha;
        if (!ok_range) ++range_violations;
    }
    out.push_back(checked("b_power_rel_err", worst_b, 1e-13, 0.0, worst));
    out.push_back(checked("range_violations", range_violations, 0.0));

    int monotone_violations = 0;
    {
        const double sfac = std::sqrt(1.0 - cfg.epsilon * cfg.epsilon);
        double a = sfac;
        for (int k = 1; k < 12; ++k) {
            const double next = sfac * std::sqrt(a);
            if (!(next < a)) ++monotone_violations;
            a = next;
        }
    }
    out.push_back(checked("a_monotonicity_violations", monotone_violations, 0.0));

    double example_err = 0.0;
    example_err = std::max(example_err, std::fabs(gamma_certificate(0.5, 0.5).gamma - 0.5));
    example_err = std::max(example_err, std::fabs(gamma_certificate(0.9, 0.5).gamma - 0.5));
    example_err = std::max(example_err, std::fabs(gamma_certificate(0.2, 0.5).gamma - 0.125));
    out.push_back(checked("half_epsilon_example_err", example_err, 1e-15));

    for (int k = 1; k <= 9; ++k) {
        const double eps = 0.1 * k;
        out.push_back(
            info("gamma_half_alpha_eps_" + format_double(eps), gamma_certificate(0.5, eps).gamma));
    }
    return out;
}

std::vector<Metric> scenario_fractional_nash_gap(const RunConfig& cfg) {
    ModelSetup s = build_setup(cfg);
    const std::vector<Probe> probes = probe_family(s.dec, s.V, cfg.seed);
    const double C_est = estimate_nash_constant(s.op, probes, s.c, s.model.d, s.V);
    const NashRate rate{s.model.d, C_est};
    std::vector<Metric> out;
    out.push_back(info("nash_constant_estimate", C_est));
    out.push_back(info("probe_count", double(probes.size())));

    double worst_classical = -kInf;
    std::string worst_id;
    for (const auto& p : probes) {
        const double n2 = weighted_norm2(p.f, s.op);
        const double v = -nash_gap(s.op, p.f, s.c, rate, s.V) / n2;
        if (v > worst_classical) {
            worst_classical = v;
            worst_id = p.id;
        }
    }
    out.push_back(checked("max_violation_classical", worst_classical, 1e-8, 0.0, worst_id));

    for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
        const GammaCertificate cert = gamma_certificate(alpha, cfg.epsilon);
        double worst_v = -kInf;
        std::string wid;
        for (const auto& p : probes) {
            const double n2 = weighted_norm2(p.f, s.op);
            const double v = -fractional_nash_gap(s.dec, p.f, alpha, cert, s.c, rate, s.V) / n2;
            if (v > worst_v) {
                worst_v = v;
                wid = p.id;
            }
        }
        const std::string tag = format_double(alpha);
        out.push_back(checked("max_violation_alpha_" + tag, worst_v, 1e-8, 0.0, wid));
        out.push_back(info("gamma_alpha_" + tag, cert.gamma));
    }
    return out;
}

std::vector<Metric> scenario_nash_gap_large_alpha(const RunConfig& cfg) {
    ModelSetup s = build_setup(cfg);
    const std::vector<Probe> probes = probe_family(s.dec, s.V, cfg.seed);
    const double C_est = estimate_nash_constant(s.op, probes, s.c, s.model.d, s.V);
    const NashRate rate{s.model.d, C_est};
    std::vector<Metric> out;
    out.push_back(info("nash_constant_estimate", C_est));
    for (double alpha : {1.5, 2.0}) {
        double worst_v = -kInf;
        std::string wid;
        for (const auto& p : probes) {
            const double n2 = weighted_norm2(p.f, s.op);
            const double v = -alpha_ge1_gap(s.dec, p.f, alpha, s.c, rate, s.V) / n2;
            if (v > worst_v) {
                worst_v = v;
                wid = p.id;
            }
        }
        out.push_back(
            checked("max_violation_alpha_" + format_double(alpha), worst_v, 1e-8, 0.0, wid));
    }
    return out;
}

std::vector<Metric> scenario_balakrishnan(const RunConfig& cfg) {
    const QuadratureRule rule = balakrishnan_rule();
    std::vector<Metric> out;
    out.push_back(checked("quadrature_design_identity_err",
                          std::fabs(rule.integrate_one_over_one_plus() - 300.0), 1e-10, 300.0));

    double worst_scalar = 0.0;
    std::string worst;
    for (double lam : log_space(1e-4, 1e6, 30))
        for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double got = balakrishnan_scalar(lam, alpha, rule);
            const double want = std::pow(lam, alpha);
            const double rel = std::fabs(got - want) / want;
            if (rel > worst_scalar) {
                worst_scalar = rel;
                worst = "lambda=" + format_double(lam) + ",alpha=" + format_double(alpha);
            }
        }
    out.push_back(checked("scalar_identity_rel_err", worst_scalar, 1e-8, 0.0, worst));

    ModelSetup s = build_setup(cfg.model, cfg.L, 200, cfg.bc);
    SplitMix64 rng(cfg.seed ^ 0xbb67ae8584caa73bULL);
    std::vector<std::pair<std::string, std::vector<double>>> fs;
    {
        std::vector<double> phi3(s.grid.n);
        for (int i = 0; i < s.grid.n; ++i) phi3[i] = s.dec.phi(3, i);
        fs.emplace_back("phi3", std::move(phi3));
        fs.emplace_back("random", random_unit_vector(rng, s.dec));
    }
    double worst_op = 0.0;
    std::string worst_op_in;
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (const auto& [fname, f] : fs) {
            const std::vector<double> y1 = balakrishnan_apply(s.op, f, alpha, rule);
            const std::vector<double> y2 = apply_function(
                s.dec, [alpha](double lam) { return std::pow(std::max(lam, 0.0), alpha); }, f);
            const double rel = mu_dist(y1, y2, s.op.weights) / mu_norm(y2, s.op.weights);
            if (rel > worst_op) {
                worst_op = rel;
                worst_op_in = fname + ",alpha=" + format_double(alpha);
            }
        }
    }
    out.push_back(checked("operator_vs_spectral_rel_err", worst_op, 1e-6, 0.0, worst_op_in));

    if (s.op.bc == Boundary::Neumann) {
        std::vector<double> phi0(s.grid.n);
        for (int i = 0; i < s.grid.n; ++i) phi0[i] = s.dec.phi(0, i);
        const std::vector<double> y = balakrishnan_apply(s.op, phi0, 0.5, rule);
        // The resolvent route sees the raw matrix, whose numerically-zero
        // bottom eigenvalue sits at the solver noise floor eps * lambda_max;
        // the annihilation norm can only be held to its square root, which
        // moves with the grid resolution.
        const double floor =
            std::sqrt(std::numeric_limits<double>::epsilon() * s.dec.eigenvalues.back());
        out.push_back(checked("kernel_mode_norm", mu_norm(y, s.op.weights),
                              std::max(1e-8, floor)));
    }

    {
        const std::vector<double>& f = fs[1].second;
        const std::vector<double> ya = balakrishnan_apply(s.op, f, 0.3, rule);
        const std::vector<double> yab = balakrishnan_apply(s.op, ya, 0.4, rule);
        const std::vector<double> ysum = balakrishnan_apply(s.op, f, 0.7, rule);
        const double rel = mu_dist(yab, ysum, s.op.weights) / mu_norm(ysum, s.op.weights);
        out.push_back(checked("composition_rel_err", rel, 2e-6));
    }

    {
        std::vector<double> av = s.op.apply(s.V);
        double m0 = kInf;
        for (int i = 0; i < s.grid.n; ++i) m0 = std::min(m0, av[i] + s.c * s.V[i]);
        const double shift = std::max(0.0, -m0) + 1e-12;
        DiscreteOperator shifted = s.op;
        for (double& dv : shifted.diag) dv += s.c + shift;
        const std::vector<double> y = balakrishnan_apply(shifted, s.V, 0.5, rule);
        double ymin = kInf;
        int arg = 0;
        for (int i = 0; i < s.grid.n; ++i)
            if (y[i] < ymin) {
                ymin = y[i];
                arg = i;
            }
        out.push_back(checked("resolvent_positivity_defect", -ymin, 1e-8, 0.0,
                              "x=" + format_double(s.grid.nodes[arg])));
        out.push_back(info("positivity_premise_shift", shift));
    }
    return out;
}

std::vector<Metric> scenario_subordination(const RunConfig& cfg) {
    std::vector<Metric> out;
    double worst_identity = 0.0, worst_mass = 0.0, worst_negw = -kInf;
    std::string wi, wm;
    for (double t : {0.5, 1.0, 2.0})
        for (double alpha : {0.5, 0.7}) {
            const SubordinationMeasure meas = subordination_measure(t, alpha);
            if (meas.identity_error > worst_identity) {
                worst_identity = meas.identity_error;
                wi = "t=" + format_double(t) + ",alpha=" + format_double(alpha) +
                     ",lambda=" + format_double(meas.worst_lambda);
            }
            const double md = std::fabs(meas.mass() - 1.0);
            if (md > worst_mass) {
                worst_mass = md;
                wm = "t=" + format_double(t) + ",alpha=" + format_double(alpha);
            }
            for (double w : meas.weights) worst_negw = std::max(worst_negw, -w);
        }
    out.push_back(checked("laplace_identity_err", worst_identity, 1e-6, 0.0, wi));
    out.push_back(checked("mass_defect", worst_mass, 1e-6, 1.0, wm));
    out.push_back(checked("max_negative_weight", worst_negw, 0.0));

    ModelSetup s = build_setup(cfg.model, cfg.L, 200, cfg.bc);
    SplitMix64 rng(cfg.seed ^ 0x3c6ef372fe94f82bULL);
    const std::vector<double> f = random_unit_vector(rng, s.dec);
    double worst_op = 0.0;
    std::string worst_in;
    for (double alpha : {0.5, 0.7}) {
        const double t = 0.5;
        const SubordinationMeasure meas = subordination_measure(t, alpha);
        const std::vector<double> y1 = subordinate_semigroup(s.dec, meas, f);
        const std::vector<double> y2 = apply_function(
            s.dec, [&](double lam) { return fractional_symbol(lam, t, alpha); }, f);
        const double rel = mu_dist(y1, y2, s.op.weights) / mu_norm(f, s.op.weights);
        if (rel > worst_op) {
            worst_op = rel;
            worst_in = "alpha=" + format_double(alpha);
        }
    }
    out.push_back(checked("operator_vs_spectral_err", worst_op, 1e-6, 0.0, worst_in));

    if (s.op.bc == Boundary::Neumann) {
        std::vector<double> phi0(s.grid.n);
        for (int i = 0; i < s.grid.n; ++i) phi0[i] = s.dec.phi(0, i);
        const SubordinationMeasure meas = subordination_measure(1.0, 0.5);
        const std::vector<double> y = subordinate_semigroup(s.dec, meas, phi0);
        out.push_back(checked("kernel_mode_drift", mu_dist(y, phi0, s.op.weights), 1e-8));
    }
    return out;
}

std::vector<Metric> scenario_kernel_bound_rate(const RunConfig& cfg) {
    ModelSetup s = build_setup(cfg);
    const std::vector<Probe> probes = probe_family(s.dec, s.V, cfg.seed);
    const double C_est = estimate_nash_constant(s.op, probes, s.c, s.model.d, s.V);
    std::vector<Metric> out;
    out.push_back(info("nash_constant_estimate", C_est));
    const std::vector<double> ts = log_space(1e-3, 1e-2, 5);
    for (double alpha : {0.5, 0.7}) {
        const GammaCertificate cert = gamma_certificate(alpha, cfg.epsilon);
        RateFunctions rf;
        rf.alpha = alpha;
        rf.gamma = cert.gamma;
        rf.d = s.model.d;
        rf.C = C_est;
        rf.ge1 = false;
        double worst = -kInf;
        std::string wt;
        for (double t : ts) {
            const KernelMatrix kern = kernel(s.dec, t, alpha);
            const double ratio = bound_ratio(s.grid, kern, s.V, s.c, cfg.interior_margin);
            const double K2 = rf.K(t) * rf.K(t);
            const double rel = ratio / K2;
            if (rel > worst) {
                worst = rel;
                wt = "t=" + format_double(t);
            }
        }
        const std::string tag = format_double(alpha);
        out.push_back(checked("max_ratio_over_K2_alpha_" + tag, worst, 1.0, 1.0, wt));
        out.push_back(info("gamma_alpha_" + tag, cert.gamma));
    }
    return out;
}

std::vector<Metric> scenario_kernel_bound_large_alpha(const RunConfig& cfg) {
    ModelSetup s = build_setup(cfg);
    const std::vector<Probe> probes = probe_family(s.dec, s.V, cfg.seed);
    const double C_est = estimate_nash_constant(s.op, probes, s.c, s.model.d, s.V);
    std::vector<Metric> out;
    out.push_back(info("nash_constant_estimate", C_est));
    for (double alpha : {1.0, 1.5, 2.0}) {
        const std::string tag = format_double(alpha);
        const double ca = c_alpha_estimate(s.dec, s.V, alpha, cfg.interior_margin);
        const double branch = std::max(ca, std::pow(s.c, alpha));
        const double t_max = std::min(1.0, 600.0 / branch);
        const std::vector<double> ts = log_space(1e-2, t_max, 10);
        std::vector<double> ratios;
        int nonfinite = 0;
        for (double t : ts) {
            const KernelMatrix kern = kernel(s.dec, t, alpha);
            const double r = bound_ratio_alpha_ge1(s.grid, kern, s.V, s.c, ca,
                                                   cfg.interior_margin);
            if (!std::isfinite(r) || r < 0.0) ++nonfinite;
            ratios.push_back(r);
        }
        double worst_factor = 0.0;
        std::string wt;
        for (std::size_t k = 0; k + 1 < ratios.size(); ++k) {
            if (ratios[k] <= 0.0) continue;
            const double fr = ratios[k + 1] / ratios[k];
            if (fr > worst_factor) {
                worst_factor = fr;
                wt = "t=" + format_double(ts[k + 1]);
            }
        }
        RateFunctions rf;
        rf.alpha = alpha;
        rf.d = s.model.d;
        rf.C = C_est;
        rf.ge1 = true;
        double worst_k2 = -kInf;
        for (std::size_t k = 0; k < ts.size(); ++k)
            worst_k2 = std::max(worst_k2, ratios[k] / (rf.K(ts[k]) * rf.K(ts[k])));
        out.push_back(checked("nonfinite_ratios_alpha_" + tag, nonfinite, 0.0));
        out.push_back(checked("max_growth_factor_alpha_" + tag, worst_factor, 1.02, 1.0, wt));
        out.push_back(info("c_alpha_" + tag, ca));
        out.push_back(info("growth_branch_alpha_" + tag, branch));
        out.push_back(info("max_ratio_over_K2_alpha_" + tag, worst_k2));
    }
    return out;
}

std::vector<Metric> scenario_decay_exponent(const RunConfig& cfg) {
    const DensityModel model = cfg.model.family == Family::Cauchy ? cfg.model
                                                                  : DensityModel::cauchy(2.0, 1);
    const int n = cfg.grid_overridden ? cfg.n : 2001;
    const bool coarse = n < 1000;
    ModelSetup s = build_setup(model, 10.0, n, Boundary::Neumann);
    const DiscreteOperator opB = assemble_schrodinger(model, s.grid);
    const SpectralDecomposition decB = eigendecompose(opB);

    const double cut = (1.0 - cfg.interior_margin) * s.grid.L;
    std::vector<int> interior;
    for (int i = 0; i < s.grid.n; ++i)
        if (std::fabs(s.grid.nodes[i]) <= cut) interior.push_back(i);

    std::vector<Metric> out;
    if (coarse) out.push_back(info("coarse_grid_flag", 1));
    const double slope_tol = coarse ? 0.5 : 0.15;
    for (double alpha : {0.5, 0.75, 1.0}) {
        const std::string tag = format_double(alpha);
        const double ref = -model.d / (2.0 * alpha);
        const double t_lo = 3.0 * std::pow(s.grid.h / 2.0, 2.0 * alpha);
        const std::vector<double> ts = log_space(t_lo, 0.3, 9);
        std::vector<double> supA, supB;
        for (double t : ts) {
            const double growth = std::exp(-std::pow(s.c, alpha) * t);
            const std::vector<double> dA = kernel_diagonal(s.dec, t, alpha);
            const std::vector<double> dB = kernel_diagonal(decB, t, alpha);
            double sa = 0.0, sb = 0.0;
            for (int i : interior) {
                sa = std::max(sa, dA[i] * growth / (s.V[i] * s.V[i]));
                sb = std::max(sb, dB[i] * growth);
            }
            supA.push_back(sa);
            supB.push_back(sb);
        }
        const ExponentFit fitA = fit_exponent(ts, supA);
        const ExponentFit fitB = fit_exponent(ts, supB);
        out.push_back(checked("slope_rel_err_alpha_" + tag,
                              std::fabs(fitA.slope - ref) / std::fabs(ref), slope_tol, ref));
        out.push_back(checked("slope_rel_err_conjugate_alpha_" + tag,
                              std::fabs(fitB.slope - ref) / std::fabs(ref), slope_tol, ref));
        out.push_back(info("slope_alpha_" + tag, fitA.slope, ref));
        out.push_back(info("slope_conjugate_alpha_" + tag, fitB.slope, ref));
        out.push_back(info("C_fit_alpha_" + tag, fitA.C_fit));
    }
    return out;
}

std::vector<Metric> scenario_lyapunov_cauchy(const RunConfig& cfg) {
    std::vector<std::pair<double, int>> entries = {{1.5, 1}, {2.0, 1}, {3.0, 1}};
    if (cfg.model.family == Family::Cauchy) {
        const std::pair<double, int> e{cfg.model.beta, cfg.model.d};
        if (std::find(entries.begin(), entries.end(), e) == entries.end()) entries.push_back(e);
    }
    const Grid1D grid = Grid1D::build(40.0, 4001);
    std::vector<Metric> out;
    for (const auto& [beta, d] : entries) {
        const DensityModel m = DensityModel::cauchy(beta, d);
        double worst_ly = -kInf, worst_h = -kInf;
        std::string wx;
        for (double x : grid.nodes) {
            const double v = m.minus_AV_over_V(x);
            if (v > worst_ly) {
                worst_ly = v;
                wx = "x=" + format_double(x);
            }
            worst_h = std::max(worst_h, m.log_rho_second(x));
        }
        const std::string tag = format_double(beta);
        out.push_back(checked("lyapunov_excess_beta_" + tag, worst_ly - m.lyapunov_constant(),
                              1e-12, m.lyapunov_constant(), wx));
        out.push_back(checked("hessian_excess_beta_" + tag,
                              worst_h - m.hessian_logrho_bound(), 1e-12,
                              m.hessian_logrho_bound()));
    }
    const DensityModel m2 = DensityModel::cauchy(2.0, 1);
    const auto decay = decay_condition_check(m2, {10.0, 20.0, 40.0});
    out.push_back(info("decay_s1_r40", std::get<1>(decay.back())));
    out.push_back(info("decay_s2_r40", std::get<2>(decay.back())));
    return out;
}

std::vector<Metric> scenario_lyapunov_exponential(const RunConfig& cfg) {
    const Grid1D grid = Grid1D::build(40.0, 4001);
    std::vector<Metric> out;

    std::vector<double> smooth_as = {0.5, 1.0, 1.5};
    if (cfg.model.family == Family::ExpSmooth &&
        std::find(smooth_as.begin(), smooth_as.end(), cfg.model.a) == smooth_as.end())
        smooth_as.push_back(cfg.model.a);
    for (double a : smooth_as) {
        const int d = cfg.model.family == Family::ExpSmooth ? cfg.model.d : 1;
        const DensityModel m = DensityModel::exp_smooth(a, d);
        double worst_ly = -kInf, worst_h = -kInf;
        std::string wx;
        for (double x : grid.nodes) {
            const double v = m.minus_AV_over_V(x);
            if (v > worst_ly) {
                worst_ly = v;
                wx = "x=" + format_double(x);
            }
            worst_h = std::max(worst_h, m.log_rho_second(x));
        }
        const std::string tag = format_double(a);
        out.push_back(checked("lyapunov_excess_smooth_a_" + tag,
                              worst_ly - m.lyapunov_constant(), 1e-12, m.lyapunov_constant(),
                              wx));
        out.push_back(checked("hessian_excess_smooth_a_" + tag,
                              worst_h - m.hessian_logrho_bound(), 1e-12,
                              m.hessian_logrho_bound()));
    }

    std::vector<double> power_as = {2.0, 3.0};
    if (cfg.model.family == Family::ExpPower &&
        std::find(power_as.begin(), power_as.end(), cfg.model.a) == power_as.end())
        power_as.push_back(cfg.model.a);
    for (double a : power_as) {
        const int d = cfg.model.family == Family::ExpPower ? cfg.model.d : 1;
        const DensityModel m = DensityModel::exp_power(a, d, 0.0);
        double worst_ly = -kInf, worst_h = -kInf;
        std::string wx;
        for (double x : grid.nodes) {
            const double v = m.minus_AV_over_V(x);
            if (v > worst_ly) {
                worst_ly = v;
                wx = "x=" + format_double(x);
            }
            worst_h = std::max(worst_h, m.log_rho_second(x));
        }
        const std::string tag = format_double(a);
        out.push_back(checked("lyapunov_excess_power_a_" + tag,
                              worst_ly - m.lyapunov_constant(), 1e-12, m.lyapunov_constant(),
                              wx));
        out.push_back(checked("hessian_excess_power_a_" + tag,
                              worst_h - m.hessian_logrho_bound(), 1e-12,
                              m.hessian_logrho_bound()));
        out.push_back(info("threshold_radius_a_" + tag, m.K_cut));
    }
    return out;
}

std::vector<Metric> scenario_schrodinger_transform(const RunConfig& cfg) {
    ModelSetup s = build_setup(cfg);
    const DiscreteOperator opB = assemble_schrodinger(cfg.model, s.grid);
    const SpectralDecomposition decB = eigendecompose(opB);
    std::vector<Metric> out;

    out.push_back(checked("ground_eigenvalue_gap",
                          std::fabs(decB.eigenvalues[0] - s.dec.eigenvalues[0]), 1e-3));
    out.push_back(info("divergence_lambda0", s.dec.eigenvalues[0]));
    out.push_back(info("conjugate_nu0", decB.eigenvalues[0]));

    if (cfg.model.family == Family::Cauchy) {
        const double beta = cfg.model.beta;
        const double d = cfg.model.d;
        double worst = 0.0;
        std::string wx;
        for (double x : s.grid.nodes) {
            const double closed =
                (beta * (beta + 2.0 - d) * x * x - beta * d) / ((1.0 + x * x) * (1.0 + x * x));
            const double diff = std::fabs(cfg.model.schrodinger_potential(x) - closed);
            if (diff > worst) {
                worst = diff;
                wx = "x=" + format_double(x);
            }
        }
        out.push_back(checked("potential_closed_form_diff", worst, 1e-10, 0.0, wx));
    }

    {
        const double t = 0.01, alpha = 0.5;
        const KernelMatrix p = kernel(s.dec, t, alpha);
        const std::vector<double> k1 = schrodinger_kernel(s.rho, p);
        const KernelMatrix k2 = kernel(decB, t, alpha);
        const double cut = (1.0 - cfg.interior_margin) * s.grid.L;
        std::vector<int> interior;
        for (int i = 0; i < s.grid.n; ++i)
            if (std::fabs(s.grid.nodes[i]) <= cut) interior.push_back(i);
        double worst = 0.0, scale = 0.0;
        std::string wij;
        for (int i : interior)
            for (int j : interior) {
                const double a = k1[static_cast<std::size_t>(i) * s.grid.n + j];
                const double b = k2.at(i, j);
                scale = std::max(scale, std::fabs(a));
                const double diff = std::fabs(a - b);
                if (diff > worst) {
                    worst = diff;
                    wij = "x=" + format_double(s.grid.nodes[i]) +
                          ",y=" + format_double(s.grid.nodes[j]);
                }
            }
        out.push_back(checked("kernel_route_max_diff", worst, 2.5e-2, 0.0, wij));
        out.push_back(info("kernel_route_scale", scale));
    }
    return out;
}

using ScenarioFn = std::vector<Metric> (*)(const RunConfig&);

const std::vector<std::pair<std::string, ScenarioFn>>& registry() {
    static const std::vector<std::pair<std::string, ScenarioFn>> reg = {
        {"scalar-power-split", scenario_scalar_power_split},
        {"jensen-convexity", scenario_jensen},
        {"gamma-recursion", scenario_gamma_recursion},
        {"fractional-nash-gap", scenario_fractional_nash_gap},
        {"nash-gap-large-alpha", scenario_nash_gap_large_alpha},
        {"balakrishnan", scenario_balakrishnan},
        {"subordination", scenario_subordination},
        {"kernel-bound-rate", scenario_kernel_bound_rate},
        {"kernel-bound-large-alpha", scenario_kernel_bound_large_alpha},
        {"decay-exponent", scenario_decay_exponent},
        {"lyapunov-cauchy", scenario_lyapunov_cauchy},
        {"lyapunov-exponential", scenario_lyapunov_exponential},
        {"schrodinger-transform", scenario_schrodinger_transform},
    };
    return reg;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

VerificationReport run_scenario(const std::string& name, const RunConfig& cfg) {
    for (const auto& [rname, fn] : registry()) {
        if (rname == name) {
            VerificationReport rep;
            rep.scenario = name;
            rep.config_digest = cfg.digest();
            rep.metrics = fn(cfg);
            rep.finalize();
            return rep;
        }
    }
    throw UsageError("unknown scenario: " + name);
}

std::vector<VerificationReport> run_all(const RunConfig& cfg) {
    std::vector<VerificationReport> out;
    for (const auto& [name, fn] : registry()) {
        VerificationReport rep;
        rep.scenario = name;
        rep.config_digest = cfg.digest();
        try {
            rep.metrics = fn(cfg);
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
        rep.finalize();
        out.push_back(std::move(rep));
    }
    return out;
}

void write_reports(const std::vector<VerificationReport>& reports, const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    for (const auto& rep : reports) {
        CsvWriter csv(cfg.output_dir + "/" + rep.scenario + ".csv");
        csv.header({"metric", "value", "tolerance", "reference", "worst_input", "status"});
        for (const auto& m : rep.metrics)
            csv.row({m.name, format_double(m.value), format_double(m.tolerance),
                     format_double(m.reference), m.worst_input, m.ok() ? "pass" : "fail"});
        csv.close();
    }
    std::ofstream js(cfg.output_dir + "/summary.json", std::ios::binary);
    if (!js) throw UsageError("cannot write summary.json in " + cfg.output_dir);
    js << summary_json(reports, cfg) << "\n";
}

std::string summary_json(const std::vector<VerificationReport>& reports, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["config_digest"] = cfg.digest();
    j["seed"] = cfg.seed;
    j["all_pass"] = all_pass(reports);
    j["scenarios"] = nlohmann::ordered_json::array();
    for (const auto& rep : reports) {
        nlohmann::ordered_json sj;
        sj["name"] = rep.scenario;
        sj["pass"] = rep.pass;
        if (!rep.error.empty()) sj["error"] = rep.error;
        sj["metrics"] = nlohmann::ordered_json::array();
        for (const auto& m : rep.metrics) {
            nlohmann::ordered_json mj;
            mj["name"] = m.name;
            mj["value"] = m.value;
            if (std::isfinite(m.tolerance)) mj["tolerance"] = m.tolerance;
            mj["reference"] = m.reference;
            if (!m.worst_input.empty()) mj["worst_input"] = m.worst_input;
            mj["pass"] = m.ok();
            sj["metrics"].push_back(std::move(mj));
        }
        j["scenarios"].push_back(std::move(sj));
    }
    return j.dump(2);
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return !reports.empty();
}

}  // namespace nkl
