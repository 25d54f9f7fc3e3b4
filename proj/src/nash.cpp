#include "nkl/nash.hpp"

#include <cmath>

#include "nkl/common.hpp"

namespace nkl {

double NashRate::B(double x) const {
    if (x < 0.0) throw UsageError("NashRate: negative argument");
    return std::pow(x, 2.0 / d) / C;
}

GammaCertificate gamma_certificate(double alpha, double epsilon) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("gamma_certificate: alpha must be in (0, 1)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw UsageError("gamma_certificate: epsilon must be in (0, 1)");
    GammaCertificate cert;
    cert.alpha = alpha;
    cert.epsilon = epsilon;
    int n = 1;
    while (std::ldexp(1.0, -n) > alpha) ++n;
    cert.n_steps = n;
    double a = std::sqrt(1.0 - epsilon * epsilon);
    double b = epsilon;
    for (int k = 1; k < n; ++k) {
        a = std::sqrt(1.0 - epsilon * epsilon) * std::sqrt(a);
        b *= epsilon;
    }
    cert.a_n = a;
    cert.b_n = b;
    cert.alpha_n = std::ldexp(1.0, -n);
    cert.gamma = std::min(std::pow(a, alpha / cert.alpha_n), b);
    return cert;
}

namespace {

double l1_against(const std::vector<double>& f, const std::vector<double>& V,
                  const DiscreteOperator& op) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(f[i]) * V[i] * op.weights[i];
    return s;
}

double l1_against(const std::vector<double>& f, const std::vector<double>& V,
                  const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(f[i]) * V[i] * w[i];
    return s;
}

double sum_sq(const std::vector<double>& c) {
    double s = 0.0;
    for (double v : c) s += v * v;
    return s;
}

}  // namespace

double nash_gap(const DiscreteOperator& op, const std::vector<double>& f, double c,
                const NashRate& rate, const std::vector<double>& V) {
    const double n2 = weighted_norm2(f, op);
    const double l1 = l1_against(f, V, op);
    if (!(l1 > 0.0)) throw UsageError("nash_gap: ||f V||_1 must be positive");
    const double energy = weighted_inner(op.apply(f), f, op);
    const double r = n2 / (l1 * l1);
    return energy + c * n2 - n2 * rate.B(r);
}

double fractional_nash_gap(const SpectralDecomposition& dec, const std::vector<double>& f,
                           double alpha, const GammaCertificate& cert, double c,
                           const NashRate& rate, const std::vector<double>& V) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("fractional_nash_gap: alpha must be in (0, 1)");
    const std::vector<double> coef = dec.coefficients(f);
    const double n2 = sum_sq(coef);
    double frac_energy = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k)
        frac_energy += std::pow(std::max(dec.eigenvalues[k], 0.0), alpha) * coef[k] * coef[k];
    const double l1 = l1_against(f, V, dec.weights);
    if (!(l1 > 0.0)) throw UsageError("fractional_nash_gap: ||f V||_1 must be positive");
    const double r = n2 / (l1 * l1);
    const double g = cert.gamma;
    return frac_energy + std::pow(c, alpha) * n2 - g * n2 * std::pow(rate.B(g * r), alpha);
}

double alpha_ge1_gap(const SpectralDecomposition& dec, const std::vector<double>& f, double alpha,
                     double c, const NashRate& rate, const std::vector<double>& V) {
    if (!(alpha >= 1.0)) throw UsageError("alpha_ge1_gap: alpha must be >= 1");
    const std::vector<double> coef = dec.coefficients(f);
    const double n2 = sum_sq(coef);
    double frac_energy = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k)
        frac_energy += std::pow(std::max(dec.eigenvalues[k], 0.0), alpha) * coef[k] * coef[k];
    const double l1 = l1_against(f, V, dec.weights);
    if (!(l1 > 0.0)) throw UsageError("alpha_ge1_gap: ||f V||_1 must be positive");
    const double r = n2 / (l1 * l1);
    return std::pow(2.0, alpha - 1.0) * (frac_energy + std::pow(c, alpha) * n2) -
           n2 * std::pow(rate.B(r), alpha);
}

ScalarSplit scalar_power_split(double lambda, double c, double alpha) {
    if (lambda < 0.0 || c < 0.0) throw UsageError("scalar_power_split: negative input");
    if (!(alpha > 0.0)) throw UsageError("scalar_power_split: alpha must be positive");
    ScalarSplit out;
    out.lhs = std::pow(lambda + c, alpha);
    const double base = std::pow(lambda, alpha) + std::pow(c, alpha);
    out.rhs = (alpha < 1.0) ? base : std::pow(2.0, alpha - 1.0) * base;
    out.ok = out.lhs <= out.rhs + 1e-12;
    return out;
}

JensenResult jensen_check(const SpectralDecomposition& dec, const std::vector<double>& f,
                          const ScalarFn& phi) {
    const std::vector<double> coef = dec.coefficients(f);
    const double n2 = sum_sq(coef);
    if (std::fabs(n2 - 1.0) > 1e-8) throw UsageError("jensen_check: f must have unit mu-norm");
    double mean = 0.0, rhs = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k) {
        const double p = coef[k] * coef[k];
        const double lam = std::max(dec.eigenvalues[k], 0.0);
        mean += lam * p;
        rhs += phi(lam) * p;
    }
    JensenResult out;
    out.lhs = phi(mean);
    out.rhs = rhs;
    out.ok = out.lhs <= out.rhs + 1e-10;
    return out;
}

std::vector<Probe> probe_family(const SpectralDecomposition& dec, const std::vector<double>& V,
                                std::uint64_t seed) {
    const int n = dec.n();
    const double L = dec.grid.L;
    std::vector<Probe> all;
    all.reserve(64);

    for (int k = 0; k < 8 && k < n; ++k) {
        Probe p;
        p.id = "eig" + std::to_string(k);
        p.f.resize(n);
        for (int i = 0; i < n; ++i) p.f[i] = dec.phi(k, i);
        all.push_back(std::move(p));
    }

    const double widths[2] = {L / 40.0, L / 10.0};
    int bump_id = 0;
    for (int kc = 0; kc < 8; ++kc) {
        const double center = -0.7 * L + 1.4 * L * kc / 7.0;
        for (double sigma : widths) {
            Probe p;
            p.id = "bump" + std::to_string(bump_id++);
            p.f.resize(n);
            for (int i = 0; i < n; ++i) {
                const double z = (dec.grid.nodes[i] - center) / sigma;
                p.f[i] = std::exp(-0.5 * z * z);
            }
            all.push_back(std::move(p));
        }
    }

    SplitMix64 rng(seed);
    for (int j = 0; j < 40; ++j) {
        std::vector<double> raw(n);
        for (int i = 0; i < n; ++i) raw[i] = rng.sign();
        Probe p;
        p.id = "rnd" + std::to_string(j);
        p.f.resize(n);
        p.f[0] = 0.75 * raw[0] + 0.25 * raw[1];
        for (int i = 1; i < n - 1; ++i) p.f[i] = 0.25 * raw[i - 1] + 0.5 * raw[i] + 0.25 * raw[i + 1];
        p.f[n - 1] = 0.25 * raw[n - 2] + 0.75 * raw[n - 1];
        all.push_back(std::move(p));
    }

    std::vector<Probe> kept;
    kept.reserve(all.size());
    for (auto& p : all) {
        const double l1 = l1_against(p.f, V, dec.weights);
        if (l1 > 1e-12) kept.push_back(std::move(p));
    }
    return kept;
}

double estimate_nash_constant(const DiscreteOperator& op, const std::vector<Probe>& probes,
                              double c, int d, const std::vector<double>& V) {
    if (probes.empty()) throw UsageError("estimate_nash_constant: empty probe family");
    double worst = 0.0;
    for (const auto& p : probes) {
        const double n2 = weighted_norm2(p.f, op);
        const double l1 = l1_against(p.f, V, op);
        const double r = n2 / (l1 * l1);
        const double lhs = n2 * std::pow(r, 2.0 / d);
        const double rhs = weighted_inner(op.apply(p.f), p.f, op) + c * n2;
        if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    }
    if (!(worst > 0.0)) throw NumericalDiagnostic("estimate_nash_constant: degenerate probes");
    return worst;
}

}  // namespace nkl
