// Acceptance gate: each criterion prints exactly one PASS/FAIL line and the
// process exit mirrors it. Criterion number comes from argv[1]; criterion 10
// additionally needs the path to the nkl binary in argv[2].
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nkl/bounds.hpp"
#include "nkl/common.hpp"
#include "nkl/discretization.hpp"
#include "nkl/fractional.hpp"
#include "nkl/models.hpp"
#include "nkl/nash.hpp"
#include "nkl/spectral.hpp"

using namespace nkl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> log_space(double a, double b, int m) {
    std::vector<double> out(m);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < m; ++i)
        out[i] = std::exp(la + (lb - la) * (m == 1 ? 0.0 : double(i) / (m - 1)));
    return out;
}

struct Setup {
    DensityModel model;
    Grid1D grid;
    DiscreteOperator op;
    SpectralDecomposition dec;
    std::vector<double> V;
    double c = 0.0;
};

Setup build(const DensityModel& model, double L, int n, Boundary bc) {
    Setup s;
    s.model = model;
    s.grid = Grid1D::build(L, n);
    s.op = assemble_divergence_form(model, s.grid, bc);
    s.dec = eigendecompose(s.op);
    s.V.resize(n);
    for (int i = 0; i < n; ++i) s.V[i] = model.V(s.grid.nodes[i]);
    s.c = model.lyapunov_constant();
    return s;
}

int verdict(int k, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", k, pass ? "PASS" : "FAIL", detail.c_str());
    return pass ? 0 : 1;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

int criterion_1() {
    const auto start = Clock::now();
    std::vector<double> lambdas = {0.0};
    for (double v : log_space(1e-3, 1e6, 39)) lambdas.push_back(v);
    int checks = 0, violations = 0;
    double max_excess = -1e300;
    for (double lam : lambdas)
        for (double c : {0.0, 0.5, 3.0, 100.0})
            for (double a : {0.1, 0.5, 0.9, 1.0, 1.5, 3.0}) {
                const ScalarSplit s = scalar_power_split(lam, c, a);
                ++checks;
                max_excess = std::max(max_excess, s.lhs - s.rhs);
                if (s.lhs > s.rhs + 1e-12) ++violations;
            }
    const double el = seconds_since(start);
    return verdict(1, violations == 0 && checks == 960 && el < 1.0,
                   "checks=" + std::to_string(checks) +
                       " violations=" + std::to_string(violations) +
                       " max_excess=" + fmt(max_excess) + " elapsed=" + fmt(el) + "s");
}

int criterion_2() {
    const auto start = Clock::now();
    const QuadratureRule rule = balakrishnan_rule();
    double worst = 0.0;
    for (double lam : log_space(1e-4, 1e6, 30))
        for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double got = balakrishnan_scalar(lam, alpha, rule);
            const double want = std::pow(lam, alpha);
            worst = std::max(worst, std::fabs(got - want) / want);
        }
    const double el = seconds_since(start);
    return verdict(2, worst <= 1e-8 && el < 5.0,
                   "max_rel_err=" + fmt(worst) + " elapsed=" + fmt(el) + "s");
}

int criterion_3() {
    double worst_identity = 0.0;
    for (double t : {0.5, 1.0, 2.0})
        for (double alpha : {0.5, 0.7}) {
            const SubordinationMeasure meas = subordination_measure(t, alpha);
            for (int i = 0; i <= 200; ++i) {
                const double lam = 100.0 * i / 200.0;
                const double defect =
                    std::fabs(meas.transform(lam) - std::exp(-t * std::pow(lam, alpha)));
                worst_identity = std::max(worst_identity, defect);
            }
        }

    const Setup s = build(DensityModel::cauchy(2.0, 1), 40.0, 200, Boundary::Neumann);
    SplitMix64 rng(20260815);
    std::vector<double> f(200);
    double n2 = 0.0;
    for (int i = 0; i < 200; ++i) f[i] = 2.0 * rng.uniform01() - 1.0;
    for (int i = 0; i < 200; ++i) n2 += f[i] * f[i] * s.op.weights[i];
    for (auto& x : f) x /= std::sqrt(n2);

    double worst_op = 0.0;
    for (double t : {0.5, 1.0, 2.0})
        for (double alpha : {0.5, 0.7}) {
            const SubordinationMeasure meas = subordination_measure(t, alpha);
            const auto via_meas = subordinate_semigroup(s.dec, meas, f);
            const auto via_spec = apply_function(
                s.dec, [&](double lam) { return fractional_symbol(lam, t, alpha); }, f);
            double d2 = 0.0;
            for (int i = 0; i < 200; ++i) {
                const double d = via_meas[i] - via_spec[i];
                d2 += d * d * s.op.weights[i];
            }
            worst_op = std::max(worst_op, std::sqrt(d2));
        }
    return verdict(3, worst_identity <= 1e-6 && worst_op <= 1e-6,
                   "max_identity_err=" + fmt(worst_identity) +
                       " max_operator_err=" + fmt(worst_op));
}

int criterion_4() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (int n : {50, 200}) {
        const Setup s = build(DensityModel::cauchy(2.0, 1), 40.0, n, Boundary::Neumann);
        for (double t : {0.1, 1.0}) {
            const auto oracle = matrix_exponential_oracle(s.op, t);
            double frob = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double want = 0.0;
                    for (int k = 0; k < n; ++k)
                        want += std::exp(-t * s.dec.eigenvalues[k]) *
                                s.dec.psi[i + static_cast<std::size_t>(k) * n] *
                                s.dec.psi[j + static_cast<std::size_t>(k) * n];
                    const double diff = oracle[static_cast<std::size_t>(i) * n + j] - want;
                    frob += diff * diff;
                }
            worst = std::max(worst, std::sqrt(frob));
        }
    }
    const double el = seconds_since(start);
    return verdict(4, worst <= 1e-8 && el < 20.0,
                   "max_frobenius_err=" + fmt(worst) + " elapsed=" + fmt(el) + "s");
}

int criterion_5() {
    const Setup s = build(DensityModel::exp_smooth(1.0, 1), 6.0, 201, Boundary::Neumann);
    const int n = s.grid.n;
    bool pass = true;
    std::string detail;

    double worst_entry = 0.0, worst_mass = 0.0;
    std::string worst_alpha;
    for (double alpha : {0.5, 1.0, 1.5}) {
        for (double t : {0.25, 1.0}) {
            const KernelMatrix p = kernel(s.dec, t, alpha);
            if (p.min_entry < worst_entry) {
                worst_entry = p.min_entry;
                worst_alpha = fmt(alpha);
            }
            for (int i = 0; i < n; ++i) {
                double mass = 0.0;
                for (int j = 0; j < n; ++j) mass += p.at(i, j) * s.op.weights[j];
                worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
            }
        }
    }
    if (worst_entry < -1e-10) {
        pass = false;
        detail += "min_entry=" + fmt(worst_entry) + " at alpha=" + worst_alpha + " ";
    }
    if (worst_mass > 1e-8) {
        pass = false;
        detail += "mass_defect=" + fmt(worst_mass) + " ";
    }

    double worst_semi = 0.0;
    for (double alpha : {0.5, 1.0, 1.5})
        for (double t : {0.1, 0.5})
            for (double u : {0.1, 0.5}) {
                const KernelMatrix pt = kernel(s.dec, t, alpha);
                const KernelMatrix pu = kernel(s.dec, u, alpha);
                const KernelMatrix ps = kernel(s.dec, t + u, alpha);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double acc = 0.0;
                        for (int k = 0; k < n; ++k)
                            acc += pt.at(i, k) * s.op.weights[k] * pu.at(k, j);
                        worst_semi = std::max(worst_semi, std::fabs(acc - ps.at(i, j)));
                    }
            }
    if (worst_semi > 1e-8) {
        pass = false;
        detail += "semigroup_err=" + fmt(worst_semi) + " ";
    }
    if (pass)
        detail = "min_entry=" + fmt(worst_entry) + " mass_defect=" + fmt(worst_mass) +
                 " semigroup_err=" + fmt(worst_semi);
    return verdict(5, pass, detail);
}

int criterion_6() {
    const Grid1D grid = Grid1D::build(40.0, 4001);
    std::vector<DensityModel> models;
    for (double beta : {1.5, 2.0, 3.0}) models.push_back(DensityModel::cauchy(beta, 1));
    for (double a : {0.5, 1.0, 1.5}) models.push_back(DensityModel::exp_smooth(a, 1));
    for (double a : {2.0, 3.0}) models.push_back(DensityModel::exp_power(a, 1));
    bool pass = true;
    double worst_excess = -1e300, worst_hess = -1e300;
    std::string worst_model;
    for (const auto& m : models) {
        double sup = -1e300, sup_h = -1e300;
        for (double x : grid.nodes) {
            sup = std::max(sup, m.minus_AV_over_V(x));
            sup_h = std::max(sup_h, m.log_rho_second(x));
        }
        const double excess = sup - m.lyapunov_constant();
        const double hess_excess = sup_h - m.hessian_logrho_bound();
        if (excess > worst_excess) {
            worst_excess = excess;
            worst_model = m.family_name();
        }
        worst_hess = std::max(worst_hess, hess_excess);
        if (excess > 1e-12 || hess_excess > 1e-12) pass = false;
    }
    return verdict(6, pass,
                   "max_lyapunov_excess=" + fmt(worst_excess) + " (" + worst_model + ")" +
                       " max_hessian_excess=" + fmt(worst_hess));
}

int criterion_7() {
    const auto start = Clock::now();
    const Setup s = build(DensityModel::cauchy(2.0, 1), 40.0, 2001, Boundary::Neumann);
    const auto probes = probe_family(s.dec, s.V, 20260815);
    const double C_est = estimate_nash_constant(s.op, probes, s.c, 1, s.V);
    const NashRate rate{1, C_est};

    double worst = -1e300;
    std::string worst_in;
    for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
        const GammaCertificate cert = gamma_certificate(alpha, 0.5);
        for (const auto& p : probes) {
            const double n2 = weighted_norm2(p.f, s.op);
            const double v = -fractional_nash_gap(s.dec, p.f, alpha, cert, s.c, rate, s.V) / n2;
            if (v > worst) {
                worst = v;
                worst_in = p.id + ",alpha=" + fmt(alpha);
            }
        }
    }
    for (double alpha : {1.5, 2.0}) {
        for (const auto& p : probes) {
            const double n2 = weighted_norm2(p.f, s.op);
            const double v = -alpha_ge1_gap(s.dec, p.f, alpha, s.c, rate, s.V) / n2;
            if (v > worst) {
                worst = v;
                worst_in = p.id + ",alpha=" + fmt(alpha);
            }
        }
    }
    const double el = seconds_since(start);
    return verdict(7, worst <= 1e-8 && el < 60.0,
                   "probes=" + std::to_string(probes.size()) + " C_est=" + fmt(C_est) +
                       " max_violation=" + fmt(worst) + " at " + worst_in +
                       " elapsed=" + fmt(el) + "s");
}

int criterion_8() {
    const auto start = Clock::now();
    const Setup s = build(DensityModel::cauchy(2.0, 1), 40.0, 2001, Boundary::Neumann);
    const DiscreteOperator opB = assemble_schrodinger(s.model, s.grid);
    const SpectralDecomposition decB = eigendecompose(opB);
    const double margin_cut = 0.75 * s.grid.L;
    std::vector<int> interior;
    for (int i = 0; i < s.grid.n; ++i)
        if (std::fabs(s.grid.nodes[i]) <= margin_cut) interior.push_back(i);

    const auto ts = log_space(1e-3, 1e-2, 5);
    bool pass = true;
    std::string detail;
    for (double alpha : {0.5, 0.75, 1.0}) {
        const double ref = -1.0 / (2.0 * alpha);
        std::vector<double> supA, supB;
        for (double t : ts) {
            const double growth = std::exp(-std::pow(s.c, alpha) * t);
            const auto dA = kernel_diagonal(s.dec, t, alpha);
            const auto dB = kernel_diagonal(decB, t, alpha);
            double sa = 0.0, sb = 0.0;
            for (int i : interior) {
                sa = std::max(sa, dA[i] * growth / (s.V[i] * s.V[i]));
                sb = std::max(sb, dB[i] * growth);
            }
            supA.push_back(sa);
            supB.push_back(sb);
        }
        const double slopeA = fit_exponent(ts, supA).slope;
        const double slopeB = fit_exponent(ts, supB).slope;
        const bool okA = std::fabs(slopeA - ref) <= 0.15 * std::fabs(ref);
        const bool okB = std::fabs(slopeB - ref) <= 0.15 * std::fabs(ref);
        if (!(okA && okB)) pass = false;
        detail += "alpha=" + fmt(alpha) + ":slopes=" + fmt(slopeA) + "/" + fmt(slopeB) +
                  ",ref=" + fmt(ref) + " ";
    }
    const double el = seconds_since(start);
    if (el >= 300.0) pass = false;
    return verdict(8, pass, detail + "elapsed=" + fmt(el) + "s");
}

int criterion_9() {
    const Setup s = build(DensityModel::cauchy(2.0, 1), 40.0, 2001, Boundary::Neumann);
    const auto ts = log_space(1e-2, 1.0, 10);
    bool pass = true;
    std::string detail;
    for (double alpha : {1.0, 1.5, 2.0}) {
        const double ca = c_alpha_estimate(s.dec, s.V, alpha, 0.25);
        std::vector<double> ratios;
        bool finite = true;
        for (double t : ts) {
            const KernelMatrix kern = kernel(s.dec, t, alpha);
            const double r = bound_ratio_alpha_ge1(s.grid, kern, s.V, s.c, ca, 0.25);
            if (!std::isfinite(r) || r < 0.0) finite = false;
            ratios.push_back(r);
        }
        double worst_factor = 0.0;
        for (std::size_t k = 0; k + 1 < ratios.size(); ++k)
            if (ratios[k] > 0.0) worst_factor = std::max(worst_factor, ratios[k + 1] / ratios[k]);
        if (!finite || worst_factor > 1.02) pass = false;
        detail += "alpha=" + fmt(alpha) + ":c_alpha=" + fmt(ca) +
                  ",max_factor=" + fmt(worst_factor) + (finite ? "" : ",nonfinite") + " ";
    }
    return verdict(9, pass, detail);
}

std::map<std::string, std::string> dir_bytes(const std::filesystem::path& dir) {
    std::map<std::string, std::string> out;
    if (!std::filesystem::exists(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        out[entry.path().filename().string()] =
            std::string(std::istreambuf_iterator<char>(in), {});
    }
    return out;
}

int criterion_10(const char* nkl_path) {
    if (!nkl_path) return verdict(10, false, "missing path to the nkl binary");
    const auto dir = std::filesystem::temp_directory_path() /
                     ("nkl_accept10_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const std::string cmd =
        std::string("\"") + nkl_path + "\" verify-all --out \"" + dir.string() + "\" > /dev/null";

    const int raw1 = std::system(cmd.c_str());
    const int exit1 = WIFEXITED(raw1) ? WEXITSTATUS(raw1) : -1;
    const auto bytes1 = dir_bytes(dir);
    const int raw2 = std::system(cmd.c_str());
    const int exit2 = WIFEXITED(raw2) ? WEXITSTATUS(raw2) : -1;
    const auto bytes2 = dir_bytes(dir);

    const bool same = bytes1 == bytes2 && !bytes1.empty();
    const bool pass = exit1 == 0 && exit2 == 0 && same;
    std::string detail = "exit1=" + std::to_string(exit1) + " exit2=" + std::to_string(exit2) +
                         " files=" + std::to_string(bytes1.size()) +
                         (same ? " byte-identical" : " BYTES DIFFER");
    std::filesystem::remove_all(dir);
    return verdict(10, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1-10> [path-to-nkl]\n");
        return 2;
    }
    const int k = std::atoi(argv[1]);
    try {
        switch (k) {
            case 1: return criterion_1();
            case 2: return criterion_2();
            case 3: return criterion_3();
            case 4: return criterion_4();
            case 5: return criterion_5();
            case 6: return criterion_6();
            case 7: return criterion_7();
            case 8: return criterion_8();
            case 9: return criterion_9();
            case 10: return criterion_10(argc > 2 ? argv[2] : nullptr);
            default:
                std::fprintf(stderr, "unknown criterion %d\n", k);
                return 2;
        }
    } catch (const std::exception& e) {
        std::printf("criterion %d: FAIL (exception: %s)\n", k, e.what());
        return 1;
    }
}
