#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nkl/bounds.hpp"
#include "nkl/common.hpp"
#include "nkl/config.hpp"
#include "nkl/csvio.hpp"
#include "nkl/fractional.hpp"
#include "nkl/nash.hpp"
#include "nkl/verify.hpp"

namespace {

using namespace nkl;

struct Flags {
    std::optional<std::string> config, model, bc, out;
    std::optional<double> beta, a, K_cut, L, epsilon, margin;
    std::optional<int> d, n;
    std::optional<std::uint64_t> seed;
    std::vector<double> alpha, t;
    std::vector<double> x;
};

void add_common_options(CLI::App* sub, Flags& fl) {
    sub->add_option("--config", fl.config, "JSON configuration file");
    sub->add_option("--model", fl.model, "density family")
        ->check(CLI::IsMember({"cauchy", "exp_smooth", "exp_power", "gauss"}));
    sub->add_option("--beta", fl.beta, "Cauchy exponent");
    sub->add_option("--a", fl.a, "exponential-family exponent");
    sub->add_option("--d", fl.d, "rate dimension");
    sub->add_option("--K-cut", fl.K_cut, "threshold radius (exp_power; 0 = smallest admissible)");
    sub->add_option("--L", fl.L, "half-width of the grid");
    sub->add_option("--n", fl.n, "number of grid nodes");
    sub->add_option("--bc", fl.bc, "boundary condition")
        ->check(CLI::IsMember({"neumann", "dirichlet"}));
    sub->add_option("--alpha", fl.alpha, "fractional orders")->delimiter(',');
    sub->add_option("--t", fl.t, "time points")->delimiter(',');
    sub->add_option("--epsilon", fl.epsilon, "recursion parameter in (0,1)");
    sub->add_option("--margin", fl.margin, "interior margin fraction");
    sub->add_option("--seed", fl.seed, "probe RNG seed");
    sub->add_option("--out", fl.out, "output directory");
}

RunConfig make_config(const Flags& fl) {
    RunConfig cfg = fl.config ? load_config_file(*fl.config) : RunConfig::defaults();

    if (fl.model || fl.beta || fl.a || fl.d || fl.K_cut) {
        Family fam = cfg.model.family;
        if (fl.model) {
            if (*fl.model == "cauchy") fam = Family::Cauchy;
            else if (*fl.model == "exp_smooth") fam = Family::ExpSmooth;
            else if (*fl.model == "exp_power") fam = Family::ExpPower;
            else fam = Family::Gauss;
        }
        const double beta = fl.beta.value_or(cfg.model.beta);
        const double a = fl.a.value_or(fam == cfg.model.family ? cfg.model.a
                                       : fam == Family::ExpSmooth ? 1.0 : 2.0);
        const int d = fl.d.value_or(cfg.model.d);
        const double kcut = fl.K_cut.value_or(
            cfg.model.family == Family::ExpPower && fam == Family::ExpPower ? cfg.model.K_cut
                                                                            : 0.0);
        switch (fam) {
            case Family::Cauchy: cfg.model = DensityModel::cauchy(beta, d); break;
            case Family::ExpSmooth: cfg.model = DensityModel::exp_smooth(a, d); break;
            case Family::ExpPower: cfg.model = DensityModel::exp_power(a, d, kcut); break;
            case Family::Gauss: cfg.model = DensityModel::gauss(d); break;
        }
    }

    if (fl.L) {
        cfg.L = *fl.L;
        cfg.grid_overridden = true;
    }
    if (fl.n) {
        cfg.n = *fl.n;
        cfg.grid_overridden = true;
    }
    if (fl.bc) cfg.bc = *fl.bc == "neumann" ? Boundary::Neumann : Boundary::Dirichlet;
    if (!fl.alpha.empty()) cfg.alpha_list = fl.alpha;
    if (!fl.t.empty()) cfg.t_list = fl.t;
    if (fl.epsilon) cfg.epsilon = *fl.epsilon;
    if (fl.margin) cfg.interior_margin = *fl.margin;
    if (fl.seed) cfg.seed = *fl.seed;
    if (fl.out) cfg.output_dir = *fl.out;

    cfg.apply_family_grid_defaults();
    cfg.validate();
    cfg.make_grid();  // surfaces grid violations (e.g. --n 2) as usage errors
    return cfg;
}

int cmd_model_inspect(const RunConfig& cfg, const std::vector<double>& xs) {
    CsvWriter csv("");  // stdout only: never closed into a file
    csv.header({"x", "rho", "grad_log_rho", "V", "minus_AV_over_V", "schrodinger_q"});
    for (double x : xs) {
        const ModelPointReport r = inspect_point(cfg.model, x);
        csv.row({format_double(r.x), format_double(r.rho), format_double(r.grad_log_rho),
                 format_double(r.V), format_double(r.minus_AV_over_V),
                 format_double(r.schrodinger_q)});
    }
    std::fputs(csv.text().c_str(), stdout);
    return 0;
}

struct CliSetup {
    Grid1D grid;
    DiscreteOperator op;
    SpectralDecomposition dec;
    std::vector<double> V;
    double c = 0.0;
};

CliSetup build_cli_setup(const RunConfig& cfg) {
    CliSetup s;
    s.grid = cfg.make_grid();
    s.op = assemble_divergence_form(cfg.model, s.grid, cfg.bc);
    s.dec = eigendecompose(s.op);
    s.V.resize(s.grid.n);
    for (int i = 0; i < s.grid.n; ++i) s.V[i] = cfg.model.V(s.grid.nodes[i]);
    s.c = cfg.model.lyapunov_constant();
    return s;
}

int cmd_nash(const RunConfig& cfg) {
    CliSetup s = build_cli_setup(cfg);
    const std::vector<Probe> probes = probe_family(s.dec, s.V, cfg.seed);
    const double C_est = estimate_nash_constant(s.op, probes, s.c, cfg.model.d, s.V);
    const NashRate rate{cfg.model.d, C_est};

    std::filesystem::create_directories(cfg.output_dir);
    CsvWriter csv(cfg.output_dir + "/nash.csv");
    csv.header({"probe_id", "alpha", "gamma", "lhs", "rhs", "gap"});
    bool ok = true;
    for (double alpha : cfg.alpha_list) {
        double gamma = 1.0;
        GammaCertificate cert;
        if (alpha < 1.0) {
            cert = gamma_certificate(alpha, cfg.epsilon);
            gamma = cert.gamma;
        }
        for (const auto& p : probes) {
            const double n2 = weighted_norm2(p.f, s.op);
            double l1 = 0.0;
            for (int i = 0; i < s.grid.n; ++i)
                l1 += std::fabs(p.f[i]) * s.V[i] * s.op.weights[i];
            const double r = n2 / (l1 * l1);
            double lhs, gap;
            if (alpha < 1.0) {
                lhs = gamma * n2 * std::pow(rate.B(gamma * r), alpha);
                gap = fractional_nash_gap(s.dec, p.f, alpha, cert, s.c, rate, s.V);
            } else if (alpha == 1.0) {
                lhs = n2 * rate.B(r);
                gap = nash_gap(s.op, p.f, s.c, rate, s.V);
            } else {
                lhs = n2 * std::pow(rate.B(r), alpha);
                gap = alpha_ge1_gap(s.dec, p.f, alpha, s.c, rate, s.V);
            }
            if (gap < -1e-8 * n2) ok = false;
            csv.row({p.id, format_double(alpha), format_double(gamma), format_double(lhs),
                     format_double(gap + lhs), format_double(gap)});
        }
    }
    csv.close();
    std::fputs(csv.text().c_str(), stdout);
    return ok ? 0 : 1;
}

int cmd_kernel_bound(const RunConfig& cfg) {
    CliSetup s = build_cli_setup(cfg);
    std::filesystem::create_directories(cfg.output_dir);
    nlohmann::ordered_json summary;
    summary["config_digest"] = cfg.digest();
    summary["fits"] = nlohmann::ordered_json::array();
    for (double alpha : cfg.alpha_list) {
        const bool ge1 = alpha >= 1.0;
        const double ca = ge1 ? c_alpha_estimate(s.dec, s.V, alpha, cfg.interior_margin) : 0.0;
        const double branch = ge1 ? std::max(ca, std::pow(s.c, alpha)) : std::pow(s.c, alpha);
        CsvWriter csv(cfg.output_dir + "/kernel_bound_alpha_" + format_double(alpha) + ".csv");
        csv.header({"t", "sup_ratio", "bound_branch"});
        std::vector<double> ratios;
        for (double t : cfg.t_list) {
            const KernelMatrix kern = kernel(s.dec, t, alpha);
            const double r = ge1 ? bound_ratio_alpha_ge1(s.grid, kern, s.V, s.c, ca,
                                                         cfg.interior_margin)
                                 : bound_ratio(s.grid, kern, s.V, s.c, cfg.interior_margin);
            ratios.push_back(r);
            csv.row({format_double(t), format_double(r), format_double(branch)});
        }
        csv.close();
        nlohmann::ordered_json fj;
        fj["alpha"] = alpha;
        fj["reference_exponent"] = -cfg.model.d / (2.0 * alpha);
        if (cfg.t_list.size() >= 5) {
            const ExponentFit fit = fit_exponent(cfg.t_list, ratios);
            fj["slope"] = fit.slope;
            fj["C_fit"] = fit.C_fit;
        }
        if (ge1) fj["c_alpha"] = ca;
        fj["bound_branch"] = branch;
        summary["fits"].push_back(std::move(fj));
    }
    const std::string text = summary.dump(2) + "\n";
    std::ofstream js(cfg.output_dir + "/kernel_bound.json", std::ios::binary);
    js << text;
    std::fputs(text.c_str(), stdout);
    return 0;
}

int run_named_scenarios(const RunConfig& cfg, const std::vector<std::string>& names) {
    std::vector<VerificationReport> reports;
    for (const auto& name : names) {
        VerificationReport rep;
        try {
            rep = run_scenario(name, cfg);
        } catch (const NumericalDiagnostic& e) {
            rep.scenario = name;
            rep.config_digest = cfg.digest();
            rep.error = e.what();
            rep.finalize();
        }
        reports.push_back(std::move(rep));
    }
    write_reports(reports, cfg);
    const std::string text = summary_json(reports, cfg) + "\n";
    std::fputs(text.c_str(), stdout);
    return all_pass(reports) ? 0 : 1;
}

int cmd_verify_all(const RunConfig& cfg) {
    const std::vector<VerificationReport> reports = run_all(cfg);
    write_reports(reports, cfg);
    const std::string text = summary_json(reports, cfg) + "\n";
    std::fputs(text.c_str(), stdout);
    return all_pass(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification laboratory for fractional drift-diffusion kernels"};
    app.require_subcommand(1);

    Flags fl;
    CLI::App* inspect = app.add_subcommand("model-inspect", "print density model data at points");
    add_common_options(inspect, fl);
    inspect->add_option("--x", fl.x, "evaluation points")->delimiter(',');

    CLI::App* nash = app.add_subcommand("nash", "run Nash-inequality gap sweeps");
    add_common_options(nash, fl);

    CLI::App* kb = app.add_subcommand("kernel-bound", "kernel ratio sweep and exponent fit");
    add_common_options(kb, fl);

    CLI::App* fc = app.add_subcommand("fractional-check",
                                      "resolvent-integral and subordination cross-checks");
    add_common_options(fc, fl);

    CLI::App* va = app.add_subcommand("verify-all", "run every registered scenario");
    add_common_options(va, fl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        const RunConfig cfg = make_config(fl);
        if (inspect->parsed()) {
            return cmd_model_inspect(cfg, fl.x.empty() ? std::vector<double>{0.0} : fl.x);
        }
        if (nash->parsed()) return cmd_nash(cfg);
        if (kb->parsed()) return cmd_kernel_bound(cfg);
        if (fc->parsed()) return run_named_scenarios(cfg, {"balakrishnan", "subordination"});
        if (va->parsed()) return cmd_verify_all(cfg);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalDiagnostic& e) {
        std::cerr << "numerical diagnostic: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
