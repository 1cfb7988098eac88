#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "otap/harness.hpp"
#include "otap/kernels.hpp"

namespace {

struct PsiOptions {
    std::string family = "exp_power";
    double alpha = 2.0;
    double r = 0.5;
    double extra = 0.0;

    otap::PsiSpec build() const {
        double e = extra;
        if (family == "exp_power_log" && e == 0.0) e = 2.0;
        return otap::PsiSpec::from_tag(family, alpha, r, e);
    }
};

void add_psi_options(CLI::App* app, PsiOptions& opts) {
    app->add_option("--family", opts.family,
                    "psi family: exp_power | exp_power_log | power_law");
    app->add_option("--alpha", opts.alpha, "decay rate alpha");
    app->add_option("--r", opts.r, "decay exponent r");
    app->add_option("--extra", opts.extra,
                    "gamma (exp_power) or K (exp_power_log)");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit_text(const std::string& text, const std::string& path) {
    if (path.empty())
        std::cout << text;
    else
        otap::write_file(path, text);
}

int run_verify(const otap::ExperimentConfig& cfg) {
    otap::BoundReport rep = otap::verify(cfg);
    std::string text = otap::emit_report(rep, cfg.output_format);
    emit_text(text, cfg.output_path);
    if (!rep.consts_valid)
        std::cerr << "conditions not met: " << rep.consts_error << "\n";
    return rep.all_chains_ok() ? 0 : 1;
}

int run_sweep(const otap::ExperimentConfig& cfg) {
    otap::RatioTable table = otap::sweep_corollary(cfg);
    emit_text(otap::emit_ratio_table(table, cfg.output_format), cfg.output_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best orthogonal trigonometric approximation toolkit"};
    app.require_subcommand(1);

    // psi-info
    auto* psi_info = app.add_subcommand(
        "psi-info", "characteristics table eta/mu and subclass evidence");
    PsiOptions psi_opts;
    int info_t_min = 1, info_t_max = 64;
    double k_floor = 0.5;
    add_psi_options(psi_info, psi_opts);
    psi_info->add_option("--t-min", info_t_min);
    psi_info->add_option("--t-max", info_t_max);
    psi_info->add_option("--k-floor", k_floor, "floor for eta(t)-t evidence");

    // kernel-eval
    auto* kernel_eval =
        app.add_subcommand("kernel-eval", "kernel values and norm checks");
    std::string kernel_kind = "vallee-poussin";
    int kernel_order = 1;
    double kernel_beta = 0.0, kernel_t = 0.0;
    bool l1_check = false;
    kernel_eval->add_option("--kind", kernel_kind, "dirichlet | vallee-poussin");
    kernel_eval->add_option("--order", kernel_order, "k (dirichlet) or m");
    kernel_eval->add_option("--beta", kernel_beta);
    kernel_eval->add_option("--t", kernel_t, "evaluation point");
    kernel_eval->add_flag("--l1-check", l1_check, "report ||V_m||_1 vs 3*pi");

    // extremal-build
    auto* extremal =
        app.add_subcommand("extremal-build", "emit an extremal function as JSON");
    PsiOptions extremal_psi;
    std::string extremal_kind = "fstar-pn";
    int extremal_n = 9;
    double extremal_p = 2.0, extremal_beta = 0.0;
    std::string extremal_out;
    add_psi_options(extremal, extremal_psi);
    extremal->add_option("--kind", extremal_kind,
                         "fstar-pn | fstar-m | fdoublestar");
    extremal->add_option("-n,--n", extremal_n, "n (fstar-pn) or m");
    extremal->add_option("-p,--p", extremal_p);
    extremal->add_option("--beta", extremal_beta);
    extremal->add_option("-o,--output", extremal_out);

    // approx
    auto* approx_cmd =
        app.add_subcommand("approx", "single best-orthogonal-approximation query");
    std::string approx_input, approx_method = "greedy", approx_s = "2";
    int approx_m = 0, approx_swaps = -1;
    approx_cmd->add_option("-i,--input", approx_input, "TrigPoly JSON file")
        ->required();
    approx_cmd->add_option("-m,--m", approx_m)->required();
    approx_cmd->add_option("-s,--s", approx_s, "metric exponent or 'inf'");
    approx_cmd->add_option("--method", approx_method, "exact | greedy");
    approx_cmd->add_option("--swaps", approx_swaps);

    // verify / sweep
    auto* verify_cmd = app.add_subcommand(
        "verify", "evaluate a theorem's inequality chain over an n range");
    auto* sweep_cmd =
        app.add_subcommand("sweep", "corollary order-ratio boundedness sweep");
    std::string config_path, mode_override, output_path, output_format;
    std::vector<int> n_range;
    for (CLI::App* cmd : {verify_cmd, sweep_cmd}) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--mode", mode_override);
        cmd->add_option("-o,--output", output_path);
        cmd->add_option("--format", output_format, "csv | json");
        cmd->add_option("--n-range", n_range, "n_min n_max [step]");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (psi_info->parsed()) {
            otap::PsiSpec spec = psi_opts.build();
            std::vector<double> grid;
            std::printf("t,psi,eta,eta_gap,mu\n");
            for (int t = info_t_min; t <= info_t_max; ++t) {
                otap::PsiCharacteristics c = otap::mu(spec, t);
                grid.push_back(t);
                std::printf("%d,%.17g,%.17g,%.17g,%.17g\n", t,
                            otap::psi_eval(spec, t), c.eta, c.eta_gap, c.mu);
            }
            otap::ClassifyFlags flags = otap::classify(spec, grid, k_floor);
            std::printf(
                "# in_M_plus_inf=%d in_M_dprime_inf=%d "
                "psi_over_dpsi_increasing=%d (sampled evidence, grid [%d,%d], "
                "K_floor=%g)\n",
                flags.in_M_plus_inf, flags.in_M_dprime_inf,
                flags.psi_over_dpsi_increasing, info_t_min, info_t_max, k_floor);
            return 0;
        }
        if (kernel_eval->parsed()) {
            otap::QuadratureSpec quad;
            if (kernel_kind == "vallee-poussin") {
                otap::KernelHandle h = otap::vallee_poussin(kernel_order);
                std::printf("V_%d(%.17g) = %.17g\n", kernel_order, kernel_t,
                            h.poly.evaluate(kernel_t).real());
                if (l1_check) {
                    otap::KernelL1Check chk =
                        otap::kernel_l1_check(kernel_order, quad);
                    std::printf("||V_%d||_1 = %.17g (<= 3*pi: %s)\n",
                                kernel_order, chk.norm,
                                chk.holds ? "yes" : "NO");
                }
            } else if (kernel_kind == "dirichlet") {
                otap::KernelHandle h =
                    otap::dirichlet_beta(kernel_order, kernel_beta);
                std::printf("D_{%d,%g}(%.17g) = %.17g (closed form %.17g)\n",
                            kernel_order, kernel_beta, kernel_t,
                            h.poly.evaluate(kernel_t).real(),
                            otap::dirichlet_beta_closed_form(
                                kernel_order, kernel_beta, kernel_t));
            } else {
                throw std::invalid_argument("unknown kernel kind: " + kernel_kind);
            }
            return 0;
        }
        if (extremal->parsed()) {
            otap::ClassSpec cls{extremal_psi.build(), extremal_beta, extremal_p};
            otap::TrigPoly poly;
            if (extremal_kind == "fstar-pn") {
                otap::BoundConstants consts =
                    otap::build_constants(cls, extremal_n);
                poly = otap::build_fstar_pn(cls, extremal_n, consts);
            } else if (extremal_kind == "fstar-m") {
                poly = otap::build_fstar_m(cls, extremal_n);
            } else if (extremal_kind == "fdoublestar") {
                poly = otap::build_fdoublestar_m(extremal_n);
            } else {
                throw std::invalid_argument("unknown extremal kind: " +
                                            extremal_kind);
            }
            emit_text(poly.to_json() + "\n", extremal_out);
            return 0;
        }
        if (approx_cmd->parsed()) {
            otap::TrigPoly f = otap::TrigPoly::from_json(read_text(approx_input));
            double s = approx_s == "inf" ? otap::ClassSpec::infinity()
                                         : std::stod(approx_s);
            otap::QuadratureSpec quad;
            otap::ApproxResult res =
                approx_method == "exact"
                    ? otap::best_orthogonal_exact(f, approx_m, s, quad)
                    : otap::best_orthogonal_greedy(f, approx_m, s, quad,
                                                   approx_swaps);
            std::printf("value = %.17g\ngamma =", res.value);
            for (int k : res.gamma) std::printf(" %d", k);
            std::printf("\n");
            return 0;
        }
        // verify / sweep share config handling.
        otap::ExperimentConfig cfg =
            config_path.empty() ? otap::ExperimentConfig{}
                                : otap::ExperimentConfig::from_json_file(config_path);
        if (!mode_override.empty()) cfg.mode = otap::mode_from_string(mode_override);
        if (!output_path.empty()) cfg.output_path = output_path;
        if (!output_format.empty()) cfg.output_format = output_format;
        if (!n_range.empty()) {
            if (n_range.size() < 2)
                throw std::invalid_argument("--n-range needs n_min n_max [step]");
            cfg.n_min = n_range[0];
            cfg.n_max = n_range[1];
            cfg.n_step = n_range.size() > 2 ? n_range[2] : 1;
        }
        if (verify_cmd->parsed()) return run_verify(cfg);
        if (sweep_cmd->parsed()) return run_sweep(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
