// Command line front end: exact failure probabilities, Monte Carlo
// validation, sweeps over m, and asymptotic rate/threshold queries.
// JSON results go to stdout (one line per invocation); human-readable
// progress and errors go to stderr.

#include "CLI11.hpp"
#include "json.hpp"

#include "boxl1/angles.hpp"
#include "boxl1/asympt.hpp"
#include "boxl1/errors.hpp"
#include "boxl1/exact.hpp"
#include "boxl1/simulate.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::ordered_json;
using namespace boxl1;

Model parse_model(const std::string& s) {
    return s == "box" ? Model::Box : Model::Binary;
}

SimMethod parse_method(const std::string& s) {
    if (s == "direct") return SimMethod::DirectSolve;
    if (s == "both") return SimMethod::Both;
    return SimMethod::Certificate;
}

// Shortest-width decimal that round-trips a double; used for CSV cells so
// repeated runs with the same flags produce byte-identical files.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Same 64-bit mixer the simulator uses for stream derivation; applied to
// seed ^ m so each sweep row gets an independent, reproducible stream.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool dims_ok(const ModelKind& mk, const ProblemDims& dims) {
    try {
        validate_problem(mk, dims);
        return true;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return false;
    }
}

// Record skeleton shared by the exact/sim/sweep commands. mu is derived
// from the integer k_mu flag and echoed back for box runs.
ordered_json base_record(const std::string& model, const ModelKind& mk,
                         const ProblemDims& dims) {
    ordered_json j;
    j["model"] = model;
    j["k"] = dims.k;
    j["m"] = dims.m;
    j["n"] = dims.n;
    j["k_mu"] = mk.kind == Model::Box ? mk.k_mu : 0;
    if (mk.kind == Model::Box && dims.n > dims.k)
        j["mu"] = 1.0 - double(mk.k_mu) / double(dims.n - dims.k);
    else
        j["mu"] = nullptr;
    j["p_err_theory"] = nullptr;
    j["p_err_sim"] = nullptr;
    j["ci_lo"] = nullptr;
    j["ci_hi"] = nullptr;
    j["trials"] = nullptr;
    j["failures"] = nullptr;
    j["lp_errors"] = nullptr;
    j["disagreements"] = nullptr;
    j["quad_err"] = nullptr;
    return j;
}

QuadConfig quad_config_for(double tol) {
    QuadConfig cfg;
    if (tol > 0.0) {
        cfg.abs_tol = tol;
        cfg.rel_tol = 10.0 * tol;
        cfg.tail_tol = tol / 100.0;
    }
    return cfg;
}

struct GridArgs {
    std::string model = "binary";
    int k = 0;
    int m = 0;
    int n = 0;
    int kmu = 0;
    double tol = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::string method = "certificate";
    bool shuffle = false;
    double confidence = 0.95;
    int m_from = 0;
    int m_to = 0;
    std::string out;
};

int run_exact(const GridArgs& a) {
    const ModelKind mk{parse_model(a.model), a.kmu};
    const ProblemDims dims{a.n, a.m, a.k};
    if (!dims_ok(mk, dims)) return 2;
    if (a.m < 1) {
        std::cerr << "error: --m must be at least 1\n";
        return 2;
    }
    const ExactResult res = p_err_exact(mk, dims, quad_config_for(a.tol));
    ordered_json j = base_record(a.model, mk, dims);
    j["p_err_theory"] = res.p;
    j["quad_err"] = res.quadrature_err_bound;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_sim(const GridArgs& a) {
    const ModelKind mk{parse_model(a.model), a.kmu};
    const ProblemDims dims{a.n, a.m, a.k};
    if (!dims_ok(mk, dims)) return 2;
    if (a.trials < 1) {
        std::cerr << "error: --trials must be at least 1\n";
        return 2;
    }
    SimConfig cfg;
    cfg.model = mk;
    cfg.dims = dims;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.method = parse_method(a.method);
    cfg.shuffle_support = a.shuffle;
    cfg.confidence = a.confidence;
    const SimSummary s = run_trials(cfg);
    ordered_json j = base_record(a.model, mk, dims);
    j["p_err_sim"] = s.p_hat;
    j["ci_lo"] = s.ci_lo;
    j["ci_hi"] = s.ci_hi;
    j["trials"] = s.trials;
    j["failures"] = s.failures;
    j["lp_errors"] = s.lp_errors;
    if (cfg.method == SimMethod::Both) j["disagreements"] = s.disagreements;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_sweep(const GridArgs& a) {
    const ModelKind mk{parse_model(a.model), a.kmu};
    if (a.m_from < 1 || a.m_to < a.m_from || a.m_to > a.n) {
        std::cerr << "error: need 1 <= --m-from <= --m-to <= --n\n";
        return 2;
    }
    if (!dims_ok(mk, ProblemDims{a.n, a.m_from, a.k})) return 2;
    if (a.out.empty()) {
        std::cerr << "error: --out must name a file\n";
        return 2;
    }
    std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
    if (!f) {
        std::cerr << "error: cannot open " << a.out << " for writing\n";
        return 3;
    }
    try {
        f << "m,p_err_theory,p_err_sim,ci_lo,ci_hi,trials,failures\n";
        for (int m = a.m_from; m <= a.m_to; ++m) {
            const ProblemDims dims{a.n, m, a.k};
            const ExactResult res = p_err_exact(mk, dims, quad_config_for(a.tol));
            std::ostringstream row;
            row << m << ',' << fmt_double(res.p) << ',';
            if (a.trials > 0) {
                SimConfig cfg;
                cfg.model = mk;
                cfg.dims = dims;
                cfg.trials = a.trials;
                cfg.seed = mix64(a.seed ^ static_cast<std::uint64_t>(m));
                cfg.method = parse_method(a.method);
                cfg.confidence = a.confidence;
                const SimSummary s = run_trials(cfg);
                row << fmt_double(s.p_hat) << ',' << fmt_double(s.ci_lo) << ','
                    << fmt_double(s.ci_hi) << ',' << s.trials << ',' << s.failures;
                std::cerr << "sweep m=" << m << ": theory=" << res.p
                          << " sim=" << s.p_hat << "\n";
            } else {
                row << ",,,,";
                std::cerr << "sweep m=" << m << ": theory=" << res.p << "\n";
            }
            f << row.str() << "\n";
            if (!f) throw DomainError("write to " + a.out + " failed");
        }
        f.close();
        if (!f) throw DomainError("write to " + a.out + " failed");
    } catch (...) {
        f.close();
        std::remove(a.out.c_str());
        throw;
    }
    return 0;
}

struct RateArgs {
    std::string model = "binary";
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    double tol = 1e-9;
};

bool rate_params_ok(const RateArgs& a, bool need_alpha) {
    if (need_alpha && !(a.alpha > 0.0 && a.alpha <= 1.0)) {
        std::cerr << "error: --alpha must lie in (0, 1]\n";
        return false;
    }
    if (!(a.beta > 0.0 && a.beta < 1.0)) {
        std::cerr << "error: --beta must lie in (0, 1)\n";
        return false;
    }
    if (a.model == "box" && !(a.mu > 0.0 && a.mu < 1.0)) {
        std::cerr << "error: --mu must lie in (0, 1) for the box model\n";
        return false;
    }
    if (!(a.tol > 0.0)) {
        std::cerr << "error: --tol must be positive\n";
        return false;
    }
    return true;
}

// Shared tail of the rate/pt commands: evaluate the three exponent pieces
// at the optimal rho1 and surface the inner optimizers alongside.
void append_rate_detail(ordered_json& j, Model mdl, const RatePoint& rp,
                        double tol) {
    double mu_y = 0.0, gamma = 0.0;
    const double com = psi_com(mdl, rp.alpha, rp.beta, rp.mu_box, rp.rho1);
    const double inn = psi_int(mdl, rp.alpha, rp.beta, rp.mu_box, rp.rho1, tol, &mu_y);
    const double ext = psi_ext(rp.alpha, rp.rho1, tol, &gamma);
    j["rho1"] = rp.rho1;
    j["psi_com"] = com;
    j["psi_int"] = inn;
    j["psi_ext"] = ext;
    j["mu_y"] = mu_y;
    j["gamma"] = gamma;
}

int run_rate(const RateArgs& a) {
    if (!rate_params_ok(a, true)) return 2;
    const Model mdl = parse_model(a.model);
    const RatePoint rp = ldp_rate(mdl, a.alpha, a.beta, a.mu, a.tol);
    ordered_json j;
    j["model"] = a.model;
    j["alpha"] = a.alpha;
    j["beta"] = a.beta;
    if (mdl == Model::Box) j["mu"] = a.mu; else j["mu"] = nullptr;
    j["exponent"] = rp.exponent;
    append_rate_detail(j, mdl, rp, a.tol);
    std::cout << j.dump() << "\n";
    return 0;
}

int run_pt(const RateArgs& a) {
    if (!rate_params_ok(a, false)) return 2;
    const Model mdl = parse_model(a.model);
    const double alpha_w = pt_alpha(mdl, a.beta, a.mu, a.tol);
    const RatePoint rp = ldp_rate(mdl, alpha_w, a.beta, a.mu, a.tol);
    ordered_json j;
    j["model"] = a.model;
    j["beta"] = a.beta;
    if (mdl == Model::Box) j["mu"] = a.mu; else j["mu"] = nullptr;
    j["alpha_w"] = alpha_w;
    j["exponent"] = rp.exponent;
    append_rate_detail(j, mdl, rp, a.tol);
    std::cout << j.dump() << "\n";
    return 0;
}

void add_model_flags(CLI::App* cmd, GridArgs& a, bool with_m) {
    cmd->add_option("--model", a.model, "Solution model: binary or box")
        ->required()
        ->check(CLI::IsMember({"binary", "box"}));
    cmd->add_option("--k", a.k, "Number of interior entries (binary: number of ones)")
        ->required();
    if (with_m)
        cmd->add_option("--m", a.m, "Number of measurements (rows of A)")->required();
    cmd->add_option("--n", a.n, "Signal dimension (columns of A)")->required();
    cmd->add_option("--kmu", a.kmu,
                    "Number of entries fixed at one (box model only); "
                    "mu = 1 - kmu/(n - k) is derived and echoed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Failure probabilities for l1 recovery of binary and "
                 "box-constrained sparse solutions of random underdetermined "
                 "Gaussian systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "boxl1 1.0.0");

    GridArgs ex_args, sim_args, sweep_args;
    RateArgs rate_args, pt_args;

    CLI::App* ex = app.add_subcommand(
        "exact", "Exact failure probability from the finite-dimensional face sums");
    add_model_flags(ex, ex_args, true);
    ex->add_option("--tol", ex_args.tol,
                   "Absolute quadrature tolerance per angle integral "
                   "(default 1e-10)");

    CLI::App* sim = app.add_subcommand(
        "sim", "Monte Carlo estimate of the failure probability via LP recovery");
    add_model_flags(sim, sim_args, true);
    sim->add_option("--trials", sim_args.trials, "Number of random instances")
        ->required();
    sim->add_option("--seed", sim_args.seed, "Base RNG seed")->required();
    sim->add_option("--method", sim_args.method,
                    "Failure detection: certificate, direct, or both")
        ->check(CLI::IsMember({"certificate", "direct", "both"}));
    sim->add_flag("--shuffle-support", sim_args.shuffle,
                  "Randomly permute the support before the direct solve");
    sim->add_option("--confidence", sim_args.confidence,
                    "Wilson interval confidence level (default 0.95)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "CSV of theory (and optionally simulation) over a range of m");
    add_model_flags(sweep, sweep_args, false);
    sweep->add_option("--m-from", sweep_args.m_from, "First m (inclusive)")
        ->required();
    sweep->add_option("--m-to", sweep_args.m_to, "Last m (inclusive)")->required();
    sweep->add_option("--trials", sweep_args.trials,
                      "Trials per row; 0 (default) skips simulation");
    sweep->add_option("--seed", sweep_args.seed,
                      "Base seed; each row derives its own stream from it");
    sweep->add_option("--method", sweep_args.method,
                      "Failure detection: certificate, direct, or both")
        ->check(CLI::IsMember({"certificate", "direct", "both"}));
    sweep->add_option("--confidence", sweep_args.confidence,
                      "Wilson interval confidence level (default 0.95)");
    sweep->add_option("--tol", sweep_args.tol,
                      "Absolute quadrature tolerance per angle integral");
    sweep->add_option("--out", sweep_args.out, "Output CSV path")->required();

    CLI::App* rate = app.add_subcommand(
        "rate", "Asymptotic decay exponent of the failure probability");
    rate->add_option("--model", rate_args.model, "Solution model: binary or box")
        ->required()
        ->check(CLI::IsMember({"binary", "box"}));
    rate->add_option("--alpha", rate_args.alpha, "Measurement ratio m/n")
        ->required();
    rate->add_option("--beta", rate_args.beta, "Support ratio k/n")->required();
    rate->add_option("--mu", rate_args.mu, "Box fraction fixed at one, in (0, 1)");
    rate->add_option("--tol", rate_args.tol, "Optimizer tolerance (default 1e-9)");

    CLI::App* pt = app.add_subcommand(
        "pt", "Phase-transition measurement ratio alpha_w where the exponent "
              "reaches zero");
    pt->add_option("--model", pt_args.model, "Solution model: binary or box")
        ->required()
        ->check(CLI::IsMember({"binary", "box"}));
    pt->add_option("--beta", pt_args.beta, "Support ratio k/n")->required();
    pt->add_option("--mu", pt_args.mu, "Box fraction fixed at one, in (0, 1)");
    pt->add_option("--tol", pt_args.tol, "Optimizer tolerance (default 1e-9)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (ex->parsed()) return run_exact(ex_args);
        if (sim->parsed()) return run_sim(sim_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (rate->parsed()) return run_rate(rate_args);
        if (pt->parsed()) return run_pt(pt_args);
    } catch (const boxl1::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
