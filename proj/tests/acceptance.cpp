// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "boxl1/asympt.hpp"
#include "boxl1/exact.hpp"
#include "boxl1/simulate.hpp"
#include "mc_oracles.hpp"

using namespace boxl1;

namespace {

constexpr double kTableTol = 5e-4;        // reference-column match
constexpr double kTableBudgetSec = 120.0; // per column
constexpr double kSimBudgetSec = 600.0;   // per grid point
constexpr double kComplementTol = 1e-3;
constexpr double kOracleSigmas = 3.0;
constexpr std::size_t kOracleSamples = 1'000'000;
constexpr double kDegenerateTol = 1e-6; // box k=0 vs binary
constexpr double kScanTol = 1e-6;       // psi vs grid scan
constexpr double kRateZeroTol = 1e-6;   // |rate(alpha_w)|

const ModelKind kBin{Model::Binary, 0};
const ModelKind kBox5{Model::Box, 5};
const QuadConfig kCfg;

const double kBinaryTable[] = {0.8663, 0.7489, 0.5958, 0.4292, 0.2766, 0.1582};
const double kBoxTable[] = {0.8668, 0.7512, 0.5988, 0.4312, 0.2764, 0.1558};

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

Outcome reference_column(const ModelKind& mk, int m_lo, const double* table) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double p = p_err_exact(mk, ProblemDims{30, m_lo + i, 5}, kCfg).p;
        worst = std::max(worst, std::fabs(p - table[i]));
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = worst <= kTableTol && dt <= kTableBudgetSec;
    o.detail = fmt("max dev %.2e (tol %.0e), %.1f s (budget %.0f s)", worst,
                   kTableTol, dt, kTableBudgetSec);
    return o;
}

Outcome simulation_grid() {
    Outcome o;
    double worst_time = 0.0;
    long long total_lp_errors = 0;
    double worst_agreement = 1.0;
    int missed = 0;
    const auto run_point = [&](const ModelKind& mk, int m, std::uint64_t seed) {
        const auto t0 = std::chrono::steady_clock::now();
        const ProblemDims dims{30, m, 5};
        const double p = p_err_exact(mk, dims, kCfg).p;
        SimConfig cfg;
        cfg.model = mk;
        cfg.dims = dims;
        cfg.trials = 20000;
        cfg.seed = seed;
        cfg.method = SimMethod::Both;
        cfg.confidence = 0.99;
        const SimSummary s = run_trials(cfg);
        const double dt = seconds_since(t0);
        worst_time = std::max(worst_time, dt);
        total_lp_errors += s.lp_errors;
        const double agreement =
            1.0 - double(s.disagreements) / double(s.trials);
        worst_agreement = std::min(worst_agreement, agreement);
        if (!(s.ci_lo <= p && p <= s.ci_hi)) ++missed;
        if (dt > kSimBudgetSec) o.pass = false;
    };
    for (int m = 7; m <= 12; ++m) run_point(kBin, m, 52000 + m);
    for (int m = 12; m <= 17; ++m) run_point(kBox5, m, 91000 + m);
    if (missed > 0 || total_lp_errors > 0 || worst_agreement < 0.999)
        o.pass = false;
    o.detail = fmt("intervals missed %d/12, lp errors %lld, worst agreement "
                   "%.5f, slowest point %.1f s",
                   missed, total_lp_errors, worst_agreement, worst_time);
    return o;
}

Outcome complementarity() {
    double worst = 0.0;
    for (int m = 7; m <= 12; ++m) {
        const ProblemDims dims{30, m, 5};
        const double s = p_err_exact(kBin, dims, kCfg).p +
                         p_cor_exact(kBin, dims, kCfg).p;
        worst = std::max(worst, std::fabs(s - 1.0));
    }
    for (int m = 12; m <= 17; ++m) {
        const ProblemDims dims{30, m, 5};
        const double s = p_err_exact(kBox5, dims, kCfg).p +
                         p_cor_exact(kBox5, dims, kCfg).p;
        worst = std::max(worst, std::fabs(s - 1.0));
    }
    Outcome o;
    o.pass = worst <= kComplementTol;
    o.detail = fmt("max |p_err + p_cor - 1| = %.2e (tol %.0e)", worst,
                   kComplementTol);
    return o;
}

Outcome angle_oracles() {
    Outcome o;
    double worst_z = 0.0;
    int faces = 0, failures = 0;
    const auto check = [&](double quad, const mc::Estimate& est) {
        ++faces;
        const double dev = std::fabs(quad - est.value);
        if (est.se == 0.0) {
            if (dev != 0.0) ++failures;
            return;
        }
        worst_z = std::max(worst_z, dev / est.se);
        if (dev > kOracleSigmas * est.se) ++failures;
    };
    const auto sweep_model = [&](const ModelKind& mk, const ProblemDims& dims,
                                 std::uint64_t tag) {
        for (int l = 1; l <= 6; ++l) {
            if (const auto r = l_sub_range(mk, dims, Family::F1, l)) {
                for (int l1 = r->first; l1 <= r->second; ++l1) {
                    const std::uint64_t seed = tag + 101 * l + std::uint64_t(l1);
                    check(phi_int_f1(mk, dims, l, l1, kCfg),
                          mc::phi_int_f1_mc(mk, dims, l, l1, kOracleSamples, seed));
                    check(phi_ext_f1(mk, dims, l, l1, kCfg),
                          mc::phi_ext_f1_mc(dims, l, l1, kOracleSamples, seed + 17));
                }
            }
            if (const auto r = l_sub_range(mk, dims, Family::F2, l)) {
                for (int l2 = r->first; l2 <= r->second; ++l2) {
                    const std::uint64_t seed = tag + 13000 + 101 * l + std::uint64_t(l2);
                    check(phi_int_f2(mk, dims, l, l2, kCfg),
                          mc::phi_int_f2_mc(mk, dims, l, l2, kOracleSamples, seed));
                }
                check(phi_ext_f2(dims, l),
                      mc::phi_ext_f2_mc(dims, l, kOracleSamples, tag + 29000 + 101 * l));
            }
        }
    };
    sweep_model(ModelKind{Model::Binary, 0}, ProblemDims{10, 4, 3}, 400000);
    sweep_model(ModelKind{Model::Box, 2}, ProblemDims{10, 4, 2}, 900000);
    o.pass = failures == 0;
    o.detail = fmt("%d angle comparisons, %d outside %.0f SE, worst %.2f SE",
                   faces, failures, kOracleSigmas, worst_z);
    return o;
}

Outcome degenerate_box() {
    const ModelKind box{Model::Box, 4};
    const ModelKind bin{Model::Binary, 0};
    double worst = 0.0;
    for (int m = 6; m <= 12; ++m) {
        const double pb = p_err_exact(box, ProblemDims{16, m, 0}, kCfg).p;
        const double pn = p_err_exact(bin, ProblemDims{16, m, 4}, kCfg).p;
        worst = std::max(worst, std::fabs(pb - pn));
    }
    Outcome o;
    o.pass = worst <= kDegenerateTol;
    o.detail = fmt("max |box(k=0) - binary| = %.2e (tol %.0e)", worst,
                   kDegenerateTol);
    return o;
}

Outcome monotonicity() {
    Outcome o;
    double worst_rise = 0.0;
    for (const ModelKind* mk : {&kBin, &kBox5}) {
        double prev = 1.0;
        for (int m = 5; m <= 30; ++m) {
            const double p = p_err_exact(*mk, ProblemDims{30, m, 5}, kCfg).p;
            worst_rise = std::max(worst_rise, p - prev);
            prev = p;
        }
    }
    o.pass = worst_rise <= 1e-10;
    o.detail = fmt("largest increase across both models %.2e (tol 1e-10)",
                   worst_rise);
    return o;
}

double scan_psi_int(Model model, double alpha, double beta, double mu,
                    double rho1) {
    double c1, c2, offset;
    const double ln2 = 0.6931471805599453;
    if (model == Model::Binary) {
        c1 = alpha + rho1 - beta;
        c2 = beta - rho1;
        offset = alpha * ln2;
    } else {
        c1 = (1.0 - beta) * mu - (1.0 - alpha - rho1);
        c2 = (1.0 - mu) * (1.0 - beta) - rho1;
        offset = (alpha - beta) * ln2;
    }
    double best = 1e300;
    for (double y = 0.0; y <= 12.0; y += 1e-4) {
        const double v = c1 * log_erfc(y * 0.7071067811865476) +
                         c2 * log_erfc(-y * 0.7071067811865476) +
                         0.5 * alpha * y * y;
        best = std::min(best, v);
    }
    return best - offset;
}

double scan_psi_ext(double alpha, double rho1) {
    const double ln2 = 0.6931471805599453;
    const double zeros = 1.0 - alpha - rho1;
    double best = -1e300;
    for (double g = 0.0; g <= 12.0; g += 1e-4) {
        const double v = -alpha * g * g + zeros * (log_erfc(-g) - ln2) +
                         rho1 * (log_erfc(g) - ln2);
        best = std::max(best, v);
    }
    return best;
}

Outcome asymptotics() {
    Outcome o;
    std::string parts;

    const double ab = pt_alpha(Model::Binary, 1.0 / 6.0, 0.0, 1e-9);
    const double rb = ldp_rate(Model::Binary, ab, 1.0 / 6.0, 0.0, 1e-9).exponent;
    const bool bin_ok = ab > 0.28 && ab < 0.37 && std::fabs(rb) <= kRateZeroTol;

    const double ax = pt_alpha(Model::Box, 1.0 / 6.0, 0.8, 1e-9);
    const double rx = ldp_rate(Model::Box, ax, 1.0 / 6.0, 0.8, 1e-9).exponent;
    const bool box_ok = ax > 0.45 && ax < 0.55 && std::fabs(rx) <= kRateZeroTol;

    // randomized spot checks of the two inner optimizations against brute
    // grid scans (fixed generator seed keeps the points reproducible)
    std::mt19937_64 eng(20250815);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_scan = 0.0;
    for (int i = 0; i < 20; ++i) {
        const bool use_box = i >= 10;
        const Model model = use_box ? Model::Box : Model::Binary;
        const double mu = use_box ? 0.55 + 0.35 * unif(eng) : 0.0;
        const double beta = 0.05 + 0.45 * unif(eng);
        const double alpha = beta + 0.05 + (0.93 - beta) * unif(eng) * 0.9;
        double lo, hi;
        if (model == Model::Binary) {
            lo = std::max(0.0, beta - alpha);
            hi = std::min(beta, 1.0 - alpha);
        } else {
            const double ones = (1.0 - mu) * (1.0 - beta);
            lo = std::max(0.0, beta + ones - alpha);
            hi = std::min(ones, 1.0 - alpha);
        }
        if (!(hi > lo)) {
            --i;
            continue;
        }
        const double rho1 = lo + (0.15 + 0.7 * unif(eng)) * (hi - lo);
        const double di = std::fabs(psi_int(model, alpha, beta, mu, rho1, 1e-9) -
                                    scan_psi_int(model, alpha, beta, mu, rho1));
        const double de = std::fabs(psi_ext(alpha, rho1, 1e-9) -
                                    scan_psi_ext(alpha, rho1));
        worst_scan = std::max(worst_scan, std::max(di, de));
    }
    const bool scan_ok = worst_scan <= kScanTol;

    o.pass = bin_ok && box_ok && scan_ok;
    o.detail = fmt("alpha_w bin %.6f (rate %.1e), box %.6f (rate %.1e), worst "
                   "scan dev %.1e (tol %.0e)",
                   ab, rb, ax, rx, worst_scan, kScanTol);
    return o;
}

} // namespace

int main() {
    struct Row {
        const char* name;
        Outcome (*run)();
    };
    const Row rows[] = {
        {"binary reference column m=7..12",
         [] { return reference_column(kBin, 7, kBinaryTable); }},
        {"box reference column m=12..17",
         [] { return reference_column(kBox5, 12, kBoxTable); }},
        {"20k-trial simulation brackets theory on the full grid", simulation_grid},
        {"error/success probabilities complement each other", complementarity},
        {"angle quadratures match Monte Carlo oracles", angle_oracles},
        {"box model with empty interior equals the binary model", degenerate_box},
        {"failure probability non-increasing in m", monotonicity},
        {"weak thresholds and rate-function optimizations", asymptotics},
    };
    int failed = 0;
    for (const Row& row : rows) {
        const Outcome o = row.run();
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", row.name,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    if (failed > 0) std::printf("%d of 8 acceptance criteria failed\n", failed);
    else std::printf("all 8 acceptance criteria passed\n");
    return failed == 0 ? 0 : 1;
}
