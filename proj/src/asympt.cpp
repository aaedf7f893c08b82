#include "boxl1/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace boxl1 {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;
constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

// Feasible open interval for rho1 at (alpha, beta, mu).
std::pair<double, double> rho1_interval(Model model, double alpha, double beta,
                                        double mu_box) {
    if (model == Model::Binary)
        return {std::max(0.0, beta - alpha), std::min(beta, 1.0 - alpha)};
    const double ones = (1.0 - mu_box) * (1.0 - beta);
    return {std::max(0.0, beta + ones - alpha), std::min(ones, 1.0 - alpha)};
}

// Entropy argument that may sit a rounding error outside [0,1].
double clamp_ratio(double q) {
    if (q > -1e-12 && q < 0.0) return 0.0;
    if (q > 1.0 && q < 1.0 + 1e-12) return 1.0;
    return q;
}

void check_model_params(Model model, double beta, double mu_box) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw DomainError("beta must lie in [0, 1)");
    if (model == Model::Binary) {
        if (beta <= 0.0) throw DomainError("binary model needs beta > 0");
    } else {
        if (!(mu_box > 0.0 && mu_box < 1.0))
            throw DomainError("box model needs mu_box in (0, 1)");
    }
}

// Golden-section maximum of f on [a, b] down to argument width tol.
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double tol) {
    const double golden = 0.3819660112501051;
    double x1 = a + golden * (b - a), x2 = b - golden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double bestx = (f1 > f2) ? x1 : x2, bestf = std::max(f1, f2);
    for (int it = 0; it < 400 && (b - a) > tol; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + golden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - golden * (b - a);
            f2 = f(x2);
        }
        if (f1 > bestf) { bestf = f1; bestx = x1; }
        if (f2 > bestf) { bestf = f2; bestx = x2; }
    }
    return {bestx, bestf};
}

} // namespace

double entropy_H(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("entropy_H: argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return x * std::log(x) + (1.0 - x) * std::log(1.0 - x);
}

double psi_com(Model model, double alpha, double beta, double mu_box, double rho1) {
    check_model_params(model, beta, mu_box);
    if (model == Model::Binary)
        return -beta * entropy_H(clamp_ratio(rho1 / beta)) -
               (1.0 - beta) * entropy_H(clamp_ratio((1.0 - alpha - rho1) / (1.0 - beta)));
    const double ones = (1.0 - mu_box) * (1.0 - beta);
    const double zeros = mu_box * (1.0 - beta);
    return -ones * entropy_H(clamp_ratio(rho1 / ones)) -
           zeros * entropy_H(clamp_ratio((1.0 - alpha - rho1) / zeros));
}

double psi_int(Model model, double alpha, double beta, double mu_box,
               double rho1, double tol, double* arg_min) {
    check_model_params(model, beta, mu_box);
    double c1, c2, offset;
    if (model == Model::Binary) {
        c1 = alpha + rho1 - beta;
        c2 = beta - rho1;
        offset = alpha * kLn2;
    } else {
        c1 = (1.0 - beta) * mu_box - (1.0 - alpha - rho1);
        c2 = (1.0 - mu_box) * (1.0 - beta) - rho1;
        offset = (alpha - beta) * kLn2;
    }
    const auto objective = [&](double y) {
        return c1 * log_erfc(y / kSqrt2) + c2 * log_erfc(-y / kSqrt2) +
               0.5 * alpha * y * y;
    };
    const auto [y_star, value] = minimize_1d(objective, 0.0, 1.0, tol);
    if (arg_min) *arg_min = y_star;
    return value - offset;
}

double psi_ext(double alpha, double rho1, double tol, double* arg_max) {
    if (rho1 < 0.0 || 1.0 - alpha - rho1 < 0.0)
        throw DomainError("psi_ext: needs rho1 >= 0 and alpha + rho1 <= 1");
    const double zeros = 1.0 - alpha - rho1;
    const auto objective = [&](double g) {
        return -alpha * g * g + zeros * (log_erfc(-g) - kLn2) +
               rho1 * (log_erfc(g) - kLn2);
    };
    const auto [g_star, value] = maximize_1d(objective, 0.0, 1.0, tol);
    if (arg_max) *arg_max = g_star;
    return value;
}

RatePoint ldp_rate(Model model, double alpha, double beta, double mu_box,
                   double tol) {
    check_model_params(model, beta, mu_box);
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("ldp_rate: alpha must lie in (0, 1]");
    if (!(tol > 0.0)) throw DomainError("ldp_rate: tol must be positive");
    const auto [lo, hi] = rho1_interval(model, alpha, beta, mu_box);
    const double width = hi - lo;
    if (!(width > 0.0))
        throw EmptyRange("ldp_rate: feasible rho1 interval is empty");
    // The interval is open; stay a hair inside so the entropy terms are finite.
    const double eps = 1e-9 * width;
    const double a = lo + eps, b = hi - eps;
    const auto objective = [&](double r1) {
        return psi_com(model, alpha, beta, mu_box, r1) +
               psi_int(model, alpha, beta, mu_box, r1, tol) +
               psi_ext(alpha, r1, tol);
    };
    // Pre-scan: the objective can be nearly flat where the entropy terms
    // vanish, so locate the best cell on a fixed grid before refining.
    constexpr int kGrid = 200;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<double> xs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        xs[i] = a + (b - a) * i / double(kGrid - 1);
        const double v = objective(xs[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double bracket_lo = xs[std::max(0, best - 1)];
    const double bracket_hi = xs[std::min(kGrid - 1, best + 1)];
    auto [r1, value] = golden_max(objective, bracket_lo, bracket_hi, tol);
    if (best_val > value) {
        value = best_val;
        r1 = xs[best];
    }
    return {alpha, beta, mu_box, r1, value};
}

double pt_alpha(Model model, double beta, double mu_box, double tol) {
    check_model_params(model, beta, mu_box);
    if (!(beta > 0.0)) throw DomainError("pt_alpha: beta must be positive");
    if (!(tol > 0.0)) throw DomainError("pt_alpha: tol must be positive");
    const auto rate = [&](double a) {
        return ldp_rate(model, a, beta, mu_box, tol).exponent;
    };
    // The exponent is nonpositive with a single interior peak that touches 0
    // at the transition, so locate the peak rather than hunting for a sign
    // change.
    const double lo = beta + 1e-6, hi = 1.0 - 1e-6;
    constexpr int kGrid = 160;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<double> xs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        xs[i] = lo + (hi - lo) * i / double(kGrid - 1);
        const double v = rate(xs[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const auto [alpha_w, peak] = golden_max(rate, xs[std::max(0, best - 1)],
                                            xs[std::min(kGrid - 1, best + 1)], tol);
    if (std::fabs(std::max(peak, best_val)) > 1e-6)
        throw NoBracket("pt_alpha: rate exponent never reaches zero on (beta, 1)");
    return alpha_w;
}

} // namespace boxl1
