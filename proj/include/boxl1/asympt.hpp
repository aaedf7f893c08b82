#pragma once

#include "boxl1/angles.hpp"

namespace boxl1 {

// One point of the large-deviations rate curve. rho (the normalized number of
// rows) is pinned to alpha; rho1 is the inner maximizer; exponent carries its
// sign (negative means the failure probability decays at rate |exponent|).
struct RatePoint {
    double alpha = 0.0;
    double beta = 0.0;
    double mu_box = 0.0;
    double rho1 = 0.0;
    double exponent = 0.0;
};

// x ln x + (1-x) ln(1-x) on [0,1], with the limit convention H(0) = H(1) = 0.
double entropy_H(double x);

// Combinatorial exponent. Binary: -b H(rho1/b) - (1-b) H((1-a-rho1)/(1-b))
// with a = alpha, b = beta. Box: -(1-mu)(1-b) H(rho1/((1-mu)(1-b)))
// - mu(1-b) H((1-a-rho1)/(mu(1-b))).
double psi_com(Model model, double alpha, double beta, double mu_box, double rho1);

// Internal-angle exponent: the minimum over y >= 0 of
//   c1 ln erfc(y/sqrt 2) + c2 ln erfc(-y/sqrt 2) + alpha y^2 / 2
// minus a ln-2 offset, where (c1, c2, offset) are (alpha+rho1-beta,
// beta-rho1, alpha ln 2) for the binary model and
// ((1-beta) mu - (1-alpha-rho1), (1-mu)(1-beta) - rho1, (alpha-beta) ln 2)
// for the box model. tol bounds the minimizer accuracy; arg_min, when given,
// receives the optimizing y.
double psi_int(Model model, double alpha, double beta, double mu_box,
               double rho1, double tol, double* arg_min = nullptr);

// External-angle exponent, identical for both models: the maximum over
// g >= 0 of -alpha g^2 + (1-alpha-rho1) ln(erfc(-g)/2) + rho1 ln(erfc(g)/2).
// arg_max, when given, receives the optimizing g.
double psi_ext(double alpha, double rho1, double tol, double* arg_max = nullptr);

// Total exponent max_{rho1} [psi_com + psi_int + psi_ext], maximized over the
// open feasible interval of rho1 (grid pre-scan plus golden-section).
// Throws EmptyRange when that interval is degenerate (box model needs
// alpha > beta).
RatePoint ldp_rate(Model model, double alpha, double beta, double mu_box,
                   double tol);

// Phase-transition point: the alpha in (beta, 1) where the rate exponent
// touches zero. Throws NoBracket when the exponent stays bounded away from
// zero on the whole interval.
double pt_alpha(Model model, double beta, double mu_box, double tol);

} // namespace boxl1
