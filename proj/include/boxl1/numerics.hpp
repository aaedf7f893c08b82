#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "boxl1/errors.hpp"

namespace boxl1 {

// A real number carried as sign * exp(log_mag). Keeps products of huge
// binomials and tiny angles representable without over/underflow.
struct SignedLog {
    int sign = 0;         // -1, 0, +1
    double log_mag = 0.0; // meaningful only when sign != 0

    static SignedLog zero() { return {0, 0.0}; }
    static SignedLog from_value(double v);
    static SignedLog from_log(int sign, double log_mag);

    double value() const; // may over/underflow to +-inf / 0 by design

    SignedLog operator*(const SignedLog& o) const;
    SignedLog operator+(const SignedLog& o) const;

    // Pairwise (tree) reduction; keeps the accumulated log error at
    // O(log n * eps) instead of O(n * eps) for long positive sums.
    static SignedLog sum(std::span<const SignedLog> terms);
};

// A complex number as exp(log_mag + i*phase), phase wrapped to (-pi, pi].
struct LogComplex {
    double log_mag = 0.0;
    double phase = 0.0;

    static LogComplex from_complex(std::complex<double> z);
    std::complex<double> to_complex() const;
    LogComplex pow(double a) const;
    LogComplex operator*(const LogComplex& o) const;

    static double wrap_phase(double p);
};

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 4000;
    double tail_tol = 1e-12;

    void validate() const; // throws DomainError on nonsense values
};

// Complementary error function. Saturates cleanly at the ends of double
// range (2 and +0), never throws.
double erfc_real(double x);

// ln(erfc(x)) without premature underflow; valid for all finite x.
double log_erfc(double x);

// Imaginary error function erfi(y) = (2/sqrt(pi)) * integral_0^y exp(z^2) dz.
// Throws OverflowDomain for |y| > 26 where the value exceeds double range.
double erfi_real(double y);

// ln(erfi(y)) for y >= 6 via the asymptotic expansion; no upper limit.
double log_erfi(double y);

// Adaptive Gauss-Kronrod integration of f over [a, b]; b may be +infinity,
// handled by doubling panels until a panel contributes less than tail_tol.
// Returns (value, error estimate). Throws NoConvergence when the
// subdivision budget runs out.
std::pair<double, double> integrate_adaptive(const std::function<double(double)>& f,
                                             double a, double b, const QuadConfig& cfg);

// Golden-section minimization of a unimodal f on [lo, inf). The bracket is
// grown by doubling from hi_hint until f starts increasing; a boundary
// minimum at lo is handled. Returns (argmin, min).
std::pair<double, double> minimize_1d(const std::function<double(double)>& f,
                                      double lo, double hi_hint, double tol);

// Mirror of minimize_1d. Returns (argmax, max).
std::pair<double, double> maximize_1d(const std::function<double(double)>& f,
                                      double lo, double hi_hint, double tol);

// Bisection; requires f(lo) and f(hi) to have opposite signs (NoBracket
// otherwise). Returns the midpoint of the final bracket of width <= tol.
double find_root_bisect(const std::function<double(double)>& f,
                        double lo, double hi, double tol);

// Standard normal quantile, solved by bisecting erfc. p in (0, 1).
double normal_quantile(double p);

} // namespace boxl1
