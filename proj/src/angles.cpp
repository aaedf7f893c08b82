#include "boxl1/angles.hpp"

#include <cmath>
#include <limits>

namespace boxl1 {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

struct Exponents {
    int a;
    int b;
    int s;
};

Exponents face_exponents(const ModelKind& model, const ProblemDims& dims, int l, int sub) {
    if (model.kind == Model::Binary)
        return {dims.k - sub, l - dims.k + sub, l};
    return {model.k_mu - sub, l - dims.k - model.k_mu + sub, l - dims.k};
}

// ln(y sqrt(pi)) - ln(sum_j (2j-1)!! / (2y^2)^j), i.e. the correction that
// turns y^2 into ln erfi(y). Kept separate from log_erfi so callers can
// combine the y^2 part with other quadratic terms at integer weight instead
// of subtracting two huge floats.
double erfi_log_defect(double y) {
    const double ix2 = 1.0 / (2.0 * y * y);
    double term = 1.0, s = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j < 80; ++j) {
        term *= (2.0 * j - 1.0) * ix2;
        if (term >= prev || term < 1e-18 * s) break;
        s += term;
        prev = term;
    }
    return std::log(y * kSqrtPi) - std::log(s);
}

// Log-polar form of (1 + i erfi(tau))^ea (1 - i erfi(tau))^eb e^{-c tau^2}.
// The phase is accumulated analytically (not wrapped); callers only take its
// cosine or sine. Beyond tau = 6, ln(1 + erfi^2) collapses to 2 ln erfi and
// the quadratic parts are grouped at the integer weight ea + eb - c first,
// which is what keeps the magnitude exact when the weight is zero and tau^2
// alone would swamp the mantissa.
LogComplex cf_logpolar(int ea, int eb, int c, double tau) {
    const double at = std::fabs(tau);
    const double sgn = tau < 0.0 ? -1.0 : 1.0;
    if (at <= 6.0) {
        const double g = erfi_real(at);
        return {0.5 * (ea + eb) * std::log1p(g * g) - c * at * at,
                sgn * (ea - eb) * std::atan(g)};
    }
    const double defect = erfi_log_defect(at);
    return {(ea + eb - c) * at * at - (ea + eb) * defect,
            sgn * (ea - eb) * (0.5 * kPi)};
}

double integrate_or_fail(const std::function<double(double)>& f, double a, double b,
                         const QuadConfig& cfg, double& err_acc) {
    try {
        auto [v, e] = integrate_adaptive(f, a, b, cfg);
        err_acc += e;
        return v;
    } catch (const NoConvergence& e) {
        throw QuadratureFailure(e.what());
    }
}

void check_face_common(const ModelKind& model, const ProblemDims& dims,
                       Family fam, int l, int sub) {
    validate_problem(model, dims);
    const int l_cap = (fam == Family::F1) ? dims.n - 1 : dims.n;
    if (l < 0 || l > l_cap) throw InvalidFace("face dimension l out of range");
    if (sub < 0) throw InvalidFace("face sub-index negative");
}

} // namespace

void validate_problem(const ModelKind& model, const ProblemDims& dims) {
    if (dims.n < 1) throw InvalidDims("n must be positive");
    if (dims.k < 0 || dims.k > dims.n) throw InvalidDims("k out of [0, n]");
    if (dims.m < 0 || dims.m > dims.n) throw InvalidDims("m out of [0, n]");
    if (model.kind == Model::Box) {
        if (model.k_mu < 0) throw InvalidDims("k_mu must be nonnegative");
        if (dims.k + model.k_mu > dims.n) throw InvalidDims("k + k_mu exceeds n");
    }
}

std::complex<double> char_fn(const ModelKind& model, const ProblemDims& dims,
                             int l, int sub, double t) {
    validate_problem(model, dims);
    if (!std::isfinite(t)) throw DomainError("char_fn: t must be finite");
    const auto [a, b, s] = face_exponents(model, dims, l, sub);
    (void)s;
    if (a < 0 || b < 0) throw InvalidFace("char_fn: negative exponent");
    return cf_logpolar(a, b, l, t / kSqrt2).to_complex();
}

double phi_int_f1(const ModelKind& model, const ProblemDims& dims,
                  int l, int l1, const QuadConfig& cfg) {
    check_face_common(model, dims, Family::F1, l, l1);
    if (l < 0) throw InvalidFace("phi_int_f1: requires l >= 0");
    const auto [a, b, s] = face_exponents(model, dims, l, l1);
    const int ea = a, eb = b + 1, c = l + 1;
    if (ea < 0 || eb < 0) throw InvalidFace("phi_int_f1: negative exponent");
    // At eb = 0 with ea = c the integrand is a power of a single half-normal
    // characteristic function, analytic in the upper half plane and O(1/z),
    // so the whole integral vanishes by contour closing.
    if (eb == 0 && ea == c) return 0.0;
    double err = 0.0;
    const double integral = integrate_or_fail(
        [&](double t) {
            const LogComplex lc = cf_logpolar(ea, eb, c, t / kSqrt2);
            return std::exp(lc.log_mag) * std::cos(lc.phase);
        },
        0.0, std::numeric_limits<double>::infinity(), cfg, err);
    const double pref = std::sqrt(double(l + 1)) * std::exp2(double(-s - 1)) /
                        std::sqrt(2.0 * kPi);
    return pref * 2.0 * integral;
}

double phi_int_f2(const ModelKind& model, const ProblemDims& dims,
                  int l, int l2, const QuadConfig& cfg) {
    check_face_common(model, dims, Family::F2, l, l2);
    if (l < 1) throw InvalidFace("phi_int_f2: requires l >= 1");
    const auto [a, b, s] = face_exponents(model, dims, l, l2);
    if (a < 0 || b < 0) throw InvalidFace("phi_int_f2: negative exponent");
    const int normals = (model.kind == Model::Box) ? dims.k : 0;
    const double scale = std::exp2(double(-s));
    if (b == 0 && normals == 0) return scale;       // X >= 0 almost surely
    if (a == 0 && normals == 0) return 0.0;         // X <= 0 a.s., continuous at 0
    if (a == b) return 0.5 * scale;                 // X symmetric about 0
    const double mean = (a - b) * std::sqrt(2.0 / kPi);
    double err = 0.0;
    const double integral = integrate_or_fail(
        [&](double t) {
            if (t < 1e-6) return mean; // limit of Im phi(t)/t as t -> 0
            const LogComplex lc = cf_logpolar(a, b, l, t / kSqrt2);
            return std::exp(lc.log_mag) * std::sin(lc.phase) / t;
        },
        0.0, std::numeric_limits<double>::infinity(), cfg, err);
    double p = 0.5 + integral / kPi;
    p = std::min(std::max(p, 0.0), 1.0);
    return scale * p;
}

double phi_ext_f1(const ModelKind& model, const ProblemDims& dims,
                  int l, int l1, const QuadConfig& cfg) {
    check_face_common(model, dims, Family::F1, l, l1);
    const int zeros = dims.n - l - 1 - l1;
    if (zeros < 0) throw InvalidFace("phi_ext_f1: l1 exceeds n - l - 1");
    const double sigma = std::sqrt(2.0 * (l + 1));
    double err = 0.0;
    const double integral = integrate_or_fail(
        [&](double g) {
            return std::exp(-0.5 * g * g) *
                   std::pow(0.5 * erfc_real(g / sigma), double(l1)) *
                   std::pow(0.5 * erfc_real(-g / sigma), double(zeros));
        },
        0.0, std::numeric_limits<double>::infinity(), cfg, err);
    return integral / std::sqrt(2.0 * kPi);
}

double phi_ext_f2(const ProblemDims& dims, int l) {
    if (l < 0 || l > dims.n) throw InvalidFace("phi_ext_f2: l out of [0, n]");
    return std::exp2(double(l - dims.n));
}

} // namespace boxl1
