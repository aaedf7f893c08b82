#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>

#include "boxl1/angles.hpp"
#include "boxl1/errors.hpp"
#include "mc_oracles.hpp"

using namespace boxl1;

namespace {

const ModelKind kBin{Model::Binary, 0};
const ModelKind kBox5{Model::Box, 5};

// Characteristic function of |g| by quadrature of its defining integral,
// independent of the erfi-based evaluation under test.
std::complex<double> folded_cf(double t) {
    QuadConfig cfg;
    cfg.abs_tol = 1e-13;
    const double inf = std::numeric_limits<double>::infinity();
    auto [re, re_err] = integrate_adaptive(
        [t](double x) {
            return 2.0 * mc::normal_pdf(x) * std::cos(t * x);
        },
        0.0, inf, cfg);
    auto [im, im_err] = integrate_adaptive(
        [t](double x) {
            return 2.0 * mc::normal_pdf(x) * std::sin(t * x);
        },
        0.0, inf, cfg);
    (void)re_err;
    (void)im_err;
    return {re, im};
}

} // namespace

TEST_SUITE("angles") {

TEST_CASE("char_fn equals powers of the folded-normal cf") {
    // (1 + i erfi(t/sqrt2))^a (1 - i erfi(t/sqrt2))^b e^{-l t^2/2}
    //   = cf(t)^a conj(cf(t))^b e^{-(l-a-b) t^2/2}
    const ProblemDims bin{30, 10, 5};
    const ProblemDims box{30, 15, 5};
    for (double t : {0.4, 1.5, 3.0, 5.5}) {
        CAPTURE(t);
        const std::complex<double> cf = folded_cf(t);
        {
            // binary l=11, l2=2: a=3, b=8, no plain normals
            const std::complex<double> got = char_fn(kBin, bin, 11, 2, t);
            const std::complex<double> want = std::pow(cf, 3) * std::pow(std::conj(cf), 8);
            CHECK(std::abs(got - want) <= 1e-4 * std::abs(want) + 1e-14);
        }
        {
            // box l=14, l2=1: a=4, b=5, k=5 plain normals
            const std::complex<double> got = char_fn(kBox5, box, 14, 1, t);
            const std::complex<double> want = std::pow(cf, 4) * std::pow(std::conj(cf), 5) *
                                              std::exp(-2.5 * t * t);
            CHECK(std::abs(got - want) <= 1e-4 * std::abs(want) + 1e-14);
        }
    }
}

TEST_CASE("char_fn basics: value at zero, conjugate symmetry, branch seam") {
    const ProblemDims bin{30, 10, 5};
    CHECK(std::abs(char_fn(kBin, bin, 11, 2, 0.0) - 1.0) < 1e-14);
    for (double t : {0.9, 4.2, 11.0}) {
        const std::complex<double> p = char_fn(kBin, bin, 11, 2, t);
        const std::complex<double> m = char_fn(kBin, bin, 11, 2, -t);
        CHECK(std::abs(p - std::conj(m)) < 1e-14 * (1.0 + std::abs(p)));
    }
    // continuity across the switch to the log-domain tail evaluation
    const double seam = 6.0 * 1.4142135623730951;
    const std::complex<double> below = char_fn(kBin, bin, 11, 2, seam * (1.0 - 1e-9));
    const std::complex<double> above = char_fn(kBin, bin, 11, 2, seam * (1.0 + 1e-9));
    CHECK(std::abs(below - above) < 1e-6 * std::abs(below));
}

TEST_CASE("char_fn against a sampled characteristic function") {
    const ProblemDims bin{10, 4, 3};
    const ProblemDims box{10, 4, 2};
    const ModelKind box2{Model::Box, 2};
    const struct {
        const ModelKind* mk;
        const ProblemDims* dims;
        int l, l2;
        double t;
    } cases[] = {
        {&kBin, &bin, 3, 1, 0.7},
        {&kBin, &bin, 3, 1, 2.2},
        {&box2, &box, 5, 1, 1.3},
    };
    for (const auto& c : cases) {
        CAPTURE(c.l);
        CAPTURE(c.t);
        const auto est = mc::char_fn_mc(*c.mk, *c.dims, c.l, c.l2, c.t, 10'000'000, 424242);
        const std::complex<double> got = char_fn(*c.mk, *c.dims, c.l, c.l2, c.t);
        CHECK(std::fabs(got.real() - est.re) <= 4.0 * est.se_re);
        CHECK(std::fabs(got.imag() - est.im) <= 4.0 * est.se_im);
    }
}

TEST_CASE("char_fn rejects malformed faces") {
    const ProblemDims bin{30, 10, 5};
    CHECK_THROWS_AS((void)char_fn(kBin, bin, 11, 6, 1.0), InvalidFace);  // a < 0
    CHECK_THROWS_AS((void)char_fn(kBin, bin, 3, 0, 1.0), InvalidFace);   // b < 0
}

TEST_CASE("phi_int_f1 frozen quadrature references") {
    const QuadConfig cfg;
    const ProblemDims bin{30, 10, 5};
    CHECK(phi_int_f1(kBin, bin, 11, 0, cfg) ==
          doctest::Approx(0.000306956478578683).epsilon(1e-7));
    CHECK(phi_int_f1(kBin, bin, 13, 2, cfg) ==
          doctest::Approx(1.25148567010217e-6).epsilon(1e-7));
    CHECK(phi_int_f1(kBin, bin, 3, 2, cfg) ==
          doctest::Approx(0.0438699140229555).epsilon(1e-7));
    // l=1, l1=4: one positive and one negated half-normal; the angle is
    // exactly one half.
    CHECK(phi_int_f1(kBin, bin, 1, 4, cfg) == doctest::Approx(0.5).epsilon(1e-10));

    const ProblemDims box{30, 15, 5};
    CHECK(phi_int_f1(kBox5, box, 16, 1, cfg) ==
          doctest::Approx(0.000192627504622449).epsilon(1e-7));
}

TEST_CASE("phi_int_f1 corner faces with no negated half-normals are exactly zero") {
    // binary, l1 = k-l-1: the integrand is a power of the Faddeeva function,
    // analytic and decaying in the upper half-plane, so the integral closes
    // to zero.
    const QuadConfig cfg;
    const ProblemDims bin{10, 4, 3};
    CHECK(phi_int_f1(kBin, bin, 1, 1, cfg) == 0.0);
    const ProblemDims bin2{12, 4, 5};
    CHECK(phi_int_f1(kBin, bin2, 2, 2, cfg) == 0.0);
}

TEST_CASE("phi_int_f2 frozen quadrature references") {
    const QuadConfig cfg;
    const ProblemDims bin{30, 10, 5};
    CHECK(phi_int_f2(kBin, bin, 11, 0, cfg) ==
          doctest::Approx(0.000168388051076027).epsilon(1e-7));
    CHECK(phi_int_f2(kBin, bin, 3, 3, cfg) ==
          doctest::Approx(0.0979566380076518).epsilon(1e-7));

    const ProblemDims box{30, 15, 5};
    CHECK(phi_int_f2(kBox5, box, 16, 2, cfg) ==
          doctest::Approx(4.42940411074611e-5).epsilon(1e-7));
    CHECK(phi_int_f2(kBox5, box, 14, 4, cfg) ==
          doctest::Approx(4.74048402084794e-5).epsilon(1e-7));
}

TEST_CASE("phi_int_f2 closed forms for symmetric and one-sided faces") {
    const QuadConfig cfg;
    // a == b: X is symmetric, P(X >= 0) = 1/2
    const ProblemDims bin{10, 4, 3};
    CHECK(phi_int_f2(kBin, bin, 2, 2, cfg) == 0.125); // a=b=1, s=2
    // b == 0 and no plain normals: X >= 0 surely
    const ProblemDims bin2{10, 4, 2};
    const ModelKind bin_k2{Model::Binary, 0};
    CHECK(phi_int_f2(bin_k2, bin2, 2, 0, cfg) == 0.25); // a=2, b=0, s=2
}

TEST_CASE("phi_int_f2 one-sided inversion equals the double-limit form") {
    // P(|h1|+|h2|-|h3| >= 0) computed independently as
    // 1/2 + (1/pi) Int_{1e-4}^{50} Im cf(t)/t dt (frozen cutoff evaluation).
    const QuadConfig cfg;
    const ProblemDims bin{10, 5, 2};
    const double p = 8.0 * phi_int_f2(kBin, bin, 3, 0, cfg); // 2^{-s} undone, s=3
    CHECK(p == doctest::Approx(0.783653104061215).epsilon(1e-6));
}

TEST_CASE("phi_ext_f1 frozen quadrature references") {
    const QuadConfig cfg;
    const ProblemDims bin{30, 10, 5};
    CHECK(phi_ext_f1(kBin, bin, 11, 0, cfg) ==
          doctest::Approx(0.00028292660476873).epsilon(1e-7));
    CHECK(phi_ext_f1(kBin, bin, 13, 2, cfg) ==
          doctest::Approx(7.97199443554921e-5).epsilon(1e-7));
    const ProblemDims small{10, 4, 3};
    CHECK(phi_ext_f1(kBin, small, 3, 1, cfg) ==
          doctest::Approx(0.019619105030228).epsilon(1e-7));
}

TEST_CASE("phi_ext_f2 is an exact dyadic") {
    const ProblemDims bin{30, 10, 5};
    CHECK(phi_ext_f2(bin, 11) == std::exp2(-19.0));
    CHECK(phi_ext_f2(bin, 30) == 1.0);
    const ProblemDims small{10, 4, 3};
    CHECK(phi_ext_f2(small, 4) == 0.015625);
}

TEST_CASE("angles lie in [0, 1]") {
    const QuadConfig cfg;
    const ProblemDims bin{12, 5, 4};
    for (int l = 1; l <= 8; ++l) {
        for (int l1 = 0; l1 <= 3; ++l1) {
            if (4 - l1 < 0 || l - 4 + l1 + 1 < 0 || l1 > 12 - l - 1) continue;
            CAPTURE(l);
            CAPTURE(l1);
            const double pi1 = phi_int_f1(kBin, bin, l, l1, cfg);
            const double pe1 = phi_ext_f1(kBin, bin, l, l1, cfg);
            CHECK(pi1 >= 0.0);
            CHECK(pi1 <= 1.0);
            CHECK(pe1 >= 0.0);
            CHECK(pe1 <= 1.0);
            if (l - 4 + l1 >= 0) {
                const double pi2 = phi_int_f2(kBin, bin, l, l1, cfg);
                CHECK(pi2 >= 0.0);
                CHECK(pi2 <= 1.0);
            }
        }
    }
}

TEST_CASE("validate_problem accepts and rejects dimensions") {
    CHECK_NOTHROW(validate_problem(kBin, ProblemDims{30, 10, 5}));
    CHECK_NOTHROW(validate_problem(kBox5, ProblemDims{30, 15, 5}));
    CHECK_THROWS_AS(validate_problem(kBin, ProblemDims{30, 10, 31}), InvalidDims);
    CHECK_THROWS_AS(validate_problem(kBin, ProblemDims{30, 31, 5}), InvalidDims);
    CHECK_THROWS_AS(validate_problem(kBin, ProblemDims{0, 0, 0}), InvalidDims);
    CHECK_THROWS_AS(validate_problem(kBin, ProblemDims{10, -1, 3}), InvalidDims);
    CHECK_THROWS_AS(validate_problem(ModelKind{Model::Box, 28}, ProblemDims{30, 10, 5}),
                    InvalidDims);
    CHECK_THROWS_AS(validate_problem(ModelKind{Model::Box, -1}, ProblemDims{30, 10, 5}),
                    InvalidDims);
}

} // TEST_SUITE
