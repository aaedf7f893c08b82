#pragma once

#include <complex>

#include "boxl1/numerics.hpp"

namespace boxl1 {

enum class Model { Binary, Box };
enum class Family { F1, F2 };

// Which recovery polytope we are working with. For the box model k_mu is the
// number of components fixed at one (kappa_mu = (1 - mu)(n - k)); the binary
// model ignores it.
struct ModelKind {
    Model kind = Model::Binary;
    int k_mu = 0;
};

// n: ambient dimension, m: rows of the measurement matrix, k: sparsity
// (for the box model, the number of strictly interior components).
struct ProblemDims {
    int n = 0;
    int m = 0;
    int k = 0;
};

// Throws InvalidDims unless 1 <= n, 0 <= k <= n, 0 <= m <= n, and for the
// box model additionally k_mu >= 0 and k + k_mu <= n.
void validate_problem(const ModelKind& model, const ProblemDims& dims);

// A face of the relevant polytope: family F1 (dimension l <= n-1) or family
// F2 (dimension l <= n); sub is the within-family index (l1 for F1, l2 for F2).
struct FaceIndex {
    Family family = Family::F1;
    int l = 0;
    int sub = 0;
};

// Characteristic function of the signed half-normal sum attached to a face:
// (1 + i erfi(t/sqrt 2))^a (1 - i erfi(t/sqrt 2))^b e^{-l t^2 / 2}, where
// a = k - sub, b = l - k + sub for the binary model and a = k_mu - sub,
// b = l - k - k_mu + sub for the box model (the k unconstrained normal
// coordinates of the box model are absorbed by the Gaussian factor).
// Throws InvalidFace when a or b is negative.
std::complex<double> char_fn(const ModelKind& model, const ProblemDims& dims,
                             int l, int sub, double t);

// Internal angle at 0 of an F1 face:
//   sqrt(l+1) / (2^{s+1} sqrt(2 pi)) *
//     Int_R (1 + i erfi(t/sqrt 2))^a (1 - i erfi(t/sqrt 2))^{b+1} e^{-(l+1)t^2/2} dt
// with s = l (binary) or l - k (box); evaluated as twice the real part over
// [0, inf). Requires 0 <= l <= n-1 (l = 0 covers the vertex faces the box
// model reaches on the success side when the ones block empties entirely).
double phi_int_f1(const ModelKind& model, const ProblemDims& dims,
                  int l, int l1, const QuadConfig& cfg);

// Internal angle at 0 of an F2 face: 2^{-s} P(X >= 0) where X is a sum of a
// positive half-normals, b negated half-normals and (box only) k plain
// normals; P is recovered from char_fn by one-sided inversion,
// P = 1/2 + (1/pi) Int_0^inf Im phi(t) / t dt. Requires l >= 1 and l <= n.
double phi_int_f2(const ModelKind& model, const ProblemDims& dims,
                  int l, int l2, const QuadConfig& cfg);

// External angle of an F1 face (same formula for both models):
//   (2 pi)^{-1/2} Int_0^inf e^{-g^2/2}
//       (erfc(g / sqrt(2(l+1))) / 2)^{l1}
//       (erfc(-g / sqrt(2(l+1))) / 2)^{n-l-1-l1} dg.
// Requires 0 <= l1 <= n - l - 1.
double phi_ext_f1(const ModelKind& model, const ProblemDims& dims,
                  int l, int l1, const QuadConfig& cfg);

// External angle of an F2 face: exactly 2^{-(n-l)} for 0 <= l <= n.
double phi_ext_f2(const ProblemDims& dims, int l);

} // namespace boxl1
