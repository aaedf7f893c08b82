#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "boxl1/angles.hpp"

namespace boxl1 {

// One summand of the face sum: count x internal angle x external angle,
// carried in signed-log form so huge binomials and tiny angles compose safely.
struct FaceTermBreakdown {
    FaceIndex face;
    SignedLog count;
    double phi_int = 0.0;
    double phi_ext = 0.0;
    SignedLog term;
};

struct ExactResult {
    double p = 0.0;
    std::vector<FaceTermBreakdown> terms;
    double quadrature_err_bound = 0.0;
};

// Valid sub-index range for faces of dimension l, or nullopt when empty.
// Binary F1: [max(0, n-l-1-(n-k)), min(k-1, n-l-1)]
// Binary F2: [max(0, n-l-(n-k)),   min(k-1, n-l)]
// Box: k is replaced by k_mu in the min-caps and (n-k) by (n-k-k_mu) in the
// slack terms.
std::optional<std::pair<int, int>> l_sub_range(const ModelKind& model,
                                               const ProblemDims& dims,
                                               Family family, int l);

// Number of faces sharing the given index, in log-gamma arithmetic:
// F1: C(k, l1) C(n-k, n-l-1-l1) for binary, C(k_mu, l1) C(n-k-k_mu, n-l-1-l1)
// for box; F2 the same without the -1. Throws InvalidFace when the index is
// outside l_sub_range.
SignedLog face_count(const ModelKind& model, const ProblemDims& dims,
                     const FaceIndex& face);

// Probability that l1 recovery fails: twice the sum, over face dimensions
// l = m+1, m+3, ... (F1 up to n-1, F2 up to n), of count x phi_int x phi_ext.
// Requires m >= 1.
ExactResult p_err_exact(const ModelKind& model, const ProblemDims& dims,
                        const QuadConfig& cfg);

// Probability that recovery succeeds: the same face sum walked downwards over
// l = m-1, m-3, ..., terminating naturally once no dimension admits faces.
ExactResult p_cor_exact(const ModelKind& model, const ProblemDims& dims,
                        const QuadConfig& cfg);

} // namespace boxl1
