#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "boxl1/angles.hpp"

namespace boxl1 {

enum class SimMethod { Certificate, DirectSolve, Both };

struct SimConfig {
    ModelKind model;
    ProblemDims dims;
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
    SimMethod method = SimMethod::Certificate;
    double recover_tol = 1e-6;
    double confidence = 0.95;
    // Plant the support at uniformly shuffled positions instead of the
    // canonical leading block (verdicts are exchangeable across placements).
    bool shuffle_support = false;
};

struct SimSummary {
    std::int64_t failures = 0;
    std::int64_t trials = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::int64_t disagreements = 0; // method == Both only
    std::int64_t lp_errors = 0;     // trials aborted by solver errors
};

struct Instance {
    Eigen::MatrixXd A;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
};

// Deterministic function of (seed, trial_index): A is m x n with i.i.d.
// standard normal entries; the planted x has ones on the leading block
// (k of them for binary, k_mu for box), then k uniform(0,1) interior values
// for the box model, zeros elsewhere; y = A x.
Instance gen_instance(const ModelKind& model, const ProblemDims& dims,
                      std::uint64_t trial_index, std::uint64_t seed);

// Monte Carlo estimate of the failure probability. Trials run concurrently;
// the verdict of each trial depends only on (seed, trial_index) and the
// aggregation is integer addition, so the summary is identical for any
// thread count.
SimSummary run_trials(const SimConfig& cfg);

// Wilson score interval for failures/trials at the given confidence level.
std::pair<double, double> wilson_ci(std::int64_t failures, std::int64_t trials,
                                    double confidence);

} // namespace boxl1
