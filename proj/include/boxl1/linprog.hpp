#pragma once

#include <Eigen/Dense>

#include "boxl1/angles.hpp"

namespace boxl1 {

enum class LpSense { Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// min objective . x  subject to  eq_matrix x = eq_rhs, lower <= x <= upper.
// Bound entries may be -inf / +inf.
struct LpProblem {
    Eigen::VectorXd objective;
    Eigen::MatrixXd eq_matrix;
    Eigen::VectorXd eq_rhs;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    LpSense sense = LpSense::Minimize;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective_value = 0.0;
    int iterations = 0;
};

// Two-phase dense primal simplex on bounded variables. Dantzig pricing with a
// switch to Bland's rule after a degeneracy streak; basis inverse kept
// explicitly and refactorized periodically. Never throws on degenerate
// input; difficulties surface through the status code.
LpSolution solve_lp(const LpProblem& p, double feas_tol = 1e-9,
                    int max_iter = 20000);

// min sum(x) s.t. Ax = y, 0 <= x <= 1 (the l1 objective restricted to the
// box). Throws RankDeficient when A has dependent rows, InfeasibleProblem
// when y is not reachable, IterationLimitReached if the solver stalls.
Eigen::VectorXd l1_box_recover(const Eigen::MatrixXd& A, const Eigen::VectorXd& y);

// Decides whether recovery of the canonically planted vector fails for this
// A: searches the null space for a witness w with w <= 0 on the ones block,
// w >= 0 on the zeros block (interior block unconstrained), whose l1 mass
// balance tips the wrong way. Normalizing the two sides to s + r = 1 and
// maximizing s, failure means an optimum >= 1/2 - feas_tol; an infeasible
// witness program means recovery succeeds. Throws RankDeficient when A has
// rank < m.
bool failure_certificate(const Eigen::MatrixXd& A, const ModelKind& model,
                         const ProblemDims& dims, double feas_tol = 1e-9);

} // namespace boxl1
