#include "boxl1/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace boxl1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState { Basic, AtLower, AtUpper, FreeAtZero };

// Bounded-variable primal simplex over the augmented system [A | artificials].
// The basis inverse is held explicitly, updated in product form after each
// pivot and refactorized from scratch every 64 pivots to cap drift.
class Simplex {
public:
    Simplex(const LpProblem& p, double feas_tol, int max_iter)
        : m_(int(p.eq_matrix.rows())),
          nv_(int(p.eq_matrix.cols())),
          total_(nv_ + m_),
          feas_tol_(feas_tol),
          max_iter_(max_iter),
          W_(m_, total_),
          rhs_(p.eq_rhs),
          lo_(total_),
          up_(total_),
          x_(total_),
          state_(total_, VarState::AtLower),
          basis_(m_, -1),
          Binv_(m_, m_) {
        W_.leftCols(nv_) = p.eq_matrix;
        W_.rightCols(m_).setZero();
        for (int j = 0; j < nv_; ++j) {
            lo_[j] = p.lower[j];
            up_[j] = p.upper[j];
            if (std::isfinite(lo_[j])) {
                x_[j] = lo_[j];
                state_[j] = VarState::AtLower;
            } else if (std::isfinite(up_[j])) {
                x_[j] = up_[j];
                state_[j] = VarState::AtUpper;
            } else {
                x_[j] = 0.0;
                state_[j] = VarState::FreeAtZero;
            }
        }
        // Artificial columns are signed so they start feasible and basic.
        Eigen::VectorXd resid = rhs_;
        for (int j = 0; j < nv_; ++j)
            if (x_[j] != 0.0) resid -= W_.col(j) * x_[j];
        for (int i = 0; i < m_; ++i) {
            const int j = nv_ + i;
            const double sgn = resid[i] >= 0.0 ? 1.0 : -1.0;
            W_(i, j) = sgn;
            lo_[j] = 0.0;
            up_[j] = kInf;
            x_[j] = std::fabs(resid[i]);
            state_[j] = VarState::Basic;
            basis_[i] = j;
        }
        refactorize();
    }

    LpSolution run(const Eigen::VectorXd& objective) {
        LpSolution out;
        out.x = Eigen::VectorXd::Zero(nv_);

        Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total_);
        phase1.tail(m_).setOnes();
        int rc = optimize(phase1);
        if (rc == kIterLimit) return finish(out, LpStatus::IterationLimit, objective);
        const double infeas = x_.tail(m_).sum();
        const double scale = 1.0 + rhs_.lpNorm<Eigen::Infinity>();
        if (infeas > feas_tol_ * scale)
            return finish(out, LpStatus::Infeasible, objective);
        purge_artificials();

        Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total_);
        phase2.head(nv_) = objective;
        rc = optimize(phase2);
        if (rc == kIterLimit) return finish(out, LpStatus::IterationLimit, objective);
        if (rc == kUnbounded) return finish(out, LpStatus::Unbounded, objective);
        refactorize();
        recompute_basic_values();
        return finish(out, LpStatus::Optimal, objective);
    }

private:
    static constexpr int kOptimal = 0;
    static constexpr int kUnbounded = 1;
    static constexpr int kIterLimit = 2;

    void refactorize() {
        if (m_ == 0) {
            pivots_ = 0;
            return;
        }
        Eigen::MatrixXd B(m_, m_);
        for (int r = 0; r < m_; ++r) B.col(r) = W_.col(basis_[r]);
        Binv_ = Eigen::PartialPivLU<Eigen::MatrixXd>(B).inverse();
        pivots_ = 0;
    }

    void recompute_basic_values() {
        if (m_ == 0) return;
        Eigen::VectorXd r = rhs_;
        for (int j = 0; j < total_; ++j)
            if (state_[j] != VarState::Basic && x_[j] != 0.0) r -= W_.col(j) * x_[j];
        const Eigen::VectorXd xb = Binv_ * r;
        for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
    }

    // After phase 1, swap still-basic artificials for structural columns where
    // a nonzero pivot exists; rows admitting none are dependent and keep their
    // artificial, pinned to zero.
    void purge_artificials() {
        refactorize();
        recompute_basic_values();
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < nv_) continue;
            const Eigen::RowVectorXd brow = Binv_.row(r);
            int pick = -1;
            double best = 1e-7;
            for (int j = 0; j < nv_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                const double alpha = std::fabs(brow.dot(W_.col(j)));
                if (alpha > best) {
                    best = alpha;
                    pick = j;
                }
            }
            if (pick >= 0) {
                const Eigen::VectorXd u = Binv_ * W_.col(pick);
                const int leaving = basis_[r];
                x_[leaving] = 0.0;
                state_[leaving] = VarState::AtLower;
                state_[pick] = VarState::Basic;
                pivot_basis(pick, r, u);
            }
        }
        for (int i = 0; i < m_; ++i) {
            const int j = nv_ + i;
            lo_[j] = up_[j] = 0.0;
            if (state_[j] != VarState::Basic) {
                x_[j] = 0.0;
                state_[j] = VarState::AtLower;
            }
        }
        refactorize();
        recompute_basic_values();
    }

    void pivot_basis(int entering, int row, const Eigen::VectorXd& u) {
        const double ur = u[row];
        Binv_.row(row) /= ur;
        for (int i = 0; i < m_; ++i)
            if (i != row) Binv_.row(i) -= u[i] * Binv_.row(row);
        basis_[row] = entering;
        if (++pivots_ >= 64) {
            refactorize();
            recompute_basic_values();
        }
    }

    int optimize(const Eigen::VectorXd& cost) {
        const double dual_tol = std::max(1e-9, feas_tol_);
        const double piv_tol = 1e-11;
        bool bland = false;
        int degen_streak = 0;
        for (;;) {
            if (iterations_ >= max_iter_) return kIterLimit;
            Eigen::VectorXd y(m_);
            for (int r = 0; r < m_; ++r) y[r] = cost[basis_[r]];
            y = Binv_.transpose() * y;

            int q = -1, dir = 0;
            double best = dual_tol;
            for (int j = 0; j < total_; ++j) {
                if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
                const double d = cost[j] - y.dot(W_.col(j));
                int adir = 0;
                double viol = 0.0;
                if (state_[j] == VarState::AtLower) {
                    if (d < -dual_tol) { adir = 1; viol = -d; }
                } else if (state_[j] == VarState::AtUpper) {
                    if (d > dual_tol) { adir = -1; viol = d; }
                } else { // free at zero
                    if (d < -dual_tol) { adir = 1; viol = -d; }
                    else if (d > dual_tol) { adir = -1; viol = d; }
                }
                if (adir == 0) continue;
                if (bland) { q = j; dir = adir; break; }
                if (viol > best) { best = viol; q = j; dir = adir; }
            }
            if (q < 0) return kOptimal;
            ++iterations_;

            const Eigen::VectorXd u = Binv_ * W_.col(q);
            // Step t >= 0 moves x_q by dir*t and the basics by -dir*t*u.
            const double flip = up_[q] - lo_[q]; // own-bound distance, may be inf
            double t = flip;
            for (int r = 0; r < m_; ++r) {
                const int bj = basis_[r];
                const double step = dir * u[r];
                if (step > piv_tol) {
                    if (lo_[bj] == -kInf) continue;
                    t = std::min(t, std::max(0.0, (x_[bj] - lo_[bj]) / step));
                } else if (step < -piv_tol) {
                    if (up_[bj] == kInf) continue;
                    t = std::min(t, std::max(0.0, (up_[bj] - x_[bj]) / (-step)));
                }
            }
            if (t == kInf) return kUnbounded;

            int leave = -1;
            if (t < flip) {
                // pick the leaving row among near-ties: Bland wants the lowest
                // variable index, otherwise take the largest pivot magnitude
                double best_mag = 0.0;
                int best_idx = std::numeric_limits<int>::max();
                for (int r = 0; r < m_; ++r) {
                    const int bj = basis_[r];
                    const double step = dir * u[r];
                    double room = kInf;
                    if (step > piv_tol && lo_[bj] != -kInf)
                        room = std::max(0.0, (x_[bj] - lo_[bj]) / step);
                    else if (step < -piv_tol && up_[bj] != kInf)
                        room = std::max(0.0, (up_[bj] - x_[bj]) / (-step));
                    if (room > t + 1e-12) continue;
                    if (bland) {
                        if (bj < best_idx) { best_idx = bj; leave = r; }
                    } else if (std::fabs(u[r]) > best_mag) {
                        best_mag = std::fabs(u[r]);
                        leave = r;
                    }
                }
            }
            if (leave < 0) {
                // entering variable runs to its opposite bound: no basis change
                for (int r = 0; r < m_; ++r) x_[basis_[r]] -= dir * t * u[r];
                state_[q] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
                x_[q] = dir > 0 ? up_[q] : lo_[q];
                degen_streak = 0;
                continue;
            }

            for (int r = 0; r < m_; ++r) x_[basis_[r]] -= dir * t * u[r];
            const int bj = basis_[leave];
            const double step = dir * u[leave];
            if (step > 0) {
                x_[bj] = lo_[bj];
                state_[bj] = VarState::AtLower;
            } else {
                x_[bj] = up_[bj];
                state_[bj] = VarState::AtUpper;
            }
            x_[q] += dir * t;
            state_[q] = VarState::Basic;
            pivot_basis(q, leave, u);

            if (t <= 1e-11) {
                if (++degen_streak > 50) bland = true;
            } else {
                degen_streak = 0;
            }
        }
    }

    LpSolution finish(LpSolution& out, LpStatus st, const Eigen::VectorXd& objective) {
        out.status = st;
        out.iterations = iterations_;
        out.x = x_.head(nv_);
        out.objective_value = objective.dot(out.x);
        return out;
    }

    int m_, nv_, total_;
    double feas_tol_;
    int max_iter_;
    Eigen::MatrixXd W_;
    Eigen::VectorXd rhs_, lo_, up_, x_;
    std::vector<VarState> state_;
    std::vector<int> basis_;
    Eigen::MatrixXd Binv_;
    int pivots_ = 0;
    int iterations_ = 0;
};

void check_problem_shape(const LpProblem& p) {
    const auto n = p.eq_matrix.cols();
    const auto m = p.eq_matrix.rows();
    if (p.objective.size() != n || p.eq_rhs.size() != m ||
        p.lower.size() != n || p.upper.size() != n)
        throw DomainError("solve_lp: inconsistent problem dimensions");
    for (Eigen::Index j = 0; j < n; ++j) {
        if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]) || p.lower[j] > p.upper[j])
            throw DomainError("solve_lp: invalid variable bounds");
    }
}

void check_full_row_rank(const Eigen::MatrixXd& A) {
    if (A.rows() == 0) return;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < A.rows())
        throw RankDeficient("matrix does not have full row rank");
}

} // namespace

LpSolution solve_lp(const LpProblem& p, double feas_tol, int max_iter) {
    check_problem_shape(p);
    if (!(feas_tol > 0.0)) throw DomainError("solve_lp: feas_tol must be positive");
    if (max_iter < 1) throw DomainError("solve_lp: max_iter must be positive");
    Simplex s(p, feas_tol, max_iter);
    return s.run(p.objective);
}

Eigen::VectorXd l1_box_recover(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
    const Eigen::Index m = A.rows(), n = A.cols();
    if (y.size() != m) throw DomainError("l1_box_recover: rhs length mismatch");
    check_full_row_rank(A);
    LpProblem lp;
    lp.objective = Eigen::VectorXd::Ones(n);
    lp.eq_matrix = A;
    lp.eq_rhs = y;
    lp.lower = Eigen::VectorXd::Zero(n);
    lp.upper = Eigen::VectorXd::Ones(n);
    const LpSolution sol = solve_lp(lp, 1e-9, 20000);
    switch (sol.status) {
        case LpStatus::Optimal:
            return sol.x;
        case LpStatus::Infeasible:
            throw InfeasibleProblem("l1_box_recover: y is not reachable within the box");
        case LpStatus::IterationLimit:
            throw IterationLimitReached("l1_box_recover: simplex iteration cap hit");
        default:
            throw DomainError("l1_box_recover: unexpected unbounded status on a bounded box");
    }
}

bool failure_certificate(const Eigen::MatrixXd& A, const ModelKind& model,
                         const ProblemDims& dims, double feas_tol) {
    validate_problem(model, dims);
    if (A.rows() != dims.m || A.cols() != dims.n)
        throw DomainError("failure_certificate: matrix shape mismatch");
    check_full_row_rank(A);
    const int n = dims.n;
    const int ones = model.kind == Model::Box ? model.k_mu : dims.k;
    const int inter = model.kind == Model::Box ? dims.k : 0;
    const int support = ones + inter;

    // Witness program over w: Aw = 0, ones block <= 0, zeros block >= 0,
    // interior free; normalize s + r = 1 with s = -sum(support block),
    // r = sum(zeros block), and maximize s (minimize its negation).
    LpProblem lp;
    lp.objective = Eigen::VectorXd::Zero(n);
    lp.eq_matrix = Eigen::MatrixXd::Zero(dims.m + 1, n);
    lp.eq_matrix.topRows(dims.m) = A;
    lp.eq_rhs = Eigen::VectorXd::Zero(dims.m + 1);
    lp.eq_rhs[dims.m] = 1.0;
    lp.lower = Eigen::VectorXd::Zero(n);
    lp.upper = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        const bool in_ones = j < ones;
        const bool in_inter = !in_ones && j < support;
        lp.objective[j] = (in_ones || in_inter) ? 1.0 : 0.0;
        lp.eq_matrix(dims.m, j) = (in_ones || in_inter) ? -1.0 : 1.0;
        if (in_ones) {
            lp.lower[j] = -kInf;
            lp.upper[j] = 0.0;
        } else if (in_inter) {
            lp.lower[j] = -kInf;
            lp.upper[j] = kInf;
        } else {
            lp.lower[j] = 0.0;
            lp.upper[j] = kInf;
        }
    }
    const LpSolution sol = solve_lp(lp, feas_tol, 20000);
    switch (sol.status) {
        case LpStatus::Optimal:
            return -sol.objective_value >= 0.5 - feas_tol;
        case LpStatus::Infeasible:
            return false;
        case LpStatus::IterationLimit:
            throw IterationLimitReached("failure_certificate: simplex iteration cap hit");
        default:
            throw DomainError("failure_certificate: witness program cannot be unbounded");
    }
}

} // namespace boxl1
