#include "boxl1/simulate.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <vector>

#include "boxl1/linprog.hpp"
#include "boxl1/parallel.hpp"

namespace boxl1 {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Substream construction: one engine per (seed, stream) pair so trials can
// run in any order on any number of threads.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^
                                      (stream + 0x9e3779b97f4a7c15ULL)));
}

// Uniform on (0, 1]; written out (rather than std::uniform_real_distribution)
// so the draw sequence is identical across standard libraries.
double uniform01(std::mt19937_64& g) {
    return double((g() >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller pair cache, same rationale as uniform01.
class NormalSampler {
public:
    explicit NormalSampler(std::mt19937_64& g) : g_(g) {}
    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        const double u1 = uniform01(g_);
        const double u2 = uniform01(g_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_ = true;
        return r * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64& g_;
    bool have_ = false;
    double spare_ = 0.0;
};

std::vector<int> random_permutation(int n, std::mt19937_64& g) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = int(g() % std::uint64_t(i + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

} // namespace

Instance gen_instance(const ModelKind& model, const ProblemDims& dims,
                      std::uint64_t trial_index, std::uint64_t seed) {
    validate_problem(model, dims);
    std::mt19937_64 g = stream_engine(seed, trial_index);
    NormalSampler normals(g);
    Instance inst;
    inst.A.resize(dims.m, dims.n);
    for (int i = 0; i < dims.m; ++i)
        for (int j = 0; j < dims.n; ++j) inst.A(i, j) = normals.next();
    inst.x = Eigen::VectorXd::Zero(dims.n);
    const int ones = model.kind == Model::Box ? model.k_mu : dims.k;
    const int inter = model.kind == Model::Box ? dims.k : 0;
    for (int j = 0; j < ones; ++j) inst.x[j] = 1.0;
    for (int j = 0; j < inter; ++j) inst.x[ones + j] = uniform01(g);
    inst.y = inst.A * inst.x;
    return inst;
}

SimSummary run_trials(const SimConfig& cfg) {
    validate_problem(cfg.model, cfg.dims);
    if (cfg.trials < 1) throw DomainError("run_trials: trials must be >= 1");
    if (!(cfg.recover_tol > 0.0)) throw DomainError("run_trials: recover_tol must be positive");
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
        throw DomainError("run_trials: confidence must lie in (0, 1)");

    std::atomic<std::int64_t> failures{0}, disagreements{0}, lp_errors{0};
    parallel_for_index(std::size_t(cfg.trials), [&](std::size_t t) {
        try {
            const Instance inst = gen_instance(cfg.model, cfg.dims, t, cfg.seed);
            bool cert = false, direct = false;
            if (cfg.method != SimMethod::DirectSolve)
                cert = failure_certificate(inst.A, cfg.model, cfg.dims, 1e-9);
            if (cfg.method != SimMethod::Certificate) {
                Eigen::MatrixXd A = inst.A;
                Eigen::VectorXd x = inst.x;
                if (cfg.shuffle_support) {
                    // The certificate sees the canonical layout; the direct
                    // solve sees the same instance with columns shuffled.
                    std::mt19937_64 sg =
                        stream_engine(cfg.seed ^ 0xa5a5a5a5deadbeefULL, t);
                    const std::vector<int> perm = random_permutation(cfg.dims.n, sg);
                    for (int j = 0; j < cfg.dims.n; ++j) {
                        A.col(j) = inst.A.col(perm[j]);
                        x[j] = inst.x[perm[j]];
                    }
                }
                const Eigen::VectorXd xhat = l1_box_recover(A, inst.y);
                direct = (xhat - x).lpNorm<Eigen::Infinity>() > cfg.recover_tol;
            }
            const bool fail = (cfg.method == SimMethod::DirectSolve) ? direct : cert;
            if (fail) failures.fetch_add(1, std::memory_order_relaxed);
            if (cfg.method == SimMethod::Both && cert != direct)
                disagreements.fetch_add(1, std::memory_order_relaxed);
        } catch (const Error&) {
            lp_errors.fetch_add(1, std::memory_order_relaxed);
        }
    });

    SimSummary s;
    s.failures = failures.load();
    s.trials = cfg.trials;
    s.p_hat = double(s.failures) / double(s.trials);
    const auto ci = wilson_ci(s.failures, s.trials, cfg.confidence);
    s.ci_lo = ci.first;
    s.ci_hi = ci.second;
    s.disagreements = disagreements.load();
    s.lp_errors = lp_errors.load();
    return s;
}

std::pair<double, double> wilson_ci(std::int64_t failures, std::int64_t trials,
                                    double confidence) {
    if (trials < 1 || failures < 0 || failures > trials)
        throw DomainError("wilson_ci: need 0 <= failures <= trials, trials >= 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("wilson_ci: confidence must lie in (0, 1)");
    const double z = normal_quantile(1.0 - 0.5 * (1.0 - confidence));
    const double n = double(trials);
    const double p = double(failures) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

} // namespace boxl1
