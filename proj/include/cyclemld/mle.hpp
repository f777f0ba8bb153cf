#ifndef CYCLEMLD_MLE_HPP
#define CYCLEMLD_MLE_HPP

#include "cyclemld/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cyclemld {

/// Thrown when Newton iteration exhausts max_iter without meeting the
/// gradient tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MleResult {
    SymMatrix k_hat;
    SymMatrix sigma_hat;
    int iterations = 0;
    double grad_norm = 0.0;
    double loglik = 0.0;

    MleResult() : k_hat(1), sigma_hat(1) {}
};

/// log det K - tr(S K). Both matrices must be real symmetric and K must be
/// positive definite; violations raise std::domain_error.
double log_lik(const SymMatrix& k, const SymMatrix& s);

/// Gradient of log_lik in the 2n support coordinates (diagonal first, then
/// edges). Edge coordinates carry the factor 2 from symmetry.
Eigen::VectorXd likelihood_gradient(const SymMatrix& k, const SymMatrix& s,
                                    const CycleModel& model);

/// Maximizes log_lik over positive definite K with cycle support by damped
/// Newton with backtracking. S must be real positive definite.
MleResult solve_mle(const SymMatrix& s, double tol = 1e-10, int max_iter = 200);

enum class OracleSystem {
    concentration,       // (K^{-1})_p = S_p in the 2n support coordinates
    covariance_adjugate, // adj(S + L^perp)_q = 0 in the off-support coordinates
};

struct OracleReport {
    int n = 0;
    SymMatrix s;
    int starts = 0;
    std::uint64_t seed = 0;
    OracleSystem system = OracleSystem::concentration;
    std::int64_t distinct_critical_points = 0;
    std::vector<SymMatrix> points;       // K (concentration) or Sigma (adjugate)
    int converged_starts = 0;
    double max_residual = 0.0;
    double worst_jacobian_cond = 0.0;    // at the reported solutions
    double min_pairwise_distance = 0.0;

    OracleReport() : s(1) {}
};

/// Multi-start complex Newton count of critical points of the likelihood
/// equations for a generic S. Supported sizes: n in {4, 5, 6}.
OracleReport critical_points_oracle(int n, const SymMatrix& s, int starts,
                                    std::uint64_t seed, double tol = 1e-9,
                                    OracleSystem system = OracleSystem::concentration,
                                    int threads = 1);

/// Id + scale * W with W symmetric standard normal: a generic dense
/// sample covariance for oracle runs.
SymMatrix random_generic_s(int n, std::uint64_t seed, double scale = 0.3);

/// Runs the oracle on random_generic_s, resampling S (up to 8 attempts)
/// whenever some solution has Jacobian condition above 1e10.
OracleReport oracle_generic_s(int n, int starts, std::uint64_t seed, double tol = 1e-9,
                              int threads = 1);

} // namespace cyclemld

#endif
