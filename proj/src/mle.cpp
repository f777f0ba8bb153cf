#include "cyclemld/mle.hpp"

#include "cyclemld/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace cyclemld {

namespace {

Eigen::MatrixXd require_real_sym(const SymMatrix& a, const char* who) {
    if (a.max_imag_abs() > 1e-12 * std::max(1.0, a.max_abs()))
        throw std::domain_error(std::string(who) + ": matrix must be real");
    return a.real();
}

double logdet_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    double s = 0.0;
    const auto& l = llt.matrixLLT();
    for (int i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

Eigen::MatrixXd k_from_theta(const Eigen::VectorXd& theta, const CycleModel& model) {
    const int n = model.n();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    const auto& pos = model.support_positions();
    for (std::size_t p = 0; p < pos.size(); ++p) {
        const auto& [i, j] = pos[p];
        k(i, j) = theta(static_cast<int>(p));
        k(j, i) = theta(static_cast<int>(p));
    }
    return k;
}

double loglik_real(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& k,
                   const Eigen::MatrixXd& s) {
    return logdet_from_llt(llt) - (s * k).trace();
}

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

CMat k_from_theta_c(const CVec& theta, const CycleModel& model) {
    const int n = model.n();
    CMat k = CMat::Zero(n, n);
    const auto& pos = model.support_positions();
    for (std::size_t p = 0; p < pos.size(); ++p) {
        const auto& [i, j] = pos[p];
        k(i, j) = theta(static_cast<int>(p));
        k(j, i) = theta(static_cast<int>(p));
    }
    return k;
}

// adj(A)_{ij} = (-1)^{i+j} det(A with row j and column i removed).
Complex adjugate_entry(const CMat& a, int i, int j) {
    const int n = static_cast<int>(a.rows());
    CMat sub(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
            if (c == i) continue;
            sub(rr, cc++) = a(r, c);
        }
        ++rr;
    }
    const Complex d = sub.rows() > 0 ? Eigen::PartialPivLU<CMat>(sub).determinant() : Complex(1.0);
    return ((i + j) % 2 == 0) ? d : -d;
}

struct NewtonOutcome {
    bool converged = false;
    CVec solution;
};

// Damped Newton on a square complex system: full steps are halved until the
// residual norm satisfies ||F_new|| < (1 - t/4)||F||.
template <typename ResidualFn, typename JacobianFn>
NewtonOutcome damped_newton(CVec theta, const ResidualFn& residual, const JacobianFn& jacobian,
                            double converge_tol, int max_iter) {
    NewtonOutcome out;
    CVec f;
    if (!residual(theta, f)) return out;
    for (int it = 0; it < max_iter; ++it) {
        if (f.cwiseAbs().maxCoeff() < converge_tol) {
            out.converged = true;
            out.solution = theta;
            return out;
        }
        CMat jac;
        if (!jacobian(theta, jac)) return out;
        const CVec step = Eigen::PartialPivLU<CMat>(jac).solve(-f);
        if (!step.allFinite()) return out;
        const double base = f.norm();
        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            const CVec cand = theta + t * step;
            CVec f_new;
            if (residual(cand, f_new) && f_new.norm() < (1.0 - 0.25 * t) * base) {
                theta = cand;
                f = f_new;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) return out;
    }
    return out;
}

using Key = std::vector<std::int64_t>;

Key vec_key(const CVec& v) {
    Key key;
    key.reserve(static_cast<std::size_t>(2 * v.size()));
    for (int i = 0; i < v.size(); ++i) {
        key.push_back(std::llround(v(i).real() * 1e6));
        key.push_back(std::llround(v(i).imag() * 1e6));
    }
    return key;
}

// Key-based dedup followed by a full-precision merge pass; input order
// decides the surviving representative.
std::vector<CVec> dedup_solutions(const std::vector<CVec>& sols, double* min_dist_out) {
    std::map<Key, CVec> by_key;
    for (const CVec& s : sols) by_key.emplace(vec_key(s), s);
    std::vector<CVec> reps;
    reps.reserve(by_key.size());
    for (auto& [key, v] : by_key) reps.push_back(v);

    std::vector<bool> dead(reps.size(), false);
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            if (dead[j]) continue;
            const double d = (reps[i] - reps[j]).cwiseAbs().maxCoeff();
            const double thresh =
                1e-8 * std::max({1.0, reps[i].cwiseAbs().maxCoeff(), reps[j].cwiseAbs().maxCoeff()});
            if (d <= thresh)
                dead[j] = true;
            else
                min_dist = std::min(min_dist, d);
        }
    }
    std::vector<CVec> out;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (!dead[i]) out.push_back(std::move(reps[i]));
    if (min_dist_out) *min_dist_out = out.size() > 1 ? min_dist : 0.0;
    return out;
}

} // namespace

double log_lik(const SymMatrix& k, const SymMatrix& s) {
    if (k.dim() != s.dim()) throw std::invalid_argument("log_lik: dimension mismatch");
    const Eigen::MatrixXd kr = require_real_sym(k, "log_lik");
    const Eigen::MatrixXd sr = require_real_sym(s, "log_lik");
    Eigen::LLT<Eigen::MatrixXd> llt(kr);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("log_lik: K is not positive definite");
    return loglik_real(llt, kr, sr);
}

Eigen::VectorXd likelihood_gradient(const SymMatrix& k, const SymMatrix& s,
                                    const CycleModel& model) {
    if (k.dim() != model.n() || s.dim() != model.n())
        throw std::invalid_argument("likelihood_gradient: dimension mismatch");
    const Eigen::MatrixXd kr = require_real_sym(k, "likelihood_gradient");
    const Eigen::MatrixXd sr = require_real_sym(s, "likelihood_gradient");
    Eigen::LLT<Eigen::MatrixXd> llt(kr);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("likelihood_gradient: K is not positive definite");
    const Eigen::MatrixXd kinv = llt.solve(Eigen::MatrixXd::Identity(model.n(), model.n()));

    const auto& pos = model.support_positions();
    Eigen::VectorXd g(static_cast<int>(pos.size()));
    for (std::size_t p = 0; p < pos.size(); ++p) {
        const auto& [i, j] = pos[p];
        const double w = i == j ? 1.0 : 2.0;
        g(static_cast<int>(p)) = w * (kinv(i, j) - sr(i, j));
    }
    return g;
}

MleResult solve_mle(const SymMatrix& s, double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("solve_mle: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("solve_mle: max_iter must be >= 1");
    const int n = s.dim();
    if (n < 3) throw std::invalid_argument("solve_mle: dimension must be >= 3");
    const CycleModel model(n);
    const Eigen::MatrixXd sr = require_real_sym(s, "solve_mle");
    {
        Eigen::LLT<Eigen::MatrixXd> check(sr);
        if (check.info() != Eigen::Success)
            throw std::domain_error("solve_mle: S is not positive definite");
    }

    const auto& pos = model.support_positions();
    const int m = static_cast<int>(pos.size());
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(m);
    for (int p = 0; p < n; ++p) theta(p) = 1.0 / sr(p, p);

    Eigen::MatrixXd k = k_from_theta(theta, model);
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("solve_mle: initial point not positive definite");

    MleResult result;
    for (int it = 0; it <= max_iter; ++it) {
        const Eigen::MatrixXd kinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
        Eigen::VectorXd g(m);
        for (int p = 0; p < m; ++p) {
            const auto& [i, j] = pos[static_cast<std::size_t>(p)];
            g(p) = (i == j ? 1.0 : 2.0) * (kinv(i, j) - sr(i, j));
        }
        const double gnorm = g.norm();
        if (gnorm <= tol) {
            result.k_hat = SymMatrix(Eigen::MatrixXcd(k.cast<Complex>()));
            result.sigma_hat = SymMatrix(Eigen::MatrixXcd(kinv.cast<Complex>()));
            result.iterations = it;
            result.grad_norm = gnorm;
            result.loglik = loglik_real(llt, k, sr);
            return result;
        }
        if (it == max_iter) break;

        // Negated Hessian: H_neg(p,q) = w_p (K^{-1} E_q K^{-1})_{pos_p},
        // symmetric positive definite for positive definite K.
        Eigen::MatrixXd h_neg(m, m);
        for (int q = 0; q < m; ++q) {
            const auto& [iq, jq] = pos[static_cast<std::size_t>(q)];
            Eigen::MatrixXd b = kinv.col(iq) * kinv.row(jq);
            if (iq != jq) b += kinv.col(jq) * kinv.row(iq);
            for (int p = 0; p < m; ++p) {
                const auto& [ip, jp] = pos[static_cast<std::size_t>(p)];
                h_neg(p, q) = (ip == jp ? 1.0 : 2.0) * b(ip, jp);
            }
        }
        Eigen::LLT<Eigen::MatrixXd> hllt(h_neg);
        const Eigen::VectorXd delta =
            hllt.info() == Eigen::Success ? hllt.solve(g).eval() : g;

        const double f0 = loglik_real(llt, k, sr);
        const double slope = g.dot(delta);
        // Slack of a few ulps of f0 keeps the test meaningful once the
        // predicted decrease drops below what doubles can resolve.
        const double f_slack = 1e-14 * (1.0 + std::abs(f0));
        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            const Eigen::VectorXd theta_try = theta + t * delta;
            const Eigen::MatrixXd k_try = k_from_theta(theta_try, model);
            Eigen::LLT<Eigen::MatrixXd> llt_try(k_try);
            if (llt_try.info() == Eigen::Success &&
                loglik_real(llt_try, k_try, sr) >= f0 + 1e-4 * t * slope - f_slack) {
                theta = theta_try;
                k = k_try;
                llt = std::move(llt_try);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) throw ConvergenceError("solve_mle: line search failed to make progress");
    }
    throw ConvergenceError("solve_mle: max iterations exceeded");
}

OracleReport critical_points_oracle(int n, const SymMatrix& s, int starts, std::uint64_t seed,
                                    double tol, OracleSystem system, int threads) {
    if (n < 4 || n > 6)
        throw std::invalid_argument("critical_points_oracle: n must be 4, 5, or 6");
    if (s.dim() != n) throw std::invalid_argument("critical_points_oracle: dimension mismatch");
    if (starts < 100) throw std::invalid_argument("critical_points_oracle: starts must be >= 100");
    if (tol <= 0.0) throw std::invalid_argument("critical_points_oracle: tol must be positive");
    const Eigen::MatrixXd sr = require_real_sym(s, "critical_points_oracle");

    const CycleModel model(n);
    const auto& sup = model.support_positions();
    const auto& off = model.offsupport_positions();
    const double s_scale = std::max(1.0, sr.cwiseAbs().maxCoeff());

    OracleReport report;
    report.n = n;
    report.s = s;
    report.starts = starts;
    report.seed = seed;
    report.system = system;

    const int unknowns =
        system == OracleSystem::concentration ? static_cast<int>(sup.size())
                                              : static_cast<int>(off.size());

    // Residual/Jacobian pair for the selected square system.
    const auto residual = [&](const CVec& theta, CVec& f) -> bool {
        if (system == OracleSystem::concentration) {
            const CMat k = k_from_theta_c(theta, model);
            Eigen::PartialPivLU<CMat> lu(k);
            const CMat kinv = lu.solve(CMat::Identity(n, n));
            if (!kinv.allFinite()) return false;
            f.resize(unknowns);
            for (int p = 0; p < unknowns; ++p) {
                const auto& [i, j] = sup[static_cast<std::size_t>(p)];
                f(p) = kinv(i, j) - sr(i, j);
            }
            return true;
        }
        CMat a = sr.cast<Complex>();
        for (int q = 0; q < unknowns; ++q) {
            const auto& [i, j] = off[static_cast<std::size_t>(q)];
            a(i, j) = theta(q);
            a(j, i) = theta(q);
        }
        f.resize(unknowns);
        for (int q = 0; q < unknowns; ++q) {
            const auto& [i, j] = off[static_cast<std::size_t>(q)];
            f(q) = adjugate_entry(a, i, j);
        }
        return f.allFinite();
    };

    const auto jacobian = [&](const CVec& theta, CMat& jac) -> bool {
        if (system == OracleSystem::concentration) {
            const CMat k = k_from_theta_c(theta, model);
            Eigen::PartialPivLU<CMat> lu(k);
            const CMat kinv = lu.solve(CMat::Identity(n, n));
            if (!kinv.allFinite()) return false;
            jac.resize(unknowns, unknowns);
            for (int q = 0; q < unknowns; ++q) {
                const auto& [iq, jq] = sup[static_cast<std::size_t>(q)];
                CMat b = kinv.col(iq) * kinv.row(jq);
                if (iq != jq) b += kinv.col(jq) * kinv.row(iq);
                for (int p = 0; p < unknowns; ++p) {
                    const auto& [ip, jp] = sup[static_cast<std::size_t>(p)];
                    jac(p, q) = -b(ip, jp);
                }
            }
            return true;
        }
        // Central differences; the system is tiny and the entries are
        // polynomial, so 1e-7 steps are comfortably inside the stable range.
        const double h = 1e-7;
        jac.resize(unknowns, unknowns);
        for (int q = 0; q < unknowns; ++q) {
            CVec up = theta, dn = theta;
            up(q) += h;
            dn(q) -= h;
            CVec fp, fm;
            if (!residual(up, fp) || !residual(dn, fm)) return false;
            jac.col(q) = (fp - fm) / (2.0 * h);
        }
        return true;
    };

    const double converge_tol =
        system == OracleSystem::concentration ? 1e-12 * s_scale : 1e-11 * s_scale;

    std::vector<NewtonOutcome> outcomes(static_cast<std::size_t>(starts));
    const auto run_range = [&](int lo, int hi) {
        for (int idx = lo; idx < hi; ++idx) {
            Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(idx));
            CVec theta(unknowns);
            for (int p = 0; p < unknowns; ++p) {
                double center = 0.0;
                if (system == OracleSystem::concentration) {
                    const auto& [i, j] = sup[static_cast<std::size_t>(p)];
                    center = i == j ? 1.0 : 0.0;
                }
                const double re = rng.uniform(-2.0, 2.0);
                const double im = rng.uniform(-2.0, 2.0);
                theta(p) = Complex(center + re, im);
            }
            outcomes[static_cast<std::size_t>(idx)] =
                damped_newton(std::move(theta), residual, jacobian, converge_tol, 100);
        }
    };

    threads = std::max(1, std::min(threads, starts));
    if (threads == 1) {
        run_range(0, starts);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (starts + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(starts, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<CVec> converged;
    for (const NewtonOutcome& o : outcomes)
        if (o.converged) converged.push_back(o.solution);
    report.converged_starts = static_cast<int>(converged.size());

    std::vector<CVec> sols = dedup_solutions(converged, &report.min_pairwise_distance);

    for (const CVec& sol : sols) {
        CVec f;
        if (!residual(sol, f)) continue;
        const double res = f.cwiseAbs().maxCoeff();
        if (res > tol * s_scale) continue;
        if (system == OracleSystem::concentration) {
            const CMat k = k_from_theta_c(sol, model);
            Eigen::JacobiSVD<CMat> ksvd(k);
            const double kcond = ksvd.singularValues()(0) / ksvd.singularValues()(n - 1);
            if (!(kcond < 1e12)) continue;
            report.points.emplace_back(k);
        } else {
            CMat a = sr.cast<Complex>();
            for (int q = 0; q < unknowns; ++q) {
                const auto& [i, j] = off[static_cast<std::size_t>(q)];
                a(i, j) = sol(q);
                a(j, i) = sol(q);
            }
            report.points.emplace_back(a);
        }
        report.max_residual = std::max(report.max_residual, res);
        CMat jac;
        if (jacobian(sol, jac)) {
            Eigen::JacobiSVD<CMat> jsvd(jac);
            const double cond =
                jsvd.singularValues()(0) / jsvd.singularValues()(unknowns - 1);
            report.worst_jacobian_cond = std::max(report.worst_jacobian_cond, cond);
        }
    }
    report.distinct_critical_points = static_cast<std::int64_t>(report.points.size());
    return report;
}

SymMatrix random_generic_s(int n, std::uint64_t seed, double scale) {
    if (n < 1) throw std::invalid_argument("random_generic_s: n must be >= 1");
    Rng rng(seed);
    SymMatrix s = SymMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            s.set(i, j, s(i, j) + scale * rng.normal());
    return s;
}

OracleReport oracle_generic_s(int n, int starts, std::uint64_t seed, double tol, int threads) {
    OracleReport report;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const SymMatrix s = random_generic_s(n, seed + 1000003ULL * static_cast<std::uint64_t>(attempt));
        report = critical_points_oracle(n, s, starts, seed, tol, OracleSystem::concentration,
                                        threads);
        if (report.worst_jacobian_cond <= 1e10 && report.distinct_critical_points > 0)
            return report;
    }
    return report;
}

} // namespace cyclemld
