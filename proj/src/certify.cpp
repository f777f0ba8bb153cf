#include "cyclemld/certify.hpp"

#include "cyclemld/intersect.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyclemld {

namespace {

std::vector<std::array<int, 3>> index_triples(int n) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) out.push_back({a, b, c});
    return out;
}

} // namespace

SymMatrix sample_l_inverse(int n, Rng& rng) {
    const CycleModel model(n);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : model.support_positions()) {
        const double v = rng.normal();
        k(i, j) = v;
        k(j, i) = v;
    }
    bool ok = false;
    for (int attempt = 0; attempt < 10; ++attempt) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().cwiseAbs().minCoeff();
        const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
        if (lo > 1e-8 * hi && hi > 0.0) {
            ok = true;
            break;
        }
        k += (1.0 + hi) * Eigen::MatrixXd::Identity(n, n);
    }
    if (!ok) throw std::runtime_error("sample_l_inverse: sample singular after 10 reshifts");
    return SymMatrix(Eigen::MatrixXcd(k.inverse()));
}

std::vector<MinorSpec> harvest_minors(int n, int samples, double tol, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("harvest_minors: n must be >= 4");
    if (samples < 10) throw std::invalid_argument("harvest_minors: samples must be >= 10");
    if (tol <= 0.0) throw std::invalid_argument("harvest_minors: tol must be positive");

    Rng rng(seed);
    std::vector<SymMatrix> draws;
    draws.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) draws.push_back(sample_l_inverse(n, rng));

    std::vector<MinorSpec> out;
    const auto triples = index_triples(n);
    for (std::size_t a = 0; a < triples.size(); ++a) {
        for (std::size_t b = a; b < triples.size(); ++b) {
            // det M(I,J) = det M(J,I) for symmetric M; keep I <= J only.
            const MinorSpec spec{triples[a], triples[b]};
            bool vanishes = true;
            for (const SymMatrix& m : draws) {
                double scale = 0.0;
                for (int r : spec.rows)
                    for (int c : spec.cols) scale = std::max(scale, std::abs(m(r, c)));
                scale = std::max(scale * scale * scale, 1e-300);
                if (std::abs(minor_value(m, spec)) > tol * scale) {
                    vanishes = false;
                    break;
                }
            }
            if (vanishes) out.push_back(spec);
        }
    }
    return out;
}

Eigen::MatrixXcd jacobian_at(const SymMatrix& a, const std::vector<MinorSpec>& minors,
                             const CycleModel& model) {
    const int n = model.n();
    if (a.dim() != n) throw std::invalid_argument("jacobian_at: dimension mismatch");
    const int cols = model.tri_count();
    const int rows = static_cast<int>(minors.size()) + model.support_size();
    Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(rows, cols);

    for (std::size_t mi = 0; mi < minors.size(); ++mi) {
        const MinorSpec& s = minors[mi];
        const auto e = [&](int r, int c) { return a(s.rows[r], s.cols[c]); };
        // 3x3 cofactors of the submatrix, scattered back; a symmetric
        // coordinate hit in both slots accumulates both cofactors.
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
                const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
                // Cyclic index order already carries the cofactor sign.
                const Complex cof = e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1);
                jac(static_cast<int>(mi), model.tri_index(s.rows[r], s.cols[c])) += cof;
            }
        }
    }
    int row = static_cast<int>(minors.size());
    for (const auto& [i, j] : model.support_positions())
        jac(row++, model.tri_index(i, j)) = 1.0;
    return jac;
}

Certificate rank_certificate(const SymMatrix& a, const std::string& label,
                             const std::vector<MinorSpec>& minors, const CycleModel& model) {
    Certificate cert;
    cert.point_label = label;
    cert.required_rank = model.tri_count();
    cert.minor_count = static_cast<int>(minors.size());

    const Eigen::MatrixXcd jac = jacobian_at(a, minors, model);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
    const auto& sv = svd.singularValues();
    const double s1 = sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * s1) ++rank;
    cert.achieved_rank = rank;
    cert.sigma_ratio = sv.size() >= cert.required_rank && s1 > 0.0
                           ? sv(cert.required_rank - 1) / s1
                           : 0.0;
    return cert;
}

Certificate rank_certificate(const IntersectionPoint& point,
                             const std::vector<MinorSpec>& minors, const CycleModel& model) {
    std::ostringstream label;
    label << family_name(point.family);
    if (point.x) {
        label << "(x=" << point.x->real();
        if (point.x->imag() != 0.0) label << (point.x->imag() < 0 ? "" : "+") << point.x->imag() << "i";
        label << ")";
    }
    label << " signs=";
    for (int s : point.signs) label << (s > 0 ? '+' : '-');
    return rank_certificate(point.matrix, label.str(), minors, model);
}

bool rk_identity_check(int n, int k, int samples, double tol, std::uint64_t seed,
                       bool restore_cancelled_terms) {
    if (n < 4) throw std::invalid_argument("rk_identity_check: n must be >= 4");
    if (k < 3 || k > n - 1) throw std::invalid_argument("rk_identity_check: need 3 <= k <= n-1");
    if (samples < 1) throw std::invalid_argument("rk_identity_check: samples must be >= 1");

    Rng rng(seed);
    const CycleModel model(n);
    for (int s = 0; s < samples; ++s) {
        const SymMatrix a = sample_l_inverse(n, rng);
        const auto x = [&](int i, int j) { return a(i - 1, j - 1); }; // 1-based

        // Expanded form, verbatim; the cross-checked minor combination below
        // is x_{2,k+1} det M({1,2,k},{1,k,k+1}) - x_{1,k} det M({2,k,k+1},{1,2,k+1}).
        const Complex terms[8] = {
            x(1, 1) * x(k, k + 1) * x(2, k) * x(2, k + 1),
            -x(1, 1) * x(k, k) * x(2, k + 1) * x(2, k + 1),
            -x(1, 2) * x(k, k + 1) * x(1, k) * x(2, k + 1),
            x(1, 2) * x(k, k) * x(1, k + 1) * x(2, k + 1),
            -x(1, 2) * x(k + 1, k + 1) * x(1, k) * x(2, k),
            x(1, 2) * x(k, k + 1) * x(1, k) * x(2, k + 1),
            x(2, 2) * x(k + 1, k + 1) * x(1, k) * x(1, k),
            -x(2, 2) * x(k, k + 1) * x(1, k) * x(1, k + 1),
        };
        double scale = 0.0;
        Complex expanded = 0.0;
        for (const Complex& t : terms) {
            expanded += t;
            scale = std::max(scale, std::abs(t));
        }
        scale = std::max(scale, 1e-300);
        if (restore_cancelled_terms)
            expanded += x(1, k) * x(1, k) * x(2, k + 1) * x(2, k + 1)
                      - x(1, k) * x(2, k) * x(1, k + 1) * x(2, k + 1);

        const auto det3 = [](const Complex m[3][3]) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                 - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                 + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        const Complex m1[3][3] = {
            {x(1, 1), x(1, k), x(1, k + 1)},
            {x(1, 2), x(2, k), x(2, k + 1)},
            {x(1, k), x(k, k), x(k, k + 1)},
        };
        const Complex m2[3][3] = {
            {x(1, 2), x(2, 2), x(2, k + 1)},
            {x(1, k), x(2, k), x(k, k + 1)},
            {x(1, k + 1), x(2, k + 1), x(k + 1, k + 1)},
        };
        const Complex minor_form = x(2, k + 1) * det3(m1) - x(1, k) * det3(m2);

        // Bihomogeneous version, evaluated at (A, y = pi(A)): the first two
        // factors of every term are y-coordinates, all on the support.
        const SymMatrix proj = project_l(a, model);
        const auto y = [&](int i, int j) { return proj(i - 1, j - 1); };
        const Complex bihom = y(1, 1) * y(k, k + 1) * x(2, k) * x(2, k + 1)
                            - y(1, 1) * y(k, k) * x(2, k + 1) * x(2, k + 1)
                            - y(1, 2) * y(k, k + 1) * x(1, k) * x(2, k + 1)
                            + y(1, 2) * y(k, k) * x(1, k + 1) * x(2, k + 1)
                            - y(1, 2) * y(k + 1, k + 1) * x(1, k) * x(2, k)
                            + y(1, 2) * y(k, k + 1) * x(1, k) * x(2, k + 1)
                            + y(2, 2) * y(k + 1, k + 1) * x(1, k) * x(1, k)
                            - y(2, 2) * y(k, k + 1) * x(1, k) * x(1, k + 1);

        if (std::abs(expanded) > tol * scale) return false;
        if (std::abs(bihom) > tol * scale) return false;
        if (std::abs(expanded - minor_form) > tol * scale) return false;
    }
    return true;
}

} // namespace cyclemld
