#include "cyclemld/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cyclemld {

SymMatrix::SymMatrix(int n) {
    if (n < 1) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
    m_ = Eigen::MatrixXcd::Zero(n, n);
}

SymMatrix::SymMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw std::invalid_argument("SymMatrix: matrix must be square");
    for (int i = 0; i < m_.rows(); ++i)
        for (int j = 0; j < i; ++j)
            m_(i, j) = m_(j, i);
}

SymMatrix SymMatrix::identity(int n) {
    return SymMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)));
}

void SymMatrix::set(int i, int j, Complex v) {
    if (i < 0 || j < 0 || i >= dim() || j >= dim())
        throw std::invalid_argument("SymMatrix::set: index out of range");
    m_(i, j) = v;
    m_(j, i) = v;
}

double SymMatrix::max_abs() const {
    return m_.cwiseAbs().maxCoeff();
}

double SymMatrix::max_imag_abs() const {
    return m_.imag().cwiseAbs().maxCoeff();
}

Complex minor_value(const SymMatrix& a, const MinorSpec& s) {
    const auto& m = a.dense();
    const auto e = [&](int r, int c) { return m(s.rows[r], s.cols[c]); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
         - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
         + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

SignDiag::SignDiag(std::vector<int> signs) : signs_(std::move(signs)) {
    if (signs_.empty()) throw std::invalid_argument("SignDiag: empty sign vector");
    for (int s : signs_)
        if (s != 1 && s != -1) throw std::invalid_argument("SignDiag: entries must be +1 or -1");
}

SignDiag SignDiag::from_mask(int n, std::uint32_t mask) {
    if (n < 1 || n > 31) throw std::invalid_argument("SignDiag::from_mask: bad dimension");
    std::vector<int> s(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) s[static_cast<std::size_t>(i)] = -1;
    return SignDiag(std::move(s));
}

CycleModel::CycleModel(int n) : n_(n) {
    if (n < 3) throw std::invalid_argument("CycleModel: n must be >= 3");
    for (int i = 0; i < n; ++i) diag_.emplace_back(i, i);
    for (int i = 0; i + 1 < n; ++i) edges_.emplace_back(i, i + 1);
    edges_.emplace_back(0, n - 1);
    support_ = diag_;
    support_.insert(support_.end(), edges_.begin(), edges_.end());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!on_support(i, j)) offsupport_.emplace_back(i, j);
}

bool CycleModel::on_support(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_) throw std::invalid_argument("on_support: index out of range");
    return i == j || j == i + 1 || (i == 0 && j == n_ - 1);
}

int CycleModel::tri_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_) throw std::invalid_argument("tri_index: index out of range");
    return i * n_ - i * (i - 1) / 2 + (j - i);
}

SymMatrix m_matrix(int n, Complex x, MVariant variant) {
    const int min_n = variant == MVariant::path ? 1 : 3;
    if (n < min_n) throw std::invalid_argument("m_matrix: dimension too small for variant");
    SymMatrix a = SymMatrix::identity(n);
    for (int i = 0; i + 1 < n; ++i) a.set(i, i + 1, x);
    if (variant == MVariant::plus) a.set(0, n - 1, x);
    if (variant == MVariant::minus) a.set(0, n - 1, -x);
    return a;
}

SymMatrix checkerboard(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("checkerboard: n must be even and >= 4");
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if ((i + j) % 2 == 0) a.set(i, j, 1.0);
    return a;
}

SymMatrix conjugate_sign(const SymMatrix& a, const SignDiag& d) {
    const int n = a.dim();
    if (d.dim() != n) throw std::invalid_argument("conjugate_sign: dimension mismatch");
    SymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.set(i, j, static_cast<double>(d.sign(i) * d.sign(j)) * a(i, j));
    return out;
}

SymMatrix shift_conjugate(const SymMatrix& a, ShiftVariant variant) {
    const int n = a.dim();
    // Row i of the shift is +/- e_{i+1 mod n}; only the wrap-around row of
    // the minus variant carries the -1.
    SymMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double sgn = 1.0;
            if (variant == ShiftVariant::minus) {
                if (i == n - 1) sgn = -sgn;
                if (j == n - 1) sgn = -sgn;
            }
            out.set(i, j, sgn * a((i + 1) % n, (j + 1) % n));
        }
    }
    return out;
}

SymMatrix project_l(const SymMatrix& a, const CycleModel& model) {
    const int n = a.dim();
    if (model.n() != n) throw std::invalid_argument("project_l: dimension mismatch");
    SymMatrix out(n);
    for (const auto& [i, j] : model.support_positions()) out.set(i, j, a(i, j));
    return out;
}

SymMatrix project_lperp(const SymMatrix& a, const CycleModel& model) {
    const int n = a.dim();
    if (model.n() != n) throw std::invalid_argument("project_lperp: dimension mismatch");
    SymMatrix out(n);
    for (const auto& [i, j] : model.offsupport_positions()) out.set(i, j, a(i, j));
    return out;
}

bool in_affine_slice(const SymMatrix& a, const CycleModel& model, double tol) {
    if (model.n() != a.dim()) throw std::invalid_argument("in_affine_slice: dimension mismatch");
    for (const auto& [i, j] : model.diag_positions())
        if (std::abs(a(i, j) - Complex(1.0)) > tol) return false;
    for (const auto& [i, j] : model.edge_positions())
        if (std::abs(a(i, j)) > tol) return false;
    return true;
}

bool in_l_inverse(const SymMatrix& a, const CycleModel& model, double tol,
                  const std::vector<MinorSpec>* minors) {
    if (model.n() != a.dim()) throw std::invalid_argument("in_l_inverse: dimension mismatch");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.dense());
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(a.dim() - 1);
    if (smax > 0.0 && smin > smax * tol) {
        const Eigen::MatrixXcd inv = a.dense().inverse();
        const double scale = inv.cwiseAbs().maxCoeff();
        for (const auto& [i, j] : model.offsupport_positions())
            if (std::abs(inv(i, j)) > tol * scale) return false;
        return true;
    }
    if (minors == nullptr || minors->empty())
        throw NeedsMinorsError("in_l_inverse: singular matrix needs a harvested minor list");
    for (const auto& spec : *minors) {
        double scale = 0.0;
        for (int r : spec.rows)
            for (int c : spec.cols) scale = std::max(scale, std::abs(a(r, c)));
        scale = std::max(scale * scale * scale, 1e-300);
        if (std::abs(minor_value(a, spec)) > tol * scale) return false;
    }
    return true;
}

} // namespace cyclemld
