#ifndef CYCLEMLD_MODEL_HPP
#define CYCLEMLD_MODEL_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cyclemld {

using Complex = std::complex<double>;

/// Thrown by in_l_inverse when the matrix is numerically singular and no
/// minor list was supplied to fall back on.
struct NeedsMinorsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex symmetric matrix. The upper triangle is authoritative;
/// every mutation keeps the two triangles identical.
class SymMatrix {
public:
    explicit SymMatrix(int n);
    explicit SymMatrix(Eigen::MatrixXcd m); // symmetrizes from the upper triangle

    static SymMatrix identity(int n);

    int dim() const { return static_cast<int>(m_.rows()); }
    Complex operator()(int i, int j) const { return m_(i, j); }
    void set(int i, int j, Complex v);

    const Eigen::MatrixXcd& dense() const { return m_; }

    double max_abs() const;
    double max_imag_abs() const;
    Eigen::MatrixXd real() const { return m_.real(); }

private:
    Eigen::MatrixXcd m_;
};

/// Row/column index triples selecting a 3x3 submatrix M(rows, cols).
/// Indices are 0-based and strictly increasing within each triple.
struct MinorSpec {
    std::array<int, 3> rows;
    std::array<int, 3> cols;

    bool operator==(const MinorSpec& o) const { return rows == o.rows && cols == o.cols; }
    bool operator<(const MinorSpec& o) const {
        return rows != o.rows ? rows < o.rows : cols < o.cols;
    }
};

/// det of the 3x3 submatrix a(spec.rows, spec.cols), expanded directly.
Complex minor_value(const SymMatrix& a, const MinorSpec& spec);

/// Diagonal matrix with entries in {+1, -1}.
class SignDiag {
public:
    explicit SignDiag(std::vector<int> signs);
    static SignDiag from_mask(int n, std::uint32_t mask); // bit i set -> -1 at i

    int dim() const { return static_cast<int>(signs_.size()); }
    int sign(int i) const { return signs_[i]; }
    const std::vector<int>& signs() const { return signs_; }

private:
    std::vector<int> signs_;
};

/// Support pattern of the n-cycle: all diagonal positions plus the edges
/// (0,1), (1,2), ..., (n-2,n-1), (0,n-1). Indices are 0-based.
class CycleModel {
public:
    explicit CycleModel(int n); // n >= 3

    int n() const { return n_; }
    int support_size() const { return 2 * n_; }
    int tri_count() const { return n_ * (n_ + 1) / 2; }

    const std::vector<std::pair<int, int>>& diag_positions() const { return diag_; }
    const std::vector<std::pair<int, int>>& edge_positions() const { return edges_; }
    const std::vector<std::pair<int, int>>& support_positions() const { return support_; }
    const std::vector<std::pair<int, int>>& offsupport_positions() const { return offsupport_; }

    bool on_support(int i, int j) const;

    /// Position of (i,j), i <= j, in the upper-triangle coordinate order
    /// (0,0),(0,1),...,(0,n-1),(1,1),...,(n-1,n-1).
    int tri_index(int i, int j) const;

private:
    int n_;
    std::vector<std::pair<int, int>> diag_;
    std::vector<std::pair<int, int>> edges_;      // (0,1), ..., (n-2,n-1), (0,n-1)
    std::vector<std::pair<int, int>> support_;    // diagonal first, then edges
    std::vector<std::pair<int, int>> offsupport_; // lexicographic, i < j
};

enum class MVariant { path, plus, minus };
enum class ShiftVariant { plus, minus };

/// Path (tridiagonal with units on the diagonal and x off it) or cycle
/// completion with corner entry +x (plus) or -x (minus).
SymMatrix m_matrix(int n, Complex x, MVariant variant);

/// 0/1 parity matrix: entry (i,j) is 1 when i + j is even. Rank 2, unit
/// diagonal, zero on all cycle edges. Requires n even, n >= 4.
SymMatrix checkerboard(int n);

/// D * A * D for a sign-diagonal D.
SymMatrix conjugate_sign(const SymMatrix& a, const SignDiag& d);

/// N * A * N^T for the cyclic shift N(+) or the sign-twisted shift N(-),
/// whose wrap-around row carries a -1.
SymMatrix shift_conjugate(const SymMatrix& a, ShiftVariant variant);

/// Entrywise restriction to the support / to its complement.
/// project_l(a) + project_lperp(a) == a exactly.
SymMatrix project_l(const SymMatrix& a, const CycleModel& model);
SymMatrix project_lperp(const SymMatrix& a, const CycleModel& model);

/// Unit diagonal and vanishing cycle-edge entries, to absolute tolerance.
bool in_affine_slice(const SymMatrix& a, const CycleModel& model, double tol);

/// Membership in the inverse variety. Invertible matrices are tested via
/// support of the inverse; singular ones fall back to the supplied minors
/// and throw NeedsMinorsError when none are given.
bool in_l_inverse(const SymMatrix& a, const CycleModel& model, double tol,
                  const std::vector<MinorSpec>* minors = nullptr);

} // namespace cyclemld

#endif
