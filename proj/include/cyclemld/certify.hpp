#ifndef CYCLEMLD_CERTIFY_HPP
#define CYCLEMLD_CERTIFY_HPP

#include "cyclemld/model.hpp"
#include "cyclemld/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cyclemld {

struct IntersectionPoint; // defined in intersect.hpp

/// Numerical transversality certificate for one intersection point.
struct Certificate {
    std::string point_label;
    int required_rank = 0;
    int achieved_rank = 0;
    double sigma_ratio = 0.0; // sigma_required / sigma_1
    int minor_count = 0;

    bool pass() const {
        return achieved_rank == required_rank && sigma_ratio > 1e-8;
    }
};

/// Draws a random invertible concentration matrix on the cycle support and
/// returns its inverse, a generic smooth point of the inverse variety.
SymMatrix sample_l_inverse(int n, Rng& rng);

/// 3x3 minors (I,J) of a generic symmetric matrix that vanish on the
/// inverse variety, detected by vanishing at `samples` independent random
/// points. Pairs are canonicalized to I <= J since det M(I,J) = det M(J,I).
/// Requires n >= 4 and samples >= 10.
std::vector<MinorSpec> harvest_minors(int n, int samples, double tol, std::uint64_t seed);

/// Jacobian of the harvested minors plus the 2n affine-slice constraints
/// with respect to the n(n+1)/2 upper-triangle coordinates, evaluated at a.
/// Shape: (minors.size() + 2n) x n(n+1)/2.
Eigen::MatrixXcd jacobian_at(const SymMatrix& a, const std::vector<MinorSpec>& minors,
                             const CycleModel& model);

/// Singular-value rank certificate at one matrix. Rank counts singular
/// values above 1e-8 * sigma_1.
Certificate rank_certificate(const SymMatrix& a, const std::string& label,
                             const std::vector<MinorSpec>& minors, const CycleModel& model);

Certificate rank_certificate(const IntersectionPoint& point,
                             const std::vector<MinorSpec>& minors, const CycleModel& model);

/// Verifies, at `samples` random points of the inverse variety, that the
/// k-th edge relation vanishes in all three published forms: the 8-term
/// expansion, the minor combination, and the bihomogeneous version.
/// k is 1-based with 3 <= k <= n-1. With restore_cancelled_terms the two
/// monomials that cancel in the expansion are added back; the check is then
/// expected to fail, which guards the test against a vacuous pass.
bool rk_identity_check(int n, int k, int samples, double tol, std::uint64_t seed,
                       bool restore_cancelled_terms = false);

} // namespace cyclemld

#endif
