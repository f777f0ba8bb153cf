#ifndef CYCLEMLD_INTERSECT_HPP
#define CYCLEMLD_INTERSECT_HPP

#include "cyclemld/certify.hpp"
#include "cyclemld/model.hpp"
#include "cyclemld/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclemld {

/// Thrown when census construction or validation fails: a family matrix is
/// singular at a root, a normalization hits a vanishing diagonal entry, or
/// a constructed point fails slice or variety membership.
struct CensusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (n - 3) * 2^(n-2) + 1 for n >= 3, exact in 64-bit (requires n <= 60).
std::int64_t ml_degree_formula(int n);

/// (n + 2)/4 * binom(2n, n) - 3 * 2^(2n-3) for n >= 3, exact.
BigInt variety_degree_formula(int n);

enum class Family { identity, m_plus, m_minus, checkerboard };

std::string family_name(Family f);

struct IntersectionPoint {
    SymMatrix matrix;
    Family family = Family::identity;
    std::optional<Complex> x;     // family parameter; empty for the identity
    std::vector<int> signs;       // conjugating sign pattern
    std::optional<Certificate> certificate;

    IntersectionPoint() : matrix(1) {}
};

struct CensusReport {
    int n = 0;
    std::int64_t formula_count = 0;
    std::int64_t distinct_count = 0;
    double min_pairwise_distance = 0.0; // Chebyshev, over all pairs
    std::vector<IntersectionPoint> points;
    std::int64_t cross_family_collisions = 0;
};

/// Builds the full critical-point census at S = Id for n >= 4: the identity
/// plus sign-conjugated, unit-diagonal-normalized inverses of the family
/// matrices at the roots of the family polynomials. Points are validated
/// (slice and variety membership) and deduplicated globally.
CensusReport enumerate_points(int n, double tol = 1e-10);

struct CountCheck {
    int n = 0;
    bool pass = false;
    std::string error;            // empty unless enumeration threw
    CensusReport report;
};

/// enumerate_points + count comparison per n; errors are captured per entry
/// instead of aborting the batch.
std::vector<CountCheck> count_check(const std::vector<int>& ns, double tol = 1e-10);

} // namespace cyclemld

#endif
