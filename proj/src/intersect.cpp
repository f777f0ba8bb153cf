#include "cyclemld/intersect.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace cyclemld {

namespace {

constexpr std::uint64_t kHarvestSeed = 12345;

using Key = std::vector<std::int64_t>;

Key canonical_key(const SymMatrix& a) {
    Key key;
    const int n = a.dim();
    key.reserve(static_cast<std::size_t>(n) * (n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            key.push_back(std::llround(a(i, j).real() * 1e6));
            key.push_back(std::llround(a(i, j).imag() * 1e6));
        }
    }
    return key;
}

// Chebyshev distance, abandoning the scan once `cap` is exceeded.
double cheb_distance(const SymMatrix& a, const SymMatrix& b, double cap) {
    double d = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
            if (d > cap) return d;
        }
    }
    return d;
}

BigInt binomial(int m, int k) {
    if (k < 0 || k > m) return 0;
    BigInt c = 1;
    for (int i = 1; i <= k; ++i) {
        c *= m - k + i;
        c /= i; // exact at every step: c is binom(m-k+i, i)
    }
    return c;
}

} // namespace

std::int64_t ml_degree_formula(int n) {
    if (n < 3) throw std::invalid_argument("ml_degree_formula: n must be >= 3");
    const BigInt v = BigInt(n - 3) * boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(n - 2)) + 1;
    if (v > std::numeric_limits<std::int64_t>::max())
        throw std::invalid_argument("ml_degree_formula: value exceeds 64 bits");
    return v.convert_to<std::int64_t>();
}

BigInt variety_degree_formula(int n) {
    if (n < 3) throw std::invalid_argument("variety_degree_formula: n must be >= 3");
    const BigInt num = BigInt(n + 2) * binomial(2 * n, n);
    if (num % 4 != 0)
        throw std::logic_error("variety_degree_formula: (n+2)*binom(2n,n) not divisible by 4");
    return num / 4 - BigInt(3) * boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(2 * n - 3));
}

std::string family_name(Family f) {
    switch (f) {
        case Family::identity: return "identity";
        case Family::m_plus: return "m_plus";
        case Family::m_minus: return "m_minus";
        case Family::checkerboard: return "checkerboard";
    }
    throw std::logic_error("family_name: unreachable");
}

CensusReport enumerate_points(int n, double tol) {
    if (n < 4) throw std::invalid_argument("enumerate_points: n must be >= 4");
    if (tol <= 0.0) throw std::invalid_argument("enumerate_points: tol must be positive");
    if (n > 24) throw std::invalid_argument("enumerate_points: n too large for orbit enumeration");

    const CycleModel model(n);
    const int m = n / 2;

    // Family representatives: unit-diagonal normalizations of M^(+/-)(x)^{-1}
    // at the census roots, plus the checkerboard for even n.
    struct Rep {
        SymMatrix matrix;
        Family family;
        std::optional<Complex> x;
    };
    std::vector<Rep> reps;

    std::vector<std::pair<Family, RootSet>> family_roots;
    if (n % 2 == 1) {
        family_roots.emplace_back(Family::m_plus, roots(char_poly_odd((n - 1) / 2), tol));
    } else {
        family_roots.emplace_back(Family::m_plus, roots(char_poly_even_plus(m), tol));
        family_roots.emplace_back(Family::m_minus, roots(char_poly_even_minus(m), tol));
    }

    for (const auto& [family, rs] : family_roots) {
        for (const Complex x : rs.roots) {
            const MVariant variant = family == Family::m_plus ? MVariant::plus : MVariant::minus;
            const SymMatrix mm = m_matrix(n, x, variant);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mm.dense());
            const auto& sv = svd.singularValues();
            if (!(sv(n - 1) > tol * sv(0))) {
                std::ostringstream os;
                os << "enumerate_points: root-of-singular-matrix for " << family_name(family)
                   << " at x = (" << x.real() << ", " << x.imag() << ")";
                throw CensusError(os.str());
            }
            const Eigen::MatrixXcd inv = mm.dense().inverse();
            const Complex c = inv(0, 0);
            if (std::abs(c) <= tol)
                throw CensusError("enumerate_points: normalization-degenerate diagonal entry");
            for (int i = 0; i < n; ++i)
                if (std::abs(inv(i, i) - c) > 1e-8 * std::max(1.0, std::abs(c)))
                    throw CensusError("enumerate_points: validation-failure (inverse diagonal not constant)");
            reps.push_back({SymMatrix(Eigen::MatrixXcd(inv / c)), family, x});
        }
    }
    if (n % 2 == 0) reps.push_back({checkerboard(n), Family::checkerboard, std::nullopt});

    // Full orbit generation over all 2^n sign patterns; stabilizers and the
    // even-n coincidence D_alt M(x) D_alt = M(-x) are absorbed by dedup.
    std::map<Key, IntersectionPoint> survivors;
    std::int64_t collisions = 0;

    IntersectionPoint id_point;
    id_point.matrix = SymMatrix::identity(n);
    id_point.family = Family::identity;
    id_point.signs.assign(static_cast<std::size_t>(n), 1);
    survivors.emplace(canonical_key(id_point.matrix), std::move(id_point));

    for (const Rep& rep : reps) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const SignDiag d = SignDiag::from_mask(n, mask);
            IntersectionPoint pt;
            pt.matrix = conjugate_sign(rep.matrix, d);
            pt.family = rep.family;
            pt.x = rep.x;
            pt.signs = d.signs();
            Key key = canonical_key(pt.matrix);
            auto [it, inserted] = survivors.emplace(std::move(key), std::move(pt));
            if (!inserted && it->second.family != rep.family) ++collisions;
        }
    }

    CensusReport report;
    report.n = n;
    report.formula_count = ml_degree_formula(n);
    report.cross_family_collisions = collisions;
    for (auto& [key, pt] : survivors) report.points.push_back(std::move(pt));

    // Full-precision merge pass and minimum pairwise separation in one scan.
    std::vector<bool> dead(report.points.size(), false);
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        if (dead[i]) continue;
        const double norm_i = report.points[i].matrix.max_abs();
        for (std::size_t j = i + 1; j < report.points.size(); ++j) {
            if (dead[j]) continue;
            const double thresh =
                1e-8 * std::max(1.0, std::max(norm_i, report.points[j].matrix.max_abs()));
            const double cap = std::max(min_dist, thresh);
            const double d = cheb_distance(report.points[i].matrix, report.points[j].matrix, cap);
            if (d > cap) continue;
            if (d <= thresh) {
                dead[j] = true;
            } else {
                min_dist = std::min(min_dist, d);
            }
        }
    }
    if (std::any_of(dead.begin(), dead.end(), [](bool b) { return b; })) {
        std::vector<IntersectionPoint> kept;
        for (std::size_t i = 0; i < report.points.size(); ++i)
            if (!dead[i]) kept.push_back(std::move(report.points[i]));
        report.points = std::move(kept);
    }
    report.distinct_count = static_cast<std::int64_t>(report.points.size());
    report.min_pairwise_distance = report.points.size() > 1 ? min_dist : 0.0;

    // Validate every survivor; the singular checkerboard family needs the
    // minor fallback, harvested once per even n.
    std::vector<MinorSpec> minors;
    if (n % 2 == 0) minors = harvest_minors(n, 20, 1e-9, kHarvestSeed);
    const std::vector<MinorSpec>* minors_ptr = minors.empty() ? nullptr : &minors;
    for (const IntersectionPoint& pt : report.points) {
        if (!in_affine_slice(pt.matrix, model, 1e-8))
            throw CensusError("enumerate_points: validation-failure (affine slice)");
        if (!in_l_inverse(pt.matrix, model, 1e-8, minors_ptr))
            throw CensusError("enumerate_points: validation-failure (variety membership)");
    }
    return report;
}

std::vector<CountCheck> count_check(const std::vector<int>& ns, double tol) {
    std::vector<CountCheck> out;
    for (int n : ns) {
        CountCheck c;
        c.n = n;
        try {
            c.report = enumerate_points(n, tol);
            c.pass = c.report.distinct_count == c.report.formula_count;
            if (!c.pass) {
                std::ostringstream os;
                os << "count mismatch: " << c.report.distinct_count
                   << " != " << c.report.formula_count;
                c.error = os.str();
            }
        } catch (const std::exception& e) {
            c.pass = false;
            c.error = e.what();
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace cyclemld
