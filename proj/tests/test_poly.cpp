#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclemld/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

using namespace cyclemld;

namespace {

// Independent oracle for the continuant family: expand det of the k x k
// tridiagonal matrix (1 on the diagonal, x off it) by brute-force Leibniz
// summation over all k! permutations.
std::vector<long long> leibniz_tridiag(int k) {
    if (k == 0) return {1};
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<long long> acc(static_cast<std::size_t>(k) + 1, 0);
    do {
        int xdeg = 0;
        bool zero = false;
        for (int i = 0; i < k && !zero; ++i) {
            const int d = std::abs(perm[static_cast<std::size_t>(i)] - i);
            if (d > 1) zero = true;
            if (d == 1) ++xdeg;
        }
        if (zero) continue;
        int inversions = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)])
                    ++inversions;
        acc[static_cast<std::size_t>(xdeg)] += (inversions % 2 == 0) ? 1 : -1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
    return acc;
}

Polynomial from_ll(const std::vector<long long>& cs) {
    std::vector<BigInt> out;
    out.reserve(cs.size());
    for (long long c : cs) out.emplace_back(c);
    return Polynomial(out);
}

} // namespace

TEST_CASE("continuants match brute-force tridiagonal determinants") {
    CHECK(p_poly(-1) == Polynomial{});
    CHECK(p_poly(0) == Polynomial{1});
    for (int k = 1; k <= 8; ++k) CHECK(p_poly(k) == from_ll(leibniz_tridiag(k)));
}

TEST_CASE("continuant examples") {
    CHECK(p_poly(1) == Polynomial{1});
    CHECK(p_poly(2) == Polynomial({1, 0, -1}));
    CHECK(p_poly(3) == Polynomial({1, 0, -2}));
    CHECK(p_poly(4) == Polynomial({1, 0, -3, 0, 1}));
    CHECK(p_poly(5) == Polynomial({1, 0, -4, 0, 3}));
    CHECK(p_poly(6).has_only_even_powers());
    CHECK_THROWS_AS(p_poly(-2), std::invalid_argument);
}

TEST_CASE("eigenvalue polynomials for the closed cycles") {
    CHECK(char_poly_odd(2) == Polynomial({1, 1}));
    CHECK(char_poly_odd(3) == Polynomial({1, 1, -1}));
    CHECK(char_poly_odd(4) == Polynomial({1, 1, -2, -1}));
    CHECK(char_poly_even_plus(2) == Polynomial{1});
    CHECK(char_poly_even_plus(3) == Polynomial({1, 0, -2}));
    CHECK(char_poly_even_plus(4) == Polynomial({1, 0, -3}));
    CHECK(char_poly_even_minus(2) == Polynomial{1});
    CHECK(char_poly_even_minus(3) == Polynomial{1});
    CHECK(char_poly_even_minus(4) == Polynomial({1, 0, -1}));
    CHECK_THROWS_AS(char_poly_odd(1), std::invalid_argument);
    CHECK_THROWS_AS(char_poly_even_plus(1), std::invalid_argument);
    CHECK_THROWS_AS(char_poly_even_minus(1), std::invalid_argument);

    // Recurrence consistency: each family satisfies q_m = q_{m-1} - x^2 q_{m-2}.
    for (int m = 4; m <= 12; ++m) {
        const Polynomial x2 = Polynomial::monomial(2, 1);
        CHECK(char_poly_odd(m) == char_poly_odd(m - 1) - x2 * char_poly_odd(m - 2));
        CHECK(char_poly_even_plus(m) ==
              char_poly_even_plus(m - 1) - x2 * char_poly_even_plus(m - 2));
        CHECK(char_poly_even_minus(m) ==
              char_poly_even_minus(m - 1) - x2 * char_poly_even_minus(m - 2));
    }
}

TEST_CASE("polynomial arithmetic") {
    const Polynomial one_plus = Polynomial({1, 1});
    const Polynomial one_minus = Polynomial({1, -1});
    CHECK(one_plus * one_minus == Polynomial({1, 0, -1}));
    CHECK(one_plus + one_minus == Polynomial({2}));
    CHECK(one_plus - one_plus == Polynomial{});
    CHECK(-one_plus == Polynomial({-1, -1}));
    CHECK(one_plus * BigInt(3) == Polynomial({3, 3}));
    CHECK(Polynomial{}.degree() == -1);
    CHECK(Polynomial{}.is_zero());
    CHECK(one_plus.degree() == 1);
    CHECK(Polynomial::monomial(3, -2) == Polynomial({0, 0, 0, -2}));
    CHECK(one_plus.derivative() == Polynomial{1});
    CHECK(Polynomial({1, 0, -3, 0, 1}).derivative() == Polynomial({0, -6, 0, 4}));
    CHECK(one_plus.shifted(2) == Polynomial({0, 0, 1, 1}));
    CHECK(Polynomial({1, 2, 1}).eval({-1.0, 0.0}) == std::complex<double>(0.0, 0.0));

    const std::complex<double> z(0.5, 0.25);
    const Polynomial p({2, -1, 0, 3});
    CHECK(std::abs(p.eval(z) - (2.0 - z + 3.0 * z * z * z)) < 1e-15);
}

TEST_CASE("exact division") {
    CHECK(divides(Polynomial({1, 1}), Polynomial({1, 0, -1})));
    CHECK_FALSE(divides(Polynomial({1, 1}), Polynomial({1, -1, 1})));
    CHECK(divides(Polynomial({1, 1}), Polynomial{}));
    CHECK_THROWS_AS(divides(Polynomial{}, Polynomial({1, 1})), std::invalid_argument);

    for (int m = 2; m <= 12; ++m) CHECK(divisibility_check(m));
    CHECK_THROWS_AS(divisibility_check(1), std::invalid_argument);
}

TEST_CASE("factorization of the wrap-around determinant") {
    for (int n = 4; n <= 30; ++n) CHECK(factorization_check(n));
    CHECK_THROWS_AS(factorization_check(3), std::invalid_argument);

    // n = 4 collapses to the constant 1 on both sides.
    const Polynomial lhs = Polynomial::monomial(2, 1) + p_poly(2);
    CHECK(lhs == Polynomial{1});
}

TEST_CASE("root extraction") {
    const RootSet lin = roots(char_poly_odd(2), 1e-10);
    REQUIRE(lin.roots.size() == 1);
    CHECK(std::abs(lin.roots[0] - std::complex<double>(-1.0, 0.0)) < 1e-12);

    const RootSet quad = roots(char_poly_even_plus(3), 1e-10);
    REQUIRE(quad.roots.size() == 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(quad.roots[0] - std::complex<double>(-r, 0.0)) < 1e-12);
    CHECK(std::abs(quad.roots[1] - std::complex<double>(r, 0.0)) < 1e-12);

    const RootSet pm = roots(p_poly(2), 1e-10);
    REQUIRE(pm.roots.size() == 2);
    CHECK(std::abs(pm.roots[0] - std::complex<double>(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(pm.roots[1] - std::complex<double>(1.0, 0.0)) < 1e-12);

    CHECK(roots(Polynomial{5}, 1e-10).roots.empty());
    CHECK_THROWS_AS(roots(Polynomial{}, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(roots(p_poly(2), 0.0), std::invalid_argument);
}

TEST_CASE("roots are simple and accurate for the continuant family") {
    for (int k = 2; k <= 14; ++k) {
        const Polynomial p = p_poly(k);
        const RootSet rs = roots(p, 1e-10);
        CHECK(static_cast<int>(rs.roots.size()) == p.degree());
        double cmax = 0.0;
        for (const BigInt& c : p.coeffs())
            cmax = std::max(cmax, std::abs(c.convert_to<double>()));
        for (const auto& z : rs.roots) {
            const double scale = cmax * std::pow(std::max(1.0, std::abs(z)), p.degree());
            CHECK(std::abs(p.eval(z)) < 1e-8 * scale);
        }
        for (std::size_t i = 0; i + 1 < rs.roots.size(); ++i)
            CHECK(std::abs(rs.roots[i + 1] - rs.roots[i]) > 1e-8);
    }
}

TEST_CASE("repeated roots are rejected") {
    const Polynomial square = Polynomial({1, 1}) * Polynomial({1, 1});
    CHECK_THROWS_AS(roots(square, 1e-10), SimplicityError);
}
