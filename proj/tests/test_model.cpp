#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclemld/certify.hpp"
#include "cyclemld/model.hpp"
#include "cyclemld/poly.hpp"
#include "cyclemld/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace cyclemld;

namespace {

std::vector<long long> key_of(const SymMatrix& a) {
    std::vector<long long> key;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j) {
            key.push_back(std::llround(a(i, j).real() * 1e9));
            key.push_back(std::llround(a(i, j).imag() * 1e9));
        }
    return key;
}

std::set<std::vector<long long>> sign_orbit(const SymMatrix& a) {
    const int n = a.dim();
    std::set<std::vector<long long>> orbit;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        orbit.insert(key_of(conjugate_sign(a, SignDiag::from_mask(n, mask))));
    return orbit;
}

} // namespace

TEST_CASE("cycle matrices") {
    const SymMatrix m = m_matrix(4, 1.0, MVariant::minus);
    const double expected[4][4] = {
        {1, 1, 0, -1}, {1, 1, 1, 0}, {0, 1, 1, 1}, {-1, 0, 1, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(m(i, j) == Complex(expected[i][j], 0.0));

    const SymMatrix plus = m_matrix(4, 0.5, MVariant::plus);
    CHECK(plus(0, 3) == Complex(0.5, 0.0));
    CHECK(plus(0, 2) == Complex(0.0, 0.0));

    const SymMatrix path = m_matrix(4, 0.5, MVariant::path);
    CHECK(path(0, 3) == Complex(0.0, 0.0));
    CHECK(path(0, 1) == Complex(0.5, 0.0));

    CHECK_THROWS_AS(m_matrix(2, 0.5, MVariant::plus), std::invalid_argument);
}

TEST_CASE("checkerboard pattern") {
    const SymMatrix c = checkerboard(4);
    const double expected[4][4] = {
        {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(c(i, j) == Complex(expected[i][j], 0.0));

    // Rank 2 for every even size.
    for (int n = 4; n <= 10; n += 2) {
        const Eigen::MatrixXcd d = checkerboard(n).dense();
        CHECK(d.jacobiSvd().rank() == 2);
    }
    CHECK_THROWS_AS(checkerboard(5), std::invalid_argument);
}

TEST_CASE("path determinant equals the continuant") {
    Rng rng(42);
    for (int n = 3; n <= 9; ++n) {
        const Polynomial p = p_poly(n);
        for (int t = 0; t < 8; ++t) {
            const Complex x(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            const Complex det = m_matrix(n, x, MVariant::path).dense().determinant();
            CHECK(std::abs(det - p.eval(x)) < 1e-9 * std::max(1.0, std::abs(p.eval(x))));
        }
    }
}

TEST_CASE("cycle spectra match the closed forms") {
    const double x = 0.37;
    for (int n = 3; n <= 10; ++n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_plus(
            m_matrix(n, x, MVariant::plus).real());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_minus(
            m_matrix(n, x, MVariant::minus).real());
        std::vector<double> plus_expect, minus_expect;
        for (int k = 0; k < n; ++k) {
            plus_expect.push_back(1.0 + 2.0 * x * std::cos(2.0 * M_PI * k / n));
            minus_expect.push_back(1.0 + 2.0 * x * std::cos(M_PI * (2.0 * k + 1.0) / n));
        }
        std::sort(plus_expect.begin(), plus_expect.end());
        std::sort(minus_expect.begin(), minus_expect.end());
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs(es_plus.eigenvalues()(k) - plus_expect[static_cast<std::size_t>(k)]) <
                  1e-9);
            CHECK(std::abs(es_minus.eigenvalues()(k) - minus_expect[static_cast<std::size_t>(k)]) <
                  1e-9);
        }
    }
}

TEST_CASE("sign conjugation") {
    const SymMatrix id = SymMatrix::identity(5);
    for (unsigned mask = 0; mask < 32; ++mask) {
        const SymMatrix c = conjugate_sign(id, SignDiag::from_mask(5, mask));
        CHECK((c.dense() - id.dense()).cwiseAbs().maxCoeff() == 0.0);
    }

    // Alternating signs negate every cycle edge when n is even.
    for (int n = 4; n <= 8; n += 2) {
        std::vector<int> alt(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) alt[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1 : -1;
        const SymMatrix lhs = conjugate_sign(m_matrix(n, 0.3, MVariant::plus), SignDiag(alt));
        const SymMatrix rhs = m_matrix(n, -0.3, MVariant::plus);
        CHECK((lhs.dense() - rhs.dense()).cwiseAbs().maxCoeff() == 0.0);

        const SymMatrix cb = checkerboard(n);
        const SymMatrix cb2 = conjugate_sign(cb, SignDiag(alt));
        CHECK((cb2.dense() - cb.dense()).cwiseAbs().maxCoeff() == 0.0);
    }

    CHECK(SignDiag::from_mask(4, 0).signs() == std::vector<int>({1, 1, 1, 1}));
    CHECK_THROWS_AS(conjugate_sign(id, SignDiag::from_mask(4, 0)), std::invalid_argument);
}

TEST_CASE("sign orbit sizes") {
    for (int n = 4; n <= 8; ++n) {
        CHECK(sign_orbit(m_matrix(n, 0.3, MVariant::plus)).size() == (1u << (n - 1)));
        if (n % 2 == 0) CHECK(sign_orbit(checkerboard(n)).size() == (1u << (n - 2)));
    }
}

TEST_CASE("shift conjugation") {
    for (int n = 4; n <= 9; ++n) {
        const SymMatrix mp = m_matrix(n, 0.4, MVariant::plus);
        CHECK((shift_conjugate(mp, ShiftVariant::plus).dense() - mp.dense())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        const SymMatrix mm = m_matrix(n, 0.4, MVariant::minus);
        CHECK((shift_conjugate(mm, ShiftVariant::minus).dense() - mm.dense())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        if (n % 2 == 0) {
            const SymMatrix cb = checkerboard(n);
            CHECK((shift_conjugate(cb, ShiftVariant::plus).dense() - cb.dense())
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
        }
    }

    // Plus and minus shifts agree except for signs on the last row/column.
    const SymMatrix a = m_matrix(5, 0.2, MVariant::plus);
    const SymMatrix sp = shift_conjugate(a, ShiftVariant::plus);
    const SymMatrix sm = shift_conjugate(a, ShiftVariant::minus);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            const double flip = ((i == 4) != (j == 4)) ? -1.0 : 1.0;
            CHECK(sm(i, j) == flip * sp(i, j));
        }
}

TEST_CASE("projections split a matrix across the support") {
    const CycleModel model(5);
    Rng rng(7);
    Eigen::MatrixXcd w(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            w(i, j) = Complex(rng.normal(), rng.normal());
            w(j, i) = w(i, j);
        }
    const SymMatrix a(w);
    const SymMatrix on = project_l(a, model);
    const SymMatrix off = project_lperp(a, model);
    CHECK((on.dense() + off.dense() - a.dense()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            if (model.on_support(i, j))
                CHECK(off(i, j) == Complex(0.0, 0.0));
            else
                CHECK(on(i, j) == Complex(0.0, 0.0));
        }
}

TEST_CASE("affine slice membership") {
    const CycleModel model(5);
    CHECK(in_affine_slice(SymMatrix::identity(5), model, 1e-8));
    CHECK_FALSE(in_affine_slice(m_matrix(5, 0.3, MVariant::plus), model, 1e-8));

    SymMatrix a = SymMatrix::identity(5);
    a.set(0, 2, Complex(0.5, 0.0));
    CHECK(in_affine_slice(a, model, 1e-8));
    a.set(0, 1, Complex(1e-5, 0.0));
    CHECK_FALSE(in_affine_slice(a, model, 1e-8));
    CHECK(in_affine_slice(a, model, 1e-4));
}

TEST_CASE("inverse support membership, invertible branch") {
    const CycleModel model(5);
    CHECK(in_l_inverse(SymMatrix::identity(5), model, 1e-8));

    // A generic inverse of a cycle-supported matrix belongs; a generic dense
    // symmetric matrix does not.
    Rng rng(11);
    const SymMatrix good = sample_l_inverse(5, rng);
    CHECK(in_l_inverse(good, model, 1e-8));

    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            w(i, j) = Complex(rng.normal(), 0.0) + (i == j ? Complex(6.0, 0.0) : Complex(0.0, 0.0));
            w(j, i) = w(i, j);
        }
    CHECK_FALSE(in_l_inverse(SymMatrix(w), model, 1e-8));
}

TEST_CASE("inverse support membership, singular branch") {
    const CycleModel model(4);
    const SymMatrix cb = checkerboard(4);
    CHECK_THROWS_AS(in_l_inverse(cb, model, 1e-8), NeedsMinorsError);

    const std::vector<MinorSpec> minors = {{{0, 1, 2}, {0, 2, 3}}, {{0, 1, 3}, {1, 2, 3}}};
    CHECK(in_l_inverse(cb, model, 1e-8, &minors));

    // Rank-one all-ones matrix: every 3x3 minor vanishes.
    SymMatrix ones(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) ones.set(i, j, Complex(1.0, 0.0));
    CHECK(in_l_inverse(ones, model, 1e-8, &minors));

    // A singular matrix with a non-vanishing harvested minor fails.
    SymMatrix bad(4);
    bad.set(0, 0, 1.0);
    bad.set(1, 1, 1.0);
    bad.set(2, 2, 1.0);
    bad.set(0, 2, 1.0);
    bad.set(1, 3, 1.0);
    CHECK_FALSE(in_l_inverse(bad, model, 1e-8, &minors));
}

TEST_CASE("symmetric matrix wrapper") {
    Eigen::MatrixXcd w(3, 3);
    w << Complex(1, 0), Complex(2, 1), Complex(3, 0),
         Complex(99, 0), Complex(4, 0), Complex(5, -1),
         Complex(99, 0), Complex(99, 0), Complex(6, 0);
    const SymMatrix a(w);
    CHECK(a(1, 0) == Complex(2, 1));
    CHECK(a(0, 1) == Complex(2, 1));
    CHECK(a(2, 1) == Complex(5, -1));
    CHECK(a.dim() == 3);
    CHECK(a.max_abs() == doctest::Approx(6.0));

    SymMatrix b(3);
    b.set(0, 2, Complex(0, 2));
    CHECK(b(2, 0) == Complex(0, 2));
    CHECK(b.max_imag_abs() == 2.0);

    CHECK_THROWS_AS(SymMatrix(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
    CHECK((SymMatrix::identity(4).dense() - Eigen::MatrixXcd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("cycle model bookkeeping") {
    CHECK_THROWS_AS(CycleModel(2), std::invalid_argument);

    const CycleModel m3(3);
    CHECK(m3.support_size() == 6);
    CHECK(m3.offsupport_positions().empty());

    const CycleModel m5(5);
    CHECK(m5.support_size() == 10);
    CHECK(m5.tri_count() == 15);
    CHECK(m5.offsupport_positions().size() == 5);
    CHECK(m5.on_support(0, 4));
    CHECK(m5.on_support(4, 0));
    CHECK_FALSE(m5.on_support(0, 2));

    const auto& sup = m5.support_positions();
    REQUIRE(sup.size() == 10);
    for (int i = 0; i < 5; ++i) CHECK(sup[static_cast<std::size_t>(i)] == std::make_pair(i, i));
    CHECK(sup[5] == std::make_pair(0, 1));
    CHECK(sup[9] == std::make_pair(0, 4));

    std::set<int> seen;
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            const int t = m5.tri_index(i, j);
            CHECK(t >= 0);
            CHECK(t < m5.tri_count());
            seen.insert(t);
        }
    CHECK(static_cast<int>(seen.size()) == m5.tri_count());
}

TEST_CASE("minor evaluation") {
    SymMatrix a(4);
    const double vals[4][4] = {{1, 2, 3, 0}, {2, 4, 5, 0}, {3, 5, 6, 0}, {0, 0, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) a.set(i, j, Complex(vals[i][j], 0.0));
    CHECK(minor_value(a, {{0, 1, 2}, {0, 1, 2}}) == Complex(-1.0, 0.0));
    CHECK(minor_value(a, {{0, 1, 2}, {1, 2, 3}}) == Complex(0.0, 0.0));
    CHECK(minor_value(a, {{0, 2, 3}, {0, 2, 3}}) == Complex(-3.0, 0.0));
}
