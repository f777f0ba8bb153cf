#ifndef CYCLEMLD_POLY_HPP
#define CYCLEMLD_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclemld {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a root set that must consist of simple roots contains a
/// cluster tighter than the separation threshold.
struct SimplicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Univariate polynomial with exact integer coefficients, ascending order.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<long long> coeffs);
    explicit Polynomial(std::vector<BigInt> coeffs);

    static Polynomial monomial(int k, BigInt c = 1);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    BigInt coeff(int i) const;
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    bool has_only_even_powers() const;

    std::complex<double> eval(std::complex<double> x) const;
    Polynomial derivative() const;

    /// Multiply by x^k.
    Polynomial shifted(int k) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const BigInt& c) const;
    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string str() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// True iff divisor divides dividend exactly over the rationals.
/// Throws std::invalid_argument when divisor is zero.
bool divides(const Polynomial& divisor, const Polynomial& dividend);

struct RootSet {
    std::vector<std::complex<double>> roots; // sorted by (re, im)
    double tolerance = 0.0;
};

/// Continuant family: P_{-1} = 0, P_0 = 1, P_k = P_{k-1} - x^2 P_{k-2}.
Polynomial p_poly(int k);

/// Characteristic polynomial of the odd cycle system, n = 2m + 1:
/// P_{m-1} + x P_{m-2}, degree m - 1 after cancellation for m >= 2.
Polynomial char_poly_odd(int m);

/// Even cycle, plus family, n = 2m: P_{m-1} - x^2 P_{m-3}.
Polynomial char_poly_even_plus(int m);

/// Even cycle, minus family, n = 2m: P_{m-2}.
Polynomial char_poly_even_minus(int m);

/// All complex roots via the companion matrix, Newton-polished until
/// |p(r)| <= tol * scale. Throws SimplicityError when two roots are closer
/// than 10 * tol.
RootSet roots(const Polynomial& p, double tol = 1e-10);

/// Checks x^(n-2) + (-1)^n P_{n-2} against its two-factor form, exactly.
/// The odd-n identity holds up to a global sign; both orientations count.
bool factorization_check(int n);

/// Checks that char_poly_odd(m) divides P_{2m-2}, exactly over the rationals.
bool divisibility_check(int m);

} // namespace cyclemld

#endif
