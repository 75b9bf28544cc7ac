#pragma once

#include <complex>
#include <string>
#include <vector>

namespace bslab {

// Monic integer polynomial, coefficients in ascending order, leading 1.
struct IntPolynomial {
    std::vector<long long> coeffs;  // coeffs[k] multiplies x^k; back() == 1

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    void validate() const;
    std::string to_string() const;

    static IntPolynomial from_coeffs(std::vector<long long> ascending);
    // x^n + a_{n-1} x^{n-1} + ... + a_0 given as {a_0, ..., a_{n-1}}
    static IntPolynomial monic(std::vector<long long> lower);
    IntPolynomial multiply(const IntPolynomial& other) const;
};

// Complex roots via companion-matrix eigensolve plus one Newton step each.
std::vector<std::complex<double>> polynomial_roots(const IntPolynomial& p);

// m(p) = prod over |alpha_i| > 1 of |alpha_i|. Measures within 1e-4 of 1 are
// re-verified by the exact Kronecker test and snapped to 1.
double mahler_measure(const IntPolynomial& p);

// Measure of a general (possibly non-monic) integer polynomial,
// |lc| * prod max(1, |alpha_i|). Used by reciprocal-invariance checks.
double mahler_measure_general(const std::vector<long long>& ascending);

struct CensusQuery {
    int degree = 1;
    double threshold = 1.0;  // theta > 1 allowed down to exactly 1 in tests
};

struct CensusResult {
    std::vector<IntPolynomial> polynomials;   // m(p) <= theta + 1e-9
    std::vector<double> measures;             // parallel to polynomials
    long long count = 0;                      // all census polynomials
    long long nontrivial_count = 0;           // measures strictly above 1 + 1e-9
    double min_m_above_1 = 0;                 // 0 when no such polynomial exists
};

// Exhaustive search over the coefficient box |a_i| <= binom(n, i) * theta.
// Guarded by n <= 10.
CensusResult census(const CensusQuery& q);

// Same census with a widened coefficient box; independent oracle for tests.
CensusResult census_wide_box(const CensusQuery& q, double box_factor);

// Dubickas-Konyagin style count bound theta^(n (1 + 16 log log n / log n)),
// meaningful for n >= 3.
double dubickas_konyagin_bound(int n, double theta);

struct TorsionGrowth {
    std::vector<double> log_resultants;  // log |Res(Delta, t^n - 1)|, n = 1..n_max
    std::vector<double> a_n;             // log_resultants[n-1] / n
    double limit_estimate = 0;           // a_{n_max}
};

// Exact integer resultants |Res(Delta, t^n - 1)| = |det(C^n - I)| with C the
// companion matrix of Delta, big-integer arithmetic throughout. Throws if
// Delta vanishes at an n-th root of unity (zero resultant), naming n.
TorsionGrowth torsion_growth_rate(const IntPolynomial& delta, int n_max);

} // namespace bslab
