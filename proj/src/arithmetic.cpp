#include "bslab/arithmetic.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bslab {

void IntPolynomial::validate() const {
    if (coeffs.empty()) throw std::invalid_argument("zero polynomial");
    if (coeffs.back() != 1) throw std::invalid_argument("polynomial must be monic");
}

std::string IntPolynomial::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out << ' ';
        out << coeffs[i];
    }
    return out.str();
}

IntPolynomial IntPolynomial::from_coeffs(std::vector<long long> ascending) {
    IntPolynomial p{std::move(ascending)};
    p.validate();
    return p;
}

IntPolynomial IntPolynomial::monic(std::vector<long long> lower) {
    lower.push_back(1);
    return from_coeffs(std::move(lower));
}

IntPolynomial IntPolynomial::multiply(const IntPolynomial& other) const {
    std::vector<long long> prod(coeffs.size() + other.coeffs.size() - 1, 0);
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = 0; j < other.coeffs.size(); ++j)
            prod[i + j] += coeffs[i] * other.coeffs[j];
    return from_coeffs(std::move(prod));
}

namespace {

std::complex<double> eval(const std::vector<long long>& coeffs, std::complex<double> z) {
    std::complex<double> v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) v = v * z + static_cast<double>(coeffs[i]);
    return v;
}

std::complex<double> eval_derivative(const std::vector<long long>& coeffs,
                                     std::complex<double> z) {
    std::complex<double> v = 0;
    for (size_t i = coeffs.size(); i-- > 1;)
        v = v * z + static_cast<double>(coeffs[i]) * static_cast<double>(i);
    return v;
}

// Exact Kronecker test: all roots within the closed unit disk and the
// nonzero part has a reciprocal coefficient pattern. Integer polynomials
// passing it have measure exactly 1.
bool kronecker_test(const IntPolynomial& p, const std::vector<std::complex<double>>& roots) {
    for (const auto& r : roots)
        if (std::abs(r) > 1 + 1e-9) return false;
    // strip x^k factors, then check a_i = +- a_{n-i}
    std::vector<long long> c = p.coeffs;
    size_t k = 0;
    while (k < c.size() && c[k] == 0) ++k;
    c.erase(c.begin(), c.begin() + k);
    if (c.empty()) return true;
    size_t n = c.size() - 1;
    bool plus = true, minus = true;
    for (size_t i = 0; i <= n; ++i) {
        if (c[i] != c[n - i]) plus = false;
        if (c[i] != -c[n - i]) minus = false;
    }
    return plus || minus;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

CensusResult census_with_box(const CensusQuery& q, double box_factor) {
    if (q.degree < 1 || q.degree > 10)
        throw std::invalid_argument("census degree guard: 1 <= n <= 10");
    if (q.threshold < 1.0) throw std::invalid_argument("census threshold must be >= 1");
    int n = q.degree;
    std::vector<long long> box(n);  // bound for a_i, i = 0..n-1
    for (int i = 0; i < n; ++i)
        box[i] = static_cast<long long>(std::floor(binomial(n, i) * q.threshold * box_factor + 1e-9));

    CensusResult result;
    std::vector<long long> lower(n, 0);
    for (int i = 0; i < n; ++i) lower[i] = -box[i];
    bool done = false;
    while (!done) {
        IntPolynomial p = IntPolynomial::monic(lower);
        double m = mahler_measure(p);
        if (m <= q.threshold + 1e-9) {
            result.polynomials.push_back(p);
            result.measures.push_back(m);
            ++result.count;
            if (m > 1 + 1e-9) {
                ++result.nontrivial_count;
                if (result.min_m_above_1 == 0 || m < result.min_m_above_1)
                    result.min_m_above_1 = m;
            }
        }
        // odometer over the coefficient box
        int pos = 0;
        while (pos < n) {
            if (lower[pos] < box[pos]) {
                ++lower[pos];
                break;
            }
            lower[pos] = -box[pos];
            ++pos;
        }
        done = pos == n;
    }
    return result;
}

} // namespace

std::vector<std::complex<double>> polynomial_roots(const IntPolynomial& p) {
    p.validate();
    int n = p.degree();
    if (n == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) companion(i + 1, i) = 1.0;
        companion(i, n - 1) = -static_cast<double>(p.coeffs[i]);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
    if (solver.info() != Eigen::Success) throw std::runtime_error("root eigensolve failed");
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = solver.eigenvalues()(i);
        std::complex<double> dp = eval_derivative(p.coeffs, z);
        if (std::abs(dp) > 1e-30) {
            std::complex<double> refined = z - eval(p.coeffs, z) / dp;
            if (std::abs(eval(p.coeffs, refined)) <= std::abs(eval(p.coeffs, z))) z = refined;
        }
        roots[i] = z;
    }
    return roots;
}

double mahler_measure(const IntPolynomial& p) {
    auto roots = polynomial_roots(p);
    double m = 1;
    for (const auto& r : roots) m *= std::max(1.0, std::abs(r));
    if (std::abs(m - 1) < 1e-4 && kronecker_test(p, roots)) return 1.0;
    return m;
}

double mahler_measure_general(const std::vector<long long>& ascending) {
    std::vector<long long> c = ascending;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw std::invalid_argument("zero polynomial");
    long long lc = c.back();
    if (c.size() == 1) return std::abs(static_cast<double>(lc));
    // scale trick is unnecessary at desk scale: use the companion matrix of
    // the monic rational polynomial and multiply the measure by |lc|
    int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) companion(i + 1, i) = 1.0;
        companion(i, n - 1) = -static_cast<double>(c[i]) / static_cast<double>(lc);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
    double m = std::abs(static_cast<double>(lc));
    for (int i = 0; i < n; ++i) m *= std::max(1.0, std::abs(solver.eigenvalues()(i)));
    return m;
}

CensusResult census(const CensusQuery& q) { return census_with_box(q, 1.0); }

CensusResult census_wide_box(const CensusQuery& q, double box_factor) {
    if (box_factor < 1.0) throw std::invalid_argument("oracle box must not be narrower");
    return census_with_box(q, box_factor);
}

double dubickas_konyagin_bound(int n, double theta) {
    if (n < 3) throw std::invalid_argument("count bound is asserted for n >= 3");
    double exponent = n * (1 + 16 * std::log(std::log(static_cast<double>(n))) /
                                   std::log(static_cast<double>(n)));
    return std::pow(theta, exponent);
}

namespace {

using ZMatrix = std::vector<std::vector<mpz_class>>;

ZMatrix companion_mpz(const IntPolynomial& p) {
    int n = p.degree();
    ZMatrix c(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) c[i + 1][i] = 1;
        c[i][n - 1] = -p.coeffs[i];
    }
    return c;
}

ZMatrix multiply(const ZMatrix& a, const ZMatrix& b) {
    size_t n = a.size();
    ZMatrix r(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

mpz_class determinant(ZMatrix m) {
    size_t n = m.size();
    mpz_class prev = 1;
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            sign = -sign;
        }
        for (size_t i = col + 1; i < n; ++i) {
            for (size_t j = col + 1; j < n; ++j)
                m[i][j] = (m[col][col] * m[i][j] - m[i][col] * m[col][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[col][col];
    }
    return sign * m[n - 1][n - 1];
}

double log_abs(const mpz_class& z) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::abs(d)) + exp * std::log(2.0);
}

} // namespace

TorsionGrowth torsion_growth_rate(const IntPolynomial& delta, int n_max) {
    delta.validate();
    if (delta.degree() < 1) throw std::invalid_argument("constant polynomial has no growth rate");
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    int d = delta.degree();
    ZMatrix c = companion_mpz(delta);
    ZMatrix power(d, std::vector<mpz_class>(d, 0));
    for (int i = 0; i < d; ++i) power[i][i] = 1;

    TorsionGrowth growth;
    for (int n = 1; n <= n_max; ++n) {
        power = multiply(power, c);
        ZMatrix shifted = power;
        for (int i = 0; i < d; ++i) shifted[i][i] -= 1;
        mpz_class det = determinant(shifted);
        if (det == 0)
            throw std::invalid_argument(
                "resultant vanishes: Delta has a root of unity of order dividing n = " +
                std::to_string(n));
        double log_res = log_abs(det);
        growth.log_resultants.push_back(log_res);
        growth.a_n.push_back(log_res / n);
    }
    growth.limit_estimate = growth.a_n.back();
    return growth;
}

} // namespace bslab
