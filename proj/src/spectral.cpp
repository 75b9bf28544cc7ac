#include "bslab/spectral.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bslab {

namespace {

IntMatrix transpose(const IntMatrix& m) {
    if (m.empty()) return {};
    IntMatrix t(m[0].size(), std::vector<long long>(m.size(), 0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    size_t n = a.size(), k = a.empty() ? 0 : a[0].size(), m = b.empty() ? 0 : b[0].size();
    if (k != b.size()) throw std::logic_error("matrix dimension mismatch");
    IntMatrix r(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

IntMatrix add(IntMatrix a, const IntMatrix& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
    return a;
}

IntMatrix zero(size_t n) { return IntMatrix(n, std::vector<long long>(n, 0)); }

} // namespace

IntMatrix laplacian(const CellComplex& complex, int k) {
    complex.validate();
    if (k < 0 || k > 2) throw std::invalid_argument("laplacian degree out of range");
    IntMatrix d1 = complex.boundary1();
    IntMatrix d2 = complex.boundary2();
    size_t nk = static_cast<size_t>(complex.cells(k));
    IntMatrix up = zero(nk), down = zero(nk);
    if (k == 0) {
        if (!d1.empty() && !d1[0].empty()) up = multiply(d1, transpose(d1));
    } else if (k == 1) {
        if (!d2.empty() && !d2[0].empty()) up = multiply(d2, transpose(d2));
        if (!d1.empty() && !d1[0].empty()) down = multiply(transpose(d1), d1);
    } else {
        if (!d2.empty() && !d2[0].empty()) down = multiply(transpose(d2), d2);
    }
    return add(up, down);
}

IntMatrix graph_laplacian(const RootedGraph& g) {
    g.validate();
    IntMatrix L(g.vertex_count, std::vector<long long>(g.vertex_count, 0));
    for (const auto& [u, v] : g.edges) {
        if (u == v) continue;  // a loop's boundary vanishes
        L[u][u] += 1;
        L[v][v] += 1;
        L[u][v] -= 1;
        L[v][u] -= 1;
    }
    return L;
}

IntMatrix graph_adjacency(const RootedGraph& g) {
    g.validate();
    IntMatrix A(g.vertex_count, std::vector<long long>(g.vertex_count, 0));
    for (const auto& [u, v] : g.edges) {
        if (u == v) {
            A[u][u] += 2;
        } else {
            A[u][v] += 1;
            A[v][u] += 1;
        }
    }
    return A;
}

std::vector<double> eigenvalues(const std::vector<std::vector<double>>& matrix) {
    size_t n = matrix.size();
    if (n == 0) return {};
    if (n > 5000) throw std::invalid_argument("matrix exceeds the 5000x5000 cap");
    Eigen::MatrixXd m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (matrix[i].size() != n) throw std::invalid_argument("matrix is not square");
        for (size_t j = 0; j < n; ++j) m(i, j) = matrix[i][j];
    }
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(vals.begin(), vals.end());
    return vals;
}

std::vector<double> eigenvalues_int(const IntMatrix& matrix) {
    std::vector<std::vector<double>> m(matrix.size());
    for (size_t i = 0; i < matrix.size(); ++i)
        m[i].assign(matrix[i].begin(), matrix[i].end());
    return eigenvalues(m);
}

SpectralDensity SpectralDensity::from_eigenvalues(std::vector<double> vals, double n) {
    if (n <= 0) throw std::invalid_argument("normalization must be positive");
    std::sort(vals.begin(), vals.end());
    return SpectralDensity{std::move(vals), n};
}

int spectral_count(const SpectralDensity& sd, double lambda) {
    auto it = std::upper_bound(sd.values.begin(), sd.values.end(), lambda + 1e-9);
    return static_cast<int>(it - sd.values.begin());
}

double spectral_cdf(const SpectralDensity& sd, double lambda) {
    return spectral_count(sd, lambda) / sd.normalization;
}

int integer_rank(const IntMatrix& m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    // fraction-free Gaussian elimination (Bareiss)
    size_t rank = 0;
    mpz_class prev = 1;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

int betti(const CellComplex& complex, int k) {
    complex.validate();
    if (k < 0 || k > 2) throw std::invalid_argument("betti degree out of range");
    int nk = complex.cells(k);
    int rank_k = 0, rank_k1 = 0;
    if (k == 0) {
        rank_k1 = integer_rank(complex.boundary1());
    } else if (k == 1) {
        rank_k = integer_rank(complex.boundary1());
        rank_k1 = integer_rank(complex.boundary2());
    } else {
        rank_k = integer_rank(complex.boundary2());
    }
    return nk - rank_k - rank_k1;
}

double lueck_tail_statistic(const SpectralDensity& sd, const std::vector<double>& grid) {
    int kernel = spectral_count(sd, 0.0);
    double sup = 0;
    for (double lambda : grid) {
        if (!(lambda > 0 && lambda < 1))
            throw std::invalid_argument("lueck grid values must lie in (0,1)");
        double value = (spectral_count(sd, lambda) - kernel) * (-std::log(lambda)) /
                       sd.normalization;
        sup = std::max(sup, value);
    }
    return sup;
}

double lueck_tail_ceiling(const IntMatrix& lap, double normalization) {
    long long max_row = 2;  // keep the log positive even for tiny matrices
    for (const auto& row : lap) {
        long long s = 0;
        for (long long x : row) s += std::llabs(x);
        max_row = std::max(max_row, s);
    }
    return static_cast<double>(lap.size()) / normalization *
           std::log(static_cast<double>(max_row));
}

double kolmogorov_distance(const std::function<double(double)>& F1,
                           const std::function<double(double)>& F2,
                           const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty grid");
    double d = 0;
    for (double x : grid) d = std::max(d, std::abs(F1(x) - F2(x)));
    return d;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = lo + (hi - lo) * i / (points - 1);
    return g;
}

std::vector<double> cycle_laplacian_spectrum_closed_form(int n) {
    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) vals[j] = 2 - 2 * std::cos(2 * M_PI * j / n);
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace bslab
