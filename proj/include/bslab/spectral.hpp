#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bslab/covers.hpp"
#include "bslab/graphs.hpp"

namespace bslab {

using IntMatrix = std::vector<std::vector<long long>>;

// Combinatorial Laplacian Delta_k = d_{k+1} d_{k+1}^T + d_k^T d_k with
// integer entries. k = 0..2 for complexes, k = 0 for plain graphs.
IntMatrix laplacian(const CellComplex& complex, int k);
IntMatrix graph_laplacian(const RootedGraph& g);
IntMatrix graph_adjacency(const RootedGraph& g);  // loops count 2 on the diagonal

// Full spectrum of a symmetric real matrix, sorted nondecreasing.
// Tridiagonalization + implicit QL behind the scenes (Eigen). Throws if the
// input is not symmetric to 1e-12 or exceeds the 5000x5000 cap.
std::vector<double> eigenvalues(const std::vector<std::vector<double>>& matrix);
std::vector<double> eigenvalues_int(const IntMatrix& matrix);

// Sorted eigenvalue multiset with a volume normalization.
struct SpectralDensity {
    std::vector<double> values;  // sorted nondecreasing
    double normalization = 1.0;

    static SpectralDensity from_eigenvalues(std::vector<double> vals, double n);
};

// F^c(lambda)/N with membership tolerance 1e-9.
double spectral_cdf(const SpectralDensity& sd, double lambda);

// Count of eigenvalues <= lambda (not normalized).
int spectral_count(const SpectralDensity& sd, double lambda);

// Exact k-th Betti number over Q: b_k = n_k - rank d_k - rank d_{k+1},
// computed by fraction-free integer elimination, no floating point.
int betti(const CellComplex& complex, int k);
int integer_rank(const IntMatrix& m);

// sup over the grid of (F^c(lambda) - F^c(0)) * (-log lambda) / N.
// Grid values must lie in (0,1).
double lueck_tail_statistic(const SpectralDensity& sd, const std::vector<double>& grid);

// Integer-matrix ceiling for the tail statistic: (dim/N) * log(max row sum).
double lueck_tail_ceiling(const IntMatrix& laplacian, double normalization);

// --- limit spectral measures ------------------------------------------------

enum class LimitKind { kesten_mckay, cycle_limit, torus_limit };

// CDF evaluators for the universal-cover limits: Kesten-McKay for the
// d-regular tree (adjacency, with the Laplacian transport lambda = d - x),
// the bi-infinite path Laplacian density 1/(pi sqrt(lambda(4-lambda))) on
// (0,4), and the Z^dim lattice Laplacian.
class LimitSpectralMeasure {
public:
    static LimitSpectralMeasure kesten_mckay(int degree);
    static LimitSpectralMeasure cycle_limit();
    static LimitSpectralMeasure torus_limit(int dim);

    LimitKind kind() const { return kind_; }
    int parameter() const { return param_; }

    double cdf(double lambda) const;            // Laplacian CDF
    double adjacency_cdf(double x) const;       // kesten_mckay only
    double total_mass_check() const;            // numerical quadrature of the density

private:
    LimitKind kind_;
    int param_ = 0;
};

double limit_cdf(const LimitSpectralMeasure& m, double lambda);

double kolmogorov_distance(const std::function<double(double)>& F1,
                           const std::function<double(double)>& F2,
                           const std::vector<double>& grid);

std::vector<double> uniform_grid(double lo, double hi, int points);

// Exact spectrum of the cycle Laplacian, used as a test oracle.
std::vector<double> cycle_laplacian_spectrum_closed_form(int n);

} // namespace bslab
