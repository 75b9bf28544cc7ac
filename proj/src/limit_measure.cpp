#include <cmath>
#include <stdexcept>

#include "bslab/quadrature.hpp"
#include "bslab/spectral.hpp"

namespace bslab {

namespace {

double kesten_mckay_density(int d, double x) {
    double edge = 2 * std::sqrt(static_cast<double>(d - 1));
    if (std::abs(x) >= edge) return 0.0;
    return d * std::sqrt(4.0 * (d - 1) - x * x) / (2 * M_PI * (d * d - x * x));
}

// Bi-infinite path Laplacian CDF, closed form of the (0,4)-supported density
// 1/(pi sqrt(lambda(4-lambda))).
double cycle_cdf(double lambda) {
    if (lambda <= 0) return 0.0;
    if (lambda >= 4) return 1.0;
    return std::acos(1 - lambda / 2) / M_PI;
}

double torus_cdf(int dim, double lambda) {
    if (dim == 1) return cycle_cdf(lambda);
    auto inner = [dim, lambda](double theta) {
        return torus_cdf(dim - 1, lambda - (2 - 2 * std::cos(theta))) / M_PI;
    };
    return adaptive_simpson(inner, 0.0, M_PI, 1e-10);
}

} // namespace

LimitSpectralMeasure LimitSpectralMeasure::kesten_mckay(int degree) {
    if (degree < 2) throw std::invalid_argument("kesten_mckay needs degree >= 2");
    LimitSpectralMeasure m;
    m.kind_ = LimitKind::kesten_mckay;
    m.param_ = degree;
    return m;
}

LimitSpectralMeasure LimitSpectralMeasure::cycle_limit() {
    LimitSpectralMeasure m;
    m.kind_ = LimitKind::cycle_limit;
    m.param_ = 0;
    return m;
}

LimitSpectralMeasure LimitSpectralMeasure::torus_limit(int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("torus_limit supports dim 1..3");
    LimitSpectralMeasure m;
    m.kind_ = LimitKind::torus_limit;
    m.param_ = dim;
    return m;
}

double LimitSpectralMeasure::adjacency_cdf(double x) const {
    if (kind_ != LimitKind::kesten_mckay)
        throw std::invalid_argument("adjacency_cdf is only defined for kesten_mckay");
    int d = param_;
    double edge = 2 * std::sqrt(static_cast<double>(d - 1));
    if (x <= -edge) return 0.0;
    if (x >= edge) return 1.0;
    // density is even, integrate from 0 for stability
    if (x < 0) return 0.5 - adaptive_simpson([&](double t) { return kesten_mckay_density(d, t); },
                                             x, 0.0, 1e-11);
    return 0.5 + adaptive_simpson([&](double t) { return kesten_mckay_density(d, t); }, 0.0, x,
                                  1e-11);
}

double LimitSpectralMeasure::cdf(double lambda) const {
    switch (kind_) {
        case LimitKind::cycle_limit:
            return cycle_cdf(lambda);
        case LimitKind::torus_limit:
            return torus_cdf(param_, lambda);
        case LimitKind::kesten_mckay: {
            // Laplacian transport lambda = d - x
            return 1.0 - adjacency_cdf(param_ - lambda);
        }
    }
    throw std::logic_error("unknown limit measure kind");
}

double LimitSpectralMeasure::total_mass_check() const {
    switch (kind_) {
        case LimitKind::kesten_mckay: {
            int d = param_;
            double edge = 2 * std::sqrt(static_cast<double>(d - 1));
            return adaptive_simpson([&](double x) { return kesten_mckay_density(d, x); }, -edge,
                                    edge, 1e-10);
        }
        case LimitKind::cycle_limit:
            // substitute lambda = 2 - 2 cos(theta); the density becomes 1/pi
            return adaptive_simpson([](double) { return 1.0 / M_PI; }, 0.0, M_PI, 1e-12);
        case LimitKind::torus_limit:
            return torus_cdf(param_, 4.0 * param_ + 1.0);
    }
    throw std::logic_error("unknown limit measure kind");
}

double limit_cdf(const LimitSpectralMeasure& m, double lambda) { return m.cdf(lambda); }

} // namespace bslab
