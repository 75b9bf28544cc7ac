#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bslab/hyperbolic.hpp"
#include "bslab/quadrature.hpp"

namespace bslab {

namespace {

// rho / sinh(rho), stable near zero
double rho_over_sinh(double rho) {
    if (rho < 1e-6) return 1.0 - rho * rho / 6.0;
    return rho / std::sinh(rho);
}

double heat_kernel_h3(double t, double rho) {
    double pref = std::pow(4 * M_PI * t, -1.5);
    return pref * rho_over_sinh(rho) * std::exp(-t - rho * rho / (4 * t));
}

// Millson-type integral for the hyperbolic plane:
//   p_t(rho) = sqrt(2) e^{-t/4} (4 pi t)^{-3/2}
//              int_rho^infty s e^{-s^2/4t} / sqrt(cosh s - cosh rho) ds.
// Substituting s = rho + u^2 removes the inverse square-root singularity;
// cosh s - cosh rho = 2 sinh(rho + u^2/2) sinh(u^2/2) avoids cancellation.
double heat_kernel_h2(double t, double rho) {
    double pref = std::sqrt(2.0) * std::exp(-t / 4) * std::pow(4 * M_PI * t, -1.5);
    double s_max = std::sqrt(rho * rho + 4 * t * 120.0) + 6 * std::sqrt(t) + 1.0;
    double u_max = std::sqrt(s_max - rho);
    auto integrand = [t, rho](double u) {
        double s = rho + u * u;
        double gap = 2 * std::sinh(rho + u * u / 2) * std::sinh(u * u / 2);
        if (gap <= 0) return 0.0;  // u = 0 endpoint
        return 2 * u * s * std::exp(-s * s / (4 * t)) / std::sqrt(gap);
    };
    // two-pass tolerance: coarse scale estimate, then refine
    double scale = 0;
    for (int i = 1; i <= 8; ++i) scale = std::max(scale, integrand(u_max * i / 8.5));
    double tol = std::max(1e-300, scale * u_max * 1e-12);
    double integral = adaptive_simpson(integrand, 0.0, u_max, tol);
    return pref * integral;
}

} // namespace

double heat_kernel(const HeatQuery& q, double rho) {
    q.validate();
    if (rho < 0) throw std::invalid_argument("rho must be nonnegative");
    return q.dimension == 3 ? heat_kernel_h3(q.t, rho) : heat_kernel_h2(q.t, rho);
}

double heat_kernel_gaussian_constant(int dimension, const std::vector<double>& ts,
                                     const std::vector<double>& rhos) {
    double c = 0;
    for (double t : ts) {
        HeatQuery q;
        q.t = t;
        q.dimension = dimension;
        for (double rho : rhos)
            c = std::max(c, heat_kernel(q, rho) * std::pow(t, dimension / 2.0) *
                                std::exp(rho * rho / (5 * t)));
    }
    return c;
}

} // namespace bslab
