#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bslab/hyperbolic.hpp"
#include "bslab/quadrature.hpp"

namespace bslab {

namespace {

double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2 * x)) - std::log(2.0);
}

// Gaussian-shape majorant constant for the tail certificate, cached per
// (dimension, t): p_t(rho) <= c * t^{-d/2} * e^{-rho^2/(5t)} on rho >= 0.
double tail_constant(const HeatQuery& q) {
    std::vector<double> rhos;
    for (double r = 0; r <= 40.0; r += 0.25) rhos.push_back(r);
    return 2.0 * heat_kernel_gaussian_constant(q.dimension, {q.t}, rhos);
}

} // namespace

double cylinder_orbit_distance(const HyperbolicCylinder& c, double rho, long long n) {
    c.validate();
    if (rho < 0) throw std::invalid_argument("rho must be nonnegative");
    if (n == 0) return 0.0;
    double shift = std::abs(static_cast<double>(n)) * c.tau;
    if (shift > 60.0) {
        // cosh d = 1 + cosh^2(rho)(cosh(shift) - 1) ~ cosh^2(rho) e^shift / 2
        return shift + 2 * log_cosh(rho);
    }
    double ch = std::cosh(rho);
    return std::acosh(1 + ch * ch * (std::cosh(shift) - 1));
}

double f_t_cylinder(const HyperbolicCylinder& c, double rho, const HeatQuery& q) {
    c.validate();
    q.validate();
    if (rho < 0) throw std::invalid_argument("rho must be nonnegative");
    double tail_c = tail_constant(q) * std::pow(q.t, -q.dimension / 2.0);
    double sum = 0;
    long long n = 1;
    for (;;) {
        double d = cylinder_orbit_distance(c, rho, n);
        sum += 2 * heat_kernel(q, d);
        // certified tail: d_m >= m tau, the kernel is dominated by
        // c t^{-d/2} e^{-s^2/(5t)}, and the terms decrease, so
        //   sum_{m>n} p(d_m) <= (1/tau) int_{n tau}^infty c t^{-d/2} e^{-s^2/5t} ds.
        double a = static_cast<double>(n) * c.tau;
        double tail = 2 * tail_c / c.tau * std::sqrt(5 * q.t * M_PI) / 2 *
                      std::erfc(a / std::sqrt(5 * q.t));
        if (tail < q.tail_tolerance) break;
        ++n;
        if (n > 100000000LL) throw std::runtime_error("tail certificate failed to converge");
    }
    return sum;
}

ThinPartReport thin_part_report(const HyperbolicCylinder& c, const HeatQuery& q) {
    c.validate();
    q.validate();
    if (q.dimension != 2)
        throw std::invalid_argument("thin_part_report works on surface cylinders (d = 2)");
    double eps = q.margulis_cutoff;
    if (c.tau >= eps) throw std::invalid_argument("tau >= epsilon: no thin part");

    // displacement of one step is monotone increasing in rho; bisect
    double lo = 0, hi = 1;
    while (cylinder_orbit_distance(c, hi, 1) < eps) hi *= 2;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        double mid = (lo + hi) / 2;
        (cylinder_orbit_distance(c, mid, 1) < eps ? lo : hi) = mid;
    }
    ThinPartReport report;
    report.rho_thin = (lo + hi) / 2;
    report.vol_thin_per_period = 2 * c.tau * std::sinh(report.rho_thin);
    auto density = [&](double rho) {
        return f_t_cylinder(c, rho, q) * 2 * c.tau * std::cosh(rho);
    };
    double scale = density(0) * report.rho_thin;
    report.integral_f_over_thin =
        adaptive_simpson(density, 0.0, report.rho_thin, std::max(1e-300, 1e-9 * scale));
    report.ratio = report.integral_f_over_thin / report.vol_thin_per_period;
    return report;
}

} // namespace bslab
