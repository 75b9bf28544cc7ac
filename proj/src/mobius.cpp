#include <cmath>
#include <stdexcept>

#include "bslab/hyperbolic.hpp"

namespace bslab {

void MobiusTransform::validate() const {
    if (std::abs(det() - 1.0) > 1e-10)
        throw std::invalid_argument("Mobius transform must have determinant 1");
}

double projective_distance(const MobiusTransform& A, const MobiusTransform& B) {
    auto frob = [](double pa, double pb, double pc, double pd) {
        return std::sqrt(pa * pa + pb * pb + pc * pc + pd * pd);
    };
    double minus = frob(A.a - B.a, A.b - B.b, A.c - B.c, A.d - B.d);
    double plus = frob(A.a + B.a, A.b + B.b, A.c + B.c, A.d + B.d);
    return std::min(minus, plus);
}

double translation_length(const MobiusTransform& m) {
    double half = std::abs(m.trace()) / 2;
    if (half <= 1.0) return 0.0;
    return 2.0 * std::acosh(half);
}

double uhp_distance(double zx, double zy, double wx, double wy) {
    if (zy <= 0 || wy <= 0) throw std::invalid_argument("points must be in the upper half plane");
    double dx = zx - wx, dy = zy - wy;
    double cosh_d = 1 + (dx * dx + dy * dy) / (2 * zy * wy);
    return std::acosh(cosh_d);
}

void apply_mobius(const MobiusTransform& m, double zx, double zy, double& wx, double& wy) {
    // (a z + b) / (c z + d) on z = zx + i zy
    double nx = m.a * zx + m.b, ny = m.a * zy;
    double dx = m.c * zx + m.d, dy = m.c * zy;
    double den = dx * dx + dy * dy;
    wx = (nx * dx + ny * dy) / den;
    wy = (ny * dx - nx * dy) / den;
}

PantsTriple build_pants(double l1, double l2, double l3) {
    if (l1 <= 0 || l2 <= 0 || l3 <= 0)
        throw std::invalid_argument("pants boundary lengths must be positive");
    // Fricke normalization with all three trace coordinates negative gives
    // the discrete pants representation; flip signs afterwards so the
    // reported traces are 2 cosh(l_i/2).
    double x1 = -2 * std::cosh(l1 / 2);
    double x2 = -2 * std::cosh(l2 / 2);
    double x3 = -2 * std::cosh(l3 / 2);
    double zeta = (x3 - std::sqrt(x3 * x3 - 4)) / 2;
    MobiusTransform X{x1, -1, 1, 0};
    MobiusTransform Y{0, zeta, -1 / zeta, x2};
    MobiusTransform XY = X * Y;
    MobiusTransform Z = XY.inverse();
    // sign normalization: positive traces, still projectively X*Y*Z = I
    auto flip = [](MobiusTransform m) {
        if (m.trace() < 0) return MobiusTransform{-m.a, -m.b, -m.c, -m.d};
        return m;
    };
    return {flip(X), flip(Y), flip(Z)};
}

void HeatQuery::validate() const {
    if (t <= 0) throw std::invalid_argument("heat query needs t > 0");
    if (dimension != 2 && dimension != 3) throw std::invalid_argument("dimension must be 2 or 3");
    if (tail_tolerance <= 0) throw std::invalid_argument("tail tolerance must be positive");
    if (margulis_cutoff <= 0) throw std::invalid_argument("cutoff must be positive");
}

void HyperbolicCylinder::validate() const {
    if (tau <= 0) throw std::invalid_argument("cylinder needs tau > 0");
}

} // namespace bslab
