#pragma once

#include <cmath>
#include <functional>

namespace bslab {

// Adaptive Simpson on [a, b] to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 60) {
    struct Impl {
        const std::function<double(double)>& f;
        int max_depth;
        double recurse(double a, double m, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
            double lm = (a + m) / 2, rm = (m + b) / 2;
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6 * (fa + 4 * flm + fm);
            double right = (b - m) / 6 * (fm + 4 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
                return left + right + (left + right - whole) / 15;
            return recurse(a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
                   recurse(m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
        }
    };
    Impl impl{f, depth};
    double m = (a + b) / 2;
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return impl.recurse(a, m, b, fa, fm, fb, whole, tol, depth);
}

} // namespace bslab
