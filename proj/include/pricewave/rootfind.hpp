#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pricewave {

/// Brackets sign changes of f on (lo, hi] by uniform scan.
/// Grid points where f vanishes exactly are treated as roots of
/// zero-width brackets.
inline std::vector<std::pair<double, double>>
bracket_scan(const std::function<double(double)>& f, double lo, double hi, double step) {
    std::vector<std::pair<double, double>> brackets;
    double a = lo;
    double fa = f(a);
    while (a < hi) {
        double b = std::min(a + step, hi);
        double fb = f(b);
        if (fb == 0.0) {
            brackets.emplace_back(b, b);
        } else if (fa == 0.0) {
            // root landed on the previous grid point; already recorded
        } else if ((fa < 0.0) != (fb < 0.0)) {
            brackets.emplace_back(a, b);
        }
        a = b;
        fa = fb;
    }
    return brackets;
}

/// Bisection to interval width `width`, then a single Newton polish with a
/// numerical derivative.  Assumes f changes sign on [lo, hi].
inline double bisect_refine(const std::function<double(double)>& f, double lo, double hi,
                            double width = 1e-13) {
    if (lo == hi) return lo;
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("bisect_refine: no sign change on bracket");
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit floating-point resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double root = 0.5 * (lo + hi);
    // Newton polish on the bisection result.
    const double eps = 1e-7 * (1.0 + std::abs(root));
    const double d = (f(root + eps) - f(root - eps)) / (2.0 * eps);
    if (d != 0.0) {
        const double next = root - f(root) / d;
        if (next > lo - (hi - lo) && next < hi + (hi - lo) && std::isfinite(next)) {
            if (std::abs(f(next)) <= std::abs(f(root))) root = next;
        }
    }
    return root;
}

}  // namespace pricewave
