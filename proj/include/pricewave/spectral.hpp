#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pricewave/grid.hpp"
#include "pricewave/rootfind.hpp"

namespace pricewave {

using Complex = std::complex<double>;

enum class Parity { Odd, Even };

/// One eigenvalue of the linearization, written as lambda = alpha^2 with
/// alpha in the closed first quadrant (conjugates are implied).
struct SpectralPoint {
    Complex alpha;
    Complex lambda;
    Parity parity;

    static SpectralPoint make(Complex alpha, Parity parity) {
        if (alpha.real() < 0.0 || alpha.imag() < 0.0)
            throw std::invalid_argument("SpectralPoint: alpha must satisfy Re >= 0, Im >= 0");
        return SpectralPoint{alpha, alpha * alpha, parity};
    }
};

/// An imaginary-axis crossing of the even spectrum: alpha = a(1+i),
/// lambda = 2ia^2, at coupling R_value.  direction = +1 means the pair
/// moves from the stable to the unstable half plane as R increases.
struct CrossingRecord {
    int index = 0;
    double a_value = 0.0;
    double R_value = 0.0;
    Complex lambda{};
    int direction = 0;
};

struct RealEigenvalue {
    double a = 0.0;
    double lambda = 0.0;
};

struct SpectrumReport {
    double R = 0.0;
    std::optional<RealEigenvalue> real_unstable;
    std::vector<CrossingRecord> crossings;
    std::string band_note;
};

/// Bounded odd eigenfunction for lambda = -b^2: sin(bx) inside the
/// transaction band, continued by the jump conditions outside.  For
/// b = 2k*pi the continuation vanishes and the mode is compactly
/// supported.
inline double odd_eigenfunction(double b, double x) {
    if (!(b > 0.0)) throw std::invalid_argument("odd_eigenfunction: b must be > 0");
    if (x > 1.0) return std::sin(b * x) - std::sin(b * (x - 1.0));
    if (x < -1.0) return std::sin(b * x) - std::sin(b * (x + 1.0));
    return std::sin(b * x);
}

/// Bounded even eigenfunction for lambda = -b^2 (the continuous band).
/// Defined for x >= 0 and extended evenly.
inline double even_band_eigenfunction(double b, double R, double x) {
    if (!(b > 0.0)) throw std::invalid_argument("even_band_eigenfunction: b must be > 0");
    const double ax = std::abs(x);
    if (ax <= 1.0) return std::cos(b * ax) - 1.0;
    const double cb = std::cos(b), sb = std::sin(b);
    return std::cos(b * ax) * (1.0 - cb + R * b * sb) - std::sin(b * ax) * (sb + R * b * cb);
}

/// Unique positive root of e^a - 1 + R a = 0, present exactly for R < -1.
/// At R = -1 the root collides with a = 0 (the quadratic zero mode).
inline std::optional<RealEigenvalue> real_unstable_eigenvalue(double R) {
    if (R >= -1.0) return std::nullopt;
    const auto f = [R](double a) { return std::exp(a) - 1.0 + R * a; };
    // f < 0 just right of 0 since f'(0) = 1 + R < 0; expand until f > 0.
    double hi = 1.0;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e3) throw std::runtime_error("real_unstable_eigenvalue: no bracket");
    }
    double lo = hi / 2.0;
    while (f(lo) >= 0.0) lo /= 2.0;
    const double a = bisect_refine(f, lo, hi, 1e-15);
    return RealEigenvalue{a, a * a};
}

/// Residual of the imaginary-axis crossing equation cos(a) - sin(a) = e^(-a).
inline double crossing_residual(double a) {
    return std::cos(a) - std::sin(a) - std::exp(-a);
}

/// The two equivalent expressions for the coupling at a crossing.
inline double crossing_R_cos(double a) { return (1.0 - std::exp(a) * std::cos(a)) / a; }
inline double crossing_R_sin(double a) { return -std::exp(a) * std::sin(a) / a; }

/// Sign of d Re(lambda)/dR at a crossing, which equals sign(R).
inline int crossing_direction(double a, double R) {
    if (!(a > 0.0)) throw std::invalid_argument("crossing_direction: a must be > 0");
    if (R == 0.0) throw std::invalid_argument("crossing_direction: R = 0 is not a crossing");
    const Complex alpha(a, a);
    const double denom = std::norm(std::exp(alpha) + R);
    const double rate = 4.0 * a * a * a * R / denom;
    return rate > 0.0 ? 1 : -1;
}

/// All crossings with 0 < a <= a_max, sorted by a.  Each root of the
/// crossing equation is bisected to 1e-13 and cross-checked against both
/// R expressions; disagreement beyond 1e-9 flags a spurious bracket.
inline std::vector<CrossingRecord> find_crossings(double a_max) {
    if (!(a_max > 0.0)) throw std::invalid_argument("find_crossings: a_max must be > 0");
    std::vector<CrossingRecord> records;
    const double step = 0.01;
    // The residual has a double-counted trivial zero at a = 0; start past it.
    const auto brackets = bracket_scan(crossing_residual, step, a_max, step);
    int index = 0;
    for (const auto& [lo, hi] : brackets) {
        const double a = bisect_refine(crossing_residual, lo, hi, 1e-13);
        const double r_cos = crossing_R_cos(a);
        const double r_sin = crossing_R_sin(a);
        if (std::abs(r_cos - r_sin) > 1e-9 * std::max(1.0, std::abs(r_cos)))
            throw std::runtime_error("find_crossings: R expressions disagree at a = " +
                                     std::to_string(a) + " (spurious bracket)");
        CrossingRecord rec;
        rec.index = index++;
        rec.a_value = a;
        rec.R_value = r_cos;
        rec.lambda = Complex(0.0, 2.0 * a * a);
        rec.direction = crossing_direction(a, r_cos);
        records.push_back(rec);
    }
    std::sort(records.begin(), records.end(),
              [](const CrossingRecord& u, const CrossingRecord& v) { return u.a_value < v.a_value; });
    return records;
}

/// Decaying even eigenfunction at a crossing (a, R), alpha = a(1+i):
/// e^{alpha x} + e^{-alpha x} - 2 inside, pure decaying branch outside.
/// Defined for x >= 0 and extended evenly.
inline Complex crossing_eigenfunction(double a, double R, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("crossing_eigenfunction: a must be > 0");
    const Complex alpha(a, a);
    const double ax = std::abs(x);
    if (ax <= 1.0) return std::exp(alpha * ax) + std::exp(-alpha * ax) - 2.0;
    const Complex ea = std::exp(alpha);
    return std::exp(-alpha * ax) * (1.0 - ea - R * alpha * ea);
}

inline SpectrumReport make_spectrum_report(double R, double a_max = 25.0) {
    SpectrumReport report;
    report.R = R;
    report.real_unstable = real_unstable_eigenvalue(R);
    report.crossings = find_crossings(a_max);
    report.band_note =
        "the half line (-inf, 0] is filled with bounded odd and even band modes";
    return report;
}

/// Applies the discrete linearized operator around the unit equilibrium:
/// second differences, node-0 second difference subtracted on (-1, 1),
/// first-derivative and coupling delta sources resolved as single nodes
/// of weight 1/h.  Boundary entries are left as zero.
inline std::vector<Complex> apply_linearized_operator(const std::vector<Complex>& g, double R,
                                                      const Grid1D& grid) {
    if (g.size() != grid.n_nodes())
        throw std::invalid_argument("apply_linearized_operator: field size does not match grid");
    const double h = grid.h();
    const std::size_t i0 = grid.node_zero();
    const std::size_t im = grid.node_minus_one();
    const std::size_t ip = grid.node_plus_one();

    const Complex gxx0 = (g[i0 - 1] - 2.0 * g[i0] + g[i0 + 1]) / (h * h);
    const Complex gx0 = (g[i0 + 1] - g[i0 - 1]) / (2.0 * h);

    std::vector<Complex> lg(g.size(), Complex(0.0, 0.0));
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        lg[i] = (g[i - 1] - 2.0 * g[i] + g[i + 1]) / (h * h);
        if (std::abs(grid.x(i)) < 1.0) lg[i] -= gxx0;
    }
    lg[im] += (-gx0 + R * gxx0) / h;
    lg[ip] += (gx0 + R * gxx0) / h;
    return lg;
}

/// max |L g - lambda g| over interior nodes, excluding the two
/// delta-carrying nodes at x = +-1 where the stencil is only first order.
inline double operator_residual(Complex lambda, const std::vector<Complex>& g, double R,
                                const Grid1D& grid) {
    const auto lg = apply_linearized_operator(g, R, grid);
    const std::size_t im = grid.node_minus_one();
    const std::size_t ip = grid.node_plus_one();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        if (i == im || i == ip) continue;
        worst = std::max(worst, std::abs(lg[i] - lambda * g[i]));
    }
    return worst;
}

}  // namespace pricewave
