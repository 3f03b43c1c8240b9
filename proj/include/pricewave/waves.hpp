#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pricewave/model.hpp"
#include "pricewave/rootfind.hpp"

namespace pricewave {

/// Piecewise-exponential traveling wave.  Each branch is k1 + k2 e^{-cx};
/// branch values at x = +-1 are taken from the middle branch.
struct WaveProfile {
    double c = 0.0;
    double rho = 1.0;
    NonlinearitySpec nonlinearity{};
    double a1 = 0.0, a2 = 0.0;  // (-inf, -1)
    double b1 = 0.0, b2 = 0.0;  // (-1, 1)
    double d1 = 0.0, d2 = 0.0;  // (1, inf)
    double required_R = 0.0;
};

/// The coupling a wave of amplitude rho needs: R = -rho / phi(rho).
inline double required_R(double rho, const NonlinearitySpec& phi) {
    if (!(rho > 0.0)) throw std::invalid_argument("required_R: rho must be > 0");
    return -rho / phi_eval(phi, rho);
}

/// Builds the wave profile for speed c != 0 and left (c > 0) or right
/// (c < 0) amplitude rho.  The c < 0 profile is the reflection
/// w^{c,rho}(x) = -w^{-c,rho}(-x); note the minus sign, which the jump
/// conditions force so that w -> -rho at +inf.
inline WaveProfile build_wave(double c, double rho, const NonlinearitySpec& phi) {
    if (c == 0.0)
        throw std::invalid_argument("build_wave: c = 0 is the equilibrium, use equilibrium_eval");
    if (!(rho > 0.0)) throw std::invalid_argument("build_wave: rho must be > 0");

    WaveProfile w;
    w.c = c;
    w.rho = rho;
    w.nonlinearity = phi;
    w.required_R = required_R(rho, phi);

    const double cp = std::abs(c);
    const double q = phi_eval(phi, rho * std::exp(-cp)) / phi_eval(phi, rho);
    const double b1 = rho / (1.0 - std::exp(cp));
    const double d1 = -rho * q;
    const double d2 = -rho + std::exp(cp) * rho * q;
    if (c > 0.0) {
        w.a1 = rho;
        w.a2 = 0.0;
        w.b1 = b1;
        w.b2 = -b1;
        w.d1 = d1;
        w.d2 = d2;
    } else {
        // reflect: branches swap and every coefficient flips sign
        w.a1 = -d1;
        w.a2 = -d2;
        w.b1 = -b1;
        w.b2 = b1;
        w.d1 = -rho;
        w.d2 = 0.0;
    }
    return w;
}

inline double wave_eval(const WaveProfile& w, double x) {
    const double e = std::exp(-w.c * x);
    if (x < -1.0) return w.a1 + w.a2 * e;
    if (x > 1.0) return w.d1 + w.d2 * e;
    return w.b1 + w.b2 * e;
}

/// Existence map of wave amplitudes at coupling R.  all_rho marks the
/// linear nonlinearity's degenerate case where every rho > 0 works.
struct ExistenceMap {
    NonlinearitySpec nonlinearity{};
    double R = 0.0;
    std::vector<double> admissible_rho;
    bool all_rho = false;
};

/// Solves phi(rho) = -rho/R for rho > 0.  Closed forms for sign and
/// linear; a logarithmic bracketing scan plus bisection for tanh.
inline ExistenceMap solve_rho(double R, const NonlinearitySpec& phi, double rho_scan = 100.0) {
    ExistenceMap map;
    map.nonlinearity = phi;
    map.R = R;
    if (R >= 0.0) return map;

    switch (phi.kind) {
        case Nonlinearity::Sign:
            map.admissible_rho.push_back(-R);
            return map;
        case Nonlinearity::Linear:
            map.all_rho = std::abs(R + 1.0) <= 1e-12;
            return map;
        case Nonlinearity::Tanh: {
            const auto f = [R, &phi](double rho) { return phi_eval(phi, rho) + rho / R; };
            double lo = 1e-8 * rho_scan;
            std::vector<std::pair<double, double>> brackets;
            double a = lo, fa = f(a);
            while (a < rho_scan) {
                double b = std::min(a * 1.05, rho_scan);
                double fb = f(b);
                if (fb == 0.0 || ((fa < 0.0) != (fb < 0.0))) brackets.emplace_back(a, b);
                a = b;
                fa = fb;
            }
            for (const auto& [blo, bhi] : brackets)
                map.admissible_rho.push_back(bisect_refine(f, blo, bhi, 1e-14));
            std::sort(map.admissible_rho.begin(), map.admissible_rho.end());
            const auto last = std::unique(
                map.admissible_rho.begin(), map.admissible_rho.end(),
                [](double u, double v) { return std::abs(u - v) < 1e-9 * (1.0 + v); });
            map.admissible_rho.erase(last, map.admissible_rho.end());
            return map;
        }
    }
    return map;
}

/// Residuals of the wave construction: the interior ODE, the two branch
/// continuity gaps, the two jump conditions (using the profile's own
/// required_R) and the pinning at the free boundary.
struct WaveResidualReport {
    double ode_max = 0.0;
    double continuity_minus = 0.0;
    double continuity_plus = 0.0;
    double jump_minus = 0.0;
    double jump_plus = 0.0;
    double pin = 0.0;

    double worst() const {
        return std::max({ode_max, continuity_minus, continuity_plus, jump_minus, jump_plus, pin});
    }
};

inline WaveResidualReport wave_residual(const WaveProfile& w, const std::vector<double>& samples) {
    const double c = w.c;
    const auto branch_val = [&](double k1, double k2, double x) {
        return k1 + k2 * std::exp(-c * x);
    };
    const auto branch_dx = [&](double k2, double x) { return -c * k2 * std::exp(-c * x); };
    const auto branch_dxx = [&](double k2, double x) { return c * c * k2 * std::exp(-c * x); };

    WaveResidualReport rep;
    for (double x : samples) {
        if (x == -1.0 || x == 0.0 || x == 1.0)
            throw std::invalid_argument("wave_residual: samples must avoid {-1, 0, 1}");
        double k2 = x < -1.0 ? w.a2 : (x > 1.0 ? w.d2 : w.b2);
        rep.ode_max = std::max(rep.ode_max, std::abs(branch_dxx(k2, x) + c * branch_dx(k2, x)));
    }

    rep.continuity_minus = std::abs(branch_val(w.a1, w.a2, -1.0) - branch_val(w.b1, w.b2, -1.0));
    rep.continuity_plus = std::abs(branch_val(w.d1, w.d2, 1.0) - branch_val(w.b1, w.b2, 1.0));
    rep.pin = std::abs(branch_val(w.b1, w.b2, 0.0));

    const double R = w.required_R;
    const double wx0 = branch_dx(w.b2, 0.0);
    const double w_m = branch_val(w.b1, w.b2, -1.0);
    const double w_p = branch_val(w.b1, w.b2, 1.0);
    rep.jump_minus = std::abs((branch_dx(w.b2, -1.0) - branch_dx(w.a2, -1.0)) -
                              (wx0 + R * c * phi_eval(w.nonlinearity, w_m)));
    rep.jump_plus = std::abs((branch_dx(w.d2, 1.0) - branch_dx(w.b2, 1.0)) -
                             (-wx0 - R * c * phi_eval(w.nonlinearity, w_p)));
    return rep;
}

}  // namespace pricewave
