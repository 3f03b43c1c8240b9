#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "pricewave/analysis.hpp"
#include "pricewave/model.hpp"
#include "pricewave/solver.hpp"
#include "pricewave/spectral.hpp"
#include "pricewave/waves.hpp"

namespace pricewave {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace verify_detail

/// Max node change over `steps` Crank-Nicolson steps started from the
/// exact discrete equilibrium.  delta_scale is the mutation hook: any
/// value other than 1 breaks the delta/kink cancellation and the
/// equilibrium starts to drift.
inline double equilibrium_stationarity_drift(Nonlinearity kind, double R, int steps = 100,
                                             double delta_scale = 1.0) {
    SimConfig cfg;
    cfg.model.trend_coupling = R;
    cfg.model.nonlinearity = NonlinearitySpec{kind};
    cfg.initial.kind = InitialKind::Equilibrium;
    CrankNicolsonStepper stepper(cfg, StepperTestHooks{delta_scale});
    SimState state = stepper.initial_state();
    double drift = 0.0;
    for (int k = 0; k < steps; ++k) {
        SimState next = stepper.step(state);
        for (std::size_t i = 0; i < next.w.size(); ++i)
            drift = std::max(drift, std::abs(next.w[i] - state.w[i]));
        state = std::move(next);
    }
    return drift;
}

inline CheckResult check_phi_oddness() {
    const double samples[] = {0.0, 1e-8, 0.3, 0.5, 1.0, 2.598, 13.0, 100.0};
    double worst = 0.0;
    bool norm_ok = true;
    for (Nonlinearity kind : {Nonlinearity::Sign, Nonlinearity::Linear, Nonlinearity::Tanh}) {
        const NonlinearitySpec phi{kind};
        for (double r : samples) {
            worst = std::max(worst, std::abs(phi_eval(phi, -r) + phi_eval(phi, r)));
            if (r > 0.0 && !(phi_eval(phi, r) > 0.0)) norm_ok = false;
        }
        if (phi_eval(phi, 1.0) != 1.0) norm_ok = false;
    }
    return {"phi odd symmetry and normalization", worst == 0.0 && norm_ok,
            "max |phi(-r)+phi(r)| = " + verify_detail::fmt(worst)};
}

inline CheckResult check_equilibrium_continuity() {
    const EquilibriumProfile prof{2.0, 0.3};
    const double a = 1.0;
    double worst = 0.0;
    for (double kink : {prof.price_offset - a, prof.price_offset + a}) {
        const double eps = 1e-12;
        const double gap = std::abs(equilibrium_eval(prof, a, kink - eps) -
                                    equilibrium_eval(prof, a, kink + eps));
        worst = std::max(worst, gap);
    }
    return {"equilibrium continuity at the kinks", worst < 1e-11,
            "max kink gap = " + verify_detail::fmt(worst)};
}

inline CheckResult check_sign_parts() {
    std::vector<double> w = {1.0, 0.5, 0.0, -0.25, -2.0, 3.0};
    const auto [buyers, vendors] = sign_parts(w);
    double worst = 0.0;
    bool nonneg = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        worst = std::max(worst, std::abs(buyers[i] - vendors[i] - w[i]));
        if (buyers[i] < 0.0 || vendors[i] < 0.0) nonneg = false;
    }
    return {"sign-part reconstruction", worst == 0.0 && nonneg,
            "max |B - V - w| = " + verify_detail::fmt(worst)};
}

inline CheckResult check_equilibrium_stationarity(double delta_scale = 1.0) {
    double worst = 0.0;
    for (Nonlinearity kind : {Nonlinearity::Sign, Nonlinearity::Linear, Nonlinearity::Tanh})
        for (double R : {-2.0, 0.0, 12.0})
            worst = std::max(worst, equilibrium_stationarity_drift(kind, R, 100, delta_scale));
    return {"discrete equilibrium stationarity", worst < 1e-12,
            "max node change over 100 steps = " + verify_detail::fmt(worst)};
}

inline CheckResult check_wave_residuals() {
    std::vector<double> samples;
    for (double x = -6.0; x <= 6.0; x += 0.37) samples.push_back(x);
    double worst = 0.0;
    for (Nonlinearity kind : {Nonlinearity::Sign, Nonlinearity::Tanh}) {
        const NonlinearitySpec phi{kind};
        for (double c : {-2.0, -0.5, 0.5, 2.0})
            for (double rho : {0.5, 1.0, 2.598})
                worst = std::max(worst, wave_residual(build_wave(c, rho, phi), samples).worst());
    }
    return {"traveling-wave residuals", worst < 1e-10,
            "worst residual = " + verify_detail::fmt(worst)};
}

inline CheckResult check_wave_reflection() {
    double worst = 0.0;
    const NonlinearitySpec phi{Nonlinearity::Tanh};
    for (double c : {0.5, 2.0})
        for (double rho : {0.5, 1.0, 2.598}) {
            const WaveProfile fw = build_wave(c, rho, phi);
            const WaveProfile bw = build_wave(-c, rho, phi);
            for (double x = -8.0; x <= 8.0; x += 0.173)
                worst = std::max(worst, std::abs(wave_eval(bw, x) + wave_eval(fw, -x)));
        }
    return {"wave reflection identity", worst == 0.0,
            "max |w^{-c}(x) + w^{c}(-x)| = " + verify_detail::fmt(worst)};
}

inline CheckResult check_wave_equilibrium_limit() {
    const NonlinearitySpec phi{Nonlinearity::Tanh};
    const EquilibriumProfile eq{1.0, 0.0};
    std::vector<double> devs;
    for (double c : {0.1, 0.01, 0.001}) {
        const WaveProfile w = build_wave(c, 1.0, phi);
        double dev = 0.0;
        for (double x = -5.0; x <= 5.0; x += 0.01)
            dev = std::max(dev, std::abs(wave_eval(w, x) - equilibrium_eval(eq, 1.0, x)));
        devs.push_back(dev);
    }
    const bool decreasing = devs[0] > devs[1] && devs[1] > devs[2];
    const double r1 = devs[0] / devs[1], r2 = devs[1] / devs[2];
    const bool roughly_linear = r1 > 5.0 && r1 < 20.0 && r2 > 5.0 && r2 < 20.0;
    return {"wave c->0 equilibrium limit", decreasing && roughly_linear,
            "deviations " + verify_detail::fmt(devs[0]) + " > " + verify_detail::fmt(devs[1]) +
                " > " + verify_detail::fmt(devs[2])};
}

inline CheckResult check_operator_convergence() {
    const auto residual_pair = [](int cells_coarse) {
        const double b = 2.0 * M_PI;
        const Complex lam_odd(-b * b, 0.0);
        const auto recs = find_crossings(5.0);
        const double a0 = recs.at(0).a_value;
        const double R0 = recs.at(0).R_value;
        const Complex lam_even(0.0, 2.0 * a0 * a0);

        std::vector<double> out;
        for (int cells : {cells_coarse, 2 * cells_coarse}) {
            const Grid1D grid(-5.0, 5.0, cells);
            std::vector<Complex> g_odd(grid.n_nodes()), g_even(grid.n_nodes());
            for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
                g_odd[i] = odd_eigenfunction(b, grid.x(i));
                g_even[i] = crossing_eigenfunction(a0, R0, grid.x(i));
            }
            out.push_back(operator_residual(lam_odd, g_odd, 0.0, grid));
            out.push_back(operator_residual(lam_even, g_even, R0, grid));
        }
        return out;  // coarse odd, coarse even, fine odd, fine even
    };
    const auto r = residual_pair(200);
    const double ratio_odd = r[0] / r[2];
    const double ratio_even = r[1] / r[3];
    const bool ok = ratio_odd > 3.5 && ratio_odd < 4.5 && ratio_even > 3.5 && ratio_even < 4.5;
    return {"linearized-operator residual converges at O(h^2)", ok,
            "h->h/2 ratios odd = " + verify_detail::fmt(ratio_odd) +
                ", even = " + verify_detail::fmt(ratio_even)};
}

inline CheckResult check_crossing_consistency() {
    const auto records = find_crossings(25.0);
    bool ok = !records.empty();
    double worst_res = 0.0, worst_gap = 0.0;
    for (const auto& rec : records) {
        worst_res = std::max(worst_res, std::abs(crossing_residual(rec.a_value)));
        const double gap = std::abs(crossing_R_cos(rec.a_value) - crossing_R_sin(rec.a_value));
        worst_gap = std::max(worst_gap, gap / std::max(1.0, std::abs(rec.R_value)));
        if (rec.direction != (rec.R_value > 0.0 ? 1 : -1)) ok = false;
        if (std::abs(rec.lambda - Complex(0.0, 2.0 * rec.a_value * rec.a_value)) != 0.0) ok = false;
    }
    ok = ok && worst_res < 1e-12 && worst_gap < 1e-9;
    return {"crossing-record consistency", ok,
            "max residual = " + verify_detail::fmt(worst_res) +
                ", max relative R gap = " + verify_detail::fmt(worst_gap)};
}

inline CheckResult check_trace_integral() {
    SimConfig cfg;
    cfg.model.trend_coupling = 12.0;
    cfg.t_end = 0.05;
    const SimTrace trace = simulate(cfg);
    double p = 0.0, worst = 0.0;
    for (std::size_t i = 1; i < trace.p_series.size(); ++i) {
        p += (trace.times[i] - trace.times[i - 1]) *
             (trace.p_prime_series[i - 1] + trace.p_prime_series[i]) / 2.0;
        worst = std::max(worst, std::abs(p - trace.p_series[i]));
    }
    return {"trace integral consistency (p vs p')", worst <= 1e-14,
            "max |p - trapz(p')| = " + verify_detail::fmt(worst)};
}

inline CheckResult check_synthetic_period() {
    const double T = 0.2088, dt = 1e-4, t_end = 2.0;
    SimTrace trace;
    trace.status = TraceStatus::Complete;
    const long n = static_cast<long>(t_end / dt);
    for (long k = 0; k <= n; ++k) {
        const double t = k * dt;
        trace.times.push_back(t);
        trace.p_series.push_back(0.7 * std::sin(2.0 * M_PI * t / T + 0.3));
        trace.p_prime_series.push_back(0.0);
        trace.flux_series.push_back(0.0);
    }
    const auto est = estimate_period(trace, 0.25);
    const bool ok = est && std::abs(est->period - T) <= 2.0 * dt;
    return {"synthetic period recovery", ok,
            est ? "period = " + verify_detail::fmt(est->period) + " (target 0.2088)"
                : "no estimate"};
}

inline std::vector<CheckResult> run_verification() {
    return {
        check_phi_oddness(),
        check_equilibrium_continuity(),
        check_sign_parts(),
        check_equilibrium_stationarity(),
        check_wave_residuals(),
        check_wave_reflection(),
        check_wave_equilibrium_limit(),
        check_operator_convergence(),
        check_crossing_consistency(),
        check_trace_integral(),
        check_synthetic_period(),
    };
}

}  // namespace pricewave
