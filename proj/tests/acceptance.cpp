// Acceptance suite: runs every toolkit-level criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.  Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pricewave/analysis.hpp"
#include "pricewave/model.hpp"
#include "pricewave/solver.hpp"
#include "pricewave/spectral.hpp"
#include "pricewave/verify.hpp"
#include "pricewave/waves.hpp"

using namespace pricewave;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %-28s %s (%.2fs)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
                seconds);
    if (!pass) ++failures;
}

void criterion(const std::string& name,
               const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report(name, pass, detail, seconds);
}

SimConfig base_config(Nonlinearity kind, double R) {
    SimConfig cfg;  // grid [-5,5], h=0.05, dt=1e-4, t_end=2, eps=0.01
    cfg.model.trend_coupling = R;
    cfg.model.nonlinearity = NonlinearitySpec{kind};
    return cfg;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

}  // namespace

int main() {
    criterion("spectral-constants", [] {
        const auto t0 = Clock::now();
        const auto recs = find_crossings(25.0);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (recs.empty()) return std::make_pair(false, std::string("no crossings found"));
        const auto& first = recs.front();
        const double da = std::abs(first.a_value - 3.940733135692915);
        const double dR = std::abs(first.R_value - 9.359088829373068);
        const double mag = std::abs(first.lambda);
        const bool pass =
            da <= 1e-9 && dR <= 1e-9 && mag >= 31.0 && mag <= 31.2 && secs < 1.0;
        return std::make_pair(
            pass, fmt("|da|=%.2e |dR|=%.2e |lambda0|=%.4f", da, dR, mag));
    });

    criterion("first-negative-crossing", [] {
        const auto t0 = Clock::now();
        const auto recs = find_crossings(8.0);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        for (const auto& rec : recs) {
            if (rec.a_value > 7.0 && rec.a_value < 7.2) {
                const double rel = std::abs(rec.R_value - (-116.0)) / 116.0;
                const bool pass = rel <= 0.02 && secs < 1.0;
                return std::make_pair(pass,
                                      fmt("R=%.6f rel.diff to -116 = %.4f", rec.R_value, rel));
            }
        }
        return std::make_pair(false, std::string("no crossing near a = 7.07"));
    });

    criterion("real-instability-threshold", [] {
        for (double R : {-1.0, -0.5, 0.0, 5.0})
            if (real_unstable_eigenvalue(R))
                return std::make_pair(false, fmt("unexpected eigenvalue at R=%.2f", R));
        double worst = 0.0;
        for (double R : {-1.01, -2.0, -10.0}) {
            const auto ev = real_unstable_eigenvalue(R);
            if (!ev || !(ev->lambda > 0.0))
                return std::make_pair(false, fmt("missing eigenvalue at R=%.2f", R));
            worst = std::max(worst, std::abs(std::exp(ev->a) - 1.0 + R * ev->a));
        }
        return std::make_pair(worst < 1e-12, fmt("max residual=%.2e", worst));
    });

    criterion("equilibrium-stationarity", [] {
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (Nonlinearity kind : {Nonlinearity::Sign, Nonlinearity::Linear, Nonlinearity::Tanh})
            for (double R : {-2.0, 0.0, 12.0})
                worst = std::max(worst, equilibrium_stationarity_drift(kind, R, 100));
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        return std::make_pair(worst < 1e-12 && secs < 1.0,
                              fmt("max node change=%.2e over 100 steps", worst));
    });

    SimTrace hopf_trace;
    criterion("hopf-oscillation", [&hopf_trace] {
        const SimConfig cfg = base_config(Nonlinearity::Tanh, 12.0);
        hopf_trace = simulate(cfg);
        const auto point = classify_trace(hopf_trace, cfg);
        if (point.classification != Classification::Periodic || !point.period)
            return std::make_pair(false,
                                  "classified " + to_string(point.classification));
        const double T = point.period->period;
        const double rel = std::abs(T - 0.2088) / 0.2088;
        const double anti = half_period_antisymmetry(hopf_trace, T);
        const bool pass = rel <= 0.05 && anti < 0.05;
        return std::make_pair(pass, fmt("period=%.5f rel.err=%.3f antisym=%.4f", T, rel, anti));
    });

    criterion("stability-below-onset", [] {
        for (double R : {5.0, 0.0}) {
            const SimConfig cfg = base_config(Nonlinearity::Tanh, R);
            const auto point = classify_trace(simulate(cfg), cfg);
            if (point.classification != Classification::Decay)
                return std::make_pair(
                    false, fmt("R=%.0f classified ", R) + to_string(point.classification));
        }
        return std::make_pair(true, std::string("R=5 and R=0 both decay"));
    });

    criterion("phi2-unbounded", [] {
        const SimConfig cfg = base_config(Nonlinearity::Linear, 12.0);
        const SimTrace trace = simulate(cfg);
        const auto point = classify_trace(trace, cfg);
        return std::make_pair(point.classification == Classification::Unbounded,
                              "status=" + to_string(trace.status) + " classified " +
                                  to_string(point.classification));
    });

    criterion("traveling-waves", [] {
        const auto t0 = Clock::now();
        std::vector<double> samples;
        for (double x = -6.0; x <= 6.0; x += 0.17) samples.push_back(x);

        double worst = 0.0;
        for (Nonlinearity kind : {Nonlinearity::Sign, Nonlinearity::Tanh}) {
            const NonlinearitySpec phi{kind};
            for (double c : {-2.0, -0.5, 0.5, 2.0})
                for (double rho : {0.5, 1.0, 2.598})
                    worst = std::max(worst,
                                     wave_residual(build_wave(c, rho, phi), samples).worst());
        }
        if (worst >= 1e-10) return std::make_pair(false, fmt("wave residual %.2e", worst));

        for (double R : {-0.1, -1.0, -10.0})
            if (solve_rho(R, {Nonlinearity::Sign}).admissible_rho.empty())
                return std::make_pair(false, fmt("sign map empty at R=%.2f", R));
        for (double R : {-0.8, -2.0, -10.0})
            if (solve_rho(R, {Nonlinearity::Tanh}).admissible_rho.size() != 1)
                return std::make_pair(false, fmt("tanh map wrong at R=%.2f", R));
        if (!solve_rho(-0.7, {Nonlinearity::Tanh}).admissible_rho.empty())
            return std::make_pair(false, std::string("tanh map nonempty at R=-0.7"));
        if (!solve_rho(-1.0, {Nonlinearity::Linear}).all_rho)
            return std::make_pair(false, std::string("linear map not ALL_RHO at R=-1"));
        for (double R : {-0.9, -1.1, -2.0})
            if (solve_rho(R, {Nonlinearity::Linear}).all_rho)
                return std::make_pair(false, fmt("linear map ALL_RHO at R=%.2f", R));

        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        return std::make_pair(secs < 1.0, fmt("max residual=%.2e", worst));
    });

    criterion("operator-bridge", [] {
        const auto t0 = Clock::now();
        const auto recs = find_crossings(5.0);
        const double a0 = recs.at(0).a_value;
        const double R0 = recs.at(0).R_value;
        const double b = 2.0 * M_PI;

        double odd_res[2], even_res[2];
        int k = 0;
        for (int cells : {200, 400}) {  // h = 0.05 and h = 0.025
            const Grid1D grid(-5.0, 5.0, cells);
            std::vector<Complex> g_odd(grid.n_nodes()), g_even(grid.n_nodes());
            for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
                g_odd[i] = odd_eigenfunction(b, grid.x(i));
                g_even[i] = crossing_eigenfunction(a0, R0, grid.x(i));
            }
            odd_res[k] = operator_residual(Complex(-b * b, 0.0), g_odd, 0.0, grid);
            even_res[k] = operator_residual(Complex(0.0, 2.0 * a0 * a0), g_even, R0, grid);
            ++k;
        }
        const double r_odd = odd_res[0] / odd_res[1];
        const double r_even = even_res[0] / even_res[1];
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        const bool pass = r_odd > 3.5 && r_odd < 4.5 && r_even > 3.5 && r_even < 4.5 &&
                          secs < 1.0;
        return std::make_pair(pass, fmt("h/2 ratios: odd=%.2f even=%.2f", r_odd, r_even));
    });

    criterion("property-suite", [] {
        const auto results = run_verification();
        int failed = 0;
        std::ostringstream detail;
        for (const auto& r : results) {
            if (!r.pass) {
                ++failed;
                detail << " " << r.name << ';';
            }
        }
        if (failed == 0)
            return std::make_pair(true,
                                  std::to_string(results.size()) + " checks pass");
        return std::make_pair(false, std::to_string(failed) + " failing:" + detail.str());
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}
