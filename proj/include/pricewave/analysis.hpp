#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pricewave/solver.hpp"

namespace pricewave {

struct PeriodEstimate {
    double period = 0.0;
    double dispersion = 0.0;
    int cycles = 0;
};

enum class Classification { Decay, Periodic, Unbounded, Guard };

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::Decay: return "decay";
        case Classification::Periodic: return "periodic";
        case Classification::Unbounded: return "unbounded";
        case Classification::Guard: return "guard";
    }
    return "?";
}

struct BifurcationPoint {
    double R = 0.0;
    Classification classification = Classification::Decay;
    double amplitude = 0.0;  // peak-to-peak of p over the last quarter
    std::optional<PeriodEstimate> period;
};

/// Oscillation period of p(t) from mean-removed zero crossings on the
/// trailing part of the trace.  Gaps between successive same-direction
/// crossings (both directions pooled) give the mean and dispersion;
/// absent when fewer than 3 full cycles are seen or the tail amplitude
/// is below 1e-8.
inline std::optional<PeriodEstimate> estimate_period(const SimTrace& trace,
                                                     double discard_fraction = 0.5) {
    if (trace.status != TraceStatus::Complete)
        throw std::invalid_argument("estimate_period: trace is incomplete");
    if (!(discard_fraction >= 0.0 && discard_fraction < 1.0))
        throw std::invalid_argument("estimate_period: discard_fraction must be in [0, 1)");
    const std::size_t n = trace.p_series.size();
    const std::size_t start = static_cast<std::size_t>(discard_fraction * n);
    if (n < 4 || start + 4 > n) return std::nullopt;

    double mean = 0.0;
    for (std::size_t i = start; i < n; ++i) mean += trace.p_series[i];
    mean /= static_cast<double>(n - start);

    double amp = 0.0;
    for (std::size_t i = start; i < n; ++i)
        amp = std::max(amp, std::abs(trace.p_series[i] - mean));
    if (amp < 1e-8) return std::nullopt;

    std::vector<double> ups, downs;
    for (std::size_t i = start; i + 1 < n; ++i) {
        const double q0 = trace.p_series[i] - mean;
        const double q1 = trace.p_series[i + 1] - mean;
        if (q0 == 0.0) continue;
        const double t0 = trace.times[i], t1 = trace.times[i + 1];
        if (q0 < 0.0 && q1 >= 0.0)
            ups.push_back(t0 + (t1 - t0) * (-q0) / (q1 - q0));
        else if (q0 > 0.0 && q1 <= 0.0)
            downs.push_back(t0 + (t1 - t0) * q0 / (q0 - q1));
    }

    std::vector<double> gaps;
    for (std::size_t i = 1; i < ups.size(); ++i) gaps.push_back(ups[i] - ups[i - 1]);
    for (std::size_t i = 1; i < downs.size(); ++i) gaps.push_back(downs[i] - downs[i - 1]);
    const int cycles = static_cast<int>(
        std::max(ups.empty() ? 0 : ups.size() - 1, downs.empty() ? 0 : downs.size() - 1));
    if (cycles < 3 || gaps.empty()) return std::nullopt;

    double gmean = 0.0;
    for (double g : gaps) gmean += g;
    gmean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - gmean) * (g - gmean);
    var /= static_cast<double>(gaps.size());

    return PeriodEstimate{gmean, std::sqrt(var), cycles};
}

struct InsufficientSnapshots : std::runtime_error {
    InsufficientSnapshots()
        : std::runtime_error("half_period_antisymmetry: no matched snapshot pair in the tail") {}
};

/// Checks the oscillation symmetry w(x, t + T/2) = -w(-x, t) over the
/// settled tail (the last half of the snapshots).  Returns the worst
/// node deviation normalized by the maximum field amplitude.  Partner
/// snapshots are matched by nearest time within dt * snapshot_stride.
inline double half_period_antisymmetry(const SimTrace& trace, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("half_period_antisymmetry: T must be > 0");
    if (!trace.grid.symmetric())
        throw std::invalid_argument("half_period_antisymmetry: grid must be symmetric about 0");
    if (trace.snapshots.size() < 2) throw InsufficientSnapshots();

    const double t_final = trace.snapshots.back().t;
    const double t_tail = t_final / 2.0;
    std::vector<const Snapshot*> tail;
    for (const auto& s : trace.snapshots)
        if (s.t >= t_tail) tail.push_back(&s);
    if (tail.size() < 2) throw InsufficientSnapshots();

    // snapshot spacing doubles as the matching tolerance
    double stride_dt = tail.size() > 1 ? (tail.back()->t - tail.front()->t) /
                                             static_cast<double>(tail.size() - 1)
                                       : 0.0;

    double amp = 0.0;
    for (const Snapshot* s : tail)
        for (double v : s->w) amp = std::max(amp, std::abs(v));
    if (amp == 0.0) return 0.0;

    const std::size_t n = trace.grid.n_nodes();
    double worst = -1.0;
    for (const Snapshot* s : tail) {
        const double target = s->t + T / 2.0;
        if (target > tail.back()->t + stride_dt) break;
        const Snapshot* partner = nullptr;
        double best = stride_dt;
        for (const Snapshot* c : tail) {
            const double d = std::abs(c->t - target);
            if (d <= best) {
                best = d;
                partner = c;
            }
        }
        if (!partner) continue;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(partner->w[i] + s->w[n - 1 - i]));
    }
    if (worst < 0.0) throw InsufficientSnapshots();
    return worst / amp;
}

namespace detail {

inline double peak_to_peak(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (lo >= hi) return 0.0;
    double mn = v[lo], mx = v[lo];
    for (std::size_t i = lo; i < hi; ++i) {
        mn = std::min(mn, v[i]);
        mx = std::max(mx, v[i]);
    }
    return mx - mn;
}

}  // namespace detail

/// Classifies one finished run.  Checked in order: blow-up or sustained
/// amplitude growth is unbounded, then a guard trip, then decay of p'
/// below 1e-4 of its early maximum, then a regular period.  A bounded
/// non-periodic remainder counts as decay.
inline BifurcationPoint classify_trace(const SimTrace& trace, const SimConfig& config) {
    BifurcationPoint point;
    point.R = config.model.trend_coupling;

    const std::size_t n = trace.p_series.size();
    point.amplitude = detail::peak_to_peak(trace.p_series, 3 * n / 4, n);

    const double grew_past = 10.0 * config.initial.epsilon;
    const double q4 = point.amplitude;
    const double q3 = detail::peak_to_peak(trace.p_series, n / 2, 3 * n / 4);
    const bool growing = q4 > grew_past && grew_past > 0.0 && q4 > 1.2 * q3;

    if (trace.status == TraceStatus::Blowup || growing) {
        point.classification = Classification::Unbounded;
        return point;
    }
    if (trace.status == TraceStatus::Guard) {
        point.classification = Classification::Guard;
        return point;
    }

    double early_max = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i)
        early_max = std::max(early_max, std::abs(trace.p_prime_series[i]));
    double trail_max = 0.0;
    for (std::size_t i = 3 * n / 4; i < n; ++i)
        trail_max = std::max(trail_max, std::abs(trace.p_prime_series[i]));
    if (early_max == 0.0 || trail_max < 1e-4 * early_max) {
        point.classification = Classification::Decay;
        return point;
    }

    const auto period = estimate_period(trace);
    if (period && period->dispersion < 0.05 * period->period) {
        point.classification = Classification::Periodic;
        point.period = period;
        return point;
    }

    point.classification = Classification::Decay;
    return point;
}

/// Independent runs of simulate over the given couplings, classified and
/// sorted by R.  The runs execute concurrently.
inline std::vector<BifurcationPoint> sweep_R(const SimConfig& base,
                                             const std::vector<double>& R_values) {
    std::vector<std::future<BifurcationPoint>> jobs;
    jobs.reserve(R_values.size());
    for (double R : R_values) {
        jobs.push_back(std::async(std::launch::async, [base, R]() {
            SimConfig cfg = base;
            cfg.model.trend_coupling = R;
            const SimTrace trace = simulate(cfg);
            return classify_trace(trace, cfg);
        }));
    }
    std::vector<BifurcationPoint> points;
    points.reserve(jobs.size());
    for (auto& j : jobs) points.push_back(j.get());
    std::sort(points.begin(), points.end(),
              [](const BifurcationPoint& u, const BifurcationPoint& v) { return u.R < v.R; });
    return points;
}

struct SignViolation {
    double magnitude = 0.0;
    double t = 0.0;
    double x = 0.0;
};

struct SignReport {
    double max_violation = 0.0;
    std::optional<SignViolation> first;
};

/// Scans snapshots for the physical sign structure w >= 0 left of the
/// free boundary and w <= 0 right of it, with tolerance 1e-10.
inline SignReport sign_sanity(const SimTrace& trace) {
    constexpr double tol = 1e-10;
    SignReport report;
    for (const auto& snap : trace.snapshots) {
        for (std::size_t i = 0; i < snap.w.size(); ++i) {
            const double x = trace.grid.x(i);
            double v = 0.0;
            if (x < 0.0)
                v = std::max(0.0, -snap.w[i] - tol);
            else if (x > 0.0)
                v = std::max(0.0, snap.w[i] - tol);
            if (v > 0.0) {
                if (!report.first) report.first = SignViolation{v, snap.t, x};
                report.max_violation = std::max(report.max_violation, v);
            }
        }
    }
    return report;
}

}  // namespace pricewave
