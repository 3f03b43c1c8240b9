#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pricewave/analysis.hpp"

using namespace pricewave;

namespace {

SimTrace synthetic_price_trace(double T, double amplitude, double phase, double dt = 1e-4,
                               double t_end = 2.0) {
    SimTrace trace;
    trace.status = TraceStatus::Complete;
    const long n = static_cast<long>(std::llround(t_end / dt));
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        trace.times.push_back(t);
        trace.p_series.push_back(amplitude * std::sin(2.0 * M_PI * t / T + phase));
        trace.p_prime_series.push_back(amplitude * 2.0 * M_PI / T *
                                       std::cos(2.0 * M_PI * t / T + phase));
        trace.flux_series.push_back(0.0);
    }
    return trace;
}

SimTrace snapshot_trace(const Grid1D& grid, const std::vector<double>& times,
                        const std::function<double(double, double)>& field) {
    SimTrace trace;
    trace.grid = grid;
    trace.status = TraceStatus::Complete;
    for (double t : times) {
        Snapshot snap;
        snap.t = t;
        snap.w.resize(grid.n_nodes());
        for (std::size_t i = 0; i < grid.n_nodes(); ++i) snap.w[i] = field(grid.x(i), t);
        trace.snapshots.push_back(std::move(snap));
        trace.times.push_back(t);
        trace.p_series.push_back(0.0);
        trace.p_prime_series.push_back(0.0);
        trace.flux_series.push_back(0.0);
    }
    return trace;
}

}  // namespace

TEST_CASE("period of a synthetic oscillation", "[analysis][period]") {
    const auto trace = synthetic_price_trace(0.2088, 1.0, 0.0);
    const auto est = estimate_period(trace, 0.25);
    REQUIRE(est);
    CHECK(est->period == Catch::Approx(0.2088).margin(1e-4));
    CHECK(est->cycles >= 3);
    CHECK(est->dispersion / est->period < 0.05);
}

TEST_CASE("period recovery over random phase and amplitude", "[analysis][period][property]") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> amp(1e-4, 10.0);
    std::uniform_real_distribution<double> period(0.05, 0.4);
    const double dt = 1e-4;
    for (int i = 0; i < 25; ++i) {
        const double T = period(rng);
        const auto trace = synthetic_price_trace(T, amp(rng), phase(rng), dt);
        const auto est = estimate_period(trace, 0.25);
        REQUIRE(est);
        CHECK(std::abs(est->period - T) <= 2.0 * dt);
    }
}

TEST_CASE("period estimate is absent for degenerate traces", "[analysis][period]") {
    SECTION("amplitude below threshold") {
        const auto trace = synthetic_price_trace(0.2, 1e-9, 0.0);
        CHECK_FALSE(estimate_period(trace, 0.25));
    }
    SECTION("fewer than three cycles") {
        const auto trace = synthetic_price_trace(0.2088, 1.0, 0.0, 1e-4, 0.5);
        CHECK_FALSE(estimate_period(trace, 0.5));
    }
    SECTION("incomplete traces are rejected") {
        auto trace = synthetic_price_trace(0.2, 1.0, 0.0);
        trace.status = TraceStatus::Blowup;
        CHECK_THROWS_AS(estimate_period(trace, 0.5), std::invalid_argument);
    }
    SECTION("bad discard fraction") {
        const auto trace = synthetic_price_trace(0.2, 1.0, 0.0);
        CHECK_THROWS_AS(estimate_period(trace, 1.0), std::invalid_argument);
    }
}

TEST_CASE("half-period antisymmetry", "[analysis][symmetry]") {
    const Grid1D grid(-5.0, 5.0, 100);

    SECTION("static odd snapshots give exactly zero") {
        SimTrace trace;
        trace.grid = grid;
        trace.status = TraceStatus::Complete;
        const std::size_t n = grid.n_nodes();
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n / 2; ++i) {
            w[i] = 1.37 * std::sin(grid.x(i));
            w[n - 1 - i] = -w[i];  // antisymmetric to the bit
        }
        for (int k = 0; k <= 40; ++k) {
            trace.snapshots.push_back({0.025 * k, w});
            trace.times.push_back(0.025 * k);
            trace.p_series.push_back(0.0);
            trace.p_prime_series.push_back(0.0);
            trace.flux_series.push_back(0.0);
        }
        CHECK(half_period_antisymmetry(trace, 0.4) == 0.0);
    }

    SECTION("a true half-period antisymmetric oscillation scores small") {
        // w(x, t) = sin(x) + cos(2 pi t / T) exp(-x^2): advancing t by T/2
        // flips the even part, so w(x, t + T/2) = -w(-x, t) holds exactly
        const double T = 0.25;
        std::vector<double> times;
        for (int k = 0; k <= 160; ++k) times.push_back(0.00625 * k);
        const auto trace = snapshot_trace(grid, times, [T](double x, double t) {
            return std::sin(x) + std::cos(2.0 * M_PI * t / T) * std::exp(-x * x);
        });
        CHECK(half_period_antisymmetry(trace, T) < 1e-12);
    }

    SECTION("one snapshot is insufficient") {
        const auto trace = snapshot_trace(grid, {0.0}, [](double x, double) { return x; });
        CHECK_THROWS_AS(half_period_antisymmetry(trace, 0.2), InsufficientSnapshots);
    }

    SECTION("asymmetric grids are rejected") {
        const Grid1D skew(-4.0, 6.0, 100);
        const auto trace =
            snapshot_trace(skew, {0.0, 0.1, 0.2}, [](double x, double) { return x; });
        CHECK_THROWS_AS(half_period_antisymmetry(trace, 0.1), std::invalid_argument);
    }
}

TEST_CASE("sign sanity scanning", "[analysis][sign]") {
    const Grid1D grid(-5.0, 5.0, 100);

    SECTION("equilibrium has no violations") {
        const EquilibriumProfile eq{1.0, 0.0};
        const auto trace = snapshot_trace(
            grid, {0.0, 0.1}, [&](double x, double) { return equilibrium_eval(eq, 1.0, x); });
        const auto report = sign_sanity(trace);
        CHECK(report.max_violation == 0.0);
        CHECK_FALSE(report.first);
    }

    SECTION("sub-tolerance noise is ignored") {
        const auto trace =
            snapshot_trace(grid, {0.0}, [](double x, double) { return x < 0.0 ? -5e-11 : 0.0; });
        CHECK(sign_sanity(trace).max_violation == 0.0);
    }

    SECTION("wrong-sign regions are located") {
        const auto trace = snapshot_trace(grid, {0.0, 0.5}, [](double x, double t) {
            if (t > 0.0 && x < -2.0 && x > -3.0) return -0.25;  // negative on the buyer side
            return x < 0.0 ? 1.0 : -1.0;
        });
        const auto report = sign_sanity(trace);
        CHECK(report.max_violation == Catch::Approx(0.25).margin(1e-9));
        REQUIRE(report.first);
        CHECK(report.first->t == 0.5);
        CHECK(report.first->x < -2.0);
        CHECK(report.first->x > -3.0);
    }
}

TEST_CASE("trace classification", "[analysis][classify]") {
    SimConfig cfg;
    cfg.initial.epsilon = 0.01;

    SECTION("blowup status is unbounded") {
        auto trace = synthetic_price_trace(0.2, 1.0, 0.0, 1e-3, 0.5);
        trace.status = TraceStatus::Blowup;
        CHECK(classify_trace(trace, cfg).classification == Classification::Unbounded);
    }

    SECTION("guard status is guard") {
        auto trace = synthetic_price_trace(0.2, 1.0, 0.0, 1e-3, 0.5);
        trace.status = TraceStatus::Guard;
        CHECK(classify_trace(trace, cfg).classification == Classification::Guard);
    }

    SECTION("growing amplitude is unbounded") {
        SimTrace trace;
        trace.status = TraceStatus::Complete;
        for (long k = 0; k <= 20000; ++k) {
            const double t = 1e-4 * k;
            trace.times.push_back(t);
            trace.p_series.push_back(0.05 * std::exp(1.5 * t) * std::sin(2.0 * M_PI * t / 0.2));
            trace.p_prime_series.push_back(1.0);
            trace.flux_series.push_back(0.0);
        }
        CHECK(classify_trace(trace, cfg).classification == Classification::Unbounded);
    }

    SECTION("steady oscillation is periodic with a period estimate") {
        const auto trace = synthetic_price_trace(0.2088, 0.05, 0.3);
        const auto point = classify_trace(trace, cfg);
        CHECK(point.classification == Classification::Periodic);
        REQUIRE(point.period);
        CHECK(point.period->period == Catch::Approx(0.2088).margin(1e-3));
        CHECK(point.amplitude > 0.0);
    }

    SECTION("decaying derivative is decay") {
        SimTrace trace;
        trace.status = TraceStatus::Complete;
        for (long k = 0; k <= 20000; ++k) {
            const double t = 1e-4 * k;
            trace.times.push_back(t);
            trace.p_series.push_back(1e-3 * std::exp(-8.0 * t));
            trace.p_prime_series.push_back(-8e-3 * std::exp(-8.0 * t));
            trace.flux_series.push_back(0.0);
        }
        CHECK(classify_trace(trace, cfg).classification == Classification::Decay);
    }
}

TEST_CASE("coupling sweep at short horizon", "[analysis][sweep]") {
    SimConfig cfg;
    cfg.t_end = 2.0;
    const auto points = sweep_R(cfg, {12.0, 0.0});
    REQUIRE(points.size() == 2);
    CHECK(points[0].R == 0.0);  // sorted ascending
    CHECK(points[1].R == 12.0);
    CHECK(points[0].classification == Classification::Decay);
    CHECK(points[1].classification == Classification::Periodic);
    REQUIRE(points[1].period);
    CHECK(points[1].amplitude > 0.0);
}

TEST_CASE("sweep classifications are monotone across the onset", "[analysis][sweep][slow]") {
    // Long horizon so the slowly contracting R = 9 run has time to settle
    // below the decay threshold.
    SimConfig cfg;
    cfg.t_end = 14.0;
    const auto points = sweep_R(cfg, {0.0, 5.0, 9.0, 12.0, 15.0});
    REQUIRE(points.size() == 5);

    bool seen_periodic = false;
    for (const auto& pt : points) {
        INFO("R = " << pt.R << " -> " << to_string(pt.classification));
        if (pt.classification == Classification::Periodic) seen_periodic = true;
        if (seen_periodic) CHECK(pt.classification != Classification::Decay);
        if (pt.classification == Classification::Periodic) {
            REQUIRE(pt.period);
            CHECK(pt.amplitude > 0.0);
        }
    }
    CHECK(points[0].classification == Classification::Decay);
    CHECK(points[1].classification == Classification::Decay);
    CHECK(points[2].classification == Classification::Decay);
    CHECK(points[3].classification == Classification::Periodic);
    CHECK(points[4].classification == Classification::Periodic);
}

TEST_CASE("decayed run below onset yields no period estimate", "[analysis][period][slow]") {
    SimConfig cfg;
    cfg.model.trend_coupling = 5.0;
    const SimTrace trace = simulate(cfg);
    REQUIRE(trace.status == TraceStatus::Complete);
    CHECK_FALSE(estimate_period(trace, 0.5));
    CHECK(classify_trace(trace, cfg).classification == Classification::Decay);
}

TEST_CASE("settled tanh oscillation keeps the sign structure", "[analysis][sign][slow]") {
    SimConfig cfg;
    cfg.model.trend_coupling = 12.0;
    const SimTrace trace = simulate(cfg);
    REQUIRE(trace.status == TraceStatus::Complete);
    CHECK(sign_sanity(trace).max_violation < 1e-3);
}

TEST_CASE("equilibrium trace is exactly half-period antisymmetric", "[analysis][symmetry]") {
    SimConfig cfg;
    cfg.initial.kind = InitialKind::Equilibrium;
    cfg.initial.epsilon = 0.0;
    cfg.t_end = 0.2;
    cfg.snapshot_stride = 100;
    const SimTrace trace = simulate(cfg);
    REQUIRE(trace.status == TraceStatus::Complete);
    for (double T : {0.05, 0.13})
        CHECK(half_period_antisymmetry(trace, T) < 1e-12);
}

TEST_CASE("post-onset sign nonlinearity shows wrong-sign regions", "[analysis][sign][slow]") {
    SimConfig cfg;
    cfg.model.trend_coupling = 100.0;
    cfg.model.nonlinearity = NonlinearitySpec{Nonlinearity::Sign};
    cfg.t_end = 0.5;
    const SimTrace trace = simulate(cfg);
    REQUIRE(trace.status == TraceStatus::Complete);
    const auto report = sign_sanity(trace);
    CHECK(report.max_violation > 0.0);
    CHECK(report.first);
}
