#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pricewave/grid.hpp"
#include "pricewave/model.hpp"
#include "pricewave/tridiag.hpp"

namespace pricewave {

/// |w_x(0)| fell below the guard threshold: the profile went flat at the
/// free boundary and p' is no longer defined.
struct GuardTripped : std::runtime_error {
    GuardTripped() : std::runtime_error("guard tripped: |w_x(0)| below threshold") {}
};

/// A node became non-finite, the discrete solution blew up.
struct NonFinite : std::runtime_error {
    NonFinite() : std::runtime_error("non-finite field value: solution blew up") {}
};

enum class AdvectionScheme { Central, Upwind };

enum class InitialKind {
    Equilibrium,          // exact discrete equilibrium, no perturbation
    EquilibriumPlusBump,  // equilibrium + epsilon * (1-x^2)^2 cos(pi x / 2), re-pinned at 0
    Custom,               // caller-supplied field
};

struct InitialCondition {
    InitialKind kind = InitialKind::EquilibriumPlusBump;
    double epsilon = 0.01;
    std::vector<double> custom;
};

struct SimConfig {
    Grid1D grid{-5.0, 5.0, 200};
    double dt = 1e-4;
    double t_end = 2.0;
    ModelConfig model{};
    double left_bc = 1.0;
    double right_bc = -1.0;
    InitialCondition initial{};
    int picard_iters = 2;
    double wx_guard = 1e-6;
    int snapshot_stride = 50;
    AdvectionScheme advection = AdvectionScheme::Central;

    void validate() const {
        model.validate();
        if (!model.normalized())
            throw std::invalid_argument(
                "solver requires the normalized model (diffusion = 1, transaction_cost = 1)");
        if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
        if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");
        if (picard_iters < 1) throw std::invalid_argument("picard_iters must be >= 1");
        if (!(wx_guard > 0.0)) throw std::invalid_argument("wx_guard must be > 0");
        if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
    }
};

struct SimState {
    std::vector<double> w;
    double t = 0.0;
    double p = 0.0;
    double p_prime = 0.0;
};

enum class TraceStatus { Complete, Blowup, Guard };

inline std::string to_string(TraceStatus s) {
    switch (s) {
        case TraceStatus::Complete: return "complete";
        case TraceStatus::Blowup: return "blowup";
        case TraceStatus::Guard: return "guard";
    }
    return "?";
}

struct Snapshot {
    double t = 0.0;
    std::vector<double> w;
};

struct SimTrace {
    Grid1D grid{-5.0, 5.0, 200};
    std::vector<double> times;
    std::vector<double> p_series;
    std::vector<double> p_prime_series;
    std::vector<double> flux_series;
    std::vector<Snapshot> snapshots;
    TraceStatus status = TraceStatus::Complete;
};

/// Single-node delta: 1/h at the node carrying x0, zero elsewhere, so the
/// discrete mass h * sum equals 1.
inline std::vector<double> discrete_delta(const Grid1D& grid, double x0) {
    std::vector<double> field(grid.n_nodes(), 0.0);
    field[grid.node_index(x0)] = 1.0 / grid.h();
    return field;
}

namespace detail {

/// p' = -w_xx(0)/w_x(0) by central differences with the pinned value
/// w(0) = 0 substituted, so the equilibrium gives exactly zero.
inline double p_prime_of(const std::vector<double>& w, const Grid1D& grid, double guard) {
    const std::size_t i0 = grid.node_zero();
    const double h = grid.h();
    const double d1 = (w[i0 + 1] - w[i0 - 1]) / (2.0 * h);
    if (std::abs(d1) < guard) throw GuardTripped();
    const double d2 = (w[i0 - 1] + w[i0 + 1]) / (h * h);
    return -d2 / d1;
}

}  // namespace detail

inline double compute_p_prime(const SimState& state, const Grid1D& grid, double guard) {
    return detail::p_prime_of(state.w, grid, guard);
}

inline std::vector<double> initial_field(const SimConfig& config) {
    const Grid1D& g = config.grid;
    std::vector<double> w(g.n_nodes());
    switch (config.initial.kind) {
        case InitialKind::Custom:
            if (config.initial.custom.size() != g.n_nodes())
                throw std::invalid_argument("initial field size does not match grid");
            w = config.initial.custom;
            break;
        case InitialKind::Equilibrium:
        case InitialKind::EquilibriumPlusBump: {
            const EquilibriumProfile eq{1.0, 0.0};
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = equilibrium_eval(eq, config.model.transaction_cost, g.x(i));
            if (config.initial.kind == InitialKind::EquilibriumPlusBump) {
                for (std::size_t i = 0; i < w.size(); ++i) {
                    const double x = g.x(i);
                    if (std::abs(x) < 1.0) {
                        const double s = 1.0 - x * x;
                        w[i] += config.initial.epsilon * s * s * std::cos(0.5 * M_PI * x);
                    }
                }
            }
            break;
        }
    }
    w[g.node_zero()] = 0.0;
    w.front() = config.left_bc;
    w.back() = config.right_bc;
    return w;
}

/// Test-only knobs.  delta_scale != 1 deliberately breaks the unit mass of
/// the discrete deltas so mutation tests can watch the equilibrium drift.
struct StepperTestHooks {
    double delta_scale = 1.0;
};

/// The Crank-Nicolson stepper.  Diffusion is integrated half implicit,
/// half explicit with a constant tridiagonal system; advection and the two
/// delta sources are explicit, refreshed over picard_iters fixed-point
/// passes.  The free boundary value w(0) and the Dirichlet boundaries are
/// reasserted after every linear solve.
class CrankNicolsonStepper {
public:
    explicit CrankNicolsonStepper(const SimConfig& config, StepperTestHooks hooks = {})
        : cfg_(config), hooks_(hooks) {
        cfg_.validate();
        const Grid1D& g = cfg_.grid;
        const std::size_t n = g.n_nodes();
        const double r = cfg_.model.diffusion * cfg_.dt / (2.0 * g.h() * g.h());
        std::vector<double> lower(n - 1, -r), diag(n, 1.0 + 2.0 * r), upper(n - 1, -r);
        diag.front() = diag.back() = 1.0;  // Dirichlet rows
        upper.front() = 0.0;
        lower.back() = 0.0;
        solver_.emplace(std::move(lower), std::move(diag), std::move(upper));
        beta_ = cfg_.model.diffusion * cfg_.dt / 2.0;
    }

    SimState initial_state() const {
        SimState s;
        s.w = initial_field(cfg_);
        s.t = 0.0;
        s.p = 0.0;
        s.p_prime = detail::p_prime_of(s.w, cfg_.grid, cfg_.wx_guard);
        return s;
    }

    /// Advances one dt.  Throws GuardTripped or NonFinite on breakdown.
    SimState step(const SimState& state) const {
        const Grid1D& g = cfg_.grid;
        const std::size_t n = g.n_nodes();
        const std::size_t i0 = g.node_zero();
        const std::size_t im = g.node_minus_one();
        const std::size_t ip = g.node_plus_one();
        const double h = g.h();
        const double R = cfg_.model.trend_coupling;
        const NonlinearitySpec& phi = cfg_.model.nonlinearity;

        // (I + beta D2) w^n with Dirichlet rows carrying the boundary values
        std::vector<double> base(n);
        base.front() = cfg_.left_bc;
        base.back() = cfg_.right_bc;
        for (std::size_t i = 1; i + 1 < n; ++i)
            base[i] = state.w[i] +
                      beta_ * (state.w[i - 1] - 2.0 * state.w[i] + state.w[i + 1]) / (h * h);

        std::vector<double> rhs(n), next(n);
        const std::vector<double>* cur = &state.w;
        for (int iter = 0; iter < cfg_.picard_iters; ++iter) {
            const std::vector<double>& w = *cur;
            const double pp = detail::p_prime_of(w, g, cfg_.wx_guard);
            const double wx0 = (w[i0 + 1] - w[i0 - 1]) / (2.0 * h);

            rhs = base;
            if (cfg_.advection == AdvectionScheme::Central || pp == 0.0) {
                for (std::size_t i = 1; i + 1 < n; ++i)
                    rhs[i] += cfg_.dt * pp * (w[i + 1] - w[i - 1]) / (2.0 * h);
            } else if (pp > 0.0) {
                for (std::size_t i = 1; i + 1 < n; ++i)
                    rhs[i] += cfg_.dt * pp * (w[i + 1] - w[i]) / h;
            } else {
                for (std::size_t i = 1; i + 1 < n; ++i)
                    rhs[i] += cfg_.dt * pp * (w[i] - w[i - 1]) / h;
            }
            const double delta_m = -wx0 - R * pp * phi_eval(phi, w[im]);
            const double delta_p = wx0 + R * pp * phi_eval(phi, w[ip]);
            rhs[im] += cfg_.dt * hooks_.delta_scale * delta_m / h;
            rhs[ip] += cfg_.dt * hooks_.delta_scale * delta_p / h;
            if (!std::isfinite(rhs[im]) || !std::isfinite(rhs[ip])) throw NonFinite();

            solver_->solve(rhs, next);
            next[i0] = 0.0;
            next.front() = cfg_.left_bc;
            next.back() = cfg_.right_bc;
            cur = &next;
        }

        for (double v : next)
            if (!std::isfinite(v)) throw NonFinite();

        SimState out;
        out.w = std::move(next);
        out.t = state.t + cfg_.dt;
        out.p_prime = detail::p_prime_of(out.w, g, cfg_.wx_guard);
        out.p = state.p + cfg_.dt * (state.p_prime + out.p_prime) / 2.0;
        return out;
    }

    const SimConfig& config() const { return cfg_; }

private:
    SimConfig cfg_;
    StepperTestHooks hooks_;
    std::optional<TridiagonalSolver> solver_;
    double beta_ = 0.0;
};

inline SimState cn_step(const SimState& state, const SimConfig& config) {
    return CrankNicolsonStepper(config).step(state);
}

/// Runs the stepper to t_end, sampling p, p' and the transaction flux
/// every step and the full field every snapshot_stride steps.  Breakdowns
/// end the run early and tag the partial trace.
inline SimTrace simulate(const SimConfig& config) {
    CrankNicolsonStepper stepper(config);
    const Grid1D& g = config.grid;
    const std::size_t i0 = g.node_zero();
    const auto flux_of = [&](const std::vector<double>& w) {
        return -config.model.diffusion * (w[i0 + 1] - w[i0 - 1]) / (2.0 * g.h());
    };

    SimTrace trace;
    trace.grid = g;
    const long n_steps = static_cast<long>(std::llround(config.t_end / config.dt));
    trace.times.reserve(n_steps + 1);
    trace.p_series.reserve(n_steps + 1);
    trace.p_prime_series.reserve(n_steps + 1);
    trace.flux_series.reserve(n_steps + 1);

    SimState state;
    try {
        state = stepper.initial_state();
    } catch (const GuardTripped&) {
        trace.status = TraceStatus::Guard;
        return trace;
    }
    trace.times.push_back(state.t);
    trace.p_series.push_back(state.p);
    trace.p_prime_series.push_back(state.p_prime);
    trace.flux_series.push_back(flux_of(state.w));
    trace.snapshots.push_back({state.t, state.w});

    for (long k = 1; k <= n_steps; ++k) {
        try {
            state = stepper.step(state);
        } catch (const GuardTripped&) {
            trace.status = TraceStatus::Guard;
            return trace;
        } catch (const NonFinite&) {
            trace.status = TraceStatus::Blowup;
            return trace;
        }
        state.t = static_cast<double>(k) * config.dt;
        trace.times.push_back(state.t);
        trace.p_series.push_back(state.p);
        trace.p_prime_series.push_back(state.p_prime);
        trace.flux_series.push_back(flux_of(state.w));
        if (k % config.snapshot_stride == 0) trace.snapshots.push_back({state.t, state.w});
    }
    trace.status = TraceStatus::Complete;
    return trace;
}

}  // namespace pricewave
