// Command-line front end: spectrum | waves | simulate | sweep | verify.
// Every option can also come from a flat key=value config file; CLI flags
// override file values and unknown keys are rejected.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pricewave/analysis.hpp"
#include "pricewave/config.hpp"
#include "pricewave/csv.hpp"
#include "pricewave/model.hpp"
#include "pricewave/solver.hpp"
#include "pricewave/spectral.hpp"
#include "pricewave/svg.hpp"
#include "pricewave/verify.hpp"
#include "pricewave/waves.hpp"

namespace fs = std::filesystem;
using namespace pricewave;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "both";

    bool want_csv() const { return format == "csv" || format == "both"; }
    bool want_svg() const { return format == "svg" || format == "both"; }
};

/// Registers --key flags mirroring the config-file keys and layers any
/// that were passed on top of the file values.
class KeyOptions {
public:
    KeyOptions(CLI::App* cmd, std::vector<std::pair<std::string, std::string>> keys)
        : keys_(std::move(keys)) {
        values_.resize(keys_.size());
        for (std::size_t i = 0; i < keys_.size(); ++i)
            options_.push_back(
                cmd->add_option("--" + keys_[i].first, values_[i], keys_[i].second));
    }

    void apply(KeyValueConfig& kv) const {
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (options_[i]->count() > 0) kv.set(keys_[i].first, values_[i]);
    }

private:
    std::vector<std::pair<std::string, std::string>> keys_;
    std::vector<std::string> values_;
    std::vector<CLI::Option*> options_;
};

KeyValueConfig load_config(const CommonOpts& common) {
    if (common.config_path.empty()) return {};
    return KeyValueConfig::from_file(common.config_path);
}

fs::path prepare_out_dir(const CommonOpts& common) {
    fs::path dir(common.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::invalid_argument("cannot create output directory: " + common.out_dir);
    // probe writability before emitting anything
    const fs::path probe = dir / ".write_probe";
    {
        std::ofstream f(probe);
        if (!f) throw std::invalid_argument("output directory not writable: " + common.out_dir);
    }
    fs::remove(probe, ec);
    return dir;
}

SimConfig sim_config_from(const KeyValueConfig& kv) {
    SimConfig cfg;
    const double x_min = kv.get_double("grid.x_min", -5.0);
    const double x_max = kv.get_double("grid.x_max", 5.0);
    const double h = kv.get_double("grid.h", 0.05);
    cfg.grid = Grid1D::from_spacing(x_min, x_max, h);
    cfg.dt = kv.get_double("dt", 1e-4);
    cfg.t_end = kv.get_double("t_end", 2.0);
    cfg.model.diffusion = kv.get_double("diffusion", 1.0);
    cfg.model.transaction_cost = kv.get_double("transaction_cost", 1.0);
    cfg.model.trend_coupling = kv.get_double("R", 12.0);
    cfg.model.nonlinearity.kind = parse_nonlinearity(kv.get_string("phi", "tanh"));
    cfg.left_bc = kv.get_double("left_bc", 1.0);
    cfg.right_bc = kv.get_double("right_bc", -1.0);
    cfg.initial.epsilon = kv.get_double("epsilon", 0.01);
    cfg.initial.kind =
        cfg.initial.epsilon == 0.0 ? InitialKind::Equilibrium : InitialKind::EquilibriumPlusBump;
    cfg.picard_iters = kv.get_int("picard_iters", 2);
    cfg.wx_guard = kv.get_double("wx_guard", 1e-6);
    cfg.snapshot_stride = kv.get_int("snapshot_stride", 50);
    const std::string adv = kv.get_string("advection", "central");
    if (adv == "central")
        cfg.advection = AdvectionScheme::Central;
    else if (adv == "upwind")
        cfg.advection = AdvectionScheme::Upwind;
    else
        throw std::invalid_argument("advection must be central or upwind");
    cfg.validate();
    return cfg;
}

int run_spectrum(const CommonOpts& common, const KeyValueConfig& kv) {
    const double a_max = kv.get_double("a_max", 25.0);
    kv.require_all_consumed();
    const fs::path out = prepare_out_dir(common);

    const auto records = find_crossings(a_max);
    if (!records.empty()) {
        const auto& first = records.front();
        std::printf("a0=%.15g\n", first.a_value);
        std::printf("R0=%.15g\n", first.R_value);
        std::printf("lambda0=%.15gi\n", first.lambda.imag());
    }
    std::printf("crossings=%zu\n", records.size());

    if (common.want_csv()) {
        CsvWriter csv({"index", "a", "R", "re_lambda", "im_lambda", "direction"});
        for (const auto& rec : records)
            csv.row({static_cast<double>(rec.index), rec.a_value, rec.R_value, rec.lambda.real(),
                     rec.lambda.imag(), static_cast<double>(rec.direction)});
        csv.write((out / "crossings.csv").string());
    }
    if (common.want_svg()) {
        std::vector<double> as, r_sin, r_cos;
        for (double a = 0.02; a <= a_max; a += 0.005) {
            as.push_back(a);
            r_sin.push_back(std::asinh(crossing_R_sin(a)));
            r_cos.push_back(std::asinh(crossing_R_cos(a)));
        }
        SvgLinePlot plot("imaginary-axis crossing curves", "a", "asinh(R)");
        plot.add_series(as, r_sin, "#1f77b4");
        plot.add_series(as, r_cos, "#d62728");
        plot.write((out / "spectrum_curves.svg").string());
    }
    return kExitOk;
}

int run_waves(const CommonOpts& common, const KeyValueConfig& kv) {
    const double c = kv.get_double("c", 2.0);
    const double rho = kv.get_double("rho", 1.0);
    const NonlinearitySpec phi{parse_nonlinearity(kv.get_string("phi", "sign"))};
    const auto map_R = kv.get_double_list("map.R", {-0.1, -0.5, -1.0, -2.0, -5.0, -10.0});
    kv.require_all_consumed();
    const fs::path out = prepare_out_dir(common);

    const WaveProfile profile = build_wave(c, rho, phi);
    std::vector<double> xs, ws;
    for (double x = -5.0; x <= 5.0 + 1e-12; x += 0.01) {
        xs.push_back(x);
        ws.push_back(wave_eval(profile, x));
    }
    std::vector<double> samples;
    for (double x = -5.0 + 0.005; x <= 5.0; x += 0.17) samples.push_back(x);
    const auto residual = wave_residual(profile, samples);

    std::printf("c=%.15g\n", c);
    std::printf("rho=%.15g\n", rho);
    std::printf("phi=%s\n", to_string(phi.kind).c_str());
    std::printf("required_R=%.15g\n", profile.required_R);
    std::printf("residual_worst=%.3e\n", residual.worst());

    if (common.want_csv()) {
        CsvWriter prof({"x", "w"});
        for (std::size_t i = 0; i < xs.size(); ++i) prof.row({xs[i], ws[i]});
        prof.write((out / "wave_profile.csv").string());

        CsvWriter map({"R", "rho"});
        for (double R : map_R) {
            const ExistenceMap em = solve_rho(R, phi);
            if (em.all_rho)
                map.raw_row({csv_num(R), "all_rho"});
            else
                for (double r : em.admissible_rho) map.raw_row({csv_num(R), csv_num(r)});
        }
        map.write((out / "existence_map.csv").string());
    }
    if (common.want_svg()) {
        SvgLinePlot plot("traveling wave  c=" + std::to_string(c) + "  rho=" + std::to_string(rho),
                         "x", "w");
        plot.add_series(xs, ws, "#1f77b4");
        plot.write((out / "wave_profile.svg").string());
    }
    return kExitOk;
}

int run_simulate(const CommonOpts& common, const KeyValueConfig& kv) {
    const SimConfig cfg = sim_config_from(kv);
    const auto plot_times = kv.get_double_list("plot_times", {});
    const double discard = kv.get_double("discard_fraction", 0.5);
    kv.require_all_consumed();
    const fs::path out = prepare_out_dir(common);

    const SimTrace trace = simulate(cfg);
    const BifurcationPoint point = classify_trace(trace, cfg);

    std::printf("status=%s\n", to_string(trace.status).c_str());
    std::printf("classification=%s\n", to_string(point.classification).c_str());
    std::printf("amplitude=%.15g\n", point.amplitude);
    if (trace.status == TraceStatus::Complete) {
        if (const auto est = estimate_period(trace, discard)) {
            std::printf("period=%.15g\n", est->period);
            std::printf("dispersion=%.15g\n", est->dispersion);
            std::printf("cycles=%d\n", est->cycles);
            try {
                std::printf("antisymmetry=%.15g\n",
                            half_period_antisymmetry(trace, est->period));
            } catch (const InsufficientSnapshots&) {
                std::printf("antisymmetry=unavailable\n");
            }
        } else {
            std::printf("period=none\n");
        }
    }

    if (common.want_csv()) {
        CsvWriter tr({"t", "p", "p_prime", "flux"});
        for (std::size_t i = 0; i < trace.times.size(); ++i)
            tr.row({trace.times[i], trace.p_series[i], trace.p_prime_series[i],
                    trace.flux_series[i]});
        tr.write((out / "trace.csv").string());

        const fs::path snap_dir = out / "snapshots";
        fs::create_directories(snap_dir);
        int index = 0;
        for (const auto& snap : trace.snapshots) {
            CsvWriter sc({"x", "w"});
            for (std::size_t i = 0; i < snap.w.size(); ++i)
                sc.row({trace.grid.x(i), snap.w[i]});
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%05d.csv", index++);
            sc.write((snap_dir / name).string());
        }
    }
    if (common.want_svg()) {
        SvgLinePlot plot("price p(t)   R=" + std::to_string(cfg.model.trend_coupling), "t", "p");
        plot.add_series(trace.times, trace.p_series, "#1f77b4");
        plot.write((out / "price.svg").string());

        for (double t : plot_times) {
            const Snapshot* best = nullptr;
            for (const auto& snap : trace.snapshots)
                if (!best || std::abs(snap.t - t) < std::abs(best->t - t)) best = &snap;
            if (!best) continue;
            std::vector<double> xs(best->w.size());
            for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = trace.grid.x(i);
            char title[64], name[64];
            std::snprintf(title, sizeof(title), "field at t=%.6g", best->t);
            std::snprintf(name, sizeof(name), "field_t%.6g.svg", t);
            SvgLinePlot fp(title, "x", "w");
            fp.add_series(xs, best->w, "#1f77b4");
            fp.write((out / name).string());
        }
    }
    return trace.status == TraceStatus::Complete ? kExitOk : kExitNumerical;
}

int run_sweep(const CommonOpts& common, const KeyValueConfig& kv) {
    const SimConfig cfg = sim_config_from(kv);
    const auto R_values = kv.get_double_list("R_values", {0.0, 5.0, 9.0, 12.0, 15.0});
    kv.require_all_consumed();
    const fs::path out = prepare_out_dir(common);

    const auto points = sweep_R(cfg, R_values);

    CsvWriter csv({"R", "classification", "amplitude", "period", "dispersion"});
    for (const auto& pt : points) {
        std::printf("R=%.15g classification=%s\n", pt.R, to_string(pt.classification).c_str());
        csv.raw_row({csv_num(pt.R), to_string(pt.classification), csv_num(pt.amplitude),
                     pt.period ? csv_num(pt.period->period) : "",
                     pt.period ? csv_num(pt.period->dispersion) : ""});
    }
    if (common.want_csv()) csv.write((out / "sweep.csv").string());
    return kExitOk;
}

int run_verify(const KeyValueConfig& kv) {
    kv.require_all_consumed();
    const auto results = run_verification();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trend-dependent price-formation toolkit"};
    app.require_subcommand(1);

    CommonOpts common;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "flat key=value config file");
        cmd->add_option("--out", common.out_dir, "output directory (default: out)");
        cmd->add_option("--format", common.format, "csv|svg|both (default: both)")
            ->check(CLI::IsMember({"csv", "svg", "both"}));
    };

    const std::vector<std::pair<std::string, std::string>> sim_keys = {
        {"grid.x_min", "left edge of the domain"},
        {"grid.x_max", "right edge of the domain"},
        {"grid.h", "grid spacing (must place -1, 0, 1 on nodes)"},
        {"dt", "time step"},
        {"t_end", "final time"},
        {"R", "trend coupling"},
        {"phi", "nonlinearity: sign|linear|tanh"},
        {"epsilon", "initial perturbation amplitude"},
        {"picard_iters", "fixed-point passes per step"},
        {"wx_guard", "threshold on |w_x(0)|"},
        {"snapshot_stride", "steps between field snapshots"},
        {"left_bc", "Dirichlet value at x_min"},
        {"right_bc", "Dirichlet value at x_max"},
        {"diffusion", "sigma^2/2 (solver requires 1)"},
        {"transaction_cost", "re-entry offset a (solver requires 1)"},
        {"advection", "central|upwind"},
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "stability crossings and constants");
    add_common(spectrum);
    KeyOptions spectrum_keys(spectrum, {{"a_max", "scan limit for crossings"}});

    CLI::App* waves = app.add_subcommand("waves", "traveling-wave profiles and existence map");
    add_common(waves);
    KeyOptions waves_keys(waves, {{"c", "wave speed"},
                                  {"rho", "wave amplitude"},
                                  {"phi", "nonlinearity: sign|linear|tanh"},
                                  {"map.R", "comma list of couplings for the existence map"}});

    CLI::App* sim = app.add_subcommand("simulate", "integrate the moving-frame equation");
    add_common(sim);
    auto sim_key_list = sim_keys;
    sim_key_list.push_back({"plot_times", "comma list of snapshot times to plot"});
    sim_key_list.push_back({"discard_fraction", "transient fraction dropped by the period fit"});
    KeyOptions sim_keys_opt(sim, sim_key_list);

    CLI::App* sweep = app.add_subcommand("sweep", "classify runs over a list of couplings");
    add_common(sweep);
    auto sweep_key_list = sim_keys;
    sweep_key_list.push_back({"R_values", "comma list of couplings"});
    KeyOptions sweep_keys_opt(sweep, sweep_key_list);

    CLI::App* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        KeyValueConfig kv = load_config(common);
        if (spectrum->parsed()) {
            spectrum_keys.apply(kv);
            return run_spectrum(common, kv);
        }
        if (waves->parsed()) {
            waves_keys.apply(kv);
            return run_waves(common, kv);
        }
        if (sim->parsed()) {
            sim_keys_opt.apply(kv);
            return run_simulate(common, kv);
        }
        if (sweep->parsed()) {
            sweep_keys_opt.apply(kv);
            return run_sweep(common, kv);
        }
        if (verify->parsed()) return run_verify(kv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitBadConfig;
}
