// Command-line front end: experiment configuration, deterministic replica
// orchestration, and CSV/JSON emission for simulation records, phase-diagram
// sweeps, interface-drift estimates, mean-field trajectories, and single-point
// region verdicts.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "evolattice/evolattice.hpp"

namespace {

constexpr const char* kVersion = "evolattice 1.0.0";

using namespace evolattice;

std::string fmt(double v) { return format_double(v); }

// Output sink: "-" means stdout.
struct OutStream {
    std::ofstream file;
    std::ostream* os = nullptr;
    explicit OutStream(const std::string& path) {
        if (path == "-") {
            os = &std::cout;
        } else {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

std::vector<Strategy> parse_pattern(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("pattern must not be empty");
    std::vector<Strategy> out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '1')
            out.push_back(Strategy::s1);
        else if (c == '2')
            out.push_back(Strategy::s2);
        else
            throw std::invalid_argument(std::string("pattern may contain only '1' and '2', got '") +
                                        c + "'");
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("grid count must be >= 1");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        v.push_back(lo);
        return v;
    }
    for (int k = 0; k < n; ++k)
        v.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return v;
}

// ---------------------------------------------------------------- simulate --

struct SimulateOpts {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    int dim = 1, range = 1, side = 0;
    double epsilon = 1.0;
    double t_end = 1e18;
    std::int64_t max_events = 100000000;
    double sample_interval = 0.0;
    std::string init = "random";
    double density = 0.5;
    std::string pattern;
    int replicas = 1;
    int parallel = 1;
    std::uint64_t seed = 1;
    std::string out = "-";
};

std::vector<std::string> echo_simulate(const SimulateOpts& o) {
    return {kVersion,
            "command: simulate",
            "a11=" + fmt(o.a11) + " a12=" + fmt(o.a12) + " a21=" + fmt(o.a21) +
                " a22=" + fmt(o.a22),
            "dim=" + std::to_string(o.dim) + " range=" + std::to_string(o.range) +
                " side=" + std::to_string(o.side),
            "epsilon=" + fmt(o.epsilon) + " t_end=" + fmt(o.t_end) +
                " max_events=" + std::to_string(o.max_events) +
                " sample_interval=" + fmt(o.sample_interval),
            "init=" + o.init + " density=" + fmt(o.density) + " pattern=" + o.pattern,
            // --parallel is deliberately not echoed: it must never affect output
            "seed=" + std::to_string(o.seed) + " replicas=" + std::to_string(o.replicas)};
}

void run_simulate(const SimulateOpts& o) {
    const PayoffMatrix pm(o.a11, o.a12, o.a21, o.a22);
    const LatticeTopology top(o.dim, o.range, o.side);
    SimulationParams params;
    params.epsilon = o.epsilon;
    params.t_end = o.t_end;
    params.max_events = o.max_events;
    params.sample_interval = o.sample_interval;

    std::vector<Strategy> pattern;
    if (o.init == "pattern") pattern = parse_pattern(o.pattern);
    const auto make = [&](std::uint64_t s) -> Configuration {
        if (o.init == "random") return init_product_measure(top, o.density, s);
        if (o.init == "pattern") return init_pattern_1d(top, pattern, Strategy::s2);
        if (o.init == "all1") return Configuration(top, Strategy::s1);
        return Configuration(top, Strategy::s2);  // "all2"
    };

    const auto outcomes = run_replicas(pm, params, o.replicas, o.seed, make, o.parallel);

    OutStream out(o.out);
    std::ostream& log = o.out == "-" ? std::cerr : std::cout;
    write_comment_block(out.get(), echo_simulate(o));
    out.get() << record_csv_header() << "\n";
    int fixed = 0, wins1 = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        const auto& rec = outcomes[r].record;
        out.get() << "# replica " << r << " config_seed=" << outcomes[r].config_seed << "\n";
        write_record_csv(out.get(), rec, {}, false);
        if (rec.fixation) {
            ++fixed;
            if (rec.fixation->winner == Strategy::s1) ++wins1;
            log << "replica " << r << ": fixed winner=" << strategy_label(rec.fixation->winner)
                << " t=" << fmt(rec.fixation->time) << "\n";
        } else {
            log << "replica " << r << ": not fixed t=" << fmt(rec.samples.back().time)
                << " density1=" << fmt(rec.samples.back().density1) << "\n";
        }
    }
    const double n = static_cast<double>(outcomes.size());
    log << "fixated " << fixed << "/" << outcomes.size() << "; winner-1 fixation frequency "
        << fmt(static_cast<double>(wins1) / n) << "\n";
    if (out.file.is_open() && !out.file) throw std::runtime_error("write failed: " + o.out);
}

// ------------------------------------------------------------------- sweep --

struct SweepOpts {
    double a12 = 0, a21 = 0;
    int N = 0;
    double a11_min = 0, a11_max = 0;
    int a11_count = 0;
    double a22_min = 0, a22_max = 0;
    int a22_count = 0;
    bool simulate = false;
    int dim = 1, range = 1, side = 0;
    double epsilon = 1.0;
    double t_end = 1e18;
    std::int64_t max_events = 1000000;
    double density = 0.5;
    int replicas = 10;
    int parallel = 1;
    std::uint64_t seed = 1;
    std::string out = "-";
};

std::vector<std::string> echo_sweep(const SweepOpts& o, int N) {
    std::vector<std::string> lines = {
        kVersion,
        "command: sweep",
        "a12=" + fmt(o.a12) + " a21=" + fmt(o.a21) + " N=" + std::to_string(N),
        "a11=" + fmt(o.a11_min) + ".." + fmt(o.a11_max) + " x" + std::to_string(o.a11_count) +
            " a22=" + fmt(o.a22_min) + ".." + fmt(o.a22_max) + " x" + std::to_string(o.a22_count),
        "simulate=" + std::string(o.simulate ? "1" : "0")};
    if (o.simulate) {
        lines.push_back("dim=" + std::to_string(o.dim) + " range=" + std::to_string(o.range) +
                        " side=" + std::to_string(o.side) + " epsilon=" + fmt(o.epsilon) +
                        " t_end=" + fmt(o.t_end) + " max_events=" + std::to_string(o.max_events) +
                        " density=" + fmt(o.density));
        // --parallel is deliberately not echoed: it must never affect output
        lines.push_back("seed=" + std::to_string(o.seed) +
                        " replicas=" + std::to_string(o.replicas));
    }
    return lines;
}

void run_sweep(const SweepOpts& o) {
    int N = o.N;
    std::optional<LatticeTopology> top;
    if (o.simulate) {
        top.emplace(o.dim, o.range, o.side);
        const auto n_top = static_cast<int>(top->neighborhood_size());
        if (N != 0 && N != n_top)
            throw std::invalid_argument(
                "--N disagrees with the simulation topology (neighborhood size " +
                std::to_string(n_top) + ")");
        N = n_top;
    } else if (N < 2) {
        throw std::invalid_argument("--N (neighborhood size, >= 2) is required without --simulate");
    }

    const auto result = sweep_phase_diagram(o.a12, o.a21, linspace(o.a11_min, o.a11_max, o.a11_count),
                                            linspace(o.a22_min, o.a22_max, o.a22_count), N);

    std::vector<double> freq;
    if (o.simulate) {
        SimulationParams params;
        params.epsilon = o.epsilon;
        params.t_end = o.t_end;
        params.max_events = o.max_events;
        freq.reserve(result.cells.size());
        for (std::size_t c = 0; c < result.cells.size(); ++c) {
            const auto& cell = result.cells[c];
            const PayoffMatrix pm(cell.a11, o.a12, o.a21, cell.a22);
            const auto make = [&](std::uint64_t s) {
                return init_product_measure(*top, o.density, s);
            };
            const auto outcomes =
                run_replicas(pm, params, o.replicas,
                             derive_replica_seed(o.seed, static_cast<std::uint64_t>(c)), make,
                             o.parallel);
            int wins1 = 0;
            for (const auto& oc : outcomes) {
                // fixation winner, or the majority strategy at cutoff
                const bool w1 = oc.record.fixation
                                    ? oc.record.fixation->winner == Strategy::s1
                                    : oc.record.samples.back().density1 >= 0.5;
                if (w1) ++wins1;
            }
            freq.push_back(static_cast<double>(wins1) / static_cast<double>(outcomes.size()));
        }
    }

    OutStream out(o.out);
    write_sweep_csv(out.get(), result, echo_sweep(o, N), o.simulate ? &freq : nullptr);
    if (out.file.is_open() && !out.file) throw std::runtime_error("write failed: " + o.out);
}

// ------------------------------------------------------------------- drift --

struct DriftOpts {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    int dim = 1, range = 1;
    std::vector<int> gaps;
    int replicas = 10;
    std::int64_t events = 100000;
    std::int64_t ring = 0;
    std::uint64_t seed = 1;
    std::string out = "-";
};

void run_drift(const DriftOpts& o) {
    if (o.dim != 1 || o.range != 1)
        throw std::invalid_argument(
            "interface drift estimates are defined only for the one-dimensional "
            "nearest-neighbor process (requires dimension = 1 and range = 1)");
    const PayoffMatrix pm(o.a11, o.a12, o.a21, o.a22);
    const DriftTable table = drift_table(pm);
    std::vector<int> gaps = o.gaps.empty() ? std::vector<int>{2, 3, 4} : o.gaps;

    std::vector<DriftRow> rows;
    for (int g : gaps) {
        DriftRow row{};
        row.gap_class = g;
        row.estimate = estimate_drift(pm, g, o.replicas, o.events,
                                      derive_replica_seed(o.seed, static_cast<std::uint64_t>(g)),
                                      o.ring);
        row.closed_form = g == 2 ? table.d2 : g == 3 ? table.d3 : table.d4;
        rows.push_back(row);
    }

    OutStream out(o.out);
    std::ostream& log = o.out == "-" ? std::cerr : std::cout;
    const std::vector<std::string> echo = {
        kVersion,
        "command: drift",
        "a11=" + fmt(o.a11) + " a12=" + fmt(o.a12) + " a21=" + fmt(o.a21) + " a22=" + fmt(o.a22),
        "dim=1 range=1 ring=" + std::to_string(o.ring),
        "seed=" + std::to_string(o.seed) + " replicas=" + std::to_string(o.replicas) +
            " events_per_replica=" + std::to_string(o.events)};
    write_drift_csv(out.get(), rows, echo);
    for (const auto& r : rows) {
        const double dev = r.estimate.std_error > 0.0
                               ? std::abs(r.estimate.mean_drift - r.closed_form) / r.estimate.std_error
                               : 0.0;
        log << "gap " << (r.gap_class == 4 ? ">=4" : std::to_string(r.gap_class))
            << ": estimate=" << fmt(r.estimate.mean_drift) << " std_error="
            << fmt(r.estimate.std_error) << " closed_form=" << fmt(r.closed_form)
            << " deviation=" << fmt(dev) << " sigma\n";
    }
    if (out.file.is_open() && !out.file) throw std::runtime_error("write failed: " + o.out);
}

// -------------------------------------------------------------- replicator --

struct ReplicatorOpts {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    double u0 = 0.5;
    double t_end = 200.0;
    double dt = 1e-3;
    int stride = 100;
    std::string out = "-";
    std::string regime_out = "-";
};

void run_replicator(const ReplicatorOpts& o) {
    const PayoffMatrix pm(o.a11, o.a12, o.a21, o.a22);
    const RegimeReport report = classify_regime(pm);
    const ReplicatorTrajectory traj = integrate_replicator(pm, o.u0, o.t_end, o.dt, o.stride);

    {
        OutStream out(o.out);
        write_comment_block(out.get(),
                            {kVersion, "command: replicator",
                             "a11=" + fmt(o.a11) + " a12=" + fmt(o.a12) + " a21=" + fmt(o.a21) +
                                 " a22=" + fmt(o.a22),
                             "u0=" + fmt(o.u0) + " t_end=" + fmt(o.t_end) + " dt=" + fmt(o.dt) +
                                 " stride=" + std::to_string(o.stride)});
        out.get() << "time,u1\n";
        for (std::size_t k = 0; k < traj.times.size(); ++k)
            out.get() << fmt(traj.times[k]) << ',' << fmt(traj.u1_values[k]) << "\n";
        if (out.file.is_open() && !out.file) throw std::runtime_error("write failed: " + o.out);
    }

    nlohmann::json j;
    j["command"] = "replicator";
    j["a11"] = o.a11;
    j["a12"] = o.a12;
    j["a21"] = o.a21;
    j["a22"] = o.a22;
    j["a1"] = report.a1;
    j["a2"] = report.a2;
    j["regime"] = regime_name(report.regime);
    if (report.interior_fixed_point) {
        j["u_star"] = *report.interior_fixed_point;
        j["u_star_stable"] = *report.interior_stable;
    } else {
        j["u_star"] = nullptr;
        j["u_star_stable"] = nullptr;
    }
    j["u0"] = o.u0;
    j["t_end"] = o.t_end;
    j["u1_final"] = traj.u1_values.back();
    OutStream rout(o.regime_out);
    rout.get() << j.dump(2) << "\n";
    if (rout.file.is_open() && !rout.file) throw std::runtime_error("write failed: " + o.regime_out);
}

// ------------------------------------------------------------------ region --

struct RegionOpts {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    int N = 0;
    std::string out = "-";
};

void run_region(const RegionOpts& o) {
    const auto result = sweep_phase_diagram(o.a12, o.a21, {o.a11}, {o.a22}, o.N);
    const RegionVerdict& v = result.cells.front();

    OutStream out(o.out);
    std::ostream& log = o.out == "-" ? std::cerr : std::cout;
    write_sweep_csv(out.get(), result,
                    {kVersion, "command: region",
                     "a11=" + fmt(o.a11) + " a12=" + fmt(o.a12) + " a21=" + fmt(o.a21) +
                         " a22=" + fmt(o.a22) + " N=" + std::to_string(o.N)});
    log << "regime=" << regime_name(v.regime.regime);
    if (v.regime.interior_fixed_point)
        log << " u_star=" << fmt(*v.regime.interior_fixed_point)
            << (*v.regime.interior_stable ? " (stable)" : " (unstable)");
    log << "\n";
    log << "coexistence_condition=" << (v.coexists ? 1 : 0) << "\n";
    log << "s1_dominates=" << (v.s1_dominates ? 1 : 0)
        << " s2_dominates=" << (v.s2_dominates ? 1 : 0)
        << " extrema_condition=" << (v.extrema_condition ? 1 : 0) << "\n";
    log << "drift_winner=" << (v.drift_winner ? std::to_string(strategy_label(*v.drift_winner)) : "-")
        << "\n";
    log << "prisoners_dilemma=" << (v.prisoners_dilemma ? 1 : 0) << "\n";
    if (out.file.is_open() && !out.file) throw std::runtime_error("write failed: " + o.out);
}

// -------------------------------------------------------------------- main --

void add_payoff_options(CLI::App* cmd, double& a11, double& a12, double& a21, double& a22) {
    cmd->add_option("--a11", a11, "payoff of strategy 1 interacting with strategy 1")->required();
    cmd->add_option("--a12", a12, "payoff of strategy 1 interacting with strategy 2")->required();
    cmd->add_option("--a21", a21, "payoff of strategy 2 interacting with strategy 1")->required();
    cmd->add_option("--a22", a22, "payoff of strategy 2 interacting with strategy 2")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Death-birth lattice game dynamics: simulation, exact interface rates, "
                 "phase-diagram predicates, and the mean-field replicator companion"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    // one config option on the root: INI files address a subcommand's options
    // through a [section] named after it; command-line flags always win
    app.set_config("--config", "",
                   "read options from an INI file ([simulate], [sweep], ... sections hold each "
                   "subcommand's options)");
    app.fallthrough();  // lets `evolattice simulate --config run.ini` reach the root option

    std::function<void()> action;

    SimulateOpts sim;
    {
        CLI::App* cmd = app.add_subcommand(
            "simulate", "Run the stochastic process and emit a time,density1,fixed,winner CSV");

        add_payoff_options(cmd, sim.a11, sim.a12, sim.a21, sim.a22);
        cmd->add_option("--dim", sim.dim, "lattice dimension")->capture_default_str();
        cmd->add_option("--range", sim.range, "interaction range (Chebyshev)")->capture_default_str();
        cmd->add_option("--side", sim.side, "torus side length")->required();
        cmd->add_option("--epsilon", sim.epsilon, "selection strength in [0, 1]")
            ->capture_default_str();
        cmd->add_option("--t-end", sim.t_end, "time horizon")->capture_default_str();
        cmd->add_option("--max-events", sim.max_events, "event budget per replica")
            ->capture_default_str();
        cmd->add_option("--sample-interval", sim.sample_interval,
                        "density sampling period (0: start and end only)")
            ->capture_default_str();
        cmd->add_option("--init", sim.init, "initial condition: random, pattern, all1, all2")
            ->check(CLI::IsMember({"random", "pattern", "all1", "all2"}))
            ->capture_default_str();
        cmd->add_option("--density", sim.density, "strategy-1 density for --init random")
            ->capture_default_str();
        cmd->add_option("--pattern", sim.pattern,
                        "site string of 1s and 2s for --init pattern (rest filled with 2)");
        cmd->add_option("--replicas", sim.replicas, "independent replicas")->capture_default_str();
        cmd->add_option("--parallel", sim.parallel, "worker threads (never affects output)")
            ->capture_default_str();
        cmd->add_option("--seed", sim.seed, "base seed")->capture_default_str();
        cmd->add_option("--out", sim.out, "output CSV path, - for stdout")->capture_default_str();
        cmd->callback([&] { action = [&] { run_simulate(sim); }; });
    }

    SweepOpts sw;
    {
        CLI::App* cmd = app.add_subcommand(
            "sweep", "Evaluate region predicates over an (a11, a22) grid; phase-diagram CSV");

        cmd->add_option("--a12", sw.a12, "fixed cross payoff a12")->required();
        cmd->add_option("--a21", sw.a21, "fixed cross payoff a21 (> a12)")->required();
        cmd->add_option("--N", sw.N, "neighborhood size (derived from topology with --simulate)");
        cmd->add_option("--a11-min", sw.a11_min)->required();
        cmd->add_option("--a11-max", sw.a11_max)->required();
        cmd->add_option("--a11-count", sw.a11_count, "grid points along a11")->required();
        cmd->add_option("--a22-min", sw.a22_min)->required();
        cmd->add_option("--a22-max", sw.a22_max)->required();
        cmd->add_option("--a22-count", sw.a22_count, "grid points along a22")->required();
        cmd->add_flag("--simulate", sw.simulate,
                      "append a per-cell simulated winner-1 frequency column");
        cmd->add_option("--dim", sw.dim, "lattice dimension (with --simulate)")
            ->capture_default_str();
        cmd->add_option("--range", sw.range, "interaction range (with --simulate)")
            ->capture_default_str();
        cmd->add_option("--side", sw.side, "torus side length (with --simulate)");
        cmd->add_option("--epsilon", sw.epsilon, "selection strength")->capture_default_str();
        cmd->add_option("--t-end", sw.t_end, "time horizon per replica")->capture_default_str();
        cmd->add_option("--max-events", sw.max_events, "event budget per replica")
            ->capture_default_str();
        cmd->add_option("--density", sw.density, "initial strategy-1 density")
            ->capture_default_str();
        cmd->add_option("--replicas", sw.replicas, "replicas per cell")->capture_default_str();
        cmd->add_option("--parallel", sw.parallel, "worker threads (never affects output)")
            ->capture_default_str();
        cmd->add_option("--seed", sw.seed, "base seed")->capture_default_str();
        cmd->add_option("--out", sw.out, "output CSV path, - for stdout")->capture_default_str();
        cmd->callback([&] { action = [&] { run_sweep(sw); }; });
    }

    DriftOpts dr;
    {
        CLI::App* cmd = app.add_subcommand(
            "drift", "Estimate conditional interface drifts against their closed forms");

        add_payoff_options(cmd, dr.a11, dr.a12, dr.a21, dr.a22);
        cmd->add_option("--dim", dr.dim, "lattice dimension (must be 1)")->capture_default_str();
        cmd->add_option("--range", dr.range, "interaction range (must be 1)")
            ->capture_default_str();
        cmd->add_option("--gap", dr.gaps, "gap classes to estimate (2, 3, 4 meaning >= 4)")
            ->check(CLI::IsMember({2, 3, 4}));
        cmd->add_option("--replicas", dr.replicas, "independent replicas per gap class")
            ->capture_default_str();
        cmd->add_option("--events", dr.events, "measurements per replica")->capture_default_str();
        cmd->add_option("--ring", dr.ring, "ring size (0: smallest safe size)")
            ->capture_default_str();
        cmd->add_option("--seed", dr.seed, "base seed")->capture_default_str();
        cmd->add_option("--out", dr.out, "output CSV path, - for stdout")->capture_default_str();
        cmd->callback([&] { action = [&] { run_drift(dr); }; });
    }

    ReplicatorOpts rep;
    {
        CLI::App* cmd = app.add_subcommand(
            "replicator", "Integrate the mean-field share equation; trajectory CSV + regime JSON");

        add_payoff_options(cmd, rep.a11, rep.a12, rep.a21, rep.a22);
        cmd->add_option("--u0", rep.u0, "initial strategy-1 share in [0, 1]")->required();
        cmd->add_option("--t-end", rep.t_end, "integration horizon")->capture_default_str();
        cmd->add_option("--dt", rep.dt, "integration step")->capture_default_str();
        cmd->add_option("--stride", rep.stride, "record every stride-th step")
            ->capture_default_str();
        cmd->add_option("--out", rep.out, "trajectory CSV path, - for stdout")
            ->capture_default_str();
        cmd->add_option("--regime-out", rep.regime_out, "regime JSON path, - for stdout")
            ->capture_default_str();
        cmd->callback([&] { action = [&] { run_replicator(rep); }; });
    }

    RegionOpts reg;
    {
        CLI::App* cmd = app.add_subcommand(
            "region", "Classify a single payoff point against every region predicate");

        add_payoff_options(cmd, reg.a11, reg.a12, reg.a21, reg.a22);
        cmd->add_option("--N", reg.N, "neighborhood size (>= 2)")->required();
        cmd->add_option("--out", reg.out, "output CSV path, - for stdout")->capture_default_str();
        cmd->callback([&] { action = [&] { run_region(reg); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        action();
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
