#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "evolattice/configuration.hpp"
#include "evolattice/lattice.hpp"
#include "evolattice/payoff_matrix.hpp"
#include "evolattice/rates.hpp"
#include "evolattice/rng.hpp"

namespace evolattice {

// Continuous-time event loop by uniformization: every site updates at rate 1,
// so the next update happens after an Exp(n_sites) holding time at a uniform
// site, which then flips with switch_probability. Draw order per event is
// fixed (holding time, site, flip uniform) and the flip draw is always
// consumed, so runs with equal seeds replay identically.

struct SimulationParams {
    double epsilon = 1.0;
    double t_end = 1e18;
    std::int64_t max_events = 100000000;
    double sample_interval = 0.0;  // <= 0: record only start and end
    std::uint64_t seed = 1;
};

struct StepResult {
    double elapsed;
    std::int64_t site;
    bool flipped;
};

inline Configuration init_product_measure(const LatticeTopology& top, double density1,
                                          std::uint64_t seed) {
    if (!(density1 >= 0.0 && density1 <= 1.0))
        throw std::invalid_argument("density must lie in [0, 1]");
    Configuration cfg(top, Strategy::s2);
    Rng rng(seed);
    for (std::int64_t x = 0; x < top.n_sites(); ++x)
        cfg.set(x, rng.uniform() < density1 ? Strategy::s1 : Strategy::s2);
    return cfg;
}

// Writes `pattern` starting at site 0 of a ring and fills the rest.
inline Configuration init_pattern_1d(const LatticeTopology& top,
                                     const std::vector<Strategy>& pattern, Strategy fill) {
    if (top.dimension() != 1)
        throw std::invalid_argument("pattern initialization is one-dimensional");
    if (static_cast<std::int64_t>(pattern.size()) > top.n_sites())
        throw std::invalid_argument("pattern longer than the ring");
    Configuration cfg(top, fill);
    for (std::size_t k = 0; k < pattern.size(); ++k)
        cfg.set(static_cast<std::int64_t>(k), pattern[k]);
    return cfg;
}

inline StepResult step_event(Configuration& cfg, const PayoffMatrix& pm, double eps, Rng& rng) {
    const auto n = cfg.topology.n_sites();
    StepResult res{};
    res.elapsed = rng.exponential(static_cast<double>(n));
    res.site = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    const double p = switch_probability(cfg, pm, res.site, eps);
    const double u = rng.uniform();
    res.flipped = u < p;
    if (res.flipped) cfg.set(res.site, opposite(cfg.at(res.site)));
    return res;
}

struct Fixation {
    Strategy winner;
    double time;
};

struct SampleRow {
    double time;
    double density1;
};

struct SimulationRecord {
    std::vector<SampleRow> samples;
    std::optional<Fixation> fixation;
    std::int64_t events = 0;
    Configuration final_configuration;
};

inline SimulationRecord run(Configuration cfg, const PayoffMatrix& pm,
                            const SimulationParams& params) {
    const auto n = cfg.topology.n_sites();
    const double inv_n = 1.0 / static_cast<double>(n);
    std::int64_t count1 = cfg.count(Strategy::s1);

    SimulationRecord rec{{}, std::nullopt, 0, cfg};
    if (count1 == 0 || count1 == n) {
        rec.fixation = Fixation{count1 == n ? Strategy::s1 : Strategy::s2, 0.0};
        rec.final_configuration = std::move(cfg);
        return rec;
    }

    Rng rng(params.seed);
    double t = 0.0;
    double next_sample = params.sample_interval > 0.0 ? params.sample_interval : 0.0;
    rec.samples.push_back({0.0, count1 * inv_n});

    while (rec.events < params.max_events) {
        const double dt = rng.exponential(static_cast<double>(n));
        if (t + dt > params.t_end) {
            if (params.sample_interval > 0.0)
                while (next_sample <= params.t_end) {
                    rec.samples.push_back({next_sample, count1 * inv_n});
                    next_sample += params.sample_interval;
                }
            t = params.t_end;
            break;
        }
        const auto site = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        const double p = switch_probability(cfg, pm, site, params.epsilon);
        const double u = rng.uniform();
        t += dt;
        ++rec.events;
        if (params.sample_interval > 0.0)
            while (next_sample < t) {
                rec.samples.push_back({next_sample, count1 * inv_n});
                next_sample += params.sample_interval;
            }
        if (u < p) {
            const Strategy now = opposite(cfg.at(site));
            cfg.set(site, now);
            count1 += now == Strategy::s1 ? 1 : -1;
            if (count1 == 0 || count1 == n) {
                rec.fixation = Fixation{count1 == n ? Strategy::s1 : Strategy::s2, t};
                break;
            }
        }
    }

    if (!rec.fixation && (rec.samples.empty() || rec.samples.back().time < t))
        rec.samples.push_back({t, count1 * inv_n});
    rec.final_configuration = std::move(cfg);
    return rec;
}

// Interface observables of a one-dimensional configuration, read relative to
// one tracked strategy-2 run: with l..r the run (indices unwrapped rightward
// from l), X = l - 1 is the rightmost strategy-1 site with only 1s to its
// left (locally), K the distance from X to the next strategy-1 site, and
// M_minus / M_plus the lengths of the 1-runs flanking the tracked run.
struct InterfaceSnapshot {
    std::int64_t X;
    std::int64_t K;
    std::int64_t l;
    std::int64_t r;
    std::int64_t M_minus;
    std::int64_t M_plus;
};

inline InterfaceSnapshot interface_observables(const Configuration& cfg,
                                               std::optional<std::int64_t> anchor = std::nullopt) {
    const auto& top = cfg.topology;
    if (top.dimension() != 1)
        throw std::invalid_argument("interface observables are one-dimensional");
    const std::int64_t L = top.n_sites();
    const std::int64_t c1 = cfg.count(Strategy::s1);
    if (c1 == 0 || c1 == L)
        throw std::invalid_argument("interface observables undefined without both strategies");

    const auto at = [&](std::int64_t x) {
        return cfg.at(((x % L) + L) % L);
    };

    std::int64_t l = -1;
    if (anchor) {
        if (at(*anchor) != Strategy::s2)
            throw std::invalid_argument("anchor site must hold strategy 2");
        l = *anchor;
        while (at(l - 1) == Strategy::s2) --l;
        l = ((l % L) + L) % L;
    } else {
        for (std::int64_t x = 0; x < L; ++x)
            if (at(x) == Strategy::s2 && at(x - 1) == Strategy::s1) {
                l = x;
                break;
            }
    }

    InterfaceSnapshot s{};
    s.l = l;
    std::int64_t r = l;
    while (at(r + 1) == Strategy::s2) ++r;
    s.r = r;
    s.X = l - 1;
    s.K = r - l + 2;  // sites X+1 .. r hold strategy 2, site r+1 holds strategy 1
    std::int64_t m = 0;
    while (at(s.X - m) == Strategy::s1) ++m;
    s.M_minus = m;
    m = 0;
    while (at(r + 1 + m) == Strategy::s1) ++m;
    s.M_plus = m;
    return s;
}

// Monte Carlo estimate of the interface displacement rate conditioned on a
// gap class (2, 3, or >= 4, requested as 4). The exact local pattern is laid
// out on a ring sized so distinct boundaries stay apart for the whole event
// budget (ring >= 50 + events_per_replica / 10, enforced). Each measurement
// draws one uniformized event restricted to the window of sites the pattern
// constrains, records the displacement of X times the window size, and
// restores the pattern, so every event sees the exact conditioning
// configuration. Sites outside the window either cannot flip or leave X
// unchanged, so the restriction is exact, not an approximation.
struct DriftEstimate {
    double mean_drift;
    double std_error;
    std::int64_t events_used;
    int replicas;
};

inline DriftEstimate estimate_drift(const PayoffMatrix& pm, int gap_class, int replicas,
                                    std::int64_t events_per_replica, std::uint64_t seed,
                                    std::int64_t ring_size = 0) {
    if (gap_class < 2 || gap_class > 4)
        throw std::invalid_argument("gap class must be 2, 3, or 4 (meaning >= 4)");
    if (replicas < 1 || events_per_replica < 1)
        throw std::invalid_argument("need at least one replica and one event");
    const std::int64_t required = 50 + events_per_replica / 10;
    const std::int64_t L = ring_size == 0 ? required : ring_size;
    if (L < required)
        throw std::invalid_argument("ring size " + std::to_string(L) +
                                    " too small; boundaries could meet within the event budget "
                                    "(need >= " + std::to_string(required) + ")");

    const LatticeTopology top(1, 1, static_cast<int>(L));
    const std::int64_t X0 = L / 2;
    Configuration base(top, Strategy::s2);
    for (std::int64_t x = 0; x <= X0; ++x) base.set(x, Strategy::s1);
    if (gap_class == 2) base.set(X0 + 2, Strategy::s1);
    if (gap_class == 3) base.set(X0 + 3, Strategy::s1);

    const std::int64_t w_lo = X0 - 2;
    const std::int64_t w_hi = gap_class == 2 ? X0 + 3 : X0 + 4;
    const auto w = static_cast<double>(w_hi - w_lo + 1);

    double sum = 0.0, sumsq = 0.0;
    std::int64_t n = 0;
    for (int rep = 0; rep < replicas; ++rep) {
        Configuration cfg = base;
        Rng rng(derive_replica_seed(seed, static_cast<std::uint64_t>(rep)));
        for (std::int64_t e = 0; e < events_per_replica; ++e) {
            const std::int64_t site =
                w_lo + static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(w_hi - w_lo + 1)));
            const double p = switch_probability(cfg, pm, site, 1.0);
            const double u = rng.uniform();
            double sample = 0.0;
            if (u < p) {
                const Strategy old = cfg.at(site);
                cfg.set(site, opposite(old));
                std::int64_t q = X0 - 2;
                while (cfg.at(q) == Strategy::s1) ++q;
                sample = static_cast<double>((q - 1) - X0) * w;
                cfg.set(site, old);
            }
            sum += sample;
            sumsq += sample * sample;
            ++n;
        }
    }
    DriftEstimate est{};
    est.mean_drift = sum / static_cast<double>(n);
    const double var = n > 1 ? (sumsq - static_cast<double>(n) * est.mean_drift * est.mean_drift) /
                                   static_cast<double>(n - 1)
                             : 0.0;
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    est.events_used = n;
    est.replicas = replicas;
    return est;
}

// First time the strategy-2 component grown from `origin` through space-time
// has no living member. A site belongs to the component while it has held
// strategy 2 continuously since joining; a site joins when it flips to 2
// next to a member (and every standing 2 connected through it joins too,
// origin's own 2-run included at time zero). Returns the extinction time, or
// nothing if the budget runs out first.
inline std::optional<double> component_extinction(Configuration cfg, const PayoffMatrix& pm,
                                                  const SimulationParams& params,
                                                  std::int64_t origin = 0) {
    const auto& top = cfg.topology;
    if (top.dimension() != 1)
        throw std::invalid_argument("component tracking is one-dimensional");
    if (cfg.at(origin) != Strategy::s2)
        throw std::invalid_argument("origin must hold strategy 2");
    const std::int64_t L = top.n_sites();
    const auto wrap = [L](std::int64_t x) { return ((x % L) + L) % L; };

    std::vector<char> member(static_cast<std::size_t>(L), 0);
    std::int64_t alive = 0;
    std::vector<std::int64_t> stack;
    const auto flood = [&](std::int64_t from) {
        stack.push_back(from);
        while (!stack.empty()) {
            const std::int64_t x = stack.back();
            stack.pop_back();
            if (member[static_cast<std::size_t>(x)] || cfg.at(x) != Strategy::s2) continue;
            member[static_cast<std::size_t>(x)] = 1;
            ++alive;
            top.for_each_neighbor(x, [&](std::int64_t y) {
                if (!member[static_cast<std::size_t>(y)] && cfg.at(y) == Strategy::s2)
                    stack.push_back(y);
            });
        }
    };
    flood(origin);

    Rng rng(params.seed);
    double t = 0.0;
    for (std::int64_t e = 0; e < params.max_events; ++e) {
        const double dt = rng.exponential(static_cast<double>(L));
        if (t + dt > params.t_end) return std::nullopt;
        const auto site = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(L)));
        const double p = switch_probability(cfg, pm, site, params.epsilon);
        const double u = rng.uniform();
        t += dt;
        if (u >= p) continue;
        const Strategy now = opposite(cfg.at(site));
        cfg.set(site, now);
        if (now == Strategy::s1) {
            if (member[static_cast<std::size_t>(site)]) {
                member[static_cast<std::size_t>(site)] = 0;
                if (--alive == 0) return t;
            }
        } else {
            const bool touches = member[static_cast<std::size_t>(wrap(site - 1))] ||
                                 member[static_cast<std::size_t>(wrap(site + 1))];
            if (touches) flood(site);
        }
    }
    return std::nullopt;
}

// Closed-form update rates of the classical baseline processes, for
// comparison against the full engine. f_i is the fraction of neighbors of
// `site` holding strategy i.
enum class ReferenceKind { voter, modified_voter_1, modified_voter_2, biased_voter, richardson };

struct ReferenceParams {
    double epsilon = 0.0;  // modified voter mixing weight
    double mu = 1.0;       // richardson growth rate
    double lambda1 = 1.0;  // biased voter rate toward strategy 1
    double lambda2 = 1.0;  // biased voter rate toward strategy 2
};

inline double reference_rate(ReferenceKind kind, const Configuration& cfg, std::int64_t site,
                             const ReferenceParams& rp = {}) {
    const auto [n1, n2] = neighbor_counts(cfg, site);
    const double N = static_cast<double>(n1 + n2);
    const double f1 = n1 / N, f2 = n2 / N;
    const Strategy s = cfg.at(site);
    switch (kind) {
        case ReferenceKind::voter:
            return s == Strategy::s1 ? f2 : f1;
        case ReferenceKind::modified_voter_1:
            return s == Strategy::s1 ? (1.0 - rp.epsilon) * f2 + rp.epsilon * (n1 == 0 ? 1.0 : 0.0)
                                     : (1.0 - rp.epsilon) * f1 + rp.epsilon * (n1 != 0 ? 1.0 : 0.0);
        case ReferenceKind::modified_voter_2:
            return s == Strategy::s2 ? (1.0 - rp.epsilon) * f1 + rp.epsilon * (n2 == 0 ? 1.0 : 0.0)
                                     : (1.0 - rp.epsilon) * f2 + rp.epsilon * (n2 != 0 ? 1.0 : 0.0);
        case ReferenceKind::biased_voter:
            return s == Strategy::s1 ? rp.lambda2 * f2 : rp.lambda1 * f1;
        case ReferenceKind::richardson:
            return s == Strategy::s1 ? 0.0 : rp.mu * f1;
    }
    return 0.0;
}

// Replica fan-out. Replica r derives its configuration seed as
// derive_replica_seed(base_seed, r) and its event-stream seed as
// derive_replica_seed(config_seed, 0), so results are independent of thread
// count and are returned in replica order.
struct ReplicaOutcome {
    std::uint64_t config_seed;
    SimulationRecord record;
};

template <typename MakeConfig>
std::vector<ReplicaOutcome> run_replicas(const PayoffMatrix& pm, const SimulationParams& params,
                                         int replicas, std::uint64_t base_seed,
                                         MakeConfig&& make_config, int threads = 1) {
    if (replicas < 1) throw std::invalid_argument("need at least one replica");
    std::vector<std::optional<ReplicaOutcome>> slots(static_cast<std::size_t>(replicas));
    std::atomic<int> next{0};
    const auto worker = [&]() {
        while (true) {
            const int r = next.fetch_add(1);
            if (r >= replicas) return;
            const std::uint64_t cfg_seed = derive_replica_seed(base_seed, static_cast<std::uint64_t>(r));
            SimulationParams p = params;
            p.seed = derive_replica_seed(cfg_seed, 0);
            Configuration cfg = make_config(cfg_seed);
            slots[static_cast<std::size_t>(r)] = ReplicaOutcome{cfg_seed, run(std::move(cfg), pm, p)};
        }
    };
    threads = std::max(1, std::min(threads, replicas));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<ReplicaOutcome> out;
    out.reserve(static_cast<std::size_t>(replicas));
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace evolattice
