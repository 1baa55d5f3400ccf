// Demo (illustrative only): pre-fixation density plateau.
//
// For a mutually altruistic matrix the mean-field share equation has a stable
// interior rest point. A finite torus must eventually fixate, but on the way
// there the strategy-1 density hovers around that rest point for a long
// stretch. This program integrates the share equation, runs the lattice
// process, and prints both so the plateau is visible side by side.

#include <cstdio>

#include "evolattice/evolattice.hpp"

int main() {
    using namespace evolattice;
    const PayoffMatrix pm(1, 3, 2, 1);

    const auto regime = classify_regime(pm);
    std::printf("mean-field regime: %s", regime_name(regime.regime));
    if (regime.interior_fixed_point)
        std::printf(", interior rest point u* = %.4f (%s)", *regime.interior_fixed_point,
                    *regime.interior_stable ? "stable" : "unstable");
    std::printf("\n\n");

    const double t_end = 200.0;
    const auto traj = integrate_replicator(pm, 0.5, t_end, 1e-3, 10000);

    const LatticeTopology torus(2, 1, 24);
    SimulationParams params;
    params.sample_interval = 10.0;
    params.t_end = t_end;
    params.max_events = 50000000;
    params.seed = 314159;
    const auto rec = run(init_product_measure(torus, 0.5, 9), pm, params);

    std::printf("%8s  %12s  %14s\n", "time", "mean field", "lattice (24x24)");
    std::size_t k = 0;
    for (const auto& row : rec.samples) {
        while (k + 1 < traj.times.size() && traj.times[k] < row.time - 1e-9) ++k;
        std::printf("%8.1f  %12.4f  %14.4f\n", row.time, traj.u1_values[k], row.density1);
    }
    if (rec.fixation)
        std::printf("\nfixated early: winner = strategy %d at t = %.1f\n",
                    strategy_label(rec.fixation->winner), rec.fixation->time);
    else
        std::printf("\nstill mixed at t = %.0f: the density plateau outlives the horizon\n",
                    t_end);
    return 0;
}
