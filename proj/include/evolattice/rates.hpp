#pragma once

#include <cstdint>
#include <utility>

#include "evolattice/configuration.hpp"
#include "evolattice/payoff_matrix.hpp"

namespace evolattice {

// (strategy-1 neighbors, strategy-2 neighbors) of a site.
inline std::pair<int, int> neighbor_counts(const Configuration& cfg, std::int64_t site) {
    int n1 = 0, n2 = 0;
    cfg.topology.for_each_neighbor(site, [&](std::int64_t y) {
        if (cfg.at(y) == Strategy::s1) ++n1; else ++n2;
    });
    return {n1, n2};
}

// Payoff landscape: the focal player collects a(i, j) from each strategy-j
// neighbor, i being her own strategy. The own-strategy term is accumulated
// first so that the value is bitwise invariant under a global label swap of
// both the configuration and the matrix.
inline double payoff(const Configuration& cfg, const PayoffMatrix& pm, std::int64_t site) {
    const auto [n1, n2] = neighbor_counts(cfg, site);
    const Strategy i = cfg.at(site);
    const int n_own = i == Strategy::s1 ? n1 : n2;
    const int n_opp = i == Strategy::s1 ? n2 : n1;
    return pm.a(i, i) * n_own + pm.a(i, opposite(i)) * n_opp;
}

// Probability that the player at `site` adopts the opposite strategy when her
// update clock rings. The update is an epsilon-mixture: with weight 1 - eps a
// voter step (copy a uniform neighbor), with weight eps a death-birth step
// (copy a neighbor with probability proportional to that neighbor's payoff):
//
//   (1 - eps) * N_j / N  +  eps * sum_{y in N_x, labeled j} payoff(y)
//                                 / sum_{y in N_x} payoff(y)
//
// where j is the opposite strategy. eps = 1 is the pure payoff-proportional
// process, eps = 0 the voter model. If no neighbor carries j both terms
// vanish and the site cannot flip.
inline double switch_probability(const Configuration& cfg, const PayoffMatrix& pm,
                                 std::int64_t site, double eps) {
    const Strategy j = opposite(cfg.at(site));
    double num = 0.0, den = 0.0;
    int n_opp = 0, n_tot = 0;
    cfg.topology.for_each_neighbor(site, [&](std::int64_t y) {
        const double phi = payoff(cfg, pm, y);
        den += phi;
        ++n_tot;
        if (cfg.at(y) == j) {
            num += phi;
            ++n_opp;
        }
    });
    const double voter = static_cast<double>(n_opp) / static_cast<double>(n_tot);
    const double game = num / den;
    return (1.0 - eps) * voter + eps * game;
}

}  // namespace evolattice
