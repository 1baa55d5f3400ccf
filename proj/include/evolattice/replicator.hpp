#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evolattice/payoff_matrix.hpp"

namespace evolattice {

// Mean-field companion dynamics for the two-strategy game: the share u of
// strategy 1 follows u' = u (1 - u) (phi1(u) - phi2(u)) with the mixed-
// population payoffs phi1 = a11 u + a12 (1 - u), phi2 = a21 u + a22 (1 - u).
inline double replicator_rhs(const PayoffMatrix& pm, double u1) {
    const double u2 = 1.0 - u1;
    const double phi1 = pm.a11() * u1 + pm.a12() * u2;
    const double phi2 = pm.a21() * u1 + pm.a22() * u2;
    return u1 * u2 * (phi1 - phi2);
}

// d/du of replicator_rhs. With a1 = a11 - a21 and a2 = a22 - a12 the payoff
// difference is phi1 - phi2 = a1 u - a2 (1 - u), so
// f(u) = u (1 - u) (a1 u - a2 (1 - u)) and
// f'(u) = (1 - 2u)(a1 u - a2 (1 - u)) + u (1 - u)(a1 + a2).
inline double replicator_rhs_derivative(const PayoffMatrix& pm, double u1) {
    const double a1 = pm.a1(), a2 = pm.a2();
    const double g = a1 * u1 - a2 * (1.0 - u1);
    return (1.0 - 2.0 * u1) * g + u1 * (1.0 - u1) * (a1 + a2);
}

enum class Regime {
    dominance_1,   // a1 > 0 > a2: strategy 1 selfish, takes over from any interior start
    dominance_2,   // a2 > 0 > a1: strategy 2 selfish, takes over from any interior start
    bistable,      // a1, a2 > 0: interior fixed point unstable, outcome depends on the start
    coexistence,   // a1, a2 < 0: interior fixed point stable and globally attracting
    degenerate,    // a1 = 0 or a2 = 0: a line of non-hyperbolic behavior
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::dominance_1: return "dominance_1";
        case Regime::dominance_2: return "dominance_2";
        case Regime::bistable: return "bistable";
        case Regime::coexistence: return "coexistence";
        case Regime::degenerate: return "degenerate";
    }
    return "?";
}

struct RegimeReport {
    Regime regime;
    double a1;
    double a2;
    // u* = a2 / (a1 + a2); present iff a1 and a2 share a strict sign.
    std::optional<double> interior_fixed_point;
    // true = stable (coexistence), false = unstable (bistable); empty otherwise.
    std::optional<bool> interior_stable;
};

inline RegimeReport classify_regime(const PayoffMatrix& pm) {
    RegimeReport r{};
    r.a1 = pm.a1();
    r.a2 = pm.a2();
    if (r.a1 == 0.0 || r.a2 == 0.0) {
        r.regime = Regime::degenerate;
    } else if (r.a1 > 0.0 && r.a2 > 0.0) {
        r.regime = Regime::bistable;
        r.interior_fixed_point = r.a2 / (r.a1 + r.a2);
        r.interior_stable = false;
    } else if (r.a1 < 0.0 && r.a2 < 0.0) {
        r.regime = Regime::coexistence;
        r.interior_fixed_point = r.a2 / (r.a1 + r.a2);
        r.interior_stable = true;
    } else if (r.a1 > 0.0) {
        r.regime = Regime::dominance_1;
    } else {
        r.regime = Regime::dominance_2;
    }
    return r;
}

struct ReplicatorTrajectory {
    std::vector<double> times;
    std::vector<double> u1_values;
};

// Classical fixed-step RK4 on the replicator equation. Samples every
// `sample_stride` steps (plus the final state). Values may leave [0, 1] by at
// most 1e-9 from roundoff and are clamped back; larger excursions or
// non-finite values abort the integration.
inline ReplicatorTrajectory integrate_replicator(const PayoffMatrix& pm, double u0,
                                                 double t_end, double dt = 1e-3,
                                                 std::int64_t sample_stride = 100) {
    if (!(u0 >= 0.0 && u0 <= 1.0))
        throw std::invalid_argument("initial share must lie in [0, 1], got " + std::to_string(u0));
    if (!(t_end >= 0.0) || !(dt > 0.0))
        throw std::invalid_argument("horizon must be >= 0 and step > 0");
    if (sample_stride < 1) sample_stride = 1;

    const auto n_steps = static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-12));
    ReplicatorTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n_steps / sample_stride) + 2);
    traj.u1_values.reserve(traj.times.capacity());

    double u = u0;
    traj.times.push_back(0.0);
    traj.u1_values.push_back(u);
    for (std::int64_t step = 0; step < n_steps; ++step) {
        const double h = std::min(dt, t_end - static_cast<double>(step) * dt);
        const double k1 = replicator_rhs(pm, u);
        const double k2 = replicator_rhs(pm, u + 0.5 * h * k1);
        const double k3 = replicator_rhs(pm, u + 0.5 * h * k2);
        const double k4 = replicator_rhs(pm, u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(u) || u < -1e-9 || u > 1.0 + 1e-9)
            throw std::runtime_error("replicator integration left [0, 1] at t = " +
                                     std::to_string((step + 1) * dt));
        u = std::clamp(u, 0.0, 1.0);
        if ((step + 1) % sample_stride == 0 || step + 1 == n_steps) {
            traj.times.push_back(std::min((step + 1) * dt, t_end));
            traj.u1_values.push_back(u);
        }
    }
    return traj;
}

}  // namespace evolattice
