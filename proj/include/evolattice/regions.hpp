#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "evolattice/payoff_matrix.hpp"
#include "evolattice/replicator.hpp"

namespace evolattice {

// Constants behind the coexistence criterion for strongly altruistic games.
// With r = min(a12 / a21, a21 / a12):
//   c_minus  = 2^-17 r
//   c_plus   = 5^2 2^7 c_minus^-5
//   threshold = 5^-2 2^-21 c_minus^5 min(a12, a21)
//             = 2^-14 c_plus^-1    min(a12, a21)   (same number by algebra)
// Coexistence holds on suitable large-range lattices whenever
// max(a11, a22) <= threshold. The two threshold routes are kept distinct and
// checked against each other (exactly, in rational arithmetic) by the tests.
struct CoexistenceConstants {
    double c_minus;
    double c_plus;
    double threshold;
};

inline CoexistenceConstants coexistence_constants(const PayoffMatrix& pm) {
    CoexistenceConstants c{};
    const double r = std::min(pm.a12() / pm.a21(), pm.a21() / pm.a12());
    c.c_minus = 0x1.0p-17 * r;
    const double c5 = c.c_minus * c.c_minus * c.c_minus * c.c_minus * c.c_minus;
    c.c_plus = 25.0 * 128.0 / c5;
    c.threshold = c5 * std::min(pm.a12(), pm.a21()) / (25.0 * 0x1.0p21);
    return c;
}

// Sufficient condition for coexistence of deeply altruistic strategies:
// both self-interaction payoffs below the threshold above. The guarantee
// behind it needs a sufficiently large interaction range, which is why the
// predicate takes no topology: it marks the payoff region only.
inline bool coexistence_condition(const PayoffMatrix& pm) {
    return std::max(pm.a11(), pm.a22()) <= coexistence_constants(pm).threshold;
}

namespace detail {
inline void require_a21_above_a12(const PayoffMatrix& pm) {
    if (!(pm.a21() > pm.a12()))
        throw std::invalid_argument(
            "this predicate assumes a21 > a12; apply it to the label-swapped matrix instead");
}
}  // namespace detail

// Strategy-1 payoff domination: on any lattice with neighborhood size N,
// strategy 1 wins whenever
//   min(a12 - a22, a11 - a21) > (N - 1)(a21 - a12).
// Assumes the a21 > a12 normalization; swap labels for the mirror statement.
inline bool strategy1_dominance_condition(const PayoffMatrix& pm, int N) {
    detail::require_a21_above_a12(pm);
    if (N < 1) throw std::invalid_argument("neighborhood size must be >= 1");
    return std::min(pm.a12() - pm.a22(), pm.a11() - pm.a21()) >
           static_cast<double>(N - 1) * (pm.a21() - pm.a12());
}

// The region above is nonempty (for some positive a11, a22) exactly when
// a12 > (1 - 1/N) a21.
inline bool strategy1_dominance_nonempty(double a12, double a21, int N) {
    if (!(a21 > a12)) throw std::invalid_argument("requires a21 > a12");
    return a12 > (1.0 - 1.0 / static_cast<double>(N)) * a21;
}

// Payoff inequality of the strategy-2 domination criterion:
//   (N^2 - N - 1) max(a11 - a21, a12 - a22, a11 - a22) < a21 - a12.
inline bool strategy2_dominance_inequality(const PayoffMatrix& pm, int N) {
    detail::require_a21_above_a12(pm);
    if (N < 2) throw std::invalid_argument("neighborhood size must be >= 2");
    const double m = std::max({pm.a11() - pm.a21(), pm.a12() - pm.a22(), pm.a11() - pm.a22()});
    const double coeff = static_cast<double>(N) * N - N - 1.0;
    return coeff * m < pm.a21() - pm.a12();
}

// Full strategy-2 domination criterion: the payoff inequality above on any
// lattice except the one-dimensional nearest-neighbor chain, where the
// conclusion fails (strategy 1 can win there instead; see the interface
// drift verdict).
inline bool strategy2_dominance_condition(const PayoffMatrix& pm, int N, bool is_1d_nearest_neighbor) {
    detail::require_a21_above_a12(pm);
    return !is_1d_nearest_neighbor && strategy2_dominance_inequality(pm, N);
}

// Sufficient condition for strategy 2 to win expressed through the payoff
// extremes over mixed neighborhoods:
//   (N - 1) m_plus  > (N - 2) M_plus  + M_minus   and
//   (N - 1) M_minus < (N - 2) m_minus + m_plus.
inline bool extrema_dominance_condition(const PayoffMatrix& pm, int N) {
    if (N < 2) throw std::invalid_argument("neighborhood size must be >= 2");
    const PayoffExtrema e = payoff_extrema(pm, N);
    const double n = static_cast<double>(N);
    return (n - 1.0) * e.m_plus > (n - 2.0) * e.M_plus + e.M_minus &&
           (n - 1.0) * e.M_minus < (n - 2.0) * e.m_minus + e.m_plus;
}

// Corner points of the slope-one segment bounding the strategy-2 domination
// region in the (a11, a22) plane, for fixed off-diagonal payoffs:
//   p_plus  = (a21 + (a21 - a12)/(N^2 - N - 1), a21)
//   p_minus = (a12, a12 - (a21 - a12)/(N^2 - N - 1))
struct DominanceRegionCorners {
    double p_plus_a11, p_plus_a22;
    double p_minus_a11, p_minus_a22;
};

inline DominanceRegionCorners dominance_region_corners(double a12, double a21, int N) {
    if (!(a21 > a12)) throw std::invalid_argument("requires a21 > a12");
    if (N < 2) throw std::invalid_argument("neighborhood size must be >= 2");
    const double c = (a21 - a12) / (static_cast<double>(N) * N - N - 1.0);
    return {a21 + c, a21, a12, a12 - c};
}

// Interface-drift verdict for the one-dimensional nearest-neighbor process.
// Strategy 1 wins when (a22 < a21 and D3 + D4 > 0) or (a22 > a21 and D4 > 0);
// strategy 2 wins under the label-swapped condition. The two conditions are
// never simultaneously true (covered by a property test); ties and boundary
// cases report no winner.
inline std::optional<Strategy> interface_drift_winner(const PayoffMatrix& pm) {
    const auto wins_as_1 = [](const PayoffMatrix& m) {
        const double d3 = d3_closed_form(m), d4 = d4_closed_form(m);
        return (m.a22() < m.a21() && d3 + d4 > 0.0) || (m.a22() > m.a21() && d4 > 0.0);
    };
    const bool w1 = wins_as_1(pm);
    const bool w2 = wins_as_1(pm.label_swapped());
    if (w1 && !w2) return Strategy::s1;
    if (w2 && !w1) return Strategy::s2;
    return std::nullopt;
}

// All region predicates evaluated at one payoff point.
struct RegionVerdict {
    double a11, a22, a12, a21;
    int N;
    RegimeReport regime;
    bool coexists;
    bool s1_dominates;
    bool s2_dominates;
    bool extrema_condition;
    std::optional<Strategy> drift_winner;  // populated only for N == 2 (1D nearest neighbor)
    bool prisoners_dilemma;
};

inline RegionVerdict classify_point(double a11, double a22, double a12, double a21, int N) {
    const PayoffMatrix pm(a11, a12, a21, a22);
    detail::require_a21_above_a12(pm);
    const bool is_1d_nn = N == 2;
    RegionVerdict v{};
    v.a11 = a11; v.a22 = a22; v.a12 = a12; v.a21 = a21; v.N = N;
    v.regime = classify_regime(pm);
    v.coexists = coexistence_condition(pm);
    v.s1_dominates = strategy1_dominance_condition(pm, N);
    v.s2_dominates = strategy2_dominance_condition(pm, N, is_1d_nn);
    v.extrema_condition = extrema_dominance_condition(pm, N);
    if (is_1d_nn) v.drift_winner = interface_drift_winner(pm);
    v.prisoners_dilemma = is_prisoners_dilemma(pm);
    return v;
}

// Phase-diagram sweep over an (a11, a22) grid with the off-diagonal payoffs
// held fixed. Cells are ordered a11-major: all a22 values for the first a11,
// then the next a11, and so on.
struct SweepResult {
    double a12, a21;
    int N;
    std::vector<double> a11_values;
    std::vector<double> a22_values;
    std::vector<RegionVerdict> cells;
};

inline SweepResult sweep_phase_diagram(double a12, double a21,
                                       const std::vector<double>& a11_values,
                                       const std::vector<double>& a22_values, int N) {
    if (a11_values.empty() || a22_values.empty())
        throw std::invalid_argument("sweep grids must be nonempty");
    if (!(a21 > a12)) throw std::invalid_argument("sweep requires a21 > a12");
    SweepResult r{a12, a21, N, a11_values, a22_values, {}};
    r.cells.reserve(a11_values.size() * a22_values.size());
    for (double a11 : a11_values)
        for (double a22 : a22_values)
            r.cells.push_back(classify_point(a11, a22, a12, a21, N));
    return r;
}

}  // namespace evolattice
