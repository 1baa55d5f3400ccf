#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evolattice/configuration.hpp"

namespace evolattice {

// 2x2 game payoff matrix. a(i, j) is the payoff a strategy-i player collects
// per strategy-j neighbor. All entries must be finite and strictly positive;
// the update rule divides by payoff sums.
class PayoffMatrix {
public:
    PayoffMatrix(double a11, double a12, double a21, double a22)
        : a_{a11, a12, a21, a22} {
        static const char* names[] = {"a11", "a12", "a21", "a22"};
        for (int k = 0; k < 4; ++k) {
            if (!std::isfinite(a_[k]) || a_[k] <= 0.0)
                throw std::invalid_argument(std::string("payoff entry ") + names[k] +
                                            " must be finite and > 0, got " + std::to_string(a_[k]));
        }
    }

    double a11() const { return a_[0]; }
    double a12() const { return a_[1]; }
    double a21() const { return a_[2]; }
    double a22() const { return a_[3]; }

    double a(Strategy row, Strategy col) const {
        return a_[(strategy_label(row) - 1) * 2 + (strategy_label(col) - 1)];
    }

    // Gain of each strategy against itself relative to the opponent's payoff
    // in the same column: a1 = a11 - a21, a2 = a22 - a12. Strategy i is
    // "selfish" when a_i > 0 and "altruistic" when a_i < 0. Always derived,
    // never stored.
    double a1() const { return a_[0] - a_[2]; }
    double a2() const { return a_[3] - a_[1]; }

    // Same game with the two strategy labels exchanged.
    PayoffMatrix label_swapped() const { return PayoffMatrix(a_[3], a_[2], a_[1], a_[0]); }

    bool is_neutral() const { return a_[0] == a_[1] && a_[1] == a_[2] && a_[2] == a_[3]; }

private:
    std::array<double, 4> a_;
};

inline PayoffMatrix neutral_payoffs() { return PayoffMatrix(1.0, 1.0, 1.0, 1.0); }

// Prisoner's dilemma in the standard normalization: a21 > a11 > a22 > a12
// (temptation > reward > punishment > sucker).
inline bool is_prisoners_dilemma(const PayoffMatrix& pm) {
    return pm.a21() > pm.a11() && pm.a11() > pm.a22() && pm.a22() > pm.a12();
}

// Extremes of the two payoff landscapes over mixed neighborhoods. With z
// strategy-1 neighbors out of N, a strategy-1 player earns
// phi1(z) = (a11 - a12) z / N + a12 and a strategy-2 player earns
// phi2(z) = (a22 - a21) z / N + a21. Both are linear in z, so the extremes
// sit at endpoints:
//   M_plus  = max_z phi1(z),            M_minus = max_{z <= N-1} phi1(z),
//   m_minus = min_z phi2(z),            m_plus  = min_{z <= N-1} phi2(z).
struct PayoffExtrema {
    double M_plus;
    double M_minus;
    double m_minus;
    double m_plus;
};

inline PayoffExtrema payoff_extrema(const PayoffMatrix& pm, int N) {
    if (N < 1) throw std::invalid_argument("neighborhood size must be >= 1");
    const double n = static_cast<double>(N);
    PayoffExtrema e{};
    if (pm.a11() > pm.a12()) {          // phi1 increasing in z
        e.M_plus = pm.a11();
        e.M_minus = (pm.a11() - pm.a12()) * (n - 1.0) / n + pm.a12();
    } else {                            // maximum at z = 0 either way
        e.M_plus = pm.a12();
        e.M_minus = pm.a12();
    }
    if (pm.a22() < pm.a21()) {          // phi2 decreasing in z
        e.m_minus = pm.a22();
        e.m_plus = (pm.a22() - pm.a21()) * (n - 1.0) / n + pm.a21();
    } else {                            // minimum at z = 0 either way
        e.m_minus = pm.a21();
        e.m_plus = pm.a21();
    }
    return e;
}

// One-dimensional nearest-neighbor interface rates. In a local configuration
// where the focal player has exactly one strategy-1 neighbor (itself having
// n1 strategy-1 neighbors) and one strategy-2 neighbor (itself having n2
// strategy-2 neighbors), the focal player switches away from strategy i at
// probability p_i(n1, n2). Both share the denominator
//   D = n1 a11 + (2 - n1) a12 + (2 - n2) a21 + n2 a22,
// with p1 = ((2 - n2) a21 + n2 a22) / D and p2 = (n1 a11 + (2 - n1) a12) / D,
// so p1 + p2 = 1.
inline double interface_rate(const PayoffMatrix& pm, Strategy focal, int n1, int n2) {
    if (n1 < 0 || n1 > 2 || n2 < 0 || n2 > 2)
        throw std::invalid_argument("neighbor counts must lie in {0, 1, 2}");
    const double phi1 = n1 * pm.a11() + (2 - n1) * pm.a12();
    const double phi2 = (2 - n2) * pm.a21() + n2 * pm.a22();
    const double den = phi1 + phi2;
    return focal == Strategy::s1 ? phi2 / den : phi1 / den;
}

// Expected displacement rates of the rightmost-1 interface position,
// conditioned on the gap to the next strategy-1 player being 2, 3, or >= 4:
//   D2 = 2 - p1(2, 0)
//   D3 = p2(1, 1) - p1(2, 1)
//   D4 = p2(1, 2) - p1(2, 1)
// The composed forms above are what drift_table computes; the closed forms
// d3_closed_form / d4_closed_form below give the same values by algebra and
// the two routes are checked against each other in the tests.
struct DriftTable {
    double d2;
    double d3;
    double d4;
    // rate(i, n1, n2) for i in {1,2} and n1, n2 in {0,1,2}
    std::array<std::array<std::array<double, 3>, 3>, 2> rates;

    double rate(Strategy focal, int n1, int n2) const {
        return rates[strategy_label(focal) - 1][n1][n2];
    }
};

inline DriftTable drift_table(const PayoffMatrix& pm) {
    DriftTable t{};
    for (int n1 = 0; n1 <= 2; ++n1)
        for (int n2 = 0; n2 <= 2; ++n2) {
            t.rates[0][n1][n2] = interface_rate(pm, Strategy::s1, n1, n2);
            t.rates[1][n1][n2] = interface_rate(pm, Strategy::s2, n1, n2);
        }
    t.d2 = 2.0 - t.rates[0][2][0];
    t.d3 = t.rates[1][1][1] - t.rates[0][2][1];
    t.d4 = t.rates[1][1][2] - t.rates[0][2][1];
    return t;
}

inline double d3_closed_form(const PayoffMatrix& pm) {
    return (pm.a11() + pm.a12()) / (pm.a11() + pm.a12() + pm.a21() + pm.a22()) -
           (pm.a21() + pm.a22()) / (2.0 * pm.a11() + pm.a21() + pm.a22());
}

inline double d4_closed_form(const PayoffMatrix& pm) {
    return (pm.a11() + pm.a12()) / (pm.a11() + pm.a12() + 2.0 * pm.a22()) -
           (pm.a21() + pm.a22()) / (2.0 * pm.a11() + pm.a21() + pm.a22());
}

}  // namespace evolattice
