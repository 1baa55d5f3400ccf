#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace evolattice {

using Rational = boost::multiprecision::cpp_rational;

// Exact-arithmetic twins of the coexistence-threshold and interface-drift
// formulas, for identity checks that floating point cannot settle. Payoffs
// enter as rationals.

inline Rational rational_pow5(const Rational& x) { return x * x * x * x * x; }

inline Rational coexistence_c_minus_exact(const Rational& a12, const Rational& a21) {
    const Rational r = a12 * a12 < a21 * a21 ? a12 / a21 : a21 / a12;
    return r / 131072;  // 2^17
}

// Route one: 5^-2 2^-21 c_minus^5 min(a12, a21).
inline Rational coexistence_threshold_exact_direct(const Rational& a12, const Rational& a21) {
    const Rational c5 = rational_pow5(coexistence_c_minus_exact(a12, a21));
    const Rational mn = a12 < a21 ? a12 : a21;
    return c5 * mn / (Rational(25) * 2097152);  // 25 * 2^21
}

// Route two: 2^-14 c_plus^-1 min(a12, a21) with c_plus = 5^2 2^7 c_minus^-5.
inline Rational coexistence_threshold_exact_via_upper(const Rational& a12, const Rational& a21) {
    const Rational c5 = rational_pow5(coexistence_c_minus_exact(a12, a21));
    const Rational c_plus = Rational(3200) / c5;  // 25 * 128
    const Rational mn = a12 < a21 ? a12 : a21;
    return mn / (16384 * c_plus);  // 2^14
}

inline Rational d3_exact(const Rational& a11, const Rational& a12,
                         const Rational& a21, const Rational& a22) {
    return (a11 + a12) / (a11 + a12 + a21 + a22) - (a21 + a22) / (2 * a11 + a21 + a22);
}

inline Rational d4_exact(const Rational& a11, const Rational& a12,
                         const Rational& a21, const Rational& a22) {
    return (a11 + a12) / (a11 + a12 + 2 * a22) - (a21 + a22) / (2 * a11 + a21 + a22);
}

}  // namespace evolattice
