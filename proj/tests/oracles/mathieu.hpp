#pragma once

// Mathieu characteristic values from the three-term recurrences of the Fourier
// coefficients, solved by Sturm-sequence bisection in long double. Used as an
// oracle for the band edges: with q = U0/4, the lowest band runs from a0(q)
// (k = 0) to b1(q) (k = pi/a).

namespace oracle {

/// Lowest even pi-periodic characteristic value a_0(q).
double mathieu_a0(double q, int terms = 60);

/// Lowest odd 2pi-periodic characteristic value b_1(q).
double mathieu_b1(double q, int terms = 60);

}  // namespace oracle
