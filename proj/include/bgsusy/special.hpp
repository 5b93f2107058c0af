#pragma once

#include <complex>

namespace bgsusy {

using Complex = std::complex<double>;

// Gamma function for complex argument (Lanczos, reflection for Re z < 1/2).
Complex cgamma(Complex z);

// Rising factorial (a)_n for complex a, integer n >= 0.
Complex pochhammer(Complex a, int n);

// Lower incomplete gamma, unnormalized: integral of t^(a-1) e^-t over [0, x].
double lower_incomplete_gamma(double a, double x);

// Incomplete beta, unnormalized: integral of t^(a-1)(1-t)^(b-1) over [0, x].
// Requires a > 0, b > 0, 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

// Gauss hypergeometric 2F1(a, b; c; z) for complex parameters. Terminating
// series when a or b is a non-positive integer; power series for |z| <= 0.9;
// direct series on the closed unit disc when Re(c - a - b) > 0 (slow but
// convergent); otherwise a Pfaff transform into the disc. Throws
// ConvergenceError when none of these applies or the series stalls.
Complex hyp2f1(Complex a, Complex b, Complex c, Complex z);

// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

// Jacobi polynomial P_n^(alpha,beta)(x), real parameters, three-term
// recurrence.
double jacobi(int n, double alpha, double beta, double x);

// Jacobi polynomial with complex parameters and argument, evaluated through
// the terminating hypergeometric representation.
Complex jacobi_complex(int n, Complex alpha, Complex beta, Complex x);

}  // namespace bgsusy
