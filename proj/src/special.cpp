#include "bgsusy/special.hpp"

#include <cmath>
#include <stdexcept>

#include "bgsusy/errors.hpp"

namespace bgsusy {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos, g = 7
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_int(Complex z, int* n_out) {
    const double r = std::round(z.real());
    if (r > 0.5) return false;
    if (std::abs(z.real() - r) > 1e-12 || std::abs(z.imag()) > 1e-12) return false;
    *n_out = static_cast<int>(-r);
    return true;
}

}  // namespace

Complex cgamma(Complex z) {
    if (z.real() < 0.5) {
        int dummy;
        if (near_nonpositive_int(z, &dummy))
            throw ParameterPole("cgamma: pole at non-positive integer");
        return kPi / (std::sin(kPi * z) * cgamma(1.0 - z));
    }
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const Complex t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

Complex pochhammer(Complex a, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be >= 0");
    Complex p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + static_cast<double>(k);
    return p;
}

double lower_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("lower_incomplete_gamma: need a > 0");
    if (x < 0.0) throw std::invalid_argument("lower_incomplete_gamma: need x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // series: x^a e^-x sum_n x^n / (a)(a+1)...(a+n)
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum))
                return std::exp(a * std::log(x) - x) * sum;
        }
        throw ConvergenceError("lower_incomplete_gamma: series stalled");
    }
    // Lentz continued fraction for the upper tail
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, f = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            const double upper = std::exp(a * std::log(x) - x) * f;
            return std::tgamma(a) - upper;
        }
    }
    throw ConvergenceError("lower_incomplete_gamma: continued fraction stalled");
}

namespace {

// Numerical Recipes style continued fraction for the incomplete beta
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double f = d;
    for (int m = 1; m <= 10000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        f *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return f;
    }
    throw ConvergenceError("incomplete_beta: continued fraction stalled");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete_beta: need a, b > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: need 0 <= x <= 1");
    if (x == 0.0) return 0.0;
    const double complete =
        std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    if (x == 1.0) return complete;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return complete - std::exp(b * std::log1p(-x) + a * std::log(x)) * betacf(b, a, 1.0 - x) / b;
}

namespace {

Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z, int max_terms,
                      double tol) {
    Complex term = 1.0, sum = 1.0;
    int calm = 0;
    for (int n = 0; n < max_terms; ++n) {
        const double dn = n;
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (std::abs(term) < tol * (1.0 + std::abs(sum))) {
            if (++calm >= 3) return sum;
        } else {
            calm = 0;
        }
    }
    throw ConvergenceError("hyp2f1: series did not converge");
}

}  // namespace

Complex hyp2f1(Complex a, Complex b, Complex c, Complex z) {
    int na = 0, nb = 0, nc = 0;
    const bool ta = near_nonpositive_int(a, &na);
    const bool tb = near_nonpositive_int(b, &nb);
    const bool cpole = near_nonpositive_int(c, &nc);
    if (ta || tb) {
        // terminating series; a pole in c past the last term is harmless
        int nterm = ta && tb ? std::min(na, nb) : (ta ? na : nb);
        if (cpole && nc < nterm)
            throw ParameterPole("hyp2f1: c hits a non-positive integer before termination");
        Complex term = 1.0, sum = 1.0;
        for (int n = 0; n < nterm; ++n) {
            const double dn = n;
            term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
            sum += term;
        }
        return sum;
    }
    if (cpole) throw ParameterPole("hyp2f1: c is a non-positive integer");
    const double az = std::abs(z);
    if (az <= 0.9) return hyp2f1_series(a, b, c, z, 100000, 1e-17);
    // on the closed unit disc the series converges only algebraically when
    // Re(c-a-b) > 0; accept a looser per-term stop there
    if (az <= 1.0 + 1e-12 && (c - a - b).real() > 0.0)
        return hyp2f1_series(a, b, c, z, 1000000, 3e-15);
    const Complex zp = z / (z - 1.0);
    if (std::abs(zp) <= 0.9)
        return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, zp, 100000, 1e-17);
    throw ConvergenceError("hyp2f1: argument outside supported region");
}

double hermite(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
    double hm = 1.0, h = 2.0 * x;
    if (n == 0) return hm;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = next;
    }
    return h;
}

double jacobi(int n, double alpha, double beta, double x) {
    if (n < 0) throw std::invalid_argument("jacobi: n must be >= 0");
    double pm = 1.0;
    if (n == 0) return pm;
    double p = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
    for (int k = 2; k <= n; ++k) {
        const double s = alpha + beta;
        const double a1 = 2.0 * k * (k + s) * (2.0 * k + s - 2.0);
        const double a2 = (2.0 * k + s - 1.0) *
                          ((2.0 * k + s) * (2.0 * k + s - 2.0) * x + alpha * alpha - beta * beta);
        const double a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + s);
        const double next = (a2 * p - a3 * pm) / a1;
        pm = p;
        p = next;
    }
    return p;
}

Complex jacobi_complex(int n, Complex alpha, Complex beta, Complex x) {
    if (n < 0) throw std::invalid_argument("jacobi_complex: n must be >= 0");
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    return pochhammer(alpha + 1.0, n) / fact *
           hyp2f1(Complex(-n), static_cast<double>(n) + alpha + beta + 1.0, alpha + 1.0,
                  0.5 * (1.0 - x));
}

}  // namespace bgsusy
