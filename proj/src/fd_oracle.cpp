#include "bgsusy/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bgsusy {

namespace {

// number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x
int sturm_count(const std::vector<double>& d, double e2, double x) {
    // pivmin keeps e2/q finite when a pivot degenerates (zero counts as negative)
    const double pivmin = e2 * 1e-290 + 1e-300;
    int count = 0;
    double q = d[0] - x;
    if (q <= 0.0) ++count;
    if (std::abs(q) < pivmin) q = -pivmin;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = d[i] - x - e2 / q;
        if (q <= 0.0) ++count;
        if (std::abs(q) < pivmin) q = -pivmin;
    }
    return count;
}

// eigenvector of tridiag(e, d, e) at (approximate) eigenvalue lam via inverse
// iteration with a partially pivoted tridiagonal LU
std::vector<double> inverse_iteration(const std::vector<double>& d, double e, double lam) {
    const int n = static_cast<int>(d.size());
    std::vector<double> a(n), b(n, e), c(n, 0.0), du2(n, 0.0);
    std::vector<char> piv(n, 0);
    for (int i = 0; i < n; ++i) a[i] = d[i] - lam;
    for (int i = 0; i + 1 < n; ++i) c[i] = e;
    b[0] = 0.0;

    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(a[i]) >= std::abs(b[i + 1])) {
            if (a[i] == 0.0) a[i] = 1e-300;
            const double m = b[i + 1] / a[i];
            b[i + 1] = m;
            a[i + 1] -= m * c[i];
        } else {
            piv[i] = 1;
            const double m = a[i] / b[i + 1];
            a[i] = b[i + 1];
            b[i + 1] = m;
            const double old_ci = c[i];
            c[i] = a[i + 1];
            du2[i] = (i + 2 < n) ? c[i + 1] : 0.0;
            a[i + 1] = old_ci - m * c[i];
            if (i + 2 < n) c[i + 1] = -m * du2[i];
        }
    }
    if (a[n - 1] == 0.0) a[n - 1] = 1e-300;

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < 3; ++it) {
        for (int i = 0; i + 1 < n; ++i) {
            if (piv[i]) std::swap(v[i], v[i + 1]);
            v[i + 1] -= b[i + 1] * v[i];
        }
        v[n - 1] /= a[n - 1];
        if (n >= 2) v[n - 2] = (v[n - 2] - c[n - 2] * v[n - 1]) / a[n - 2];
        for (int i = n - 3; i >= 0; --i)
            v[i] = (v[i] - c[i] * v[i + 1] - du2[i] * v[i + 2]) / a[i];
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
    }
    return v;
}

}  // namespace

OracleSpectrum fd_spectrum(const SampledFunction& V, int count) {
    const int n_int = V.grid.n_points - 2;
    if (count < 1) throw std::invalid_argument("fd_spectrum: count must be >= 1");
    if (count > n_int) throw std::invalid_argument("fd_spectrum: count exceeds interior dimension");
    const double h = V.grid.h;
    const double off = -1.0 / (h * h);
    const double e2 = off * off;

    std::vector<double> d(n_int);
    for (int i = 0; i < n_int; ++i) d[i] = 2.0 / (h * h) + V.values[i + 1];

    // Gershgorin bounds
    double lo = d[0] - 2.0 * std::abs(off), hi = d[0] + 2.0 * std::abs(off);
    for (double di : d) {
        lo = std::min(lo, di - 2.0 * std::abs(off));
        hi = std::max(hi, di + 2.0 * std::abs(off));
    }

    OracleSpectrum out;
    out.grid = V.grid;
    out.eigenvalues.resize(count);
    out.eigenvectors.resize(count);
    const double scale = std::max(std::abs(lo), std::abs(hi));

    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        while (b - a > 1e-14 * scale + 1e-14) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(d, e2, mid) >= k + 1)
                b = mid;
            else
                a = mid;
        }
        const double lam = 0.5 * (a + b);
        out.eigenvalues[k] = lam;
        // tiny shift off the exact eigenvalue keeps the factorization usable
        std::vector<double> v = inverse_iteration(d, off, lam + 3e-14 * scale + 1e-14);
        // discrete L2 normalization and sign convention (first significant lobe positive)
        double nrm = 0.0;
        for (double x : v) nrm += x * x * h;
        nrm = std::sqrt(nrm);
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, std::abs(x));
        double sgn = 1.0;
        for (double x : v)
            if (std::abs(x) > 0.5 * peak) {
                sgn = (x > 0.0) ? 1.0 : -1.0;
                break;
            }
        for (double& x : v) x *= sgn / nrm;
        out.eigenvectors[k] = std::move(v);
    }
    return out;
}

}  // namespace bgsusy
