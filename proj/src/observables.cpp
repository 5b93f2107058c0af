#include "bgsusy/observables.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "bgsusy/numerics.hpp"
#include "bgsusy/special.hpp"

namespace bgsusy {

std::vector<double> probability_density(const SpinorState& state) {
    const int n = state.lower.grid.n_points;
    std::vector<double> rho(n);
    for (int i = 0; i < n; ++i) {
        const double l = state.lower.values[i];
        if (state.has_upper) {
            const double u = state.upper.values[i];
            rho[i] = 0.5 * (u * u + l * l);
        } else {
            rho[i] = l * l;
        }
    }
    return rho;
}

namespace {

// stencil derivative of complex samples, component-wise
std::vector<Complex> differentiate_complex(const Grid& g,
                                           const std::vector<Complex>& f) {
    SampledFunction re{g, std::vector<double>(g.n_points)};
    SampledFunction im{g, std::vector<double>(g.n_points)};
    for (int i = 0; i < g.n_points; ++i) {
        re.values[i] = f[i].real();
        im.values[i] = f[i].imag();
    }
    SampledFunction dre = differentiate(re, 1);
    SampledFunction dim = differentiate(im, 1);
    std::vector<Complex> out(g.n_points);
    for (int i = 0; i < g.n_points; ++i) out[i] = {dre.values[i], dim.values[i]};
    return out;
}

// spinor entries of Psi, normalization factors folded in
void spinor_entries(const SpinorState& state, std::vector<Complex>& a,
                    std::vector<Complex>& b) {
    const int n = state.lower.grid.n_points;
    const double w = state.has_upper ? 1.0 / std::sqrt(2.0) : 1.0;
    a.assign(n, Complex(0.0));
    b.resize(n);
    for (int i = 0; i < n; ++i) {
        if (state.has_upper) a[i] = w * state.upper.values[i];
        b[i] = w * state.lower.values[i];
    }
}

}  // namespace

CurrentDensity current_density(const Grid& grid, const std::vector<Complex>& a,
                               const std::vector<Complex>& b, double k,
                               const SampledFunction& A, bool include_gauge_term) {
    if (!A.grid.same_as(grid))
        throw std::invalid_argument("current_density: A must live on the state grid");
    const std::vector<Complex> ap = differentiate_complex(grid, a);
    const std::vector<Complex> bp = differentiate_complex(grid, b);
    CurrentDensity out;
    out.Jx.resize(grid.n_points);
    out.Jy.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const Complex ab = std::conj(a[i]) * b[i];
        const double gauge = include_gauge_term ? A.values[i] : 0.0;
        out.Jx[i] = std::imag(std::conj(a[i]) * bp[i] + std::conj(b[i]) * ap[i]) +
                    2.0 * (k + gauge) * std::imag(ab);
        out.Jy[i] = std::real(std::conj(b[i]) * ap[i]) -
                    std::real(std::conj(a[i]) * bp[i]) -
                    2.0 * (k + gauge) * std::real(ab);
    }
    return out;
}

CurrentDensity current_density(const SpinorState& state, const SampledFunction& A,
                               bool include_gauge_term) {
    std::vector<Complex> a, b;
    spinor_entries(state, a, b);
    return current_density(state.lower.grid, a, b, state.k, A, include_gauge_term);
}

double continuity_residual(const Grid& grid, const std::vector<Complex>& a,
                           const std::vector<Complex>& b, double k,
                           const SampledFunction& A) {
    CurrentDensity cur = current_density(grid, a, b, k, A);
    SampledFunction jx{grid, cur.Jx};
    SampledFunction djx = differentiate(jx, 1);
    double worst = 0.0;
    for (int i = 2; i < grid.n_points - 2; ++i)
        worst = std::max(worst, std::abs(djx.values[i]));
    return worst;
}

double continuity_residual(const SpinorState& state, const SampledFunction& A) {
    std::vector<Complex> a, b;
    spinor_entries(state, a, b);
    return continuity_residual(state.lower.grid, a, b, state.k, A);
}

SampledFunction physical_vector_potential(const SusyTransform& transform, double k) {
    const Grid& g = transform.grid();
    SampledFunction A{g, std::vector<double>(g.n_points)};
    for (int i = 0; i < g.n_points; ++i)
        A.values[i] = 0.5 * transform.eta(g.points[i]) - k;
    return A;
}

DensityProfile density_profile(const SpinorState& state, const SampledFunction& A) {
    DensityProfile p;
    p.grid = state.lower.grid;
    p.rho = probability_density(state);
    CurrentDensity cur = current_density(state, A);
    p.Jx = std::move(cur.Jx);
    p.Jy = std::move(cur.Jy);
    p.k = state.k;
    p.n_aux = state.n_aux;
    p.m_std = state.m_std;
    return p;
}

}  // namespace bgsusy
